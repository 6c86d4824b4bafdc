#include "pext/homology.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "pext/error.hpp"
#include "pext/kernels.hpp"

namespace pext {
namespace {

using BigInt = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<std::int64_t>>;

Dense to_dense(const BoundaryMatrix& m) {
  Dense a(m.rows, std::vector<std::int64_t>(m.cols, 0));
  for (std::size_t c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.columns[c]) a[r][c] = v;
  return a;
}

// Arithmetic policies for Bareiss elimination. The checked int64 policy
// reports overflow so the caller can rerun with arbitrary precision.
struct CheckedInt {
  using value_type = std::int64_t;
  bool overflow = false;
  // (a*b - c*d) / e, exact by the Bareiss invariant.
  value_type cross(value_type a, value_type b, value_type c, value_type d, value_type e) {
    value_type ab = 0, cd = 0, diff = 0;
    if (__builtin_mul_overflow(a, b, &ab) || __builtin_mul_overflow(c, d, &cd) ||
        __builtin_sub_overflow(ab, cd, &diff)) {
      overflow = true;
      return 0;
    }
    return diff / e;
  }
};

struct Unbounded {
  using value_type = BigInt;
  bool overflow = false;
  value_type cross(const value_type& a, const value_type& b, const value_type& c,
                   const value_type& d, const value_type& e) {
    return (a * b - c * d) / e;
  }
};

template <typename Policy>
std::optional<std::size_t> bareiss_rank(std::vector<std::vector<typename Policy::value_type>> a) {
  using T = typename Policy::value_type;
  Policy ops;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  T prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[r][j] = ops.cross(a[rank][c], a[r][j], a[r][c], a[rank][j], prev);
        if (ops.overflow) return std::nullopt;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const BoundaryMatrix& m) {
  Dense a = to_dense(m);
  if (auto r = bareiss_rank<CheckedInt>(a)) return *r;
  std::vector<std::vector<BigInt>> big(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) big[i].assign(a[i].begin(), a[i].end());
  return *bareiss_rank<Unbounded>(std::move(big));
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::size_t rank_mod(const BoundaryMatrix& m, std::int64_t p) {
  Dense a = to_dense(m);
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const std::int64_t inv = inverse_mod(a[rank][c], p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const std::int64_t factor = a[r][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[r][j] = ((a[r][j] - factor * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void require_subcomplex(const SimplicialComplex& big, const SimplicialComplex& small) {
  if (big.is_void()) throw Error(ErrorCode::VoidComplex, "homology of the void complex");
  if (!big.contains_complex(small))
    throw Error(ErrorCode::NotASubcomplex, "subcomplex has a face outside the complex");
}

}  // namespace

FieldSpec FieldSpec::of(std::uint32_t p) {
  if (p != 0 && (!is_prime(p) || p > (1U << 30)))
    throw Error(ErrorCode::InvalidField, "characteristic " + std::to_string(p) + " is not 0 or a prime below 2^30");
  return FieldSpec{p};
}

std::int64_t HomologyProfile::at(int degree) const {
  const int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(betti.size())) return 0;
  return betti[static_cast<std::size_t>(idx)];
}

bool HomologyProfile::is_zero() const {
  return std::all_of(betti.begin(), betti.end(), [](std::int64_t b) { return b == 0; });
}

ChainComplexData chain_complex(const SimplicialComplex& big, const SimplicialComplex& small) {
  require_subcomplex(big, small);
  ChainComplexData cc;
  cc.top_degree = big.dim();
  cc.basis.resize(static_cast<std::size_t>(cc.top_degree + 2));
  for (const Face& f : big.faces())
    if (!small.contains(f)) cc.basis[f.size()].push_back(f);  // faces are shortlex sorted

  cc.boundary.resize(cc.basis.size());
  for (int i = -1; i <= cc.top_degree; ++i) {
    const auto& cols = cc.basis_at(i);
    BoundaryMatrix& m = cc.boundary[static_cast<std::size_t>(i + 1)];
    m.cols = cols.size();
    m.columns.resize(m.cols);
    if (i < 0) continue;
    const auto& rows = cc.basis_at(i - 1);
    m.rows = rows.size();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Face& s = cols[c];
      for (std::size_t k = 0; k < s.size(); ++k) {
        const Face facet = s.without(s[k]);
        auto it = std::lower_bound(rows.begin(), rows.end(), facet);
        if (it == rows.end() || *it != facet) continue;
        m.columns[c].emplace_back(static_cast<std::size_t>(it - rows.begin()), k % 2 == 0 ? 1 : -1);
      }
    }
  }
  return cc;
}

bool boundary_squares_to_zero(const ChainComplexData& cc) {
  for (int i = 1; i <= cc.top_degree; ++i) {
    const BoundaryMatrix& outer = cc.boundary_at(i - 1);
    const BoundaryMatrix& inner = cc.boundary_at(i);
    for (const auto& column : inner.columns) {
      std::map<std::size_t, std::int64_t> acc;
      for (const auto& [mid, v] : column)
        for (const auto& [r, w] : outer.columns[mid]) acc[r] += v * w;
      for (const auto& [r, sum] : acc)
        if (sum != 0) return false;
    }
  }
  return true;
}

std::size_t matrix_rank(const BoundaryMatrix& m, FieldSpec field) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (field.characteristic == 0) return rank_rational(m);
  return rank_mod(m, field.characteristic);
}

HomologyProfile homology_of(const ChainComplexData& cc, FieldSpec field) {
  HomologyProfile h;
  h.field = field;
  h.top_degree = cc.top_degree;
  std::vector<std::size_t> ranks(cc.boundary.size() + 1, 0);
  for (std::size_t k = 0; k < cc.boundary.size(); ++k) ranks[k] = matrix_rank(cc.boundary[k], field);
  for (std::size_t k = 0; k < cc.basis.size(); ++k)
    h.betti.push_back(static_cast<std::int64_t>(cc.basis[k].size()) -
                      static_cast<std::int64_t>(ranks[k]) - static_cast<std::int64_t>(ranks[k + 1]));
  return h;
}

HomologyProfile reduced_betti(const SimplicialComplex& c, FieldSpec field) {
  return homology_of(chain_complex(c, SimplicialComplex{}), field);
}

HomologyProfile relative_betti(const SimplicialComplex& big, const SimplicialComplex& small,
                               FieldSpec field) {
  return homology_of(chain_complex(big, small), field);
}

std::vector<HomologyProfile> link_homology(const SimplicialComplex& big,
                                           const SimplicialComplex& small, FieldSpec field) {
  require_subcomplex(big, small);
  return kernels::link_homology_parallel(big, small, field);
}

// ---------------------------------------------------------------------------
// Cohen-Macaulay checks

std::optional<LinkObstruction> relative_cm_violation(const SimplicialComplex& big,
                                                     const SimplicialComplex& small,
                                                     FieldSpec field) {
  const std::vector<HomologyProfile> table = link_homology(big, small, field);
  const int d = big.dim();
  const auto faces = big.faces();
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const int size = static_cast<int>(faces[k].size());
    for (int i = -1; i <= table[k].top_degree; ++i)
      if (size + i != d && table[k].at(i) != 0) return LinkObstruction{faces[k], i, table[k].at(i)};
  }
  return std::nullopt;
}

bool is_relative_cm(const SimplicialComplex& big, const SimplicialComplex& small, FieldSpec field) {
  return !relative_cm_violation(big, small, field).has_value();
}

std::optional<LinkObstruction> cohen_macaulay_violation(const SimplicialComplex& c, FieldSpec field) {
  return relative_cm_violation(c, SimplicialComplex{}, field);
}

bool is_cohen_macaulay(const SimplicialComplex& c, FieldSpec field) {
  return !cohen_macaulay_violation(c, field).has_value();
}

DepthReport depth_report(const SimplicialComplex& c, FieldSpec field) {
  if (c.is_void()) throw Error(ErrorCode::VoidComplex, "depth of the void complex");
  const int d = c.dim();
  const std::vector<HomologyProfile> table = link_homology(c, SimplicialComplex{}, field);
  const auto faces = c.faces();

  DepthReport report;
  report.depth = d + 1;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    for (int i = 0; i < d; ++i) {
      if (table[k].at(i) == 0) continue;
      const int bound = static_cast<int>(faces[k].size()) + i + 1;
      if (bound < report.depth) {
        report.depth = bound;
        report.witness = LinkObstruction{faces[k], i, table[k].at(i)};
      }
    }
  }

  int best = -2;
  for (int r = -1; r <= d; ++r)
    if (is_cohen_macaulay(skeleton(c, r), field)) best = r;
  report.skeleton_depth = best + 1;
  if (report.skeleton_depth != report.depth)
    throw Error(ErrorCode::InternalDiagnostic,
                "link-homology depth " + std::to_string(report.depth) +
                    " disagrees with skeleton depth " + std::to_string(report.skeleton_depth));
  return report;
}

int depth(const SimplicialComplex& c, FieldSpec field) { return depth_report(c, field).depth; }

std::variant<CmExtender, CmObstruction> cm_extender(const SimplicialComplex& c, FieldSpec field) {
  const DepthReport report = depth_report(c, field);
  const int d = c.dim();
  if (report.depth < d) return CmObstruction{report.depth, *report.witness};

  const std::vector<Vertex> vertices = c.vertices();
  CmExtender out;
  out.extender = simplex_skeleton(vertices, d);
  out.base = c;
  out.extender_is_cm = is_cohen_macaulay(out.extender, field);
  out.relative_is_cm = is_relative_cm(out.extender, c, field);
  if (!out.extender_is_cm || !out.relative_is_cm)
    throw Error(ErrorCode::InternalDiagnostic, "skeleton extender failed its Cohen-Macaulay checks");
  return out;
}

}  // namespace pext
