#include "pext/complex.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pext/error.hpp"

namespace pext {
namespace {

// Downward closure beyond this facet size is never attempted.
constexpr std::size_t kMaxFacetSize = 26;

void sort_unique(std::vector<Face>& faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
}

// Calls fn on every (size)-subset of `labels`, in lexicographic order.
template <typename Fn>
void for_each_combination(std::span<const Vertex> labels, std::size_t size, Fn&& fn) {
  const std::size_t n = labels.size();
  if (size > n) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  std::vector<Vertex> pick(size);
  while (true) {
    for (std::size_t i = 0; i < size; ++i) pick[i] = labels[idx[i]];
    fn(Face::from_sorted(pick));
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex SimplicialComplex::from_facets(std::vector<Face> inputs) {
  SimplicialComplex c;
  if (inputs.empty()) return c;
  sort_unique(inputs);

  // Largest first, so a face already in the closure is known to be non-maximal
  // and its subsets are already present.
  std::unordered_set<Face, FaceHash> closure;
  std::vector<Face> facets;
  for (auto it = inputs.rbegin(); it != inputs.rend(); ++it) {
    const Face& f = *it;
    if (closure.contains(f)) continue;
    if (f.size() > kMaxFacetSize)
      throw Error(ErrorCode::SizeLimitExceeded,
                  "facet with " + std::to_string(f.size()) + " vertices is too large");
    facets.push_back(f);
    const std::uint64_t n = std::uint64_t{1} << f.size();
    for (std::uint64_t m = 0; m < n; ++m) closure.insert(f.subset_by_mask(m));
  }
  std::sort(facets.begin(), facets.end());
  c.facets_ = std::move(facets);
  c.faces_.assign(closure.begin(), closure.end());
  std::sort(c.faces_.begin(), c.faces_.end());
  c.dim_ = c.facets_.back().dim();
  return c;
}

bool SimplicialComplex::is_pure() const noexcept {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Face& f) { return f.dim() == dim_; });
}

bool SimplicialComplex::contains(const Face& f) const noexcept {
  return std::binary_search(faces_.begin(), faces_.end(), f);
}

std::ptrdiff_t SimplicialComplex::index_of(const Face& f) const noexcept {
  auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
  if (it == faces_.end() || *it != f) return -1;
  return it - faces_.begin();
}

bool SimplicialComplex::contains_complex(const SimplicialComplex& other) const noexcept {
  return std::all_of(other.facets_.begin(), other.facets_.end(),
                     [&](const Face& f) { return contains(f); });
}

std::vector<Vertex> SimplicialComplex::vertices() const {
  std::vector<Vertex> out;
  for (const Face& f : faces_) {
    if (f.size() == 1) out.push_back(f[0]);
    if (f.size() > 1) break;
  }
  return out;
}

Vertex SimplicialComplex::max_vertex() const noexcept {
  Vertex m = 0;
  for (const Face& f : facets_) m = std::max(m, f.max_vertex());
  return m;
}

// ---------------------------------------------------------------------------
// FaceFamily

FaceFamily::FaceFamily(std::vector<Face> members, int ambient_dim)
    : members_(std::move(members)), ambient_dim_(ambient_dim) {
  sort_unique(members_);
  if (!members_.empty() && members_.back().dim() > ambient_dim_)
    throw Error(ErrorCode::InvalidParameters,
                "member " + members_.back().str() + " exceeds ambient dimension " +
                    std::to_string(ambient_dim_));
}

bool FaceFamily::contains(const Face& f) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), f);
}

std::ptrdiff_t FaceFamily::index_of(const Face& f) const noexcept {
  auto it = std::lower_bound(members_.begin(), members_.end(), f);
  if (it == members_.end() || *it != f) return -1;
  return it - members_.begin();
}

std::vector<Face> FaceFamily::maximal_members() const {
  // Scan largest first; a member is maximal iff no kept maximal member contains it.
  std::vector<Face> maximal;
  for (auto it = members_.rbegin(); it != members_.rend(); ++it) {
    bool covered = std::any_of(maximal.begin(), maximal.end(), [&](const Face& m) {
      return m.size() > it->size() && it->is_subset_of(m);
    });
    if (!covered) maximal.push_back(*it);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

// ---------------------------------------------------------------------------
// Counting

CountVector operator+(const CountVector& a, const CountVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidParameters, "length mismatch");
  CountVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.entries[i] += b.entries[i];
  return out;
}

CountVector operator-(const CountVector& a, const CountVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidParameters, "length mismatch");
  CountVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.entries[i] -= b.entries[i];
  return out;
}

bool CountTriangle::row_is_zero(std::size_t i) const {
  const auto& row = rows.at(i);
  return std::all_of(row.begin(), row.end(), [](std::int64_t x) { return x == 0; });
}

CountTriangle operator-(const CountTriangle& a, const CountTriangle& b) {
  if (a.rows.size() != b.rows.size()) throw Error(ErrorCode::InvalidParameters, "shape mismatch");
  CountTriangle out = a;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) out.rows[i][j] -= b.rows[i][j];
  return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

CountVector count_by_size(std::span<const Face> faces, int ambient_dim) {
  CountVector f{std::vector<std::int64_t>(static_cast<std::size_t>(ambient_dim + 2), 0)};
  for (const Face& s : faces) {
    if (s.size() >= f.size())
      throw Error(ErrorCode::InvalidParameters, "face " + s.str() + " exceeds ambient dimension");
    ++f.entries[s.size()];
  }
  return f;
}

}  // namespace

CountVector f_vector(const SimplicialComplex& c) { return count_by_size(c.faces(), c.dim()); }
CountVector f_vector(const FaceFamily& fam) { return count_by_size(fam.members(), fam.ambient_dim()); }

CountVector h_from_f(const CountVector& f) {
  const auto d = static_cast<std::int64_t>(f.size()) - 2;
  CountVector h{std::vector<std::int64_t>(f.size(), 0)};
  for (std::int64_t i = 0; i <= d + 1; ++i) {
    std::int64_t sum = 0;
    for (std::int64_t j = 0; j <= i; ++j) {
      const std::int64_t term = binomial(d + 1 - j, i - j) * f.entries[j];
      sum += ((i - j) % 2 == 0) ? term : -term;
    }
    h.entries[i] = sum;
  }
  return h;
}

CountVector f_from_h(const CountVector& h) {
  const auto d = static_cast<std::int64_t>(h.size()) - 2;
  CountVector f{std::vector<std::int64_t>(h.size(), 0)};
  for (std::int64_t i = 0; i <= d + 1; ++i)
    for (std::int64_t j = 0; j <= i; ++j) f.entries[i] += binomial(d + 1 - j, i - j) * h.entries[j];
  return f;
}

CountVector h_vector(const SimplicialComplex& c) { return h_from_f(f_vector(c)); }
CountVector h_vector(const FaceFamily& fam) { return h_from_f(f_vector(fam)); }

int facet_depth(const SimplicialComplex& c, const Face& s) {
  if (!c.contains(s)) throw Error(ErrorCode::FaceNotPresent, s.str());
  int best = -1;
  for (const Face& f : c.facets())
    if (s.is_subset_of(f)) best = std::max(best, f.dim());
  return best;
}

CountTriangle f_triangle(const FaceFamily& fam) {
  const int d = fam.ambient_dim();
  CountTriangle t;
  for (int i = 0; i <= d + 1; ++i) t.rows.emplace_back(static_cast<std::size_t>(i + 1), 0);
  const std::vector<Face> maximal = fam.maximal_members();
  for (const Face& s : fam.members()) {
    int depth = -1;
    for (const Face& m : maximal)
      if (m.dim() > depth && s.is_subset_of(m)) depth = m.dim();
    ++t.rows[static_cast<std::size_t>(depth + 1)][s.size()];
  }
  return t;
}

CountTriangle f_triangle(const SimplicialComplex& c) { return f_triangle(FaceFamily::of(c)); }

CountTriangle h_from_f(const CountTriangle& f) {
  CountTriangle h = f;
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    const auto ii = static_cast<std::int64_t>(i);
    for (std::int64_t j = 0; j <= ii; ++j) {
      std::int64_t sum = 0;
      for (std::int64_t k = 0; k <= j; ++k) {
        const std::int64_t term = binomial(ii - k, j - k) * f.rows[i][k];
        sum += ((j - k) % 2 == 0) ? term : -term;
      }
      h.rows[i][j] = sum;
    }
  }
  return h;
}

CountTriangle h_triangle(const SimplicialComplex& c) { return h_from_f(f_triangle(c)); }
CountTriangle h_triangle(const FaceFamily& fam) { return h_from_f(f_triangle(fam)); }

// ---------------------------------------------------------------------------
// Derived complexes

SimplicialComplex link(const SimplicialComplex& c, const Face& s) {
  if (!c.contains(s)) throw Error(ErrorCode::FaceNotPresent, s.str());
  return link_or_void(c, s);
}

SimplicialComplex link_or_void(const SimplicialComplex& c, const Face& s) {
  std::vector<Face> facets;
  for (const Face& f : c.facets())
    if (s.is_subset_of(f)) facets.push_back(f.minus(s));
  return SimplicialComplex::from_facets(std::move(facets));
}

SimplicialComplex skeleton(const SimplicialComplex& c, int r) {
  if (r < -1) throw Error(ErrorCode::InvalidParameters, "skeleton dimension below -1");
  std::vector<Face> facets;
  for (const Face& f : c.faces())
    if (f.dim() == r) facets.push_back(f);
  for (const Face& f : c.facets())
    if (f.dim() < r) facets.push_back(f);
  return SimplicialComplex::from_facets(std::move(facets));
}

SimplicialComplex simplex_skeleton(std::span<const Vertex> vertices, int r) {
  if (r < -1) throw Error(ErrorCode::InvalidParameters, "skeleton dimension below -1");
  std::vector<Vertex> sorted(vertices.begin(), vertices.end());
  const Face all(sorted);  // validates distinctness
  const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(r + 1), all.size());
  std::vector<Face> facets;
  for_each_combination(all.vertices(), size, [&](Face f) { facets.push_back(std::move(f)); });
  return SimplicialComplex::from_facets(std::move(facets));
}

FaceFamily relative_family(const SimplicialComplex& big, const SimplicialComplex& small) {
  if (!big.contains_complex(small))
    throw Error(ErrorCode::NotASubcomplex, "subcomplex has a face outside the complex");
  std::vector<Face> members;
  for (const Face& f : big.faces())
    if (!small.contains(f)) members.push_back(f);
  return FaceFamily(std::move(members), big.dim());
}

FaceFamily adjoin_face(const FaceFamily& fam, const Face& s) {
  if (fam.contains(s)) throw Error(ErrorCode::AlreadyPresent, s.str());
  std::vector<Face> members(fam.members().begin(), fam.members().end());
  members.push_back(s);
  return FaceFamily(std::move(members), std::max(fam.ambient_dim(), s.dim()));
}

Face relabel(const Face& f, const VertexMap& map) {
  std::vector<Vertex> out;
  out.reserve(f.size());
  for (Vertex v : f.vertices()) out.push_back(map.at(v));
  return Face(std::move(out));
}

GlueResult glue_with_map(const SimplicialComplex& host, const SimplicialComplex& guest,
                         const VertexMap& identification) {
  const std::vector<Vertex> guest_vertices = guest.vertices();
  std::set<Vertex> images;
  for (const auto& [from, to] : identification) {
    if (!std::binary_search(guest_vertices.begin(), guest_vertices.end(), from))
      throw Error(ErrorCode::InconsistentIdentification,
                  "vertex " + std::to_string(from) + " is not a guest vertex");
    if (!images.insert(to).second)
      throw Error(ErrorCode::InconsistentIdentification, "identification is not injective");
  }
  for (const Face& f : guest.faces()) {
    const bool identified = std::all_of(f.vertices().begin(), f.vertices().end(),
                                        [&](Vertex v) { return identification.contains(v); });
    if (identified && !host.contains(relabel(f, identification)))
      throw Error(ErrorCode::InconsistentIdentification,
                  "guest face " + f.str() + " maps to a non-face of the host");
  }

  GlueResult out;
  out.relabeling = identification;
  Vertex next = host.vertices().empty() ? 1 : host.max_vertex() + 1;
  for (Vertex v : guest_vertices)
    if (!identification.contains(v)) out.relabeling[v] = next++;

  std::vector<Face> facets(host.facets().begin(), host.facets().end());
  for (const Face& f : guest.facets()) facets.push_back(relabel(f, out.relabeling));
  out.complex = SimplicialComplex::from_facets(std::move(facets));
  return out;
}

SimplicialComplex glue(const SimplicialComplex& host, const SimplicialComplex& guest,
                       const VertexMap& identification) {
  return glue_with_map(host, guest, identification).complex;
}

}  // namespace pext
