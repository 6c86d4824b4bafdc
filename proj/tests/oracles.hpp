// Independent reference implementations used only by the tests. They work on
// plain sorted label vectors so they share no code paths with the library.
#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "pext/complex.hpp"

namespace oracle {

using Labels = std::vector<std::uint32_t>;
using LabelSet = std::set<Labels>;

inline bool shortlex_less(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline bool subset(const Labels& a, const Labels& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Labels labels(const pext::Face& f) { return Labels(f.vertices().begin(), f.vertices().end()); }

inline pext::Face face(const Labels& l) { return pext::Face(l); }

/// Every subset of every facet.
inline LabelSet closure(const std::vector<Labels>& facets) {
  LabelSet out;
  for (const Labels& f : facets) {
    const std::size_t n = f.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Labels s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      out.insert(s);
    }
  }
  return out;
}

inline LabelSet faces_of(const pext::SimplicialComplex& c) {
  LabelSet out;
  for (const pext::Face& f : c.faces()) out.insert(labels(f));
  return out;
}

inline std::vector<Labels> facets_of(const pext::SimplicialComplex& c) {
  std::vector<Labels> out;
  for (const pext::Face& f : c.facets()) out.push_back(labels(f));
  return out;
}

inline pext::SimplicialComplex complex(const std::vector<Labels>& facets) {
  std::vector<pext::Face> fs;
  for (const Labels& l : facets) fs.push_back(face(l));
  return pext::SimplicialComplex::from_facets(std::move(fs));
}

/// f_{-1}, ..., f_d of a set family with dimension d.
inline std::vector<std::int64_t> f_counts(const LabelSet& members, int d) {
  std::vector<std::int64_t> f(static_cast<std::size_t>(d + 2), 0);
  for (const Labels& m : members) ++f[m.size()];
  return f;
}

/// h read off sum_i h_i t^i = sum_i f_{i-1} t^i (1 - t)^(d + 1 - i).
inline std::vector<std::int64_t> h_by_generating_function(const std::vector<std::int64_t>& f) {
  const std::size_t n = f.size();
  std::vector<std::int64_t> h(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    // t^i (1 - t)^(n - 1 - i)
    const std::size_t e = n - 1 - i;
    std::int64_t c = 1;  // binomial(e, j) with sign
    for (std::size_t j = 0; j <= e; ++j) {
      h[i + j] += f[i] * c;
      c = -c * static_cast<std::int64_t>(e - j) / static_cast<std::int64_t>(j + 1);
    }
  }
  return h;
}

/// Maximal elements of a set family.
inline std::vector<Labels> maximal(const LabelSet& members) {
  std::vector<Labels> out;
  for (const Labels& m : members) {
    bool is_max = true;
    for (const Labels& o : members)
      if (o.size() > m.size() && subset(m, o)) {
        is_max = false;
        break;
      }
    if (is_max) out.push_back(m);
  }
  return out;
}

using NaiveInterval = std::pair<Labels, Labels>;

/// All sets between bottom and top.
inline std::vector<Labels> interval_members(const Labels& bottom, const Labels& top) {
  Labels free;
  std::set_difference(top.begin(), top.end(), bottom.begin(), bottom.end(), std::back_inserter(free));
  std::vector<Labels> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    Labels s = bottom;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) s.push_back(free[i]);
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  return out;
}

/**
 * Exhaustive partition search driven by bottoms: the smallest uncovered set
 * must be the bottom of its interval, whose top is some maximal member.
 */
inline std::optional<std::vector<NaiveInterval>> find_partition_naive(const LabelSet& members) {
  const std::vector<Labels> tops = maximal(members);
  std::vector<NaiveInterval> chosen;
  LabelSet uncovered = members;
  std::function<bool()> rec = [&]() -> bool {
    if (uncovered.empty()) return true;
    const Labels b = *std::min_element(uncovered.begin(), uncovered.end(), shortlex_less);
    for (const Labels& top : tops) {
      if (!subset(b, top)) continue;
      const std::vector<Labels> block = interval_members(b, top);
      if (!std::all_of(block.begin(), block.end(), [&](const Labels& s) { return uncovered.contains(s); }))
        continue;
      for (const Labels& s : block) uncovered.erase(s);
      chosen.emplace_back(b, top);
      if (rec()) return true;
      chosen.pop_back();
      for (const Labels& s : block) uncovered.insert(s);
    }
    return false;
  };
  if (!rec()) return std::nullopt;
  return chosen;
}

/// Facets of big that are not faces of small: the facets a relative shelling orders.
inline std::vector<Labels> relative_facets(const std::vector<Labels>& big_facets, const LabelSet& small) {
  std::vector<Labels> out;
  for (const Labels& f : big_facets)
    if (!small.contains(f)) out.push_back(f);
  return out;
}

/// Shelling step check by counting minimal new faces at every step.
inline bool is_shelling_naive(const std::vector<Labels>& order, const LabelSet& small,
                              const std::vector<Labels>& big_facets) {
  std::vector<Labels> expected = relative_facets(big_facets, small), given = order;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (given != expected) return false;
  LabelSet seen = small;
  for (const Labels& f : order) {
    std::vector<Labels> fresh;
    for (const Labels& s : closure({f}))
      if (!seen.contains(s)) fresh.push_back(s);
    std::size_t minimal = 0;
    for (const Labels& s : fresh) {
      bool is_min = true;
      for (const Labels& o : fresh)
        if (o.size() < s.size() && subset(o, s)) is_min = false;
      if (is_min) ++minimal;
    }
    if (minimal != 1) return false;
    for (const Labels& s : closure({f})) seen.insert(s);
  }
  return true;
}

inline bool shellable_naive(const std::vector<Labels>& big_facets, const LabelSet& small) {
  std::vector<Labels> order = relative_facets(big_facets, small);
  std::sort(order.begin(), order.end());
  do {
    if (is_shelling_naive(order, small, big_facets)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Rank over the rationals by plain Gaussian elimination on exact fractions.
inline std::size_t rank_rational(std::vector<std::vector<boost::multiprecision::cpp_rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const boost::multiprecision::cpp_rational factor = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= factor * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Reduced rational Betti numbers of the relative pair (big, small) straight
/// from the definition: boundary matrices over face lists, rank by fractions.
inline std::vector<std::int64_t> betti_naive(const LabelSet& big, const LabelSet& small, int d) {
  std::vector<std::vector<Labels>> basis(static_cast<std::size_t>(d + 2));
  for (const Labels& s : big)
    if (!small.contains(s)) basis[s.size()].push_back(s);
  std::vector<std::size_t> rank(basis.size() + 1, 0);
  for (std::size_t deg = 1; deg < basis.size(); ++deg) {
    const auto& cols = basis[deg];
    const auto& rows = basis[deg - 1];
    if (cols.empty() || rows.empty()) continue;
    std::vector<std::vector<boost::multiprecision::cpp_rational>> m(
        rows.size(), std::vector<boost::multiprecision::cpp_rational>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t k = 0; k < cols[c].size(); ++k) {
        Labels f = cols[c];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
        const auto it = std::find(rows.begin(), rows.end(), f);
        if (it != rows.end()) m[static_cast<std::size_t>(it - rows.begin())][c] = (k % 2 == 0) ? 1 : -1;
      }
    rank[deg] = rank_rational(std::move(m));
  }
  std::vector<std::int64_t> betti;
  for (std::size_t deg = 0; deg < basis.size(); ++deg)
    betti.push_back(static_cast<std::int64_t>(basis[deg].size()) - static_cast<std::int64_t>(rank[deg]) -
                    static_cast<std::int64_t>(rank[deg + 1]));
  return betti;
}

// ---------------------------------------------------------------------------
// Random complexes (fixed seeds at the call sites)

inline Labels random_subset(std::mt19937& rng, std::uint32_t pool, std::size_t size) {
  Labels all(pool);
  for (std::uint32_t i = 0; i < pool; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

/// Pure d-complex on at most d + 3 vertices with at most `max_facets` facets
/// and at most `max_faces` faces (counting the empty face).
inline pext::SimplicialComplex random_pure(std::mt19937& rng, int d, std::size_t max_facets,
                                           std::size_t max_faces) {
  if (max_faces < (std::size_t{1} << (d + 1))) throw std::invalid_argument("no d-simplex fits the face bound");
  for (;;) {
    const auto pool = static_cast<std::uint32_t>(d + 1 + std::uniform_int_distribution<int>(0, 2)(rng));
    const auto count = std::uniform_int_distribution<std::size_t>(1, max_facets)(rng);
    std::vector<Labels> facets;
    for (std::size_t i = 0; i < count; ++i) facets.push_back(random_subset(rng, pool, static_cast<std::size_t>(d + 1)));
    pext::SimplicialComplex c = complex(facets);
    if (c.num_faces() <= max_faces) return c;
  }
}

/// Nonpure complex of dimension at most `max_dim` on a pool of up to six vertices.
inline pext::SimplicialComplex random_nonpure(std::mt19937& rng, int max_dim, std::size_t max_faces) {
  for (;;) {
    const auto pool = static_cast<std::uint32_t>(std::uniform_int_distribution<int>(3, 6)(rng));
    const auto count = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<Labels> facets;
    for (int i = 0; i < count; ++i) {
      const int dim = std::uniform_int_distribution<int>(0, std::min<int>(max_dim, static_cast<int>(pool) - 1))(rng);
      facets.push_back(random_subset(rng, pool, static_cast<std::size_t>(dim + 1)));
    }
    pext::SimplicialComplex c = complex(facets);
    if (!c.is_pure() && c.num_faces() <= max_faces) return c;
  }
}

}  // namespace oracle
