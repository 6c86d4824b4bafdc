#include "pext/partitioning.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "pext/error.hpp"
#include "pext/kernels.hpp"

namespace pext {
namespace {

// Fixed-width bit set over family member indices.
class MemberSet {
 public:
  explicit MemberSet(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool intersects(const MemberSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  void add(const MemberSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  }
  void remove(const MemberSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  }

 private:
  std::vector<std::uint64_t> words_;
};

void require_valid(const FaceFamily& fam, const IntervalPartition& p) {
  const PartitionReport report = verify_partitioning(fam, p);
  if (!report.valid) throw Error(ErrorCode::InvalidPartitioning, report.violation.value_or(""));
}

}  // namespace

IntervalPartition IntervalPartition::canonical() const {
  IntervalPartition out = *this;
  std::sort(out.intervals.begin(), out.intervals.end());
  return out;
}

PartitionReport verify_partitioning(const FaceFamily& fam, const IntervalPartition& p) {
  const IntervalPartition canon = p.canonical();
  const std::vector<kernels::IntervalScan> scans =
      kernels::scan_intervals_parallel(fam, canon.intervals);
  const std::vector<Face> maximal = fam.maximal_members();

  PartitionReport report;
  auto fail = [&](std::string why) {
    if (!report.violation) report.violation = std::move(why);
  };

  std::vector<int> covered(fam.size(), 0);
  for (std::size_t k = 0; k < canon.size(); ++k) {
    const Interval& iv = canon.intervals[k];
    const kernels::IntervalScan& scan = scans[k];
    ++report.interval_stats[{iv.top.size(), iv.bottom.size()}];
    if (scan.bottom_outside_top) {
      fail("interval " + iv.str() + ": bottom is not contained in top");
      continue;
    }
    if (scan.non_member) fail("interval " + iv.str() + " contains non-member " + scan.non_member->str());
    if (!std::binary_search(maximal.begin(), maximal.end(), iv.top))
      fail("interval " + iv.str() + ": top is not a maximal member");
    for (std::size_t idx : scan.members)
      if (++covered[idx] == 2) fail("face " + fam.members()[idx].str() + " is covered twice");
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (covered[i] == 0) {
      fail("face " + fam.members()[i].str() + " is not covered");
      break;
    }
  report.valid = !report.violation.has_value();
  return report;
}

CountVector h_from_partitioning(const FaceFamily& fam, const IntervalPartition& p) {
  require_valid(fam, p);
  CountVector h{std::vector<std::int64_t>(static_cast<std::size_t>(fam.ambient_dim() + 2), 0)};
  for (const Interval& iv : p.intervals) ++h[iv.bottom.size()];
  return h;
}

bool is_layer_compatible(const FaceFamily& fam, const IntervalPartition& p) {
  require_valid(fam, p);
  const std::vector<Face> maximal = fam.maximal_members();
  for (int r = 0; r <= fam.ambient_dim(); ++r) {
    std::vector<Face> generators;
    for (const Face& m : maximal)
      if (m.dim() >= r) generators.push_back(m);
    std::vector<Face> layer;
    for (const Face& s : fam.members())
      if (std::any_of(generators.begin(), generators.end(),
                      [&](const Face& g) { return s.is_subset_of(g); }))
        layer.push_back(s);
    IntervalPartition restricted;
    for (const Interval& iv : p.intervals)
      if (iv.top.dim() >= r) restricted.intervals.push_back(iv);
    if (!verify_partitioning(FaceFamily(std::move(layer), fam.ambient_dim()), restricted).valid)
      return false;
  }
  return true;
}

bool is_h_compatible(const FaceFamily& fam, const IntervalPartition& p) {
  const PartitionReport report = verify_partitioning(fam, p);
  if (!report.valid) throw Error(ErrorCode::InvalidPartitioning, report.violation.value_or(""));
  const CountTriangle h = h_triangle(fam);
  for (const auto& [key, count] : report.interval_stats) {
    const auto [top, bottom] = key;
    if (top >= h.rows.size() || bottom > top) return false;
  }
  for (std::size_t i = 0; i < h.rows.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      auto it = report.interval_stats.find({i, j});
      const std::int64_t count = it == report.interval_stats.end() ? 0 : it->second;
      if (count != h.at(i, j)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Partition search

namespace {

struct Candidate {
  Face bottom;
  MemberSet cover;
};

class PartitionSearch {
 public:
  explicit PartitionSearch(const FaceFamily& fam) : fam_(fam), covered_(fam.size()) {
    tops_ = fam.maximal_members();
    std::stable_sort(tops_.begin(), tops_.end(),
                     [](const Face& a, const Face& b) { return a.size() > b.size(); });

    // Last search level able to cover each member; members are checked there.
    std::vector<std::ptrdiff_t> last_owner(fam.size(), -1);
    candidates_.resize(tops_.size());
    for (std::size_t level = 0; level < tops_.size(); ++level) {
      const Face& top = tops_[level];
      for (const Face& bottom : top.subsets()) {
        Candidate c{bottom, MemberSet(fam.size())};
        if (fill_cover(bottom, top, c.cover)) candidates_[level].push_back(std::move(c));
      }
      for (std::size_t i = 0; i < fam.size(); ++i)
        if (fam.members()[i].is_subset_of(top)) last_owner[i] = static_cast<std::ptrdiff_t>(level);
    }
    settle_at_.resize(tops_.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (last_owner[i] < 0) orphan_ = true;
      else settle_at_[static_cast<std::size_t>(last_owner[i])].push_back(i);
    }
    chosen_.resize(tops_.size());
  }

  std::optional<IntervalPartition> run() {
    if (orphan_ || !descend(0)) return std::nullopt;
    IntervalPartition p;
    for (std::size_t level = 0; level < tops_.size(); ++level)
      p.intervals.push_back({candidates_[level][chosen_[level]].bottom, tops_[level]});
    return p.canonical();
  }

 private:
  bool fill_cover(const Face& bottom, const Face& top, MemberSet& cover) const {
    const Face free = top.minus(bottom);
    const std::uint64_t n = std::uint64_t{1} << free.size();
    for (std::uint64_t m = 0; m < n; ++m) {
      const std::ptrdiff_t idx = fam_.index_of(bottom.unite(free.subset_by_mask(m)));
      if (idx < 0) return false;
      cover.set(static_cast<std::size_t>(idx));
    }
    return true;
  }

  bool descend(std::size_t level) {
    if (level == tops_.size()) return true;
    for (std::size_t c = 0; c < candidates_[level].size(); ++c) {
      const Candidate& cand = candidates_[level][c];
      if (cand.cover.intersects(covered_)) continue;
      covered_.add(cand.cover);
      const bool settled = std::all_of(settle_at_[level].begin(), settle_at_[level].end(),
                                       [&](std::size_t i) { return covered_.test(i); });
      if (settled && descend(level + 1)) {
        chosen_[level] = c;
        return true;
      }
      covered_.remove(cand.cover);
    }
    return false;
  }

  const FaceFamily& fam_;
  std::vector<Face> tops_;
  std::vector<std::vector<Candidate>> candidates_;
  std::vector<std::vector<std::size_t>> settle_at_;
  std::vector<std::size_t> chosen_;
  MemberSet covered_;
  bool orphan_ = false;
};

}  // namespace

std::optional<IntervalPartition> find_partitioning(const FaceFamily& fam, const SearchLimits& limits) {
  if (fam.size() > limits.max_members)
    throw Error(ErrorCode::SizeLimitExceeded,
                "family has " + std::to_string(fam.size()) + " members; the bound is " +
                    std::to_string(limits.max_members));
  return PartitionSearch(fam).run();
}

// ---------------------------------------------------------------------------
// Shelling

namespace {

std::vector<Face> relative_facets(const SimplicialComplex& big, const SimplicialComplex& small) {
  if (!big.contains_complex(small))
    throw Error(ErrorCode::NotASubcomplex, "subcomplex has a face outside the complex");
  std::vector<Face> out;
  for (const Face& f : big.facets())
    if (!small.contains(f)) out.push_back(f);
  return out;
}

// Unique minimal element of <facet> minus (<previous> u small), if any.
std::optional<Face> step_minimum(const Face& facet, std::span<const Face> previous,
                                 const SimplicialComplex& small) {
  const std::size_t k = facet.size();
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<char> fresh(n, 0);
  for (std::uint64_t m = 0; m < n; ++m) {
    const Face f = facet.subset_by_mask(m);
    const bool old = small.contains(f) ||
                     std::any_of(previous.begin(), previous.end(),
                                 [&](const Face& g) { return f.is_subset_of(g); });
    fresh[m] = !old;
  }
  std::optional<std::uint64_t> minimum;
  for (std::uint64_t m = 0; m < n; ++m) {
    if (!fresh[m]) continue;
    bool minimal = true;
    for (std::uint64_t bits = m; bits && minimal; bits &= bits - 1)
      if (fresh[m & ~(bits & -bits)]) minimal = false;
    if (!minimal) continue;
    if (minimum) return std::nullopt;
    minimum = m;
  }
  if (!minimum) return std::nullopt;
  return facet.subset_by_mask(*minimum);
}

std::vector<Face> validated_order(const SimplicialComplex& big, const SimplicialComplex& small,
                                  const ShellingOrder& order) {
  std::vector<Face> expected = relative_facets(big, small);
  std::vector<Face> given = order;
  std::sort(given.begin(), given.end());
  if (given != expected)
    throw Error(ErrorCode::NotAPermutation,
                "order is not a permutation of the maximal faces of the relative complex");
  return expected;
}

}  // namespace

bool check_shelling_order(const SimplicialComplex& big, const SimplicialComplex& small,
                          const ShellingOrder& order) {
  validated_order(big, small, order);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (!step_minimum(order[i], std::span(order).first(i), small)) return false;
  return true;
}

IntervalPartition shelling_partition(const SimplicialComplex& big, const SimplicialComplex& small,
                                     const ShellingOrder& order) {
  validated_order(big, small, order);
  IntervalPartition p;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto bottom = step_minimum(order[i], std::span(order).first(i), small);
    if (!bottom) throw Error(ErrorCode::InvalidParameters, "not a shelling order");
    p.intervals.push_back({*bottom, order[i]});
  }
  return p.canonical();
}

std::optional<ShellingOrder> find_shelling(const SimplicialComplex& big,
                                           const SimplicialComplex& small,
                                           const SearchLimits& limits) {
  const std::vector<Face> facets = relative_facets(big, small);
  if (facets.size() > limits.max_facets || facets.size() > 63)
    throw Error(ErrorCode::SizeLimitExceeded,
                "relative complex has " + std::to_string(facets.size()) +
                    " facets; the bound is " + std::to_string(std::min<std::size_t>(limits.max_facets, 63)));

  // Whether a step succeeds depends only on the set of earlier facets, so
  // dead prefixes are remembered by their bit mask.
  std::unordered_set<std::uint64_t> dead;
  ShellingOrder order;
  auto descend = [&](auto& self, std::uint64_t used) -> bool {
    if (order.size() == facets.size()) return true;
    if (dead.contains(used)) return false;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if ((used >> i) & 1U) continue;
      if (!step_minimum(facets[i], order, small)) continue;
      order.push_back(facets[i]);
      if (self(self, used | (std::uint64_t{1} << i))) return true;
      order.pop_back();
    }
    dead.insert(used);
    return false;
  };
  if (!descend(descend, 0)) return std::nullopt;
  return order;
}

}  // namespace pext
