#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pext/complex.hpp"

namespace pext {

/// Boolean interval [bottom, top].
struct Interval {
  Face bottom;
  Face top;

  std::size_t height() const noexcept { return top.size() - bottom.size(); }
  std::string str() const { return "[" + bottom.str() + "," + top.str() + "]"; }

  friend bool operator==(const Interval&, const Interval&) = default;
  /// Canonical order: by top, then by bottom.
  friend auto operator<=>(const Interval& a, const Interval& b) noexcept {
    if (auto c = a.top <=> b.top; c != 0) return c;
    return a.bottom <=> b.bottom;
  }
};

struct IntervalPartition {
  std::vector<Interval> intervals;

  std::size_t size() const noexcept { return intervals.size(); }
  /// Copy sorted into canonical order.
  IntervalPartition canonical() const;

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;
};

/// Interval counts keyed by (top size, bottom size).
using IntervalStats = std::map<std::pair<std::size_t, std::size_t>, std::int64_t>;

struct PartitionReport {
  bool valid = false;
  std::optional<std::string> violation;
  IntervalStats interval_stats;
};

/**
 * Checks that `p` partitions `fam` into Boolean intervals: every set between
 * bottom and top is a member, the intervals are pairwise disjoint, they cover
 * the family, and every top is a maximal member of the family.
 *
 * The first violation in canonical interval order is reported.
 */
PartitionReport verify_partitioning(const FaceFamily& fam, const IntervalPartition& p);

/// Entry i counts intervals whose bottom has i vertices. Throws InvalidPartitioning.
CountVector h_from_partitioning(const FaceFamily& fam, const IntervalPartition& p);

bool is_layer_compatible(const FaceFamily& fam, const IntervalPartition& p);
bool is_h_compatible(const FaceFamily& fam, const IntervalPartition& p);

struct SearchLimits {
  std::size_t max_members = 40;
  std::size_t max_facets = 12;
};

/**
 * Exact-cover backtracking: each maximal member F (largest first, then
 * shortlex) picks a bottom, tried in shortlex order. Returns the first
 * partitioning found in canonical order, or nullopt when none exists.
 */
std::optional<IntervalPartition> find_partitioning(const FaceFamily& fam,
                                                   const SearchLimits& limits = {});

/// Facet order of a relative complex; `small` may be void.
using ShellingOrder = std::vector<Face>;

bool check_shelling_order(const SimplicialComplex& big, const SimplicialComplex& small,
                          const ShellingOrder& order);

/// Intervals [R_i, F_i] read off a valid shelling order. Throws InvalidParameters
/// when the order is not a shelling.
IntervalPartition shelling_partition(const SimplicialComplex& big, const SimplicialComplex& small,
                                     const ShellingOrder& order);

std::optional<ShellingOrder> find_shelling(const SimplicialComplex& big,
                                           const SimplicialComplex& small,
                                           const SearchLimits& limits = {});

}  // namespace pext
