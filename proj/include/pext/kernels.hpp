#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version and an
// OpenMP version; both return identical results for identical inputs.

#include <optional>
#include <span>
#include <vector>

#include "pext/complex.hpp"
#include "pext/homology.hpp"
#include "pext/partitioning.hpp"

namespace pext::kernels {

/// Member indices covered by one interval, or the first problem found in it.
struct IntervalScan {
  std::vector<std::size_t> members;   // indices into fam.members()
  bool bottom_outside_top = false;
  std::optional<Face> non_member;     // first (shortlex) set in [bottom, top] outside fam
};

std::vector<IntervalScan> scan_intervals_serial(const FaceFamily& fam,
                                                std::span<const Interval> intervals);
std::vector<IntervalScan> scan_intervals_parallel(const FaceFamily& fam,
                                                  std::span<const Interval> intervals);

std::vector<HomologyProfile> link_homology_serial(const SimplicialComplex& big,
                                                  const SimplicialComplex& small,
                                                  FieldSpec field);
std::vector<HomologyProfile> link_homology_parallel(const SimplicialComplex& big,
                                                    const SimplicialComplex& small,
                                                    FieldSpec field);

/// Threads the OpenMP kernels will use (1 when built without OpenMP).
int max_threads();

}  // namespace pext::kernels
