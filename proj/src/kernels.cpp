#include "pext/kernels.hpp"

#ifdef PEXT_HAVE_OPENMP
#include <omp.h>
#endif

namespace pext::kernels {
namespace {

IntervalScan scan_one(const FaceFamily& fam, const Interval& iv) {
  IntervalScan scan;
  if (!iv.bottom.is_subset_of(iv.top)) {
    scan.bottom_outside_top = true;
    return scan;
  }
  const Face free = iv.top.minus(iv.bottom);
  const std::uint64_t n = std::uint64_t{1} << free.size();
  scan.members.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) {
    Face f = iv.bottom.unite(free.subset_by_mask(m));
    const std::ptrdiff_t idx = fam.index_of(f);
    if (idx >= 0) {
      scan.members.push_back(static_cast<std::size_t>(idx));
    } else if (!scan.non_member || f < *scan.non_member) {
      scan.non_member = std::move(f);
    }
  }
  return scan;
}

HomologyProfile link_pair_homology(const SimplicialComplex& big, const SimplicialComplex& small,
                                   const Face& s, FieldSpec field) {
  return relative_betti(link_or_void(big, s), link_or_void(small, s), field);
}

}  // namespace

std::vector<IntervalScan> scan_intervals_serial(const FaceFamily& fam,
                                                std::span<const Interval> intervals) {
  std::vector<IntervalScan> out;
  out.reserve(intervals.size());
  for (const Interval& iv : intervals) out.push_back(scan_one(fam, iv));
  return out;
}

std::vector<IntervalScan> scan_intervals_parallel(const FaceFamily& fam,
                                                  std::span<const Interval> intervals) {
  std::vector<IntervalScan> out(intervals.size());
  const auto n = static_cast<std::ptrdiff_t>(intervals.size());
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = scan_one(fam, intervals[i]);
  return out;
}

std::vector<HomologyProfile> link_homology_serial(const SimplicialComplex& big,
                                                  const SimplicialComplex& small,
                                                  FieldSpec field) {
  std::vector<HomologyProfile> out;
  out.reserve(big.num_faces());
  for (const Face& s : big.faces()) out.push_back(link_pair_homology(big, small, s, field));
  return out;
}

std::vector<HomologyProfile> link_homology_parallel(const SimplicialComplex& big,
                                                    const SimplicialComplex& small,
                                                    FieldSpec field) {
  const auto faces = big.faces();
  std::vector<HomologyProfile> out(faces.size());
  const auto n = static_cast<std::ptrdiff_t>(faces.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = link_pair_homology(big, small, faces[i], field);
  return out;
}

int max_threads() {
#ifdef PEXT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pext::kernels
