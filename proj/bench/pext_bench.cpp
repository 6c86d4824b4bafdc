// Serial versus OpenMP timings for the two parallel kernels.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "pext/extenders.hpp"
#include "pext/kernels.hpp"

using namespace pext;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-36s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 1;
  std::printf("threads: %d, best of %d runs\n", kernels::max_threads(), reps);

  const SimplicialComplex bowtie = SimplicialComplex::from_facets({{1, 2, 3}, {3, 4, 5}});
  const ExtenderResult bow_ext = extender_for_complex(bowtie);
  const SimplicialComplex tetra_pair = SimplicialComplex::from_facets({{1, 2, 3, 4}, {4, 5, 6, 7}});
  const ExtenderResult tetra_ext = extender_for_complex(tetra_pair);

  for (const auto& [name, res] : {std::pair{"bow-tie extender", &bow_ext}, std::pair{"two tetrahedra extender", &tetra_ext}}) {
    std::printf("%s: %zu faces, %zu facets\n", name, res->extender.num_faces(), res->extender.facets().size());

    const FaceFamily fam = FaceFamily::of(res->extender);
    const auto& ivs = res->gamma_partition.intervals;
    std::vector<kernels::IntervalScan> s, p;
    const double ts = best_of(reps, [&] { s = kernels::scan_intervals_serial(fam, ivs); });
    const double tp = best_of(reps, [&] { p = kernels::scan_intervals_parallel(fam, ivs); });
    bool agree = s.size() == p.size();
    for (std::size_t i = 0; agree && i < s.size(); ++i) agree = s[i].members == p[i].members;
    report("  interval scan", ts, tp, agree);

    std::vector<HomologyProfile> hs, hp;
    const double ls = best_of(reps, [&] { hs = kernels::link_homology_serial(res->extender, res->base, {}); });
    const double lp = best_of(reps, [&] { hp = kernels::link_homology_parallel(res->extender, res->base, {}); });
    report("  relative link homology over Q", ls, lp, hs == hp);
  }
  return 0;
}
