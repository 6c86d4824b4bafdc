#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pext/error.hpp"
#include "pext/kernels.hpp"
#include "pext/partitioning.hpp"

using namespace pext;

namespace {

SimplicialComplex cx(std::vector<Face> facets) { return SimplicialComplex::from_facets(std::move(facets)); }

IntervalPartition ip(std::vector<Interval> ivs) { return IntervalPartition{std::move(ivs)}; }

const SimplicialComplex kBowtie = cx({{1, 2, 3}, {3, 4, 5}});
const SimplicialComplex kTriangleBoundary = cx({{1, 2}, {1, 3}, {2, 3}});
const SimplicialComplex kK4TwoEdges = cx({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {7, 8}});

// (3,1) extender of the worked example, as printed.
const SimplicialComplex kExample = cx({{1, 2, 5, 6}, {3, 4, 5, 6}, {1, 2, 3, 6}, {1, 2, 3, 5}, {2, 3, 4, 6},
                                       {2, 3, 4, 5}, {1, 5, 6, 7}, {2, 5, 6, 7}, {1, 2, 6, 7}, {1, 2, 5, 7},
                                       {2, 5, 6, 8}, {1, 5, 6, 8}, {1, 2, 6, 8}, {1, 2, 5, 8}});
const IntervalPartition kExampleTable = ip({{{1, 2, 5, 6}, {1, 2, 5, 6}}, {{1}, {1, 2, 3, 6}}, {{2}, {2, 3, 4, 6}},
                                            {{1, 5}, {1, 2, 3, 5}}, {{2, 5}, {2, 3, 4, 5}}, {{1, 5, 6}, {1, 5, 6, 7}},
                                            {{7}, {2, 5, 6, 7}}, {{1, 7}, {1, 2, 6, 7}}, {{1, 5, 7}, {1, 2, 5, 7}},
                                            {{2, 5, 6}, {2, 5, 6, 8}}, {{8}, {1, 5, 6, 8}}, {{2, 8}, {1, 2, 6, 8}},
                                            {{2, 5, 8}, {1, 2, 5, 8}}});

}  // namespace

TEST_CASE("verify_partitioning on the small worked families") {
  const auto ex = cx({{1, 2}, {2, 3}, {3, 4}, {2, 4}});
  const FaceFamily without = relative_family(ex, cx({{1, 2}}));
  const FaceFamily with = adjoin_face(without, Face{2});

  CHECK(verify_partitioning(with, ip({{{2}, {2, 3}}, {{3}, {3, 4}}, {{4}, {2, 4}}})).valid);
  const PartitionReport bad = verify_partitioning(with, ip({{{2, 3}, {2, 3}}, {{3}, {3, 4}}, {{4}, {2, 4}}}));
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.violation);
  CHECK(bad.violation->find("{2}") != std::string::npos);
  CHECK(verify_partitioning(without, ip({{{2, 3}, {2, 3}}, {{3}, {3, 4}}, {{4}, {2, 4}}})).valid);

  const FaceFamily tri = FaceFamily::of(kTriangleBoundary);
  CHECK_FALSE(verify_partitioning(tri, ip({{{}, {1, 2}}})).valid);
  CHECK(verify_partitioning(tri, ip({{{}, {1, 2}}, {{3}, {1, 3}}, {{2, 3}, {2, 3}}})).valid);
}

TEST_CASE("verify_partitioning reports each kind of violation") {
  const FaceFamily tri = FaceFamily::of(kTriangleBoundary);
  auto violation = [&](IntervalPartition p) { return verify_partitioning(tri, p).violation.value_or(""); };
  CHECK(violation(ip({{{1, 2}, {1}}})).find("not contained") != std::string::npos);
  CHECK(violation(ip({{{}, {1, 2, 3}}})).find("non-member") != std::string::npos);
  CHECK(violation(ip({{{}, {1}}})).find("maximal") != std::string::npos);
  CHECK(violation(ip({{{}, {1, 2}}, {{1}, {1, 3}}, {{2, 3}, {2, 3}}})).find("twice") != std::string::npos);
}

TEST_CASE("the worked (3,1) without-sigma table is a partitioning") {
  const FaceFamily fam = relative_family(kExample, cx({{3, 4, 5, 6}}));
  const PartitionReport rep = verify_partitioning(fam, kExampleTable);
  CHECK(rep.valid);
  CHECK(rep.interval_stats.at({4, 1}) == 4);
}

TEST_CASE("h_from_partitioning") {
  const auto k = cx({{1, 2, 5, 6}, {3, 4, 5, 6}, {1, 2, 3, 6}, {1, 2, 3, 5}, {2, 3, 4, 6}, {2, 3, 4, 5}});
  const FaceFamily fam = adjoin_face(relative_family(k, cx({{3, 4, 5, 6}})), Face{5, 6});
  const IntervalPartition eq = ip({{{5, 6}, {1, 2, 5, 6}}, {{1}, {1, 2, 3, 6}}, {{2}, {2, 3, 4, 6}},
                                   {{1, 5}, {1, 2, 3, 5}}, {{2, 5}, {2, 3, 4, 5}}});
  CHECK(h_from_partitioning(fam, eq) == CountVector{{0, 2, 3, 0, 0}});

  const FaceFamily tri = FaceFamily::of(kTriangleBoundary);
  CHECK(h_from_partitioning(tri, ip({{{}, {1, 2}}, {{3}, {1, 3}}, {{2, 3}, {2, 3}}})) == CountVector{{1, 1, 1}});
  CHECK(h_from_partitioning(FaceFamily({}, 1), {}) == CountVector{{0, 0, 0}});
  CHECK_THROWS_AS(h_from_partitioning(tri, ip({{{}, {1, 2}}})), Error);
}

TEST_CASE("layer and h compatibility for a nonpure complex") {
  const FaceFamily fam = FaceFamily::of(cx({{1, 2}, {1, 3}, {2, 3}, {4}}));
  const IntervalPartition split = ip({{{}, {4}}, {{1}, {1, 2}}, {{3}, {1, 3}}, {{2}, {2, 3}}});
  REQUIRE(verify_partitioning(fam, split).valid);
  CHECK_FALSE(is_layer_compatible(fam, split));
  CHECK_FALSE(is_h_compatible(fam, split));

  const IntervalPartition layered = ip({{{}, {1, 2}}, {{3}, {1, 3}}, {{2, 3}, {2, 3}}, {{4}, {4}}});
  REQUIRE(verify_partitioning(fam, layered).valid);
  CHECK(is_layer_compatible(fam, layered));
  CHECK(is_h_compatible(fam, layered));

  const FaceFamily tri = FaceFamily::of(kTriangleBoundary);
  const IntervalPartition p = ip({{{}, {1, 2}}, {{3}, {1, 3}}, {{2, 3}, {2, 3}}});
  CHECK(is_layer_compatible(tri, p));
  CHECK(is_h_compatible(tri, p));
}

TEST_CASE("find_partitioning on the standard examples") {
  CHECK_FALSE(find_partitioning(FaceFamily::of(kBowtie)));
  CHECK_FALSE(find_partitioning(FaceFamily::of(kK4TwoEdges)));
  const auto found = find_partitioning(FaceFamily::of(kTriangleBoundary));
  REQUIRE(found);
  CHECK(*found == ip({{{}, {1, 2}}, {{3}, {1, 3}}, {{2, 3}, {2, 3}}}).canonical());
  CHECK_THROWS_AS(find_partitioning(FaceFamily::of(kK4TwoEdges), SearchLimits{5, 12}), Error);
}

TEST_CASE("find_partitioning agrees with the bottom-driven oracle") {
  std::mt19937 rng(77);
  int partitionable = 0, not_partitionable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const SimplicialComplex c = trial % 2 ? oracle::random_pure(rng, 1 + (trial / 2) % 2, 4, 15)
                                          : oracle::random_nonpure(rng, 2, 15);
    const FaceFamily fam = FaceFamily::of(c);
    const auto found = find_partitioning(fam);
    const auto naive = oracle::find_partition_naive(oracle::faces_of(c));
    CHECK(found.has_value() == naive.has_value());
    if (found) {
      ++partitionable;
      CHECK(verify_partitioning(fam, *found).valid);
      if (c.is_pure()) CHECK(h_from_partitioning(fam, *found) == h_vector(c));
    } else {
      ++not_partitionable;
    }
  }
  CHECK(partitionable > 10);
  CHECK(not_partitionable > 10);
}

TEST_CASE("relative partition search") {
  const auto lid = cx({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  const FaceFamily rel = relative_family(lid, kBowtie);
  const auto found = find_partitioning(rel);
  REQUIRE(found);
  CHECK(*found == ip({{{2, 4}, {2, 3, 4}}}));
}

TEST_CASE("shelling orders") {
  CHECK(check_shelling_order(kTriangleBoundary, {}, {{1, 2}, {1, 3}, {2, 3}}));
  CHECK_FALSE(check_shelling_order(kBowtie, {}, {{1, 2, 3}, {3, 4, 5}}));
  CHECK(check_shelling_order(cx({{1, 2}, {2, 3}}), cx({{1, 2}}), {{2, 3}}));
  CHECK_THROWS_AS(check_shelling_order(kTriangleBoundary, {}, {{1, 2}, {1, 3}}), Error);
  CHECK_THROWS_AS(check_shelling_order(kTriangleBoundary, {}, {{1, 2}, {1, 3}, {1, 3}}), Error);

  CHECK(find_shelling(kTriangleBoundary, {}));
  CHECK_FALSE(find_shelling(kBowtie, {}));
  const auto single = find_shelling(cx({{1, 2, 3}}), {});
  REQUIRE(single);
  CHECK(*single == ShellingOrder{{1, 2, 3}});

  const IntervalPartition p = shelling_partition(kTriangleBoundary, {}, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(verify_partitioning(FaceFamily::of(kTriangleBoundary), p).valid);
}

TEST_CASE("shelling search agrees with the permutation oracle") {
  std::mt19937 rng(4242);
  int shellable = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const SimplicialComplex big = oracle::random_pure(rng, 1 + trial % 2, 5, 40);
    SimplicialComplex small;
    if (trial % 3 == 0) small = SimplicialComplex::simplex(big.facets().front());
    const auto order = find_shelling(big, small);
    CHECK(order.has_value() == oracle::shellable_naive(oracle::facets_of(big), oracle::faces_of(small)));
    if (!order) continue;
    ++shellable;
    std::vector<oracle::Labels> as_labels;
    for (const Face& f : *order) as_labels.push_back(oracle::labels(f));
    CHECK(oracle::is_shelling_naive(as_labels, oracle::faces_of(small), oracle::facets_of(big)));
    const FaceFamily fam = relative_family(big, small);
    const IntervalPartition p = shelling_partition(big, small, *order);
    CHECK(verify_partitioning(fam, p).valid);
  }
  CHECK(shellable > 10);
}

TEST_CASE("serial and parallel interval scans agree") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const SimplicialComplex c = oracle::random_pure(rng, 2, 8, 200);
    const FaceFamily fam = FaceFamily::of(c);
    std::vector<Interval> ivs;
    for (const Face& f : c.faces())
      for (const Face& g : c.facets()) ivs.push_back({f, g});
    const auto serial = kernels::scan_intervals_serial(fam, ivs);
    const auto parallel = kernels::scan_intervals_parallel(fam, ivs);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].members == parallel[i].members);
      CHECK(serial[i].bottom_outside_top == parallel[i].bottom_outside_top);
      CHECK(serial[i].non_member == parallel[i].non_member);
    }
  }
}

TEST_CASE("interval stats weighted by interval size count the members") {
  std::mt19937 rng(21);
  int valid = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SimplicialComplex c = trial % 2 ? oracle::random_pure(rng, 1 + trial % 3, 4, 40)
                                          : oracle::random_nonpure(rng, 2, 30);
    const FaceFamily fam = FaceFamily::of(c);
    const auto p = find_partitioning(fam);
    if (!p) continue;
    const PartitionReport rep = verify_partitioning(fam, *p);
    REQUIRE(rep.valid);
    std::int64_t weighted = 0, intervals = 0;
    for (const auto& [key, count] : rep.interval_stats) {
      weighted += count << (key.first - key.second);
      intervals += count;
    }
    CHECK(weighted == static_cast<std::int64_t>(fam.size()));
    CHECK(intervals == static_cast<std::int64_t>(p->size()));
    ++valid;
  }
  CHECK(valid > 10);
}
