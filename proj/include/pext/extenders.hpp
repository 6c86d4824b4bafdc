#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "pext/complex.hpp"
#include "pext/partitioning.hpp"

namespace pext {

/**
 * A pure d-complex with a marked facet F and a marked face sigma inside F.
 *
 * `with_sigma` partitions the family (complex, <F>) + {sigma}; when present,
 * `without_sigma` partitions the relative complex (complex, <F>).
 */
struct MarkedComplex {
  SimplicialComplex complex;
  Face specified_facet;
  Face specified_face;
  IntervalPartition with_sigma;
  std::optional<IntervalPartition> without_sigma;

  int dim() const noexcept { return complex.dim(); }
};

/// One gadget glued onto a face of the base complex.
struct Attachment {
  Face face;            // base face sigma
  Face facet;           // base facet the gadget's marked facet was identified with
  int gadget_dim = 0;   // d of the (d, k) gadget
  std::vector<Vertex> fresh_vertices;
  std::size_t with_sigma_intervals = 0;
  std::size_t without_sigma_intervals = 0;
  /// Per bottom size: intervals in the with-sigma piece minus the without-sigma piece.
  CountVector h_contribution;
};

struct ExtenderResult {
  SimplicialComplex extender;   // Gamma
  SimplicialComplex base;       // Delta
  IntervalPartition gamma_partition;
  IntervalPartition relative_partition;
  std::vector<Attachment> attachment_log;

  FaceFamily relative() const { return relative_family(extender, base); }
};

/// Two d-simplices meeting in sigma plus the W-facets, with the canonical
/// partition of (K, <D2>) + {sigma}. Requires -1 <= k <= d.
MarkedComplex prepartition_extender(int d, int k);

/// Interval count by bottom size of the canonical with-sigma partition. Requires 0 <= k <= d.
CountVector prepartition_h_profile(int d, int k);

/// Closed form: d-k for 1 <= l <= k, d-k+1 for l = k+1, zero above. Entry 0 is
/// left at zero (the canonical partition has no interval with empty bottom).
CountVector prepartition_h_closed_form(int d, int k);

/**
 * Recursive (d, k)-partition extender. Both certificates are verified before
 * return. Results are memoized; the function is safe to call concurrently.
 */
MarkedComplex partition_extender(int d, int k);

/// Facet count of partition_extender(d, k), computed without building it.
double partition_extender_facet_count(int d, int k);

/// Largest gadget partition_extender will build, in facets.
inline constexpr double kMaxGadgetFacets = 250000.0;

/// Facet count the pure or nonpure extender of `base` would have.
double extender_facet_count(const SimplicialComplex& base, bool nonpure);

/// Partition extender of a pure nonvoid complex: one (d, dim s) gadget per face s.
ExtenderResult extender_for_complex(const SimplicialComplex& base);

/// Nonpure version: one (d_base(s), dim s) gadget per face s. The certificates
/// are checked to be layer- and h-compatible.
ExtenderResult nonpure_extender_for_complex(const SimplicialComplex& base);

/// Verifies both certificates of a result; throws InvalidResult on failure.
void verify_extender(const ExtenderResult& res);

struct HDecomposition {
  CountVector gamma;      // h(Gamma)
  CountVector relative;   // h(Gamma, Delta)
  CountVector difference;
};

/**
 * h(Gamma), h(Gamma, Delta) and their difference. The difference is checked
 * against h(Delta) and against the binomial sum over f(Delta); for pure
 * results the certificate interval counts are checked against both h-vectors.
 */
HDecomposition h_decomposition(const ExtenderResult& res);

using BigCount = boost::multiprecision::cpp_int;

struct SizeEstimate {
  BigCount exact_recurrence;
  BigCount upper_bound;
};

/// g(k) for a (d, d-k) gadget and the bound 2^(2^k - 1 + d). Requires 0 <= k <= d.
SizeEstimate size_estimate(int d, int k);

/// Sum over faces of f_k * g(d - k), and the same sum over the upper bounds.
SizeEstimate total_size_estimate(const SimplicialComplex& c);

}  // namespace pext
