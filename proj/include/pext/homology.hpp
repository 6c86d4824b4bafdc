#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pext/complex.hpp"

namespace pext {

/// Coefficient field: characteristic 0 means the rationals, otherwise a prime p.
struct FieldSpec {
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  /// Throws InvalidField unless p is 0 or prime.
  static FieldSpec of(std::uint32_t p);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Sparse integer matrix stored by columns; entries are (row, value).
struct BoundaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;
};

/**
 * Augmented chain complex of a pair (big, small): in degree i the basis is the
 * i-dimensional faces of big that are not faces of small, and the empty face
 * spans degree -1 whenever small is void. Boundary signs follow the sorted
 * vertex order: removing the vertex at position k contributes (-1)^k.
 */
struct ChainComplexData {
  int top_degree = -1;
  std::vector<std::vector<Face>> basis;      // basis[i + 1] spans degree i
  std::vector<BoundaryMatrix> boundary;      // boundary[i + 1]: degree i -> degree i - 1

  const std::vector<Face>& basis_at(int degree) const { return basis.at(static_cast<std::size_t>(degree + 1)); }
  const BoundaryMatrix& boundary_at(int degree) const { return boundary.at(static_cast<std::size_t>(degree + 1)); }
};

/// Reduced Betti numbers, degrees -1 .. top_degree.
struct HomologyProfile {
  FieldSpec field;
  int top_degree = -1;
  std::vector<std::int64_t> betti;  // betti[i + 1] is degree i

  std::int64_t at(int degree) const;
  bool is_zero() const;
  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

ChainComplexData chain_complex(const SimplicialComplex& big, const SimplicialComplex& small);

/// Integer product check of consecutive boundary maps.
bool boundary_squares_to_zero(const ChainComplexData& cc);

/// Rank over the field: fraction-free (Bareiss) elimination for the rationals,
/// modular elimination for a prime.
std::size_t matrix_rank(const BoundaryMatrix& m, FieldSpec field);

HomologyProfile homology_of(const ChainComplexData& cc, FieldSpec field);
HomologyProfile reduced_betti(const SimplicialComplex& c, FieldSpec field = {});
/// `small` may be void, in which case this is reduced_betti(big).
HomologyProfile relative_betti(const SimplicialComplex& big, const SimplicialComplex& small,
                               FieldSpec field = {});

/// Homology of (lk_big(s), lk_small(s)) for every face s of big, in face order.
/// lk_small(s) is void when s is not a face of small.
std::vector<HomologyProfile> link_homology(const SimplicialComplex& big,
                                           const SimplicialComplex& small, FieldSpec field = {});

/// A face and a degree where some link homology is nonzero but must vanish.
struct LinkObstruction {
  Face face;
  int degree = 0;
  std::int64_t betti = 0;
};

bool is_cohen_macaulay(const SimplicialComplex& c, FieldSpec field = {});
std::optional<LinkObstruction> cohen_macaulay_violation(const SimplicialComplex& c,
                                                        FieldSpec field = {});

bool is_relative_cm(const SimplicialComplex& big, const SimplicialComplex& small,
                    FieldSpec field = {});
std::optional<LinkObstruction> relative_cm_violation(const SimplicialComplex& big,
                                                     const SimplicialComplex& small,
                                                     FieldSpec field = {});

struct DepthReport {
  int depth = 0;
  /// 1 + the largest r whose r-skeleton is Cohen-Macaulay.
  int skeleton_depth = 0;
  /// Face and degree attaining the link-homology bound, when depth < dim + 1.
  std::optional<LinkObstruction> witness;
};

/**
 * Depth of the face ring via link homology: the smallest |s| + i + 1 over faces
 * s and degrees 0 <= i < dim with nonzero reduced homology of lk(s), capped at
 * dim + 1. The skeleton characterization is evaluated independently; a
 * disagreement throws InternalDiagnostic.
 */
DepthReport depth_report(const SimplicialComplex& c, FieldSpec field = {});
int depth(const SimplicialComplex& c, FieldSpec field = {});

struct CmExtender {
  SimplicialComplex extender;   // the dim-skeleton of the simplex on the vertex set
  SimplicialComplex base;
  bool extender_is_cm = false;
  bool relative_is_cm = false;
};

struct CmObstruction {
  int depth = 0;
  LinkObstruction witness;
};

std::variant<CmExtender, CmObstruction> cm_extender(const SimplicialComplex& c,
                                                    FieldSpec field = {});

}  // namespace pext
