#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pext/face.hpp"

namespace pext {

/**
 * A finite simplicial complex given by its facets.
 *
 * The void complex (no faces at all) and the irrelevant complex (only the
 * empty face) are distinct values. Every other complex contains the empty
 * face. The full face list is materialized at construction in shortlex order
 * and never changes afterwards.
 */
class SimplicialComplex {
 public:
  /// The void complex.
  SimplicialComplex() = default;

  /// Keeps only inclusion-maximal inputs and materializes the downward closure.
  static SimplicialComplex from_facets(std::vector<Face> facets);

  static SimplicialComplex irrelevant() { return from_facets({Face{}}); }
  static SimplicialComplex simplex(const Face& f) { return from_facets({f}); }

  std::span<const Face> facets() const noexcept { return facets_; }
  std::span<const Face> faces() const noexcept { return faces_; }
  std::size_t num_faces() const noexcept { return faces_.size(); }

  bool is_void() const noexcept { return facets_.empty(); }
  /// -1 for both the void and the irrelevant complex.
  int dim() const noexcept { return dim_; }
  bool is_pure() const noexcept;

  bool contains(const Face& f) const noexcept;
  /// Index of `f` in faces(), or -1.
  std::ptrdiff_t index_of(const Face& f) const noexcept;
  /// Every face of `other` is a face of this complex.
  bool contains_complex(const SimplicialComplex& other) const noexcept;

  /// Sorted vertex labels.
  std::vector<Vertex> vertices() const;
  Vertex max_vertex() const noexcept;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) noexcept {
    return a.facets_ == b.facets_;
  }

 private:
  std::vector<Face> facets_;
  std::vector<Face> faces_;
  int dim_ = -1;
};

/**
 * An arbitrary finite set of faces ordered by inclusion, with an explicit
 * ambient dimension. Relative complexes and "relative complex plus one extra
 * face" objects are families that need not be downward closed.
 */
class FaceFamily {
 public:
  FaceFamily() = default;
  FaceFamily(std::vector<Face> members, int ambient_dim);

  static FaceFamily of(const SimplicialComplex& c) {
    return FaceFamily(std::vector<Face>(c.faces().begin(), c.faces().end()), c.dim());
  }

  std::span<const Face> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  int ambient_dim() const noexcept { return ambient_dim_; }

  bool contains(const Face& f) const noexcept;
  std::ptrdiff_t index_of(const Face& f) const noexcept;

  /// Inclusion-maximal members, shortlex ordered.
  std::vector<Face> maximal_members() const;

  friend bool operator==(const FaceFamily&, const FaceFamily&) = default;

 private:
  std::vector<Face> members_;  // shortlex, unique
  int ambient_dim_ = -1;
};

/// f- or h-vector. Entry i holds f_{i-1} (resp. h_i); length is ambient dim + 2.
struct CountVector {
  std::vector<std::int64_t> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::int64_t operator[](std::size_t i) const { return entries.at(i); }
  std::int64_t& operator[](std::size_t i) { return entries.at(i); }

  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend CountVector operator+(const CountVector& a, const CountVector& b);
  friend CountVector operator-(const CountVector& a, const CountVector& b);
};

/// f- or h-triangle: rows i = 0..d+1, row i has entries j = 0..i.
struct CountTriangle {
  std::vector<std::vector<std::int64_t>> rows;

  std::int64_t at(std::size_t i, std::size_t j) const { return rows.at(i).at(j); }
  bool row_is_zero(std::size_t i) const;

  friend bool operator==(const CountTriangle&, const CountTriangle&) = default;
  friend CountTriangle operator-(const CountTriangle& a, const CountTriangle& b);
};

std::int64_t binomial(std::int64_t n, std::int64_t k);

CountVector f_vector(const SimplicialComplex& c);
CountVector f_vector(const FaceFamily& fam);

/// Binomial transform f -> h for ambient dimension d = f.size() - 2.
CountVector h_from_f(const CountVector& f);
/// Inverse transform h -> f.
CountVector f_from_h(const CountVector& h);

CountVector h_vector(const SimplicialComplex& c);
CountVector h_vector(const FaceFamily& fam);

/// Maximum dimension of a face of `c` containing `s`.
int facet_depth(const SimplicialComplex& c, const Face& s);

CountTriangle f_triangle(const SimplicialComplex& c);
/// Facet depth is measured among the members of the family.
CountTriangle f_triangle(const FaceFamily& fam);
CountTriangle h_from_f(const CountTriangle& f);
CountTriangle h_triangle(const SimplicialComplex& c);
CountTriangle h_triangle(const FaceFamily& fam);

SimplicialComplex link(const SimplicialComplex& c, const Face& s);
/// Same as link(), but yields the void complex when `s` is not a face.
SimplicialComplex link_or_void(const SimplicialComplex& c, const Face& s);
SimplicialComplex skeleton(const SimplicialComplex& c, int r);
/// All subsets of `vertices` of size at most r + 1.
SimplicialComplex simplex_skeleton(std::span<const Vertex> vertices, int r);

FaceFamily relative_family(const SimplicialComplex& big, const SimplicialComplex& small);
FaceFamily adjoin_face(const FaceFamily& fam, const Face& s);

/// Injective map from some guest labels to host labels.
using VertexMap = std::map<Vertex, Vertex>;

struct GlueResult {
  SimplicialComplex complex;
  /// Every guest label's image, including the fresh ones.
  VertexMap relabeling;
};

/**
 * Glues `guest` onto `host`. Identified guest vertices map through
 * `identification`; the rest receive fresh labels max(host)+1, max(host)+2, ...
 * in increasing guest-label order. Every guest face made only of identified
 * vertices must land on a host face.
 */
GlueResult glue_with_map(const SimplicialComplex& host, const SimplicialComplex& guest,
                         const VertexMap& identification);
SimplicialComplex glue(const SimplicialComplex& host, const SimplicialComplex& guest,
                       const VertexMap& identification);

Face relabel(const Face& f, const VertexMap& map);

}  // namespace pext
