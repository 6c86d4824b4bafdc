#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pext {

using Vertex = std::uint32_t;

/**
 * A face: a finite set of vertex labels stored as a strictly increasing
 * sequence. The empty face is allowed and has dimension -1.
 *
 * When every label is below 64 the face also carries a bit mask, and subset
 * tests between two such faces reduce to a single AND.
 *
 * Faces are totally ordered shortlex: by cardinality first, then
 * lexicographically on the sorted labels. Every "lexicographic" tie-break in
 * this library refers to this order.
 */
class Face {
 public:
  Face() = default;
  Face(std::initializer_list<Vertex> labels);

  /// Sorts the labels; throws InvalidFace on duplicates.
  explicit Face(std::vector<Vertex> labels);

  /// Caller guarantees the labels are strictly increasing.
  static Face from_sorted(std::vector<Vertex> labels);

  std::span<const Vertex> vertices() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  int dim() const noexcept { return static_cast<int>(labels_.size()) - 1; }
  bool empty() const noexcept { return labels_.empty(); }
  Vertex operator[](std::size_t i) const noexcept { return labels_[i]; }
  Vertex max_vertex() const noexcept { return labels_.empty() ? 0 : labels_.back(); }

  bool contains(Vertex v) const noexcept;
  bool is_subset_of(const Face& other) const noexcept;
  bool intersects(const Face& other) const noexcept;

  Face unite(const Face& other) const;
  Face minus(const Face& other) const;
  Face intersect(const Face& other) const;
  Face without(Vertex v) const;

  /// Sub-face selected by the bits of `mask` (bit i keeps vertices()[i]).
  Face subset_by_mask(std::uint64_t mask) const;

  /// All subsets, shortlex ordered.
  std::vector<Face> subsets() const;

  /// "{1,2,5}" style rendering; the empty face renders as "{}".
  std::string str() const;

  friend bool operator==(const Face& a, const Face& b) noexcept { return a.labels_ == b.labels_; }
  friend std::strong_ordering operator<=>(const Face& a, const Face& b) noexcept;

 private:
  void refresh_mask() noexcept;

  std::vector<Vertex> labels_;
  std::uint64_t mask_ = 0;
  bool small_ = true;  // every label < 64, mask_ is exact
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

}  // namespace pext

template <>
struct std::hash<pext::Face> {
  std::size_t operator()(const pext::Face& f) const noexcept { return pext::FaceHash{}(f); }
};
