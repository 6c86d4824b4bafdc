#include "pext/face.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

#include "pext/error.hpp"

namespace pext {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFace: return "InvalidFace";
    case ErrorCode::FaceNotPresent: return "FaceNotPresent";
    case ErrorCode::NotASubcomplex: return "NotASubcomplex";
    case ErrorCode::AlreadyPresent: return "AlreadyPresent";
    case ErrorCode::InconsistentIdentification: return "InconsistentIdentification";
    case ErrorCode::InvalidPartitioning: return "InvalidPartitioning";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::VoidComplex: return "VoidComplex";
    case ErrorCode::InvalidResult: return "InvalidResult";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::InternalDiagnostic: return "InternalDiagnostic";
  }
  return "Unknown";
}

Face::Face(std::initializer_list<Vertex> labels) : Face(std::vector<Vertex>(labels)) {}

Face::Face(std::vector<Vertex> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
    throw Error(ErrorCode::InvalidFace, "duplicate vertex label");
  refresh_mask();
}

Face Face::from_sorted(std::vector<Vertex> labels) {
  Face f;
  f.labels_ = std::move(labels);
  f.refresh_mask();
  return f;
}

void Face::refresh_mask() noexcept {
  mask_ = 0;
  small_ = labels_.empty() || labels_.back() < 64;
  if (small_)
    for (Vertex v : labels_) mask_ |= std::uint64_t{1} << v;
}

bool Face::contains(Vertex v) const noexcept {
  if (small_) return v < 64 && ((mask_ >> v) & 1U);
  return std::binary_search(labels_.begin(), labels_.end(), v);
}

bool Face::is_subset_of(const Face& other) const noexcept {
  if (labels_.size() > other.labels_.size()) return false;
  if (small_ && other.small_) return (mask_ & ~other.mask_) == 0;
  return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(), labels_.end());
}

bool Face::intersects(const Face& other) const noexcept {
  if (small_ && other.small_) return (mask_ & other.mask_) != 0;
  auto a = labels_.begin();
  auto b = other.labels_.begin();
  while (a != labels_.end() && b != other.labels_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

Face Face::unite(const Face& other) const {
  std::vector<Vertex> out;
  out.reserve(labels_.size() + other.labels_.size());
  std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                 std::back_inserter(out));
  return from_sorted(std::move(out));
}

Face Face::minus(const Face& other) const {
  std::vector<Vertex> out;
  std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                      std::back_inserter(out));
  return from_sorted(std::move(out));
}

Face Face::intersect(const Face& other) const {
  std::vector<Vertex> out;
  std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

Face Face::without(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(labels_.size());
  for (Vertex w : labels_)
    if (w != v) out.push_back(w);
  return from_sorted(std::move(out));
}

Face Face::subset_by_mask(std::uint64_t mask) const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(labels_[i]);
  return from_sorted(std::move(out));
}

std::vector<Face> Face::subsets() const {
  const std::uint64_t n = std::uint64_t{1} << labels_.size();
  std::vector<Face> out;
  out.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) out.push_back(subset_by_mask(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Face::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(labels_[i]);
  }
  return s + "}";
}

std::strong_ordering operator<=>(const Face& a, const Face& b) noexcept {
  if (auto c = a.labels_.size() <=> b.labels_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.labels_.begin(), a.labels_.end(),
                                                b.labels_.begin(), b.labels_.end());
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ f.size();
  for (Vertex v : f.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace pext
