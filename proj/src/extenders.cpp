#include "pext/extenders.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pext/error.hpp"

namespace pext {
namespace {

std::vector<Vertex> label_range(Vertex first, Vertex last) {
  std::vector<Vertex> out;
  for (Vertex v = first; v <= last && first <= last; ++v) out.push_back(v);
  return out;
}

void require_valid(const FaceFamily& fam, const IntervalPartition& p, const std::string& what) {
  const PartitionReport report = verify_partitioning(fam, p);
  if (!report.valid)
    throw Error(ErrorCode::InvalidResult, what + ": " + report.violation.value_or("invalid"));
}

FaceFamily with_sigma_family(const MarkedComplex& m) {
  return adjoin_face(relative_family(m.complex, SimplicialComplex::simplex(m.specified_facet)),
                     m.specified_face);
}

FaceFamily without_sigma_family(const MarkedComplex& m) {
  return relative_family(m.complex, SimplicialComplex::simplex(m.specified_facet));
}

MarkedComplex build_partition_extender(int d, int k);

}  // namespace

// 2 + (k+1)(d-k) prepartition facets, plus every glued (d, h) gadget minus its shared facet.
double partition_extender_facet_count(int d, int k) {
  if (k == d) return 1.0;
  double total = 2.0 + static_cast<double>(k + 1) * (d - k);
  for (int h = k + 1; h <= d; ++h)
    total += static_cast<double>(binomial(d - k, h - k)) * (partition_extender_facet_count(d, h) - 1.0);
  return total;
}

namespace {

void check_parameters(int d, int k) {
  if (k < -1 || k > d)
    throw Error(ErrorCode::InvalidParameters,
                "need -1 <= k <= d, got d=" + std::to_string(d) + " k=" + std::to_string(k));
}

// Identification of a gadget's marked facet/face with a target facet/face:
// order-preserving on sorted labels, remaining gadget vertices fresh.
VertexMap attach_map(const MarkedComplex& gadget, const Face& target_facet,
                     const Face& target_face, Vertex& next_label, std::vector<Vertex>* fresh) {
  VertexMap map;
  const Face& sigma = gadget.specified_face;
  const Face rest = gadget.specified_facet.minus(sigma);
  const Face target_rest = target_facet.minus(target_face);
  for (std::size_t i = 0; i < sigma.size(); ++i) map[sigma[i]] = target_face[i];
  for (std::size_t i = 0; i < rest.size(); ++i) map[rest[i]] = target_rest[i];
  for (Vertex v : gadget.complex.vertices()) {
    if (map.contains(v)) continue;
    map[v] = next_label++;
    if (fresh) fresh->push_back(map[v]);
  }
  return map;
}

void append_relabeled(const IntervalPartition& from, const VertexMap& map,
                      std::vector<Interval>& to) {
  for (const Interval& iv : from.intervals) to.push_back({relabel(iv.bottom, map), relabel(iv.top, map)});
}

}  // namespace

MarkedComplex prepartition_extender(int d, int k) {
  check_parameters(d, k);
  const auto dk = static_cast<Vertex>(d - k);
  const std::vector<Vertex> d1_extra = label_range(1, dk);
  const std::vector<Vertex> d2_extra = label_range(dk + 1, 2 * dk);
  const Face sigma = Face::from_sorted(label_range(2 * dk + 1, 2 * dk + static_cast<Vertex>(k + 1)));

  const Face d1 = Face::from_sorted(d1_extra).unite(sigma);
  const Face d2 = Face::from_sorted(d2_extra).unite(sigma);

  std::vector<Face> facets{d1, d2};
  IntervalPartition with_sigma;
  with_sigma.intervals.push_back({sigma, d1});
  for (Vertex j = 0; j < dk; ++j) {
    const Face w1 = Face::from_sorted(label_range(j + 1, j + dk + 1));
    for (Vertex i : sigma.vertices()) {
      std::vector<Vertex> below{j + 1};
      for (Vertex v : sigma.vertices())
        if (v < i) below.push_back(v);
      const Face top = w1.unite(sigma.without(i));
      facets.push_back(top);
      with_sigma.intervals.push_back({Face(std::move(below)), top});
    }
  }

  MarkedComplex out;
  out.complex = SimplicialComplex::from_facets(std::move(facets));
  out.specified_facet = d2;
  out.specified_face = sigma;
  out.with_sigma = with_sigma.canonical();
  require_valid(with_sigma_family(out), out.with_sigma, "prepartition extender certificate");
  return out;
}

CountVector prepartition_h_profile(int d, int k) {
  if (k < 0 || k > d) throw Error(ErrorCode::InvalidParameters, "need 0 <= k <= d");
  return h_from_partitioning(with_sigma_family(prepartition_extender(d, k)),
                             prepartition_extender(d, k).with_sigma);
}

CountVector prepartition_h_closed_form(int d, int k) {
  if (k < 0 || k > d) throw Error(ErrorCode::InvalidParameters, "need 0 <= k <= d");
  CountVector h{std::vector<std::int64_t>(static_cast<std::size_t>(d + 2), 0)};
  for (int l = 1; l <= k; ++l) h[static_cast<std::size_t>(l)] = d - k;
  h[static_cast<std::size_t>(k + 1)] = d - k + 1;
  return h;
}

MarkedComplex partition_extender(int d, int k) {
  check_parameters(d, k);
  if (partition_extender_facet_count(d, k) > kMaxGadgetFacets)
    throw Error(ErrorCode::SizeLimitExceeded,
                "(" + std::to_string(d) + "," + std::to_string(k) + ") gadget would have about " +
                    std::to_string(static_cast<long long>(partition_extender_facet_count(d, k))) + " facets");

  static std::mutex mutex;
  static std::map<std::pair<int, int>, MarkedComplex> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({d, k}); it != cache.end()) return it->second;
  }
  MarkedComplex built = build_partition_extender(d, k);
  std::lock_guard lock(mutex);
  return cache.emplace(std::pair{d, k}, std::move(built)).first->second;
}

namespace {

MarkedComplex build_partition_extender(int d, int k) {
  MarkedComplex prep = prepartition_extender(d, k);
  if (k == d) {
    prep.without_sigma = IntervalPartition{};
    require_valid(without_sigma_family(prep), *prep.without_sigma, "(d,d) base case");
    return prep;
  }

  const Face& sigma = prep.specified_face;
  const auto containing = std::find_if(prep.with_sigma.intervals.begin(), prep.with_sigma.intervals.end(),
                                       [&](const Interval& iv) { return iv.bottom == sigma; });
  const Face top = containing->top;  // the facet D1

  std::vector<Face> facets(prep.complex.facets().begin(), prep.complex.facets().end());
  std::vector<Interval> with_sigma = prep.with_sigma.intervals;
  std::vector<Interval> without_sigma;
  for (const Interval& iv : prep.with_sigma.intervals)
    if (iv.bottom != sigma) without_sigma.push_back(iv);

  Vertex next = prep.complex.max_vertex() + 1;
  for (const Face& tau : top.subsets()) {  // shortlex: by dimension, then lexicographic
    if (tau.size() <= sigma.size() || !sigma.is_subset_of(tau)) continue;
    const MarkedComplex& gadget = partition_extender(d, tau.dim());
    const VertexMap map = attach_map(gadget, top, tau, next, nullptr);
    for (const Face& f : gadget.complex.facets()) facets.push_back(relabel(f, map));
    append_relabeled(*gadget.without_sigma, map, with_sigma);
    append_relabeled(gadget.with_sigma, map, without_sigma);
  }

  MarkedComplex out;
  out.complex = SimplicialComplex::from_facets(std::move(facets));
  out.specified_facet = prep.specified_facet;
  out.specified_face = sigma;
  out.with_sigma = IntervalPartition{std::move(with_sigma)}.canonical();
  out.without_sigma = IntervalPartition{std::move(without_sigma)}.canonical();
  require_valid(with_sigma_family(out), out.with_sigma, "partition extender with-sigma certificate");
  require_valid(without_sigma_family(out), *out.without_sigma,
                "partition extender without-sigma certificate");
  return out;
}

CountVector bottom_counts(std::span<const Interval> intervals, int d) {
  CountVector h{std::vector<std::int64_t>(static_cast<std::size_t>(d + 2), 0)};
  for (const Interval& iv : intervals) ++h[iv.bottom.size()];
  return h;
}

ExtenderResult assemble(const SimplicialComplex& base, bool pure) {
  const int d = base.dim();
  const auto base_facets = base.facets();

  ExtenderResult res;
  res.base = base;
  std::vector<Face> facets(base_facets.begin(), base_facets.end());
  std::vector<Interval> gamma, relative;
  Vertex next = base.vertices().empty() ? 1 : base.max_vertex() + 1;

  for (const Face& sigma : base.faces()) {
    int depth = -1;
    for (const Face& f : base_facets)
      if (f.dim() > depth && sigma.is_subset_of(f)) depth = f.dim();
    const int gadget_dim = pure ? d : depth;
    // Smallest facet of the right dimension containing sigma.
    const auto facet = std::find_if(base_facets.begin(), base_facets.end(), [&](const Face& f) {
      return f.dim() == gadget_dim && sigma.is_subset_of(f);
    });

    const MarkedComplex& gadget = partition_extender(gadget_dim, sigma.dim());
    Attachment log;
    log.face = sigma;
    log.facet = *facet;
    log.gadget_dim = gadget_dim;
    const VertexMap map = attach_map(gadget, *facet, sigma, next, &log.fresh_vertices);
    for (const Face& f : gadget.complex.facets()) facets.push_back(relabel(f, map));

    const std::size_t g0 = gamma.size(), r0 = relative.size();
    append_relabeled(gadget.with_sigma, map, gamma);
    append_relabeled(*gadget.without_sigma, map, relative);
    log.with_sigma_intervals = gamma.size() - g0;
    log.without_sigma_intervals = relative.size() - r0;
    log.h_contribution = bottom_counts(std::span(gamma).subspan(g0), d) -
                         bottom_counts(std::span(relative).subspan(r0), d);
    res.attachment_log.push_back(std::move(log));
  }

  res.extender = SimplicialComplex::from_facets(std::move(facets));
  res.gamma_partition = IntervalPartition{std::move(gamma)}.canonical();
  res.relative_partition = IntervalPartition{std::move(relative)}.canonical();
  return res;
}

// Coefficients of sum_i f_{i-1} (x - 1)^(d + 1 - i), highest power first,
// i.e. the h-vector read off the defining polynomial identity.
CountVector h_by_polynomial(const CountVector& f) {
  const std::size_t n = f.size();
  std::vector<std::int64_t> poly(n, 0);  // poly[p] = coefficient of x^p
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = n - 1 - i;
    std::vector<std::int64_t> power{1};  // (x - 1)^e
    for (std::size_t t = 0; t < e; ++t) {
      std::vector<std::int64_t> next(power.size() + 1, 0);
      for (std::size_t p = 0; p < power.size(); ++p) {
        next[p + 1] += power[p];
        next[p] -= power[p];
      }
      power = std::move(next);
    }
    for (std::size_t p = 0; p < power.size(); ++p) poly[p] += f.entries[i] * power[p];
  }
  CountVector h{std::vector<std::int64_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) h.entries[i] = poly[n - 1 - i];
  return h;
}

}  // namespace

double extender_facet_count(const SimplicialComplex& base, bool nonpure) {
  const auto facets = base.facets();
  double total = static_cast<double>(facets.size());
  for (const Face& s : base.faces()) {
    int d = base.dim();
    if (nonpure) {
      d = -1;
      for (const Face& f : facets)
        if (f.dim() > d && s.is_subset_of(f)) d = f.dim();
    }
    total += partition_extender_facet_count(d, s.dim()) - 1.0;
  }
  return total;
}

void verify_extender(const ExtenderResult& res) {
  if (!res.extender.contains_complex(res.base))
    throw Error(ErrorCode::InvalidResult, "base is not a subcomplex of the extender");
  if (!res.base.is_void() && res.base.dim() != res.extender.dim())
    throw Error(ErrorCode::InvalidResult, "extender dimension differs from base dimension");
  const auto check = [](const FaceFamily& fam, const IntervalPartition& p, const char* what) {
    const PartitionReport report = verify_partitioning(fam, p);
    if (!report.valid)
      throw Error(ErrorCode::InvalidResult, std::string(what) + ": " + report.violation.value_or(""));
  };
  check(FaceFamily::of(res.extender), res.gamma_partition, "extender certificate");
  check(res.relative(), res.relative_partition, "relative certificate");
}

ExtenderResult extender_for_complex(const SimplicialComplex& base) {
  if (base.is_void()) throw Error(ErrorCode::VoidComplex, "cannot extend the void complex");
  if (!base.is_pure()) throw Error(ErrorCode::NotPure, "use the nonpure construction");
  ExtenderResult res = assemble(base, true);
  verify_extender(res);
  if (h_vector(res.extender) - h_vector(res.relative()) != h_vector(res.base))
    throw Error(ErrorCode::InvalidResult, "h(base) != h(extender) - h(relative)");
  return res;
}

ExtenderResult nonpure_extender_for_complex(const SimplicialComplex& base) {
  if (base.is_void()) throw Error(ErrorCode::VoidComplex, "cannot extend the void complex");
  ExtenderResult res = assemble(base, false);
  verify_extender(res);

  for (const Face& s : base.faces())
    if (facet_depth(base, s) != facet_depth(res.extender, s))
      throw Error(ErrorCode::InvalidResult, "facet depth of " + s.str() + " changed");
  const FaceFamily gamma = FaceFamily::of(res.extender);
  const FaceFamily relative = res.relative();
  if (!is_layer_compatible(gamma, res.gamma_partition) || !is_h_compatible(gamma, res.gamma_partition))
    throw Error(ErrorCode::InvalidResult, "extender certificate is not layer/h-compatible");
  if (!is_layer_compatible(relative, res.relative_partition) ||
      !is_h_compatible(relative, res.relative_partition))
    throw Error(ErrorCode::InvalidResult, "relative certificate is not layer/h-compatible");
  if (h_triangle(gamma) - h_triangle(relative) != h_triangle(base))
    throw Error(ErrorCode::InvalidResult, "h-triangle identity fails");
  return res;
}

HDecomposition h_decomposition(const ExtenderResult& res) {
  verify_extender(res);
  const FaceFamily relative = res.relative();
  HDecomposition out;
  out.gamma = h_vector(res.extender);
  out.relative = h_vector(relative);
  out.difference = out.gamma - out.relative;

  if (out.difference != h_vector(res.base))
    throw Error(ErrorCode::InvalidResult, "h(extender) - h(relative) != h(base)");
  if (out.difference != h_by_polynomial(f_vector(res.base)))
    throw Error(ErrorCode::InvalidResult, "difference disagrees with the binomial transform of f(base)");
  if (res.extender.is_pure()) {
    if (h_from_partitioning(FaceFamily::of(res.extender), res.gamma_partition) != out.gamma ||
        h_from_partitioning(relative, res.relative_partition) != out.relative)
      throw Error(ErrorCode::InvalidResult, "certificate interval counts disagree with h-vectors");
  }
  if (!res.attachment_log.empty() && res.base.is_pure()) {
    CountVector sum{std::vector<std::int64_t>(out.difference.size(), 0)};
    for (const Attachment& a : res.attachment_log) sum = sum + a.h_contribution;
    if (sum != out.difference)
      throw Error(ErrorCode::InvalidResult, "attachment contributions do not sum to h(base)");
  }
  return out;
}

namespace {

std::vector<BigCount> g_values(int d, int kmax) {
  std::vector<BigCount> g(static_cast<std::size_t>(kmax + 1), 0);
  const BigCount top = BigCount(1) << (d + 1);
  for (int k = 1; k <= kmax; ++k) {
    BigCount v = BigCount(k) * (top - (BigCount(1) << k));
    for (int j = 0; j < k; ++j) v += BigCount(binomial(k, j)) * g[static_cast<std::size_t>(j)];
    g[static_cast<std::size_t>(k)] = v;
  }
  return g;
}

BigCount g_bound(int d, int k) { return BigCount(1) << ((1 << k) - 1 + d); }

}  // namespace

SizeEstimate size_estimate(int d, int k) {
  if (k < 0 || k > d || d > 24) throw Error(ErrorCode::InvalidParameters, "need 0 <= k <= d <= 24");
  return {g_values(d, k).back(), g_bound(d, k)};
}

SizeEstimate total_size_estimate(const SimplicialComplex& c) {
  if (c.is_void()) return {0, 0};
  const int d = c.dim();
  if (d > 23) throw Error(ErrorCode::InvalidParameters, "dimension too large");
  const CountVector f = f_vector(c);
  const std::vector<BigCount> g = g_values(d, d + 1);
  SizeEstimate out{0, 0};
  for (int k = -1; k <= d; ++k) {
    const BigCount fk = f[static_cast<std::size_t>(k + 1)];
    out.exact_recurrence += fk * g[static_cast<std::size_t>(d - k)];
    out.upper_bound += fk * g_bound(d, d - k);
  }
  return out;
}

}  // namespace pext
