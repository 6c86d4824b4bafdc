#include "pext/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "pext/error.hpp"
#include "pext/extenders.hpp"
#include "pext/homology.hpp"
#include "pext/io.hpp"
#include "pext/partitioning.hpp"

namespace pext::cli {
namespace {

using io::Json;

struct Options {
  bool json = false;
  std::uint32_t characteristic = 0;
  std::size_t max_faces = SearchLimits{}.max_members;
  std::size_t max_facets = SearchLimits{}.max_facets;
  double max_extender_facets = 200000;
  bool nonpure = false;
  std::vector<std::string> inputs;
  std::string partition_file;
  std::string order_file;
  int d = 0;
  int k = 0;
};

struct Report {
  std::string summary;
  Json result = Json::object();
  Json certificates = Json::array();
  int status = kExitTrue;
};

/// Raised for size limits; carries the flag that raises the bound.
struct LimitError {
  std::string message;
};

struct Loaded {
  std::vector<io::ComplexDocument> docs;
  Json input = Json::array();
};

Loaded load_inputs(const std::vector<std::string>& paths) {
  Loaded out;
  for (const std::string& path : paths) {
    io::ComplexDocument doc = io::read_complex(path);
    Json entry = {{"path", path}};
    if (doc.name) entry["name"] = *doc.name;
    out.input.push_back(entry);
    out.docs.push_back(std::move(doc));
  }
  return out;
}

Json witness_json(const LinkObstruction& w) {
  return {{"face", io::to_json(w.face)}, {"degree", w.degree}, {"betti", w.betti}};
}

Json certificate(const std::string& name, const SimplicialComplex& big,
                 const std::optional<SimplicialComplex>& small, const IntervalPartition& p) {
  return {{"name", name},
          {"complex", io::facets_json(big)},
          {"subcomplex", small ? io::facets_json(*small) : Json(nullptr)},
          {"intervals", io::to_json(p)}};
}

FaceFamily family_of(const SimplicialComplex& big, const std::optional<SimplicialComplex>& small) {
  return small ? relative_family(big, *small) : FaceFamily::of(big);
}

std::optional<SimplicialComplex> second(const Loaded& in) {
  if (in.docs.size() < 2) return std::nullopt;
  return in.docs[1].complex;
}

SearchLimits limits_of(const Options& o) { return {o.max_faces, o.max_facets}; }

template <typename Fn>
auto with_limit_flag(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeLimitExceeded) throw;
    throw LimitError{std::string(e.what()) + "; raise the bound with " + flag};
  }
}

Report cmd_info(const Options&, const Loaded& in) {
  const SimplicialComplex& c = in.docs[0].complex;
  Report r;
  r.result = {{"dimension", c.dim()},
              {"void", c.is_void()},
              {"pure", c.is_pure()},
              {"vertices", c.vertices()},
              {"facets", io::facets_json(c)},
              {"f_vector", io::to_json(f_vector(c))},
              {"h_vector", io::to_json(h_vector(c))},
              {"f_triangle", io::to_json(f_triangle(c))},
              {"h_triangle", io::to_json(h_triangle(c))}};
  r.summary = c.is_void() ? "void complex" : (c.is_pure() ? "pure " : "nonpure ") + std::to_string(c.dim()) + "-complex";
  return r;
}

Report cmd_partitionable(const Options& o, const Loaded& in) {
  const auto small = second(in);
  const FaceFamily fam = family_of(in.docs[0].complex, small);
  const auto found = with_limit_flag("--max-faces", [&] { return find_partitioning(fam, limits_of(o)); });
  Report r;
  r.result = {{"partitionable", found.has_value()}, {"members", fam.size()}};
  if (!found) {
    r.summary = "not partitionable";
    r.status = kExitFalse;
    return r;
  }
  r.summary = "partitionable";
  r.result["h_from_partition"] = io::to_json(h_from_partitioning(fam, *found));
  r.certificates.push_back(certificate("partitioning", in.docs[0].complex, small, *found));
  return r;
}

Json stats_json(const IntervalStats& stats) {
  Json out = Json::array();
  for (const auto& [key, count] : stats)
    out.push_back({{"top_size", key.first}, {"bottom_size", key.second}, {"count", count}});
  return out;
}

Json verify_one(const std::string& name, const SimplicialComplex& big,
                const std::optional<SimplicialComplex>& small, const IntervalPartition& p, bool& all_valid) {
  const PartitionReport rep = verify_partitioning(family_of(big, small), p);
  all_valid = all_valid && rep.valid;
  Json out = {{"name", name}, {"valid", rep.valid}, {"interval_stats", stats_json(rep.interval_stats)}};
  out["violation"] = rep.violation ? Json(*rep.violation) : Json(nullptr);
  return out;
}

Report cmd_verify_partition(const Options& o, const Loaded& in) {
  const std::string text = io::read_file(o.partition_file);
  Report r;
  bool all_valid = true;
  Json checked = Json::array();
  const bool is_report = !text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
                         text[text.find_first_not_of(" \t\r\n")] == '{' &&
                         io::parse_json(text, o.partition_file).contains("certificates");
  if (is_report) {
    const Json doc = io::parse_json(text, o.partition_file);
    for (const Json& cert : doc.at("certificates")) {
      const std::string where = o.partition_file + ": certificate";
      const std::string name = cert.value("name", std::string("certificate"));
      const SimplicialComplex big = io::complex_from_json(cert.at("complex"), where);
      std::optional<SimplicialComplex> small;
      if (cert.contains("subcomplex") && !cert.at("subcomplex").is_null())
        small = io::complex_from_json(cert.at("subcomplex"), where);
      checked.push_back(verify_one(name, big, small, io::partition_from_json(cert.at("intervals"), where),
                                   all_valid));
    }
  } else {
    if (in.docs.empty())
      throw io::ParseError(o.partition_file, 0, 0, "a bare interval list needs a complex argument");
    checked.push_back(verify_one("partition", in.docs[0].complex, second(in),
                                 io::parse_partition(text, o.partition_file), all_valid));
  }
  r.result = {{"valid", all_valid}, {"checked", checked}};
  r.summary = all_valid ? "valid partitioning" : "invalid partitioning";
  r.status = all_valid ? kExitTrue : kExitFalse;
  return r;
}

Report cmd_build_extender(const Options& o, const Loaded& in) {
  const SimplicialComplex& base = in.docs[0].complex;
  if (base.is_void()) throw Error(ErrorCode::VoidComplex, "cannot extend the void complex");
  if (!o.nonpure && !base.is_pure())
    throw Error(ErrorCode::NotPure, "base complex is not pure; pass --nonpure");
  const double predicted = extender_facet_count(base, o.nonpure);
  if (predicted > o.max_extender_facets)
    throw LimitError{"extender would have about " + std::to_string(static_cast<long long>(predicted)) +
                     " facets; the bound is " + std::to_string(static_cast<long long>(o.max_extender_facets)) +
                     "; raise the bound with --max-extender-facets"};

  const ExtenderResult res = with_limit_flag("--max-extender-facets (per-gadget limit is fixed)", [&] {
    return o.nonpure ? nonpure_extender_for_complex(base) : extender_for_complex(base);
  });
  const HDecomposition h = h_decomposition(res);
  const CountVector f_base = f_vector(base), f_ext = f_vector(res.extender);

  Report r;
  Json attachments = Json::array();
  for (const Attachment& a : res.attachment_log)
    attachments.push_back({{"face", io::to_json(a.face)},
                           {"facet", io::to_json(a.facet)},
                           {"gadget", {a.gadget_dim, a.face.dim()}},
                           {"fresh_vertices", a.fresh_vertices},
                           {"with_sigma_intervals", a.with_sigma_intervals},
                           {"without_sigma_intervals", a.without_sigma_intervals},
                           {"h_contribution", io::to_json(a.h_contribution)}});
  Json added = Json::array();
  for (std::size_t i = 0; i < f_ext.size(); ++i) added.push_back(f_ext[i] - f_base[i]);

  r.result = {{"nonpure", o.nonpure},
              {"dimension", base.dim()},
              {"extender", io::facets_json(res.extender)},
              {"f_vector", {{"base", io::to_json(f_base)}, {"extender", io::to_json(f_ext)}}},
              {"faces_added", added},
              {"vertices_added", res.extender.vertices().size() - base.vertices().size()},
              {"h_vector",
               {{"base", io::to_json(h_vector(base))},
                {"extender", io::to_json(h.gamma)},
                {"relative", io::to_json(h.relative)},
                {"difference", io::to_json(h.difference)}}},
              {"attachments", attachments}};
  if (o.nonpure) {
    const FaceFamily gamma = FaceFamily::of(res.extender);
    const FaceFamily relative = res.relative();
    r.result["h_triangle"] = {{"base", io::to_json(h_triangle(base))},
                              {"extender", io::to_json(h_triangle(gamma))},
                              {"relative", io::to_json(h_triangle(relative))}};
  }
  r.certificates.push_back(certificate("extender", res.extender, std::nullopt, res.gamma_partition));
  r.certificates.push_back(certificate("relative", res.extender, base, res.relative_partition));
  r.summary = "extender with " + std::to_string(res.extender.facets().size()) + " facets";
  return r;
}

Json field_json(FieldSpec f) { return f.characteristic; }

Report cmd_depth(const Options& o, const Loaded& in) {
  const FieldSpec field = FieldSpec::of(o.characteristic);
  const DepthReport rep = depth_report(in.docs[0].complex, field);
  Report r;
  r.result = {{"depth", rep.depth},
              {"dimension", in.docs[0].complex.dim()},
              {"skeleton_depth", rep.skeleton_depth},
              {"characteristic", field_json(field)},
              {"witness", rep.witness ? witness_json(*rep.witness) : Json(nullptr)}};
  r.summary = "depth " + std::to_string(rep.depth);
  return r;
}

Report cm_report(const std::optional<LinkObstruction>& violation, FieldSpec field, const std::string& what) {
  Report r;
  r.result = {{"cohen_macaulay", !violation},
              {"characteristic", field_json(field)},
              {"witness", violation ? witness_json(*violation) : Json(nullptr)}};
  r.summary = violation ? "not " + what : what;
  r.status = violation ? kExitFalse : kExitTrue;
  return r;
}

Report cmd_cm_check(const Options& o, const Loaded& in) {
  const FieldSpec field = FieldSpec::of(o.characteristic);
  return cm_report(cohen_macaulay_violation(in.docs[0].complex, field), field, "Cohen-Macaulay");
}

Report cmd_rel_cm_check(const Options& o, const Loaded& in) {
  const FieldSpec field = FieldSpec::of(o.characteristic);
  return cm_report(relative_cm_violation(in.docs[0].complex, in.docs[1].complex, field), field,
                   "relative Cohen-Macaulay");
}

Report cmd_cm_extender(const Options& o, const Loaded& in) {
  const FieldSpec field = FieldSpec::of(o.characteristic);
  const auto out = cm_extender(in.docs[0].complex, field);
  Report r;
  if (const auto* bad = std::get_if<CmObstruction>(&out)) {
    r.result = {{"exists", false},
                {"depth", bad->depth},
                {"characteristic", field_json(field)},
                {"witness", witness_json(bad->witness)}};
    r.summary = "no extender: depth " + std::to_string(bad->depth) + " is below the dimension";
    r.status = kExitFalse;
    return r;
  }
  const auto& ext = std::get<CmExtender>(out);
  r.result = {{"exists", true},
              {"characteristic", field_json(field)},
              {"extender", io::facets_json(ext.extender)},
              {"extender_is_cm", ext.extender_is_cm},
              {"relative_is_cm", ext.relative_is_cm}};
  r.summary = "Cohen-Macaulay extender with " + std::to_string(ext.extender.facets().size()) + " facets";
  return r;
}

Json order_json(const ShellingOrder& order) {
  Json out = Json::array();
  for (const Face& f : order) out.push_back(io::to_json(f));
  return out;
}

SimplicialComplex small_or_void(const Loaded& in) {
  return in.docs.size() > 1 ? in.docs[1].complex : SimplicialComplex{};
}

Report cmd_shelling_check(const Options& o, const Loaded& in) {
  const ShellingOrder order = io::parse_order(io::read_file(o.order_file), o.order_file);
  const SimplicialComplex small = small_or_void(in);
  const bool ok = check_shelling_order(in.docs[0].complex, small, order);
  Report r;
  r.result = {{"shelling", ok}, {"order", order_json(order)}};
  r.summary = ok ? "valid shelling order" : "not a shelling order";
  r.status = ok ? kExitTrue : kExitFalse;
  if (ok)
    r.certificates.push_back(certificate("shelling", in.docs[0].complex, second(in),
                                         shelling_partition(in.docs[0].complex, small, order)));
  return r;
}

Report cmd_shellable(const Options& o, const Loaded& in) {
  const SimplicialComplex small = small_or_void(in);
  const auto order = with_limit_flag("--max-facets", [&] {
    return find_shelling(in.docs[0].complex, small, limits_of(o));
  });
  Report r;
  r.result = {{"shellable", order.has_value()}};
  if (!order) {
    r.summary = "not shellable";
    r.status = kExitFalse;
    return r;
  }
  r.result["order"] = order_json(*order);
  r.summary = "shellable";
  r.certificates.push_back(certificate("shelling", in.docs[0].complex, second(in),
                                       shelling_partition(in.docs[0].complex, small, *order)));
  return r;
}

Report cmd_estimate_size(const Options& o, const Loaded&) {
  const SizeEstimate est = size_estimate(o.d, o.k);
  Report r;
  r.result = {{"d", o.d},
              {"k", o.k},
              {"g", est.exact_recurrence.str()},
              {"bound", est.upper_bound.str()},
              {"within_bound", est.exact_recurrence <= est.upper_bound}};
  r.summary = "g(" + std::to_string(o.k) + ") = " + est.exact_recurrence.str() + " <= " + est.upper_bound.str();
  return r;
}

void render_text(const Json& value, const std::string& indent, std::ostream& out) {
  for (const auto& [key, v] : value.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      render_text(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << key << ":\n";
      for (const Json& item : v) out << indent << "  " << item.dump() << "\n";
    } else {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Options& o, const std::string& command, const Json& input, const Report& r,
          std::ostream& out) {
  if (o.json) {
    const Json doc = {{"input", input}, {"command", command}, {"result", r.result}, {"certificates", r.certificates}};
    out << doc.dump(2) << "\n";
    return;
  }
  out << command << ": " << r.summary << "\n";
  render_text(r.result, "  ", out);
  for (const Json& cert : r.certificates) {
    out << "certificate " << cert["name"].get<std::string>() << " (" << cert["intervals"].size()
        << " intervals):\n";
    for (const Json& iv : cert["intervals"])
      out << "  " << Interval{io::face_from_json(iv["bottom"], ""), io::face_from_json(iv["top"], "")}.str()
          << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Partition extenders, Cohen-Macaulay checks and shelling certificates"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit the canonical JSON report");
  app.add_option("--char", o.characteristic, "Field characteristic: 0 or a prime");
  app.add_option("--max-faces", o.max_faces, "Member bound for partition search");
  app.add_option("--max-facets", o.max_facets, "Facet bound for shelling search");
  app.add_option("--max-extender-facets", o.max_extender_facets, "Facet bound for constructed extenders");

  using Handler = std::function<Report(const Options&, const Loaded&)>;
  std::map<std::string, Handler> handlers;
  const auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    handlers[name] = std::move(h);
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  const auto one = [&](CLI::App* s) { s->add_option("complex", o.inputs, "Complex file")->required()->expected(1); };
  const auto pair_opt = [&](CLI::App* s) {
    s->add_option("complex", o.inputs, "Complex file and optional subcomplex file")->required()->expected(1, 2);
  };

  one(sub("info", "f/h-vectors, f/h-triangles, purity, dimension", cmd_info));
  pair_opt(sub("partitionable", "Search for a partitioning", cmd_partitionable));
  {
    CLI::App* s = sub("verify-partition", "Check an interval partition or a build-extender report",
                      cmd_verify_partition);
    s->add_option("complex", o.inputs, "Complex file and optional subcomplex file")->expected(0, 2);
    s->add_option("--partition", o.partition_file, "Interval file or JSON report")->required();
  }
  {
    CLI::App* s = sub("build-extender", "Construct a partition extender", cmd_build_extender);
    one(s);
    s->add_flag("--nonpure", o.nonpure, "Use the nonpure construction");
  }
  one(sub("depth", "Depth of the face ring", cmd_depth));
  one(sub("cm-check", "Cohen-Macaulay test", cmd_cm_check));
  sub("rel-cm-check", "Relative Cohen-Macaulay test", cmd_rel_cm_check)
      ->add_option("complex", o.inputs, "Complex file and subcomplex file")
      ->required()
      ->expected(2);
  one(sub("cm-extender", "Cohen-Macaulay extender or obstruction", cmd_cm_extender));
  {
    CLI::App* s = sub("shelling-check", "Check a shelling order", cmd_shelling_check);
    pair_opt(s);
    s->add_option("--order", o.order_file, "Facet order file")->required();
  }
  pair_opt(sub("shellable", "Search for a shelling order", cmd_shellable));
  {
    CLI::App* s = sub("estimate-size", "Gadget size recurrence and bound", cmd_estimate_size);
    s->add_option("d", o.d, "Dimension")->required();
    s->add_option("k", o.k, "Face dimension index")->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Loaded in = load_inputs(o.inputs);
    const Report r = handlers.at(command)(o, in);
    emit(o, command, in.input, r, out);
    return r.status;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const LimitError& e) {
    err << "size limit: " << e.message << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "malformed report: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace pext::cli
