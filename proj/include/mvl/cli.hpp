#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "canonical.hpp"
#include "enumerate.hpp"
#include "families.hpp"
#include "filters.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "zlattice.hpp"

namespace mvl {

inline constexpr const char* kToolVersion = "0.1.0";

namespace cli_detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct Params {
  int r = 0, n = 0, q = 0, k = 0, s = 0, t = 0, h = 0, c = 0;
  std::string path, group, which, family, matroid, catalog, spec, points, target, points_out;
  std::string a_file, b_file;
  std::vector<int> sizes;
  bool force = false;
  double timeout = 0;
};

inline CayleyTable group_by_name(const std::string& name, std::vector<std::string>& inputs) {
  if (name == "trivial") return cyclic_group(1);
  if (name == "sign") return cyclic_group(2);
  if (name == "klein") return klein_four_group();
  if (name.rfind("cyclic", 0) == 0 && name.size() > 6) {
    int g = 0;
    try {
      g = std::stoi(name.substr(6));
    } catch (const std::exception&) {
      throw UsageError("--group: cannot read order from '" + name + "'");
    }
    return cyclic_group(g);
  }
  inputs.push_back(name);
  return cayley_from_json(load_json_file(name));
}

}  // namespace cli_detail

// Runs one command; returns 0 on success, 1 on a domain error, 2 on misuse.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using cli_detail::UsageError;
  const auto start = std::chrono::steady_clock::now();
  cli_detail::Params p;
  std::string out_path;
  int jobs = default_jobs();

  CLI::App app{"Matroid valuation lab: constructions, valuative invariants, nested decompositions, extremality pipelines"};
  app.name("mvl");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the result here instead of stdout");
    sub->add_option("--jobs", jobs, "worker thread cap")->check(CLI::PositiveNumber);
  };

  auto* construct = app.add_subcommand("construct", "build a named matroid");
  construct->add_option("family", p.family, "uniform|nested|mkn|pg|ag|boseburton|dowling|spike-free|spike-binary")
      ->required();
  std::map<std::string, CLI::Option*> copt;
  copt["r"] = construct->add_option("--r", p.r, "rank");
  copt["n"] = construct->add_option("--n", p.n, "ground-set size");
  copt["q"] = construct->add_option("--q", p.q, "field order");
  copt["k"] = construct->add_option("--k", p.k, "rank of the deleted flat");
  copt["s"] = construct->add_option("--s", p.s, "number of spike legs");
  copt["t"] = construct->add_option("--t", p.t, "points per spike leg");
  copt["path"] = construct->add_option("--path", p.path, "lattice path over N and E");
  copt["group"] = construct->add_option("--group", p.group, "trivial|sign|klein|cyclicG|FILE.json");
  common(construct);

  auto* invariant = app.add_subcommand("invariant", "compute one invariant of a matroid");
  invariant->set_help_flag("--help", "print this help and exit");  // --h is a flag rank
  invariant->add_option("which", p.which,
                        "tutte|g|flats|flags|circuits|counts|cyclic-flats|components|canonical")
      ->required();
  invariant->add_option("--matroid", p.matroid, "matroid JSON file")->required();
  std::map<std::string, CLI::Option*> iopt;
  iopt["k"] = invariant->add_option("--k", p.k, "rank");
  iopt["s"] = invariant->add_option("--s", p.s, "flat size");
  iopt["c"] = invariant->add_option("--c", p.c, "coloops of the restriction");
  iopt["h"] = invariant->add_option("--h", p.h, "lowest flag rank");
  iopt["sizes"] = invariant->add_option("--sizes", p.sizes, "flag sizes, comma separated")->delimiter(',');
  common(invariant);

  auto* decompose = app.add_subcommand("decompose", "nested-matroid decomposition (Omega point)");
  decompose->add_option("--matroid", p.matroid, "matroid JSON file")->required();
  common(decompose);

  auto* compare = app.add_subcommand("omega-compare", "do two matroids give the same Omega point");
  compare->add_option("a", p.a_file, "first matroid JSON")->required();
  compare->add_option("b", p.b_file, "second matroid JSON")->required();
  common(compare);

  auto* enumerate = app.add_subcommand("enumerate", "isomorph-free catalog of rank r matroids on n elements");
  enumerate->add_option("--r", p.r, "rank")->required();
  enumerate->add_option("--n", p.n, "ground-set size")->required();
  enumerate->add_flag("--force", p.force, "allow n = 9");
  enumerate->add_option("--timeout", p.timeout, "seconds before giving up (0 = none)");
  enumerate->add_option("--points", p.points_out, "also write the members' Omega points here");
  common(enumerate);

  auto* pipeline = app.add_subcommand("pipeline", "run an optimization pipeline over a catalog");
  pipeline->add_option("--catalog", p.catalog, "catalog NDJSON file")->required();
  pipeline->add_option("--spec", p.spec, "pipeline spec JSON file")->required();
  common(pipeline);

  auto* vertex = app.add_subcommand("certify-vertex", "exact vertex test among Omega points");
  vertex->add_option("--points", p.points, "points JSON file")->required();
  vertex->add_option("--target", p.target, "name of the target point")->required();
  common(vertex);

  if (!args.empty() && args.front().rfind("-", 0) != 0 && !app.get_subcommand_no_throw(args.front())) {
    err << "usage error: unknown subcommand '" << args.front() << "'\n";
    return 2;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<std::string> inputs;
  std::string command;
  try {
    ojson payload;
    std::string text;
    auto need = [](std::map<std::string, CLI::Option*>& opts, const std::string& name, const std::string& ctx) {
      if (opts.at(name)->count() == 0) throw UsageError("--" + name + " is required for " + ctx);
    };

    if (*construct) {
      command = "construct";
      const std::string& f = p.family;
      const std::string ctx = "family " + f;
      Matroid m;
      if (f == "uniform") {
        need(copt, "r", ctx); need(copt, "n", ctx);
        m = uniform(p.r, p.n);
      } else if (f == "nested") {
        need(copt, "path", ctx);
        m = nested_from_path(p.path);
      } else if (f == "mkn") {
        need(copt, "r", ctx);
        m = cycle_matroid_complete(p.r);
      } else if (f == "pg") {
        need(copt, "r", ctx); need(copt, "q", ctx);
        m = projective_geometry(p.r, p.q);
      } else if (f == "ag") {
        need(copt, "r", ctx); need(copt, "q", ctx);
        m = affine_geometry(p.r, p.q);
      } else if (f == "boseburton") {
        need(copt, "r", ctx); need(copt, "q", ctx); need(copt, "k", ctx);
        m = bose_burton(p.r, p.q, p.k);
      } else if (f == "dowling") {
        need(copt, "r", ctx); need(copt, "group", ctx);
        m = dowling(p.r, cli_detail::group_by_name(p.group, inputs));
      } else if (f == "spike-free") {
        need(copt, "r", ctx); need(copt, "s", ctx); need(copt, "t", ctx);
        m = spike_free(p.r, p.s, p.t);
      } else if (f == "spike-binary") {
        need(copt, "r", ctx);
        m = spike_binary(p.r);
      } else {
        throw UsageError("family: unknown family '" + f + "'");
      }
      payload = to_json(m);
    } else if (*invariant) {
      command = "invariant";
      inputs.push_back(p.matroid);
      const Matroid m = matroid_from_json(load_json_file(p.matroid));
      const std::string& w = p.which;
      if (w == "tutte") {
        payload["tutte"] = to_json(tutte(m));
      } else if (w == "g") {
        payload["g_invariant"] = to_json(g_invariant(m));
      } else if (w == "flats") {
        need(iopt, "k", "flats"); need(iopt, "s", "flats");
        payload["flat_count"] = json_int(
            iopt["c"]->count() ? flat_count(m, p.k, p.s, p.c) : flat_count(m, p.k, p.s));
      } else if (w == "flags") {
        need(iopt, "h", "flags"); need(iopt, "k", "flags"); need(iopt, "sizes", "flags");
        payload["flag_count"] = json_int(flag_count(m, p.h, p.k, p.sizes));
      } else if (w == "circuits") {
        const auto cs = circuit_stats(m);
        ojson by = ojson::object();
        for (auto [sz, c] : cs.by_size) by[std::to_string(sz)] = json_int(c);
        payload["by_size"] = by;
        payload["circuit_hyperplanes"] = json_int(cs.circuit_hyperplanes);
      } else if (w == "counts") {
        const auto ce = counting_evaluations(m);
        payload["bases"] = json_int(ce.bases);
        payload["independents"] = json_int(ce.independents);
      } else if (w == "cyclic-flats") {
        ojson arr = ojson::array();
        for (const auto& f : cyclic_flats(m).members) {
          ojson o;
          o["set"] = set_to_json(f.set);
          o["rank"] = f.rank;
          arr.push_back(o);
        }
        payload["cyclic_flats"] = arr;
      } else if (w == "components") {
        ojson arr = ojson::array();
        for (auto s : components(m)) arr.push_back(set_to_json(s));
        payload["components"] = arr;
      } else if (w == "canonical") {
        payload["canonical_form"] = canonical_form(m);
      } else {
        throw UsageError("which: unknown invariant '" + w + "'");
      }
    } else if (*decompose) {
      command = "decompose";
      inputs.push_back(p.matroid);
      payload = to_json(nested_decomposition(matroid_from_json(load_json_file(p.matroid))));
    } else if (*compare) {
      command = "omega-compare";
      inputs.push_back(p.a_file);
      inputs.push_back(p.b_file);
      const Matroid a = matroid_from_json(load_json_file(p.a_file));
      const Matroid b = matroid_from_json(load_json_file(p.b_file));
      if (a.rank() != b.rank() || a.size() != b.size())
        fail(ErrorKind::RankSizeMismatch, "matroids differ in rank or size");
      const OmegaPoint pa = nested_decomposition(a), pb = nested_decomposition(b);
      payload["same_point"] = pa == pb;
      if (pa == pb) payload["point"] = to_json(pa);
      else payload["points"] = ojson::array({to_json(pa), to_json(pb)});
    } else if (*enumerate) {
      command = "enumerate";
      EnumerateOptions opt;
      opt.force = p.force;
      opt.jobs = jobs;
      opt.timeout_seconds = p.timeout;
      const Catalog c = enumerate_catalog(p.r, p.n, opt);
      std::ostringstream os;
      write_catalog(os, c);
      text = os.str();
      if (!p.points_out.empty()) {
        std::vector<OmegaPoint> pts(c.members.size());
        parallel_for(pts.size(), jobs, [&](std::size_t i) { pts[i] = nested_decomposition(c.members[i]); });
        ojson pj;
        pj["r"] = c.r;
        pj["n"] = c.n;
        ojson named = ojson::object();
        for (std::size_t i = 0; i < pts.size(); ++i) named[std::to_string(i + 1)] = to_json(pts[i])["point"];
        pj["points"] = named;
        std::ofstream po(p.points_out);
        if (!po) fail(ErrorKind::ParseError, "cannot write " + p.points_out);
        po << pj.dump(2) << "\n";
      }
    } else if (*pipeline) {
      command = "pipeline";
      inputs.push_back(p.catalog);
      inputs.push_back(p.spec);
      const Catalog c = load_catalog_file(p.catalog);
      const PipelineSpec spec = parse_pipeline(load_json_file(p.spec));
      const ExtremalCertificate cert = certify_extremal_point(c.members, spec, jobs);
      payload["name"] = spec.name;
      payload["realizes"] = spec.realizes;
      payload["r"] = spec.r;
      payload["n"] = spec.n;
      payload["scope"] = c.complete ? "complete catalog" : "supplied candidates only";
      ojson steps = ojson::array();
      for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        ojson s;
        s["dir"] = spec.steps[i].dir == Direction::Max ? "max" : "min";
        s["optimum"] = json_int(cert.run.trace[i].optimum);
        s["remaining"] = cert.run.trace[i].remaining;
        steps.push_back(s);
      }
      payload["steps"] = steps;
      ojson surv = ojson::array();
      for (auto idx : cert.run.survivors) {
        ojson s;
        s["record"] = idx + 1;
        s["canonical_form"] = canonical_form(c.members[idx]);
        s["matroid"] = to_json(c.members[idx]);
        surv.push_back(s);
      }
      payload["survivors"] = surv;
      payload["certified"] = cert.certified;
      if (cert.point) payload["point"] = to_json(*cert.point);
    } else if (*vertex) {
      command = "certify-vertex";
      inputs.push_back(p.points);
      const json pj = load_json_file(p.points);
      if (!pj.contains("r") || !pj.contains("n") || !pj.contains("points") || !pj.at("points").is_object())
        fail(ErrorKind::ParseError, "points file needs 'r', 'n' and a 'points' object");
      std::vector<OmegaPoint> pts;
      std::optional<OmegaPoint> target;
      for (auto it = pj.at("points").begin(); it != pj.at("points").end(); ++it) {
        json one;
        one["r"] = pj.at("r");
        one["n"] = pj.at("n");
        one["point"] = it.value();
        pts.push_back(omega_from_json(one));
        if (it.key() == p.target) target = pts.back();
      }
      if (!target) fail(ErrorKind::BadParameter, "no point named '" + p.target + "'");
      payload["target"] = p.target;
      payload["vertex"] = certify_vertex(pts, *target);
    }

    if (!out_path.empty()) {
      const std::string manifest_path = out_path + ".manifest.json";
      const std::string manifest_name = std::filesystem::path(manifest_path).filename().string();
      if (text.empty()) {
        payload["run_manifest"] = manifest_name;
        text = payload.dump(2) + "\n";
      } else {
        // catalog: the manifest line carries the reference
        const auto nl = text.find('\n');
        ojson head = ojson::parse(text.substr(0, nl));
        head["manifest"]["run_manifest"] = manifest_name;
        text = head.dump() + text.substr(nl);
      }
      std::ofstream of(out_path);
      if (!of) fail(ErrorKind::ParseError, "cannot write " + out_path);
      of << text;
      ojson man;
      man["command"] = command;
      man["arguments"] = args;
      ojson digests = ojson::object();
      for (const auto& f : inputs) digests[f] = "sha256:" + cli_detail::sha256_file(f);
      man["inputs"] = digests;
      man["tool_version"] = kToolVersion;
      man["elapsed_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::ofstream mf(manifest_path);
      mf << man.dump(2) << "\n";
    } else {
      out << (text.empty() ? payload.dump(2) + "\n" : text);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    ojson j;
    j["error"] = e.name();
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    ojson j;
    j["error"] = "ParseError";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  }
}

}  // namespace mvl
