#pragma once

// Command-line front end: count, construct, analyze, verify.
//
// Exit codes: 0 success / all checks passed, 1 check failures, 2 usage or
// input errors, 3 enumeration budget refusal.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afflats/affine.hpp"
#include "afflats/counting.hpp"
#include "afflats/families.hpp"
#include "afflats/verify.hpp"
#include "json.hpp"

namespace afflats::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

using json = nlohmann::ordered_json;

// Single-dash long flags from the documented command lines ("-nmax") become
// their double-dash forms.
inline std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-nmax") a = "--nmax";
    args.push_back(std::move(a));
  }
  return args;
}

inline Flat load_flat(const std::string& spec) {
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw ParseError("cannot open anchor file '" + spec.substr(1) + "'");
    std::string line;
    std::getline(in, line);
    return parse_flat(line);
  }
  return parse_flat(spec);
}

inline FlatFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open family file '" + path + "'");
  try {
    return read_family(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json flat_list(const std::vector<Flat>& flats) {
  json arr = json::array();
  for (const auto& f : flats) arr.push_back(to_string(f));
  return arr;
}

inline json family_params(const FlatFamily& f) {
  json p;
  p["q"] = f.q();
  p["n"] = f.ambient();
  p["k"] = f.k();
  return p;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string formula;
  std::map<std::string, int> v;
  int q = 0;
};

inline int need(const CountArgs& a, const std::string& key) {
  auto it = a.v.find(key);
  if (it == a.v.end()) throw CLI::ValidationError("count " + a.formula + " requires --" + key);
  return it->second;
}

inline BigInt evaluate_count(const CountArgs& a) {
  if (!Field::supported(a.q)) throw PreconditionError("unsupported field order q=" + std::to_string(a.q));
  const int q = a.q;
  const std::string& f = a.formula;
  if (f == "gauss") {
    const int m = need(a, "m"), i = need(a, "i");
    if (m < 0 || i < 0) throw PreconditionError("gauss requires m, i >= 0");
    return gauss_binomial(m, i, q);
  }
  if (f == "flats-in") return num_flats_in(need(a, "m"), need(a, "k"), q);
  if (f == "flats-through") return num_flats_through(need(a, "n"), need(a, "m"), need(a, "k"), q);
  if (f == "nprime") return n_prime(need(a, "m1"), need(a, "h1"), need(a, "m"), need(a, "h"), need(a, "e"), need(a, "l"), q);
  if (f == "a0") return a0(need(a, "n"), need(a, "k"), need(a, "s"), need(a, "t"), q);
  if (f == "a1") return a1({need(a, "n"), need(a, "k1"), need(a, "k2"), need(a, "t"), q});
  if (f == "a2") return a2({need(a, "n"), need(a, "k1"), need(a, "k2"), need(a, "t"), q});
  if (f == "h") return h_value(need(a, "n"), need(a, "b"), need(a, "c"), need(a, "t"), need(a, "x"), q);
  if (f == "bound27") {
    return cover_bound(need(a, "n"), need(a, "k1"), need(a, "k2"), need(a, "t"), need(a, "tau-f"), need(a, "tau-g"), q);
  }
  throw CLI::ValidationError("unknown formula '" + f + "'");
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  int n = 0;
  int q = 2;
  std::optional<int> t, k, k1, k2;
  std::string seed, big, anchor, out;
  bool auto_anchor = false;
};

inline int need_opt(const std::optional<int>& v, const char* name, const std::string& family) {
  if (!v) throw CLI::ValidationError("construct " + family + " requires --" + std::string(name));
  return *v;
}

inline void check_anchor(const Flat& fl, int n, int q, int dim, const char* what) {
  if (fl.ambient() != n || fl.field().q() != q) throw PreconditionError(std::string(what) + " is not a flat of AG(n,q)");
  if (fl.dim() != dim) {
    throw PreconditionError(std::string(what) + " has dimension " + std::to_string(fl.dim()) + ", expected " +
                            std::to_string(dim));
  }
}

inline int run_construct(const ConstructArgs& a, Streams io) {
  if (!Field::supported(a.q)) throw PreconditionError("unsupported field order q=" + std::to_string(a.q));
  const Field& f = Field::of(a.q);
  const int n = a.n;
  if (n < 1) throw PreconditionError("n must be positive");
  std::optional<FlatFamily> fam;
  std::optional<Count> expected;
  const std::string& which = a.family;
  if (which == "trivial") {
    const int t = need_opt(a.t, "t", which);
    const int k = a.k ? *a.k : need_opt(a.k1, "k", which);
    const Flat anchor = a.auto_anchor || a.anchor.empty() ? first_flat(f, n, t) : load_flat(a.anchor);
    check_anchor(anchor, n, a.q, t, "T");
    fam = build_trivial(anchor, k);
    expected = num_flats_through(n, t, k, a.q);
  } else if (which == "A1" || which == "A2") {
    const int t = need_opt(a.t, "t", which);
    const int k = which == "A1" ? need_opt(a.k1, "k1", which) : need_opt(a.k2, "k2", which);
    std::optional<Flat> big;
    if (!a.big.empty() && !a.auto_anchor) {
      big = load_flat(a.big);
    } else {
      big = first_flat(f, n, need_opt(a.k2, "k2", which) + 1);
    }
    if (a.k2) check_anchor(*big, n, a.q, *a.k2 + 1, "M");
    const int k2 = big->dim() - 1;
    const Flat anchor = !a.anchor.empty() && !a.auto_anchor ? load_flat(a.anchor) : first_flat_within(*big, t);
    check_anchor(anchor, n, a.q, t, "T");
    fam = which == "A1" ? build_A1(*big, anchor, k, t) : build_A2(*big, anchor, k, t);
    if (which == "A1" && k >= t && k2 >= t && t >= 1 && n >= k2 + 1) expected = size_A1(n, k, k2, t, a.q);
    if (which == "A2" && k == k2 && k2 >= t && t >= 1 && n >= k2 + 1) expected = size_A2(n, k2, t, a.q);
  } else if (which == "A3" || which == "A4") {
    const int t = need_opt(a.t, "t", which);
    const int k = which == "A3" ? need_opt(a.k1, "k1", which) : need_opt(a.k2, "k2", which);
    const Flat seed = a.auto_anchor || a.seed.empty() ? first_flat(f, n, t + 1) : load_flat(a.seed);
    check_anchor(seed, n, a.q, t + 1, "S");
    fam = which == "A3" ? build_A3(seed, k) : build_A4(seed, k, t);
    if (which == "A3" && k >= t + 1 && t >= 1 && n >= k) expected = size_A3(n, k, t, a.q);
    if (which == "A4" && k >= t && t >= 1 && n >= k) expected = size_A4(n, k, t, a.q);
  } else {
    throw CLI::ValidationError("unknown family '" + which + "' (expected trivial, A1, A2, A3, A4)");
  }

  if (a.out.empty()) {
    write_family(io.out, *fam);
  } else {
    std::ofstream file(a.out);
    if (!file) throw ParseError("cannot open output file '" + a.out + "'");
    write_family(file, *fam);
    io.out << fam->size() << '\n';
  }
  io.err << "size=" << fam->size();
  if (expected) io.err << " expected=" << expected->str();
  io.err << '\n';
  if (expected && *expected != fam->size()) {
    io.err << "error: constructed size differs from the closed form\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string action;
  std::vector<std::string> files;
  int t = 1;
  std::optional<int> k2;
  std::string out;
  std::string report;
};

inline int run_analyze(const AnalyzeArgs& a, Streams io) {
  std::vector<FlatFamily> fams;
  for (const auto& path : a.files) fams.push_back(load_family(path));
  Output report(a.report, io.out);
  json j;
  j["check"] = a.action;
  bool pass = true;

  auto need_files = [&](std::size_t lo, std::size_t hi) {
    if (fams.size() < lo || fams.size() > hi) {
      throw CLI::ValidationError("analyze " + a.action + " takes " + std::to_string(lo) +
                                 (hi == lo ? "" : "+") + " family file(s)");
    }
  };

  if (a.action == "cross-check") {
    need_files(2, 2);
    const auto res = is_cross_t_intersecting(fams[0], fams[1], a.t);
    json p = family_params(fams[0]);
    p["k1"] = fams[0].k();
    p["k2"] = fams[1].k();
    p.erase("k");
    p["t"] = a.t;
    j["params"] = p;
    pass = res.ok;
    j["pass"] = pass;
    if (res.witness) j["witness"] = flat_list({res.witness->first, res.witness->second});
    j["sizes"] = json::array({fams[0].size(), fams[1].size()});
  } else if (a.action == "tau") {
    need_files(1, 1);
    const auto res = tau_t(fams[0], a.t);
    json p = family_params(fams[0]);
    p["t"] = a.t;
    j["params"] = p;
    j["pass"] = true;
    j["tau"] = res.tau;
    j["witness"] = flat_list(res.witnesses);
    j["sizes"] = json::array({fams[0].size()});
  } else if (a.action == "partner") {
    need_files(1, 1);
    const int k2 = a.k2 ? *a.k2 : fams[0].k();
    const auto part = partner(fams[0], k2, a.t);
    if (!a.out.empty()) {
      std::ofstream file(a.out);
      if (!file) throw ParseError("cannot open output file '" + a.out + "'");
      write_family(file, part);
    }
    json p = family_params(fams[0]);
    p["k2"] = k2;
    p["t"] = a.t;
    j["params"] = p;
    j["pass"] = true;
    j["sizes"] = json::array({fams[0].size(), part.size()});
    if (a.out.empty()) j["partner"] = flat_list(part.members());
  } else if (a.action == "dwise") {
    need_files(2, 64);
    const auto res = is_d_wise_t_intersecting(fams, a.t);
    json p = family_params(fams[0]);
    p.erase("k");
    p["d"] = fams.size();
    p["t"] = a.t;
    j["params"] = p;
    pass = res.ok;
    j["pass"] = pass;
    if (!res.ok) j["witness"] = flat_list(res.witness);
    json sizes = json::array();
    for (const auto& f : fams) sizes.push_back(f.size());
    j["sizes"] = sizes;
  } else if (a.action == "covers") {
    need_files(2, 2);
    const auto res = min_covers_cross_check(fams[0], fams[1], a.t);
    json p = family_params(fams[0]);
    p.erase("k");
    p["k1"] = fams[0].k();
    p["k2"] = fams[1].k();
    p["t"] = a.t;
    j["params"] = p;
    pass = res.pass;
    j["pass"] = pass;
    j["tau"] = json::array({res.covers1.tau, res.covers2.tau});
    if (res.witness) j["witness"] = flat_list({res.witness->first, res.witness->second});
    j["sizes"] = json::array({fams[0].size(), fams[1].size(), res.covers1.witnesses.size(), res.covers2.witnesses.size()});
  } else {
    throw CLI::ValidationError("unknown action '" + a.action + "' (expected cross-check, tau, partner, dwise, covers)");
  }
  *report << j.dump() << '\n';
  return pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  bool default_grid = false;
  bool extended = false;
  std::string grid_path;
  std::vector<std::string> checks;
  std::vector<int> q;
  std::optional<int> nmax;
  std::string out;
};

inline int run_verify(const VerifyArgs& a, Streams io) {
  std::vector<std::string> selected;
  if (a.checks.empty()) {
    selected = verify::check_ids();
  } else {
    for (const auto& c : a.checks) {
      std::stringstream ss(c);
      std::string piece;
      while (std::getline(ss, piece, ',')) {
        if (!piece.empty()) selected.push_back(verify::canonical_check_id(piece));
      }
    }
  }
  std::optional<nlohmann::json> grid_json;
  if (!a.grid_path.empty()) {
    std::ifstream in(a.grid_path);
    if (!in) throw ParseError("cannot open grid file '" + a.grid_path + "'");
    try {
      grid_json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("grid file: ") + e.what());
    }
    if (grid_json->contains("checks") && a.checks.empty()) {
      selected.clear();
      for (const auto& c : grid_json->at("checks")) selected.push_back(verify::canonical_check_id(c.get<std::string>()));
    }
  }

  std::vector<verify::CheckReport> reports;
  long long skipped = 0;
  for (const auto& check : selected) {
    for (auto g : verify::default_grids(check, a.extended)) {
      if (grid_json) g = verify::apply_grid_json(g, *grid_json);
      if (!a.q.empty()) {
        for (int q : a.q) {
          if (!Field::supported(q)) throw PreconditionError("unsupported field order q=" + std::to_string(q));
        }
        g.q = a.q;
      }
      if (a.nmax) g.n.hi = *a.nmax;
      auto run = verify::run_check(check, g);
      skipped += run.skipped;
      reports.insert(reports.end(), std::make_move_iterator(run.reports.begin()), std::make_move_iterator(run.reports.end()));
    }
  }
  verify::sort_reports(reports);
  Output out(a.out, io.out);
  for (const auto& r : reports) *out << verify::to_json(r).dump() << '\n';
  const auto summary = verify::summarize(reports, skipped);
  *out << verify::to_json(summary).dump() << '\n';
  return summary.failed == 0 ? kOk : kCheckFailed;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams io) {
  using namespace detail;
  CLI::App app{"Flats of finite affine spaces: exact counts, constructions, and verification"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  CountArgs count;
  auto* c = app.add_subcommand("count", "Evaluate a closed-form count exactly");
  c->add_option("formula", count.formula, "gauss, flats-in, flats-through, nprime, a0, a1, a2, h, bound27")->required();
  c->add_option("-q,--q", count.q, "field order")->required();
  for (const char* key : {"m", "i", "n", "k", "s", "t", "b", "c", "x", "e", "l"}) {
    const std::string k = key;
    c->add_option_function<int>("-" + k + ",--" + k, [&count, k](const int& v) { count.v[k] = v; }, k);
  }
  for (const char* key : {"k1", "k2", "m1", "h1", "h", "tau-f", "tau-g"}) {
    const std::string k = key;
    c->add_option_function<int>("--" + k, [&count, k](const int& v) { count.v[k] = v; }, k);
  }

  ConstructArgs cons;
  auto* cs = app.add_subcommand("construct", "Build a flat family and write it as a family file");
  cs->add_option("family", cons.family, "trivial, A1, A2, A3, A4")->required();
  cs->add_option("-n,--n", cons.n, "ambient dimension")->required();
  cs->add_option("-q,--q", cons.q, "field order");
  cs->add_option("-t,--t", cons.t, "intersection dimension t");
  cs->add_option("-k,--k", cons.k, "member dimension (trivial)");
  cs->add_option("--k1", cons.k1, "k1");
  cs->add_option("--k2", cons.k2, "k2");
  cs->add_option("--seed-flat", cons.seed, "S for A3/A4 (serialized flat or @file)");
  cs->add_option("--M", cons.big, "M for A1/A2 (serialized flat or @file)");
  cs->add_option("--T", cons.anchor, "T for trivial/A1/A2 (serialized flat or @file)");
  cs->add_flag("--auto-anchor", cons.auto_anchor, "use the first suitable flats in enumeration order");
  cs->add_option("-o,--out", cons.out, "output family file (default: stdout)");

  AnalyzeArgs an;
  auto* as = app.add_subcommand("analyze", "Analyze family files");
  as->add_option("action", an.action, "cross-check, tau, partner, dwise, covers")->required();
  as->add_option("files", an.files, "family files")->required();
  as->add_option("-t,--t", an.t, "intersection dimension t");
  as->add_option("--k2", an.k2, "partner member dimension");
  as->add_option("-o,--out", an.out, "partner family output file");
  as->add_option("--report", an.report, "report output (default: stdout)");

  VerifyArgs ver;
  auto* vs = app.add_subcommand("verify", "Run verification checks and stream JSON reports");
  vs->add_flag("--default-grid", ver.default_grid, "use the built-in grids");
  vs->add_flag("--extended", ver.extended, "extended formula grids (q up to 5, parameters up to 16)");
  vs->add_option("--grid", ver.grid_path, "JSON grid file");
  vs->add_option("--checks", ver.checks, "check ids (comma separated)");
  vs->add_option("-q,--q", ver.q, "field orders");
  vs->add_option("--nmax", ver.nmax, "upper bound of the n range");
  vs->add_option("-o,--out", ver.out, "report output (default: stdout)");

  auto args = normalize_args(argc, argv);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c->parsed()) {
      io.out << evaluate_count(count).str() << '\n';
      return kOk;
    }
    if (cs->parsed()) return run_construct(cons, io);
    if (as->parsed()) return run_analyze(an, io);
    if (vs->parsed()) return run_verify(ver, io);
  } catch (const BudgetExceeded& e) {
    nlohmann::ordered_json j;
    j["error"] = "budget";
    j["message"] = e.what();
    j["estimate"] = e.estimate();
    io.err << j.dump() << '\n';
    return kBudget;
  } catch (const CLI::Error& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace afflats::cli
