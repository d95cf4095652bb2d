#include "betafin/cli.hpp"

#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "betafin/normalization.hpp"

namespace betafin::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string digit_run(const std::vector<Digit>& ds) {
  std::string s;
  for (Digit d : ds) s += d > 9 ? "[" + std::to_string(d) + "]" : std::to_string(d);
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> coords_strings(const FieldElement& x) {
  std::vector<std::string> out;
  for (const auto& q : x.coords()) out.push_back(q.get_str());
  return out;
}

Json vectors_json(const SrsSet& s) { return std::vector<SrsVector>(s.begin(), s.end()); }

// The state set of the family x^3 - 2t x^2 + 2t x - t and its tau-edges.
const std::vector<std::pair<SrsVector, SrsVector>>& family_edges() {
  static const std::vector<std::pair<SrsVector, SrsVector>> edges{
      {{1, 0}, {0, 0}},     {{2, 1}, {1, 0}},     {{2, 2}, {2, 1}},     {{1, 2}, {2, 2}},    {{0, 1}, {1, 2}},
      {{-1, 0}, {0, 1}},    {{-1, -1}, {-1, 0}},  {{0, -1}, {-1, -1}},  {{2, 0}, {0, -1}},   {{3, 1}, {1, 0}},
      {{3, 2}, {2, 1}},     {{3, 3}, {3, 2}},     {{2, 3}, {3, 3}},     {{0, 2}, {2, 3}},    {{-2, 0}, {0, 2}},
      {{-3, -2}, {-2, 0}},  {{-2, -3}, {-3, -2}}, {{-1, 1}, {1, 2}},    {{-2, -1}, {-1, 1}}, {{-1, -2}, {-2, -1}},
      {{-3, -1}, {-1, 1}},  {{-3, -3}, {-3, -1}}, {{-2, -2}, {-2, 0}},  {{0, -2}, {-2, -2}}, {{1, -1}, {-1, -1}},
      {{1, 1}, {1, 1}},     {{0, 0}, {0, 0}},
  };
  return edges;
}

bool family_lambda_chains(const ShiftRadixSystem& srs) {
  auto lam = [&](std::int64_t a, std::int64_t b) { return srs.lambda({a, b}); };
  auto chain = [&](long lo, std::vector<SrsVector> ls, long hi) {
    FieldElement prev = srs.field()->constant(lo);
    for (const auto& l : ls) {
      FieldElement v = lam(l[0], l[1]);
      if (!(prev < v)) return false;
      prev = v;
    }
    return prev < srs.field()->constant(hi);
  };
  return chain(0, {{2, 1}, {1, 0}, {3, 1}}, 1) && chain(0, {{-3, -2}, {-1, -1}, {-2, -2}}, 1) &&
         chain(1, {{0, -1}, {2, 0}, {1, -1}}, 2) && chain(1, {{-3, -3}, {-1, -2}}, 2) &&
         chain(2, {{-2, -3}, {0, -2}}, 3);
}

bool conjugacy_spot_check(const ShiftRadixSystem& srs, const BetaNumeration& num, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-20, 20);
  for (int s = 0; s < samples; ++s) {
    SrsVector l(srs.dim());
    for (auto& x : l) x = dist(rng);
    if (!(num.t_map(srs.frac_lambda(l)).second == srs.frac_lambda(srs.tau(l)))) return false;
  }
  return true;
}

}  // namespace

ClassifyOptions RunConfig::classify_options() const {
  ClassifyOptions o;
  o.orbit_budget = orbit_cap;
  o.srs = srs_budgets();
  o.n_sweep = n_sweep;
  return o;
}

SrsBudgets RunConfig::srs_budgets() const { return {closure_cap, walk_cap, box_pad}; }

// ------------------------------------------------------------------ parsing

FieldElement parse_x_coords(const FieldPtr& field, const std::string& coords) {
  std::vector<Rational> q;
  for (const auto& part : split(coords, ',')) {
    Rational r;
    const std::string s = trim(part);
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("bad rational coordinate '" + part + "'");
    r.canonicalize();
    q.push_back(r);
  }
  if (q.empty()) throw ParseError("empty coordinate list");
  if (q.size() > static_cast<std::size_t>(field->degree()))
    throw ParseError("at most " + std::to_string(field->degree()) + " coordinates expected");
  q.resize(field->degree(), Rational(0));
  return field->element(std::move(q));
}

FieldElement parse_x_spec(const BetaNumeration& num, const std::string& spec) {
  const FieldPtr& field = num.field();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return parse_x_coords(field, spec);
  long l = 0;
  try {
    std::size_t used = 0;
    l = std::stol(trim(spec.substr(0, colon)), &used);
    if (used != trim(spec.substr(0, colon)).size()) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("bad exponent in '" + spec + "'");
  }
  const DigitWord w = DigitWord::parse(spec.substr(colon + 1));
  return field->beta_pow(l) * num.nu(w);
}

SrsVector parse_vector(const std::string& text) {
  SrsVector v;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      const std::string s = trim(part);
      v.push_back(std::stoll(s, &used));
      if (used != s.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad vector component '" + part + "'");
    }
  }
  if (v.empty()) throw ParseError("empty vector");
  return v;
}

std::string positional(const Expansion& e) {
  const DigitWord& w = e.word;
  const auto l = static_cast<std::size_t>(std::max(0L, e.exponent));
  std::string s = l == 0 ? "0" : digit_run(w.prefix(l));
  s += '.';
  const DigitWord rest = w.shift(l);
  s += digit_run(rest.preperiod());
  s += rest.is_finite() ? "0^inf" : "(" + digit_run(rest.period()) + ")^inf";
  return s;
}

// ----------------------------------------------------------------- commands

int cmd_expand(const RunConfig& cfg, const std::string& x_spec, const std::string& x_coords, std::ostream& out) {
  FieldPtr F = make_field(parse_polynomial(cfg.poly));
  BetaNumeration num(F, cfg.orbit_cap);
  const FieldElement x = x_coords.empty() ? parse_x_spec(num, x_spec) : parse_x_coords(F, x_coords);
  const Expansion e = num.beta_expand(x);
  const bool exact = num.value(e) == x;
  const bool admissible = num.is_admissible(e.word);
  if (cfg.format == OutputFormat::json) {
    Json j;
    j["poly"] = F->polynomial().to_string();
    j["x"] = coords_strings(x);
    j["L"] = e.exponent;
    j["word"] = e.word.to_string();
    j["expansion"] = positional(e);
    j["finite"] = e.word.is_finite();
    j["admissible"] = admissible;
    j["reconstruction"] = exact;
    j["d_beta_1"] = compact_string(num.d_beta_one());
    out << j.dump() << '\n';
  } else {
    out << "expansion: " << positional(e) << ", " << (e.word.is_finite() ? "finite" : "infinite") << '\n'
        << "x = " << x.to_string() << '\n'
        << "L = " << e.exponent << '\n'
        << "word = " << e.word.to_string() << '\n'
        << "admissible = " << (admissible ? "true" : "false") << '\n'
        << "reconstruction = " << (exact ? "exact" : "MISMATCH") << '\n'
        << "d_beta(1) = " << compact_string(num.d_beta_one()) << '\n';
  }
  return exact && admissible ? kOk : kCheckFailed;
}

int cmd_srs(const RunConfig& cfg, const std::string& sub, const std::string& vec, std::ostream& out) {
  FieldPtr F = make_field(parse_polynomial(cfg.poly));
  ShiftRadixSystem srs(F, cfg.srs_budgets());
  const bool json = cfg.format == OutputFormat::json;

  if (sub == "graph") {
    out << export_graph(srs.q_set(), json ? GraphFormat::json : GraphFormat::dot);
    if (json) out << '\n';
    return kOk;
  }
  if (sub == "qset") {
    const OrbitGraph g = srs.q_set();
    if (json) {
      Json j;
      j["size"] = g.nodes.size();
      j["nodes"] = g.nodes;
      out << j.dump() << '\n';
    } else {
      out << "|Q_beta| = " << g.nodes.size() << '\n';
      for (const auto& v : g.nodes)
        out << vector_key(v) << (g.p_set.count(v) ? " P" : "") << (g.in_f.at(v) ? " F" : "") << '\n';
    }
    return kOk;
  }
  if (sub == "pset") {
    const OrbitGraph g = srs.q_set();
    const auto delta = ShiftRadixSystem::delta(g.p_set);
    if (json) {
      Json j;
      j["p_set"] = vectors_json(g.p_set);
      j["delta"] = delta;
      out << j.dump() << '\n';
    } else {
      out << "|P_beta| = " << g.p_set.size() << '\n';
      for (const auto& v : g.p_set) out << vector_key(v) << '\n';
      out << "delta = " << delta << '\n';
    }
    return kOk;
  }
  if (sub == "fcheck" && !vec.empty()) {
    const SrsVector l = parse_vector(vec);
    if (l.size() != srs.dim()) throw ParseError("vector must have " + std::to_string(srs.dim()) + " components");
    const std::vector<SrsVector> orbit = srs.orbit(l);
    const bool in_f = srs.in_f_beta(l);
    if (json) {
      Json j;
      j["vector"] = l;
      j["in_f_beta"] = in_f;
      j["orbit"] = orbit;
      out << j.dump() << '\n';
    } else {
      out << vector_key(l) << ": " << (in_f ? "in F_beta" : "not in F_beta (cycle)") << '\n' << "orbit:";
      for (std::size_t i = 0; i < orbit.size(); ++i) out << (i ? " -> " : " ") << vector_key(orbit[i]);
      out << " -> " << vector_key(srs.tau(orbit.back())) << '\n';
    }
    return kOk;
  }
  if (sub == "fcheck") {
    const F1Certificate c = srs.f1_certificate();
    if (json) {
      Json j;
      j["verdict"] = to_string(c.verdict);
      j["q_size"] = c.q_size;
      j["p_set"] = vectors_json(c.p_set);
      j["delta"] = c.delta;
      j["r0"] = vectors_json(c.r0);
      j["r0_complete"] = c.r0_complete;
      j["r0_in_f"] = c.r0_in_f;
      j["preimage_closure_ok"] = c.preimage_closure_ok;
      j["diagnostic"] = c.diagnostic;
      out << j.dump() << '\n';
    } else {
      out << "F1 certificate: " << to_string(c.verdict) << '\n'
          << "|Q_beta| = " << c.q_size << '\n'
          << "delta = " << c.delta << '\n'
          << "preimage closure: " << (c.preimage_closure_ok ? "ok" : "fails") << '\n'
          << "R0 (" << c.r0.size() << (c.r0_complete ? ", complete" : ", incomplete") << "): "
          << (c.r0_in_f ? "inside F_beta" : "not inside F_beta") << '\n';
      if (!c.diagnostic.empty()) out << "diagnostic: " << c.diagnostic << '\n';
    }
    return kOk;
  }
  throw ParseError("unknown srs subcommand '" + sub + "'");
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const PropertyReport r = classify(parse_polynomial(cfg.poly), cfg.classify_options());
  if (cfg.format == OutputFormat::json) {
    out << r.to_json() << '\n';
    return kOk;
  }
  out << "poly: " << r.poly << '\n'
      << "pisot: " << to_string(r.pisot) << '\n'
      << "F: " << to_string(r.f) << '\n'
      << "PF: " << to_string(r.pf) << '\n'
      << "F1: " << to_string(r.f1) << '\n'
      << "d_beta(1): " << (r.d_beta_one ? compact_string(*r.d_beta_one) : "unknown") << '\n'
      << "evidence:\n";
  for (const auto& e : r.evidence) {
    out << "  " << e.claim << " [" << e.rule << "]";
    if (!e.data.empty()) out << " {" << e.data << "}";
    out << '\n';
  }
  return kOk;
}

std::vector<std::pair<std::string, bool>> verify_family_member(long t, const RunConfig& cfg) {
  if (t < 2) throw OutOfRange("the family needs t >= 2");
  std::vector<std::pair<std::string, bool>> checks;
  const Integer T(t);
  std::vector<Integer> coeffs{T, -2 * T, 2 * T};
  FieldPtr F = make_field(coeffs);
  checks.emplace_back("pisot", is_pisot(*F));
  checks.emplace_back("floor", F->floor_beta() == 2 * T - 2);

  BetaNumeration num(F, cfg.orbit_cap);
  checks.emplace_back("d_beta_1", num.d_beta_one() == DigitWord::finite({2 * t - 2, 2 * t - 2, t - 1, 0, 0, t}));

  ShiftRadixSystem srs(F, cfg.srs_budgets());
  const OrbitGraph g = srs.q_set();
  std::map<SrsVector, SrsVector> expected(family_edges().begin(), family_edges().end());
  SrsSet expected_nodes;
  for (const auto& [k, v] : expected) expected_nodes.insert(k);
  checks.emplace_back("qset", SrsSet(g.nodes.begin(), g.nodes.end()) == expected_nodes);
  checks.emplace_back("edges", g.tau == expected);
  checks.emplace_back("pset", g.p_set == SrsSet{{1, 1}});
  checks.emplace_back("preimages", srs.tau_preimages({1, 1}) == SrsSet{{1, 1}});

  const F1Certificate cert = srs.f1_certificate();
  checks.emplace_back("r0_in_f", cert.r0_complete && cert.r0_in_f);
  checks.emplace_back("f1_certificate", cert.verdict == Verdict::proven);
  checks.emplace_back("pf_refuted", classify(coeffs, cfg.classify_options()).pf == Verdict::refuted);
  checks.emplace_back("lambda_chains", family_lambda_chains(srs));
  checks.emplace_back("conjugacy", conjugacy_spot_check(srs, num, cfg.seed + static_cast<std::uint64_t>(t), 50));
  return checks;
}

int cmd_verify_family(const RunConfig& cfg, long t_min, long t_max, std::ostream& out) {
  if (t_min < 2 || t_max < t_min) throw OutOfRange("need 2 <= t_min <= t_max");
  std::vector<std::future<std::vector<std::pair<std::string, bool>>>> jobs;
  for (long t = t_min; t <= t_max; ++t) jobs.push_back(std::async(std::launch::async, verify_family_member, t, cfg));

  bool all = true;
  Json rows = Json::array();
  for (long t = t_min; t <= t_max; ++t) {
    const auto checks = jobs[static_cast<std::size_t>(t - t_min)].get();
    bool pass = true;
    std::string failed;
    Json row;
    row["t"] = t;
    for (const auto& [name, ok] : checks) {
      row["checks"][name] = ok;
      if (!ok) {
        pass = false;
        failed += (failed.empty() ? "" : ", ") + name;
      }
    }
    row["pass"] = pass;
    all = all && pass;
    if (cfg.format == OutputFormat::json) {
      rows.push_back(std::move(row));
    } else {
      out << "t=" << t << ' ' << (pass ? "PASS" : "FAIL: " + failed) << '\n';
    }
  }
  if (cfg.format == OutputFormat::json) {
    Json j;
    j["results"] = std::move(rows);
    j["pass"] = all;
    out << j.dump() << '\n';
  } else {
    out << (all ? "all passed" : "FAILURES") << '\n';
  }
  return all ? kOk : kCheckFailed;
}

// --------------------------------------------------------------------- main

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact beta-expansions and finiteness properties of Pisot numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file; flags win");

  RunConfig cfg;
  std::string x_spec, x_coords, vec;
  long t_min = 2, t_max = 10;
  const std::map<std::string, OutputFormat> formats{
      {"text", OutputFormat::text}, {"json", OutputFormat::json}, {"dot", OutputFormat::dot}};

  app.add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--budget-orbit", cfg.orbit_cap, "T-orbit state cap")->check(CLI::PositiveNumber);
  app.add_option("--budget-closure", cfg.closure_cap, "Q_beta node cap")->check(CLI::PositiveNumber);
  app.add_option("--budget-walk", cfg.walk_cap, "F_beta walk cap")->check(CLI::PositiveNumber);
  app.add_option("--box-pad", cfg.box_pad, "Padding factor for the V_beta box search")->check(CLI::PositiveNumber);
  app.add_option("--n-sweep", cfg.n_sweep, "Largest N tried when refuting (F1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized spot checks");

  auto* expand = app.add_subcommand("expand", "Beta-expansion of a field element");
  expand->add_option("--poly", cfg.poly, "Polynomial, e.g. x^3-4x^2+4x-2")->required();
  auto* xo = expand->add_option("--x", x_spec, "L:digits or rational coordinates q0,q1,...");
  auto* xc = expand->add_option("--x-coords", x_coords, "Rational coordinates q0,q1,...");
  xo->excludes(xc);

  auto* srs = app.add_subcommand("srs", "Shift radix system queries");
  srs->add_option("--poly", cfg.poly, "Polynomial")->required();
  srs->require_subcommand(1);
  std::string srs_sub;
  for (const char* name : {"graph", "qset", "pset", "fcheck"}) {
    auto* s = srs->add_subcommand(name);
    s->fallthrough();
    s->callback([&srs_sub, name] { srs_sub = name; });
    if (std::string(name) == "fcheck") s->add_option("--vec", vec, "Vector l1,...,l_{d-1}; omit for the (F1) certificate");
  }
  srs->fallthrough();

  auto* cls = app.add_subcommand("classify", "Finiteness property report");
  cls->add_option("--poly", cfg.poly, "Polynomial")->required();

  auto* fam = app.add_subcommand("verify-family", "Check the family x^3-2tx^2+2tx-t");
  fam->add_option("--t-min", t_min, "Smallest t");
  fam->add_option("--t-max", t_max, "Largest t");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  if (*expand && x_spec.empty() && x_coords.empty()) {
    err << "expand needs --x or --x-coords\n";
    return kUsage;
  }

  try {
    if (*expand) return cmd_expand(cfg, x_spec, x_coords, out);
    if (*srs) return cmd_srs(cfg, srs_sub, vec, out);
    if (*cls) return cmd_classify(cfg, out);
    if (*fam) return cmd_verify_family(cfg, t_min, t_max, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const OrbitBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const ClosureBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace betafin::cli
