#include "betafin/classify.hpp"

#include <json.hpp>

namespace betafin {

namespace {

constexpr const char* kFsCite = "Frougny-Solomyak: a_{d-1} >= ... >= a_0 >= 1 implies (F)";
constexpr const char* kHollanderCite = "Hollander: a_{d-1} > a_{d-2} + ... + a_0, a_j >= 0 implies (F)";
constexpr const char* kPfCite = "Akiyama: (PF) without (F) iff p = x^d - B x^{d-1} + sum A_i x^{d-i}, A_i >= 0, A_d > 0, B > 1 + sum A_i";
constexpr const char* kCharaCite = "Frougny-Solomyak: for Pisot beta with (PF), (F) iff d_beta(1) is finite";
constexpr const char* kQuadCite = "every quadratic Pisot number has (PF)";
constexpr const char* kLatticeCite = "(F) implies (PF) implies (F1) implies Pisot";
constexpr const char* kUnitCite = "cubic Pisot units: (F) iff c = 1 and b + c >= 0; (PF) iff (F1) iff (b+c)c >= 0 and (b,c) != (1,-1)";
constexpr const char* kCertCite = "tau^{-1}(P_beta) in P_beta and [-delta,delta]^{d-1} cap V_beta in F_beta imply (F1)";
constexpr const char* kPeriodicCite = "a tau-cycle avoiding 0 gives an element of Z[beta] cap [0,1) with infinite expansion; Z[beta] is in Z[1/beta]";
constexpr const char* kFloorCite = "floor(beta)+1 is finite iff -l_I is in F_beta";
constexpr const char* kSweepCite = "(F1): every natural number has a finite expansion";

class VerdictSetter {
 public:
  explicit VerdictSetter(PropertyReport& r) : r_(r) {}

  bool set(Verdict& slot, Verdict v, const char* prop, std::string rule, std::string cite, std::string data = {}) {
    if (slot == v) return false;
    if (slot != Verdict::unknown)
      throw InvariantViolation(std::string("contradictory verdicts for ") + prop + " (rule " + rule + ")");
    slot = v;
    r_.evidence.push_back({std::string(prop) + " " + to_string(v), std::move(rule), std::move(cite), std::move(data)});
    return true;
  }

  /// One pass over the inclusion lattice; true if anything changed.
  bool propagate() {
    bool changed = false;
    auto up = [&](Verdict& from, Verdict& to, const char* prop) {
      if (from == Verdict::proven) changed |= set(to, Verdict::proven, prop, "inclusion-lattice", kLatticeCite);
    };
    auto down = [&](Verdict& from, Verdict& to, const char* prop) {
      if (from == Verdict::refuted) changed |= set(to, Verdict::refuted, prop, "inclusion-lattice", kLatticeCite);
    };
    up(r_.f, r_.pf, "PF");
    up(r_.pf, r_.f1, "F1");
    up(r_.f1, r_.pisot, "Pisot");
    down(r_.pisot, r_.f1, "F1");
    down(r_.f1, r_.pf, "PF");
    down(r_.pf, r_.f, "F");
    return changed;
  }

 private:
  PropertyReport& r_;
};

std::string word_string(const std::optional<DigitWord>& w) { return w ? compact_string(*w) : "unknown"; }

}  // namespace

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["poly"] = poly;
  j["pisot"] = to_string(pisot);
  j["F"] = to_string(f);
  j["PF"] = to_string(pf);
  j["F1"] = to_string(f1);
  j["d_beta_1"] = word_string(d_beta_one);
  nlohmann::ordered_json ev = nlohmann::ordered_json::array();
  for (const auto& e : evidence) {
    nlohmann::ordered_json x;
    x["claim"] = e.claim;
    x["rule"] = e.rule;
    x["cite"] = e.cite;
    if (!e.data.empty()) x["data"] = e.data;
    ev.push_back(std::move(x));
  }
  j["evidence"] = std::move(ev);
  return j.dump();
}

// ------------------------------------------------------- coefficient rules

bool fs_type(const std::vector<Integer>& a) {
  if (a.empty() || a[0] < 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < a[i - 1]) return false;
  return true;
}

bool hollander_type(const std::vector<Integer>& a) {
  if (a.empty()) return false;
  Integer rest = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) return false;
    if (i + 1 < a.size()) rest += a[i];
  }
  return a.back() > rest;
}

const char* to_string(PfShape s) {
  return s == PfShape::pf_without_f_proven ? "pf_without_f_proven" : "not_special_form";
}

PfShape pf_shape(const std::vector<Integer>& a, const Integer& floor_beta) {
  const std::size_t d = a.size();
  if (d < 2) return PfShape::not_special_form;
  // A_i = -a_{d-i} for i >= 2, B = a_{d-1}.
  Integer sum = 0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    if (a[j] > 0) return PfShape::not_special_form;
    sum -= a[j];
  }
  if (a[0] >= 0) return PfShape::not_special_form;
  const Integer& b = a[d - 1];
  if (!(b > 1 + sum)) return PfShape::not_special_form;
  if (b != floor_beta + 1) throw InvariantViolation("special form with B != floor(beta) + 1");
  return PfShape::pf_without_f_proven;
}

// ------------------------------------------------------------------ cubics

FieldPtr cubic_pisot_field(const Integer& a, const Integer& b, const Integer& c) {
  const std::string name = "x^3-(" + a.get_str() + ")x^2-(" + b.get_str() + ")x-(" + c.get_str() + ")";
  if (c == 0 || !cubic_pisot_criterion(a, b, c)) throw NotCubicPisot(name + " is not a cubic Pisot polynomial");
  std::vector<Integer> coeffs{c, b, a};
  if (is_reducible(coeffs)) throw NotCubicPisot(name + " is reducible");
  return make_field(coeffs);
}

const char* to_string(BassinoCase c) {
  switch (c) {
    case BassinoCase::case_I: return "case_I";
    case BassinoCase::case_II: return "case_II";
    case BassinoCase::case_III: return "case_III";
    case BassinoCase::finite: return "finite";
  }
  return "finite";
}

BassinoCase bassino_case(const Integer& a, const Integer& b, const Integer& c, long* k_out) {
  cubic_pisot_field(a, b, c);
  if (b > 0 && b <= a && c < 0) return BassinoCase::case_I;
  if (b > -a && b <= 0 && b + c < 0) return BassinoCase::case_II;
  if (b <= -a) {
    const Integer s = b + c;
    // e_k = 1 - a + (a-2)/k, compared as k e_k.
    auto at_least_e = [&](const Integer& k) { return k * s >= k * (1 - a) + (a - 2); };
    for (Integer k = 2; k <= a - 2; ++k) {
      const bool below_prev = k == 2 ? s < -1 : !at_least_e(k - 1);
      if (!at_least_e(k) || !below_prev) continue;
      if (b * (k - 1) + c * (k - 2) > (k - 2) - (k - 1) * a) {
        if (k_out) *k_out = k.get_si();
        return BassinoCase::case_III;
      }
      break;
    }
  }
  return BassinoCase::finite;
}

Integer floor_beta_cubic(const Integer& a, const Integer& b, const Integer& c) {
  Integer v;
  switch (bassino_case(a, b, c)) {
    case BassinoCase::case_I: v = a; break;
    case BassinoCase::case_II: v = a - 1; break;
    case BassinoCase::case_III: v = a - 2; break;
    case BassinoCase::finite: throw NotApplicable("d_beta(1) is finite; use the exact floor");
  }
  if (v != cubic_pisot_field(a, b, c)->floor_beta()) throw InvariantViolation("case floor disagrees with exact floor");
  return v;
}

std::optional<long> first_infinite_natural(const BetaNumeration& num, long n_max) {
  for (long n = 1; n <= n_max; ++n)
    if (!num.is_finite_expansion(num.field()->constant(n))) return n;
  return std::nullopt;
}

CpcaseReport cpcase_check(const Integer& a, const Integer& b, const Integer& c, const ClassifyOptions& opt) {
  FieldPtr F = cubic_pisot_field(a, b, c);
  const PfShape shape = pf_shape(F->coeffs(), F->floor_beta());
  CpcaseReport r;
  ShiftRadixSystem srs(F, opt.srs);
  if (srs.f1_certificate().verdict == Verdict::proven) {
    r.f1_source = "srs-certificate";
  } else if (shape == PfShape::pf_without_f_proven) {
    r.f1_source = "pf-shape";
  } else {
    BetaNumeration num(F, opt.orbit_budget);
    std::string why = "(F1) not established";
    if (auto n = first_infinite_natural(num, opt.n_sweep)) why += "; refuted: " + std::to_string(*n) + " has an infinite expansion";
    throw F1Unknown(why);
  }
  BetaNumeration num(F, opt.orbit_budget);
  r.d_beta_one_finite = num.d_beta_one().is_finite();
  r.pf_without_f = shape == PfShape::pf_without_f_proven;
  r.holds = r.pf_without_f == !r.d_beta_one_finite;
  if (!r.holds) throw InvariantViolation("PF-without-F does not match infinite d_beta(1)");
  return r;
}

CubicUnitReport cubic_unit_classify(const Integer& a, const Integer& b, const Integer& c, const ClassifyOptions& opt) {
  if (c != 1 && c != -1) throw NotUnit("constant term must be +-1");
  FieldPtr F = cubic_pisot_field(a, b, c);
  CubicUnitReport r;
  const bool f = c == 1 && b + c >= 0;
  const bool pf = (b + c) * c >= 0 && !(b == 1 && c == -1);
  r.f = f ? Verdict::proven : Verdict::refuted;
  r.pf = r.f1 = pf ? Verdict::proven : Verdict::refuted;

  BetaNumeration num(F, opt.orbit_budget);
  const bool finite = num.d_beta_one().is_finite();
  if (pf && f != finite) throw InvariantViolation("unit verdicts contradict d_beta(1) finiteness");
  r.evidence.push_back({"d_beta(1) " + std::string(finite ? "finite" : "infinite"), "d-beta-one", kCharaCite,
                        compact_string(num.d_beta_one())});

  ShiftRadixSystem srs(F, opt.srs);
  const F1Certificate cert = srs.f1_certificate();
  if (cert.verdict == Verdict::proven && !pf) throw InvariantViolation("SRS certificate proves (F1) against the unit rule");
  r.evidence.push_back({std::string("F1 certificate ") + to_string(cert.verdict), "srs-certificate", kCertCite, cert.diagnostic});

  const PfShape shape = pf_shape(F->coeffs(), F->floor_beta());
  if (shape == PfShape::pf_without_f_proven && (!pf || f)) throw InvariantViolation("coefficient shape contradicts unit rule");

  if (!pf) {
    auto n = first_infinite_natural(num, opt.n_sweep);
    if (!n) throw InvariantViolation("(F1) refuted but every N <= " + std::to_string(opt.n_sweep) + " is finite");
    r.evidence.push_back({"F1 refuted", "n-sweep", kSweepCite, "N = " + std::to_string(*n)});
  }
  return r;
}

// --------------------------------------------------------------- aggregate

PropertyReport classify(const std::vector<Integer>& coeffs, const ClassifyOptions& opt) {
  PropertyReport rep;
  VerdictSetter vs(rep);
  FieldPtr F = make_field(coeffs);
  rep.poly = F->polynomial().to_string();
  const int d = F->degree();
  const PisotReport pr = pisot_report(*F);
  vs.set(rep.pisot, pr.pisot ? Verdict::proven : Verdict::refuted, "Pisot", "schur-cohn",
         "exact root count in the unit disk", pr.diagnostic);
  if (!pr.pisot) {
    vs.set(rep.f1, Verdict::refuted, "F1", "non-pisot", "(F1) implies Pisot");
    while (vs.propagate()) {
    }
    return rep;
  }

  std::optional<BetaNumeration> num;
  try {
    num.emplace(F, opt.orbit_budget);
    rep.d_beta_one = num->d_beta_one();
  } catch (const OrbitBudgetExceeded& e) {
    rep.evidence.push_back({"d_beta(1) unknown", "orbit-budget", "", e.what()});
  }

  if (fs_type(coeffs)) vs.set(rep.f, Verdict::proven, "F", "fs_type", kFsCite);
  if (hollander_type(coeffs)) vs.set(rep.f, Verdict::proven, "F", "hollander_type", kHollanderCite);
  if (d == 2) vs.set(rep.pf, Verdict::proven, "PF", "quadratic-pisot", kQuadCite);

  const PfShape shape = pf_shape(coeffs, F->floor_beta());
  if (shape == PfShape::pf_without_f_proven) {
    vs.set(rep.pf, Verdict::proven, "PF", "pf_shape", kPfCite);
    vs.set(rep.f, Verdict::refuted, "F", "pf_shape", kPfCite);
  }

  if (d == 3 && (coeffs[0] == 1 || coeffs[0] == -1)) {
    const CubicUnitReport u = cubic_unit_classify(coeffs[2], coeffs[1], coeffs[0], opt);
    vs.set(rep.f, u.f, "F", "cubic_unit_classify", kUnitCite);
    vs.set(rep.pf, u.pf, "PF", "cubic_unit_classify", kUnitCite);
    vs.set(rep.f1, u.f1, "F1", "cubic_unit_classify", kUnitCite);
  }

  ShiftRadixSystem srs(F, opt.srs);
  try {
    const OrbitGraph g = srs.q_set();
    for (const auto& l : g.nodes) {
      if (!g.in_f.at(l)) {
        vs.set(rep.f, Verdict::refuted, "F", "periodic-point", kPeriodicCite, vector_key(l));
        break;
      }
    }
  } catch (const ClosureBudgetExceeded& e) {
    rep.evidence.push_back({"Q_beta unknown", "closure-budget", "", e.what()});
  }
  const F1Certificate cert = srs.f1_certificate();
  if (cert.verdict == Verdict::proven) {
    vs.set(rep.f1, Verdict::proven, "F1", "srs-certificate", kCertCite,
           "delta = " + std::to_string(cert.delta) + ", |Q_beta| = " + std::to_string(cert.q_size));
  } else {
    rep.evidence.push_back({"F1 certificate unknown", "srs-certificate", kCertCite, cert.diagnostic});
  }

  if (num) {
    const FieldElement b = F->beta();
    if ((b * b - b - Rational(1)).sign() >= 0) {
      try {
        if (!srs.floor_beta_plus_one_finite(*num))
          vs.set(rep.f1, Verdict::refuted, "F1", "floor-beta-plus-one", kFloorCite, Integer(F->floor_beta() + 1).get_str());
      } catch (const Error& e) {
        rep.evidence.push_back({"floor(beta)+1 unknown", "floor-beta-plus-one", kFloorCite, e.what()});
      }
    }
    if (rep.f1 != Verdict::proven) {
      try {
        if (auto n = first_infinite_natural(*num, opt.n_sweep))
          vs.set(rep.f1, Verdict::refuted, "F1", "n-sweep", kSweepCite, "N = " + std::to_string(*n));
      } catch (const OrbitBudgetExceeded& e) {
        rep.evidence.push_back({"n-sweep incomplete", "n-sweep", kSweepCite, e.what()});
      }
    }
  }

  for (bool changed = true; changed;) {
    changed = vs.propagate();
    if (rep.pf == Verdict::proven && rep.d_beta_one)
      changed |= vs.set(rep.f, rep.d_beta_one->is_finite() ? Verdict::proven : Verdict::refuted, "F", "finite-d-beta-one",
                        kCharaCite, compact_string(*rep.d_beta_one));
    if (rep.f == Verdict::refuted && shape == PfShape::not_special_form)
      changed |= vs.set(rep.pf, Verdict::refuted, "PF", "pf_shape", kPfCite);
  }
  return rep;
}

}  // namespace betafin
