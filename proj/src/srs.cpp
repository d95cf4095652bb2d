#include "betafin/srs.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <json.hpp>

namespace betafin {

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw OutOfRange("SRS coordinate does not fit in 64 bits");
  return z.get_si();
}

SrsVector negate(SrsVector v) {
  for (auto& x : v) x = -x;
  return v;
}

bool is_zero(const SrsVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::proven: return "proven";
    case Verdict::refuted: return "refuted";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::string vector_key(const SrsVector& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

ShiftRadixSystem::ShiftRadixSystem(FieldPtr field, SrsBudgets budgets) : field_(std::move(field)), budgets_(budgets) {
  const int d = field_->degree();
  const FieldElement binv = field_->beta_inverse();
  for (int j = 1; j <= d - 1; ++j) {
    FieldElement rj = field_->zero();
    FieldElement p = binv;
    for (int i = 1; i <= j; ++i) {
      rj += p * Rational(field_->a(j - i));
      p *= binv;
    }
    r_.push_back(std::move(rj));
  }
}

SrsVector ShiftRadixSystem::l_i() const {
  SrsVector v(dim(), 0);
  v.back() = 1;
  return v;
}

FieldElement ShiftRadixSystem::lambda(const SrsVector& l) const {
  if (l.size() != dim()) throw OutOfRange("SRS vector has wrong length");
  FieldElement s = field_->zero();
  for (std::size_t j = 0; j < l.size(); ++j)
    if (l[j] != 0) s += r_[j] * Rational(static_cast<long>(l[j]));
  return s;
}

FieldElement ShiftRadixSystem::frac_lambda(const SrsVector& l) const { return lambda(l).frac(); }

SrsVector ShiftRadixSystem::tau(const SrsVector& l) const {
  Integer f = lambda(l).floor();
  SrsVector out(l.begin() + 1, l.end());
  out.push_back(to_i64(-f));
  return out;
}

SrsVector ShiftRadixSystem::tau_star(const SrsVector& l) const {
  SrsVector out = negate(tau(negate(l)));
  if (!is_zero(l)) {
    SrsVector alt = tau(l);
    alt.back() -= 1;
    if (alt != out) throw InvariantViolation("tau*(l) != tau(l) - l_I for " + vector_key(l));
  }
  return out;
}

std::vector<SrsVector> ShiftRadixSystem::orbit(const SrsVector& l) const {
  std::vector<SrsVector> out;
  SrsSet seen;
  SrsVector cur = l;
  while (seen.insert(cur).second) {
    if (out.size() >= budgets_.walk) throw ClosureBudgetExceeded("tau-orbit exceeds the walk budget");
    out.push_back(cur);
    cur = tau(cur);
  }
  return out;
}

OrbitGraph ShiftRadixSystem::q_set() const {
  OrbitGraph g;
  SrsSet seen{l_i()};
  std::deque<SrsVector> queue{l_i()};
  while (!queue.empty()) {
    SrsVector l = std::move(queue.front());
    queue.pop_front();
    SrsVector t = tau(l);
    SrsVector ts = tau_star(l);
    g.tau.emplace(l, t);
    for (SrsVector* next : {&t, &ts}) {
      if (seen.insert(*next).second) {
        if (seen.size() > budgets_.closure) throw ClosureBudgetExceeded("Q_beta exceeds " + std::to_string(budgets_.closure) + " nodes");
        queue.push_back(*next);
      }
    }
  }
  g.nodes.assign(seen.begin(), seen.end());

  // Membership: follow the unique tau edge inside the graph.
  for (const auto& start : g.nodes) {
    if (g.in_f.count(start)) continue;
    std::vector<SrsVector> path;
    std::map<SrsVector, std::size_t> pos;
    SrsVector cur = start;
    bool reaches_zero = false;
    for (;;) {
      if (is_zero(cur)) {
        reaches_zero = true;
        break;
      }
      if (auto it = g.in_f.find(cur); it != g.in_f.end()) {
        reaches_zero = it->second;
        break;
      }
      if (auto it = pos.find(cur); it != pos.end()) {
        for (std::size_t k = it->second; k < path.size(); ++k) g.p_set.insert(path[k]);
        break;
      }
      pos.emplace(cur, path.size());
      path.push_back(cur);
      cur = g.tau.at(cur);
    }
    for (const auto& v : path) g.in_f[v] = reaches_zero;
    if (is_zero(cur)) g.in_f[cur] = true;
  }
  return g;
}

bool ShiftRadixSystem::in_f_beta(const SrsVector& l) const {
  SrsSet seen;
  SrsVector cur = l;
  while (!is_zero(cur)) {
    if (!seen.insert(cur).second) return false;
    if (seen.size() > budgets_.walk) throw ClosureBudgetExceeded("F_beta walk exceeds " + std::to_string(budgets_.walk) + " steps");
    cur = tau(cur);
  }
  return true;
}

SrsSet ShiftRadixSystem::tau_preimages(const SrsVector& m, const SrsSet* restrict) const {
  if (m.size() != dim()) throw OutOfRange("SRS vector has wrong length");
  // l = (x, m_1, ..., m_{d-2}) and floor(r_1 x + C) = -m_{d-1}.
  SrsVector base(dim(), 0);
  for (std::size_t j = 1; j < dim(); ++j) base[j] = m[j - 1];
  const FieldElement c = lambda(base);
  const Rational target(static_cast<long>(-m.back()));
  const Integer& a0 = field_->a(0);
  // 1 / r_1 = beta / a_0
  const FieldElement inv_r1 = field_->beta() * Rational(Rational(1) / Rational(a0));
  const FieldElement lo = (field_->constant(target) - c) * inv_r1;
  const FieldElement hi = (field_->constant(target + 1) - c) * inv_r1;
  Integer x_min, x_max;
  if (a0 > 0) {
    // lo <= x < hi
    x_min = -((-lo).floor());
    x_max = -((-hi).floor()) - 1;
  } else {
    // hi < x <= lo
    x_min = hi.floor() + 1;
    x_max = lo.floor();
  }
  SrsSet out;
  for (Integer x = x_min; x <= x_max; ++x) {
    SrsVector l = base;
    l[0] = to_i64(x);
    if (tau(l) != m) throw InvariantViolation("preimage bound produced a non-preimage");
    if (!restrict || restrict->count(l)) out.insert(std::move(l));
  }
  return out;
}

std::int64_t ShiftRadixSystem::delta(const SrsSet& p) {
  std::int64_t d = 0;
  for (const auto& v : p)
    for (auto x : v) d = std::max(d, x < 0 ? -x : x);
  return d;
}

VBoxResult ShiftRadixSystem::v_box_set(std::int64_t delta) const {
  VBoxResult res;
  const SrsVector zero(dim(), 0);
  if (delta == 0) {
    res.set.insert(zero);
    res.complete = true;
    return res;
  }
  SrsSet s;
  for (auto& v : orbit(l_i()))
    if (!is_zero(v)) s.insert(v);
  auto all = [&](auto pred) {
    return std::all_of(s.begin(), s.end(), [&](const SrsVector& v) { return std::all_of(v.begin(), v.end(), pred); });
  };
  const bool monotone = all([](std::int64_t x) { return x >= 0; }) || all([](std::int64_t x) { return x <= 0; });
  std::int64_t bound = delta;
  if (!monotone) {
    std::int64_t norm = 0;
    for (const auto& v : s)
      for (auto x : v) norm = std::max(norm, x < 0 ? -x : x);
    bound = delta + norm * budgets_.box_pad;
  }
  auto inside = [](const SrsVector& v, std::int64_t b) {
    return std::all_of(v.begin(), v.end(), [b](std::int64_t x) { return x >= -b && x <= b; });
  };
  SrsSet seen{zero};
  std::deque<SrsVector> queue{zero};
  while (!queue.empty()) {
    SrsVector l = std::move(queue.front());
    queue.pop_front();
    for (const auto& v : s) {
      SrsVector n = l;
      for (std::size_t j = 0; j < n.size(); ++j) n[j] -= v[j];
      if (!inside(n, bound)) continue;
      if (seen.insert(n).second) {
        if (seen.size() > budgets_.closure) throw ClosureBudgetExceeded("V_beta box search exceeds budget");
        queue.push_back(std::move(n));
      }
    }
  }
  for (const auto& v : seen)
    if (inside(v, delta)) res.set.insert(v);
  res.complete = monotone;
  return res;
}

F1Certificate ShiftRadixSystem::f1_certificate() const {
  F1Certificate cert;
  try {
    const OrbitGraph g = q_set();
    cert.q_size = g.nodes.size();
    cert.p_set = g.p_set;
    cert.delta = delta(g.p_set);

    cert.preimage_closure_ok = true;
    for (const auto& p : g.p_set)
      for (const auto& l : tau_preimages(p))
        if (!g.p_set.count(l)) cert.preimage_closure_ok = false;

    if (cert.preimage_closure_ok) {
      SrsSet q(g.nodes.begin(), g.nodes.end());
      for (const auto& l : g.nodes)
        if (!q.count(negate(l))) throw InvariantViolation("preimage closure holds but Q_beta != -Q_beta");
      for (const auto& l : g.nodes)
        if (!g.in_f.at(l) && !g.p_set.count(l)) throw InvariantViolation("Q_beta \\ F_beta is not inside P_beta");
    }

    VBoxResult box = v_box_set(cert.delta);
    cert.r0 = box.set;
    cert.r0_complete = box.complete;
    cert.r0_in_f = std::all_of(box.set.begin(), box.set.end(), [&](const SrsVector& l) { return in_f_beta(l); });

    if (cert.preimage_closure_ok && cert.r0_in_f && cert.r0_complete) {
      cert.verdict = Verdict::proven;
    } else {
      cert.verdict = Verdict::unknown;
      if (!cert.preimage_closure_ok) cert.diagnostic = "a preimage of a periodic point is not periodic";
      else if (!cert.r0_in_f) cert.diagnostic = "some element of the V_beta box does not reach 0";
      else cert.diagnostic = "V_beta box enumeration incomplete (sign-mixed orbit of l_I)";
    }
  } catch (const ClosureBudgetExceeded& e) {
    cert.verdict = Verdict::unknown;
    cert.diagnostic = e.what();
  }
  return cert;
}

bool ShiftRadixSystem::floor_beta_plus_one_finite(const BetaNumeration& num) const {
  const FieldElement b = field_->beta();
  if ((b * b - b - Rational(1)).sign() < 0) throw GoldenRatioPrecondition();
  const bool via_srs = in_f_beta(negate(l_i()));
  const bool direct = num.is_finite_expansion(field_->constant(Rational(field_->floor_beta() + 1)));
  if (via_srs != direct) throw InvariantViolation("floor(beta)+1 finiteness disagrees with -l_I membership");
  return via_srs;
}

std::string export_graph(const OrbitGraph& g, GraphFormat format) {
  if (format == GraphFormat::dot) {
    std::ostringstream out;
    out << "digraph srs {\n";
    for (const auto& v : g.nodes) {
      std::vector<std::string> attrs;
      if (g.p_set.count(v)) attrs.emplace_back("shape=doublecircle");
      if (g.in_f.at(v)) attrs.emplace_back("style=filled");
      out << "  \"" << vector_key(v) << '"';
      if (!attrs.empty()) {
        out << " [";
        for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
        out << ']';
      }
      out << ";\n";
    }
    for (const auto& v : g.nodes) out << "  \"" << vector_key(v) << "\" -> \"" << vector_key(g.tau.at(v)) << "\";\n";
    out << "}\n";
    return out.str();
  }
  nlohmann::json j;
  j["nodes"] = g.nodes;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& v : g.nodes) edges.push_back({v, g.tau.at(v)});
  j["edges"] = edges;
  j["p_set"] = std::vector<SrsVector>(g.p_set.begin(), g.p_set.end());
  std::vector<bool> flags;
  for (const auto& v : g.nodes) flags.push_back(g.in_f.at(v));
  j["f_flags"] = flags;
  return j.dump();
}

}  // namespace betafin
