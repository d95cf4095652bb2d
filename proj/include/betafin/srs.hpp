#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "betafin/expansion.hpp"

namespace betafin {

/// Integer vector of length d - 1.
using SrsVector = std::vector<std::int64_t>;
using SrsSet = std::set<SrsVector>;

struct SrsBudgets {
  std::size_t closure = 1'000'000;  // nodes of Q_beta
  std::size_t walk = 100'000;       // steps of an F_beta membership walk
  int box_pad = 8;
};

/// tau-transitions over Q_beta. Nodes are sorted lexicographically.
struct OrbitGraph {
  std::vector<SrsVector> nodes;
  std::map<SrsVector, SrsVector> tau;  // out-degree exactly one
  SrsSet p_set;
  std::map<SrsVector, bool> in_f;
};

struct VBoxResult {
  SrsSet set;
  bool complete = false;
};

enum class Verdict { proven, refuted, unknown };
const char* to_string(Verdict v);

struct F1Certificate {
  Verdict verdict = Verdict::unknown;  // never refuted
  std::size_t q_size = 0;
  SrsSet p_set;
  std::int64_t delta = 0;
  SrsSet r0;
  bool r0_complete = false;
  bool r0_in_f = false;
  bool preimage_closure_ok = false;
  std::string diagnostic;
};

enum class GraphFormat { dot, json };

/// The shift radix system tau(l) = (l_2, ..., l_{d-1}, -floor(r . l)) attached
/// to beta, with r_j = sum_{i=1}^{j} a_{j-i} beta^{-i}.
class ShiftRadixSystem {
 public:
  explicit ShiftRadixSystem(FieldPtr field, SrsBudgets budgets = {});

  const FieldPtr& field() const { return field_; }
  const SrsBudgets& budgets() const { return budgets_; }
  std::size_t dim() const { return r_.size(); }
  const std::vector<FieldElement>& r() const { return r_; }
  /// (0, ..., 0, 1).
  SrsVector l_i() const;

  FieldElement lambda(const SrsVector& l) const;
  /// The fractional part {lambda(l)}.
  FieldElement frac_lambda(const SrsVector& l) const;
  SrsVector tau(const SrsVector& l) const;
  /// -tau(-l); checked against tau(l) - l_I for l != 0.
  SrsVector tau_star(const SrsVector& l) const;
  /// tau(l), tau^2(l), ... until the first repeat (l itself first).
  std::vector<SrsVector> orbit(const SrsVector& l) const;

  /// Closure of {l_I} under tau and tau*. Throws ClosureBudgetExceeded.
  OrbitGraph q_set() const;
  /// Whether some tau^k(l) is 0. Throws ClosureBudgetExceeded.
  bool in_f_beta(const SrsVector& l) const;
  SrsSet p_set(const OrbitGraph& g) const { return g.p_set; }
  /// Every l in Z^{d-1} with tau(l) = m, optionally intersected with restrict.
  SrsSet tau_preimages(const SrsVector& m, const SrsSet* restrict = nullptr) const;
  /// max |l_j| over the set; 0 for the empty set.
  static std::int64_t delta(const SrsSet& p);
  /// V_beta within the box [-delta, delta]^{d-1}.
  VBoxResult v_box_set(std::int64_t delta) const;
  F1Certificate f1_certificate() const;
  /// Whether floor(beta) + 1 has a finite expansion, decided through -l_I.
  /// Throws GoldenRatioPrecondition when beta^2 < beta + 1.
  bool floor_beta_plus_one_finite(const BetaNumeration& num) const;

 private:
  FieldPtr field_;
  SrsBudgets budgets_;
  std::vector<FieldElement> r_;
};

std::string export_graph(const OrbitGraph& g, GraphFormat format);
std::string vector_key(const SrsVector& v);

}  // namespace betafin
