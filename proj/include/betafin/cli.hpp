#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "betafin/classify.hpp"

namespace betafin::cli {

enum class OutputFormat { text, json, dot };

struct RunConfig {
  std::string poly;
  std::size_t orbit_cap = kDefaultOrbitBudget;
  std::size_t closure_cap = 1'000'000;
  std::size_t walk_cap = 100'000;
  long n_sweep = 200;
  int box_pad = 8;
  OutputFormat format = OutputFormat::text;
  std::uint64_t seed = 1;

  ClassifyOptions classify_options() const;
  SrsBudgets srs_budgets() const;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;
inline constexpr int kInputError = 4;
inline constexpr int kInternal = 5;

/// "L:digits" (value beta^L nu(digits)) or rational coordinates "q0,q1,...".
FieldElement parse_x_spec(const BetaNumeration& num, const std::string& spec);
FieldElement parse_x_coords(const FieldPtr& field, const std::string& coords);
SrsVector parse_vector(const std::string& text);

/// Positional form such as 10.000020(1)^inf or 1.0^inf.
std::string positional(const Expansion& e);

int cmd_expand(const RunConfig& cfg, const std::string& x_spec, const std::string& x_coords, std::ostream& out);
int cmd_srs(const RunConfig& cfg, const std::string& sub, const std::string& vec, std::ostream& out);
int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_verify_family(const RunConfig& cfg, long t_min, long t_max, std::ostream& out);

/// Named checks for the family x^3 - 2t x^2 + 2t x - t, in a fixed order.
std::vector<std::pair<std::string, bool>> verify_family_member(long t, const RunConfig& cfg);

/// Entry point; writes results to out and diagnostics to err.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace betafin::cli
