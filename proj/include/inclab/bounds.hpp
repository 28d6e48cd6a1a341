#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inclab/rational.hpp"

namespace inclab {

/// Every incidence bound the workbench knows how to evaluate.
enum class FormulaId {
  PS,          // planar, k degrees of freedom
  SZ,          // planar, s-dimensional family
  CIRC_PLANE,  // planar circles
  MAIN,        // R^3, k degrees of freedom, container parameter q
  IMPR,        // MAIN refined by reduced dimension s
  CIRC3,       // circles in R^3
  ZAHL,        // circles in R^3, alternative
  GK_LINES,    // lines in R^3
  RICH_A,      // t-rich points, k degrees of freedom
  RICH_B,      // t-rich points, reduced dimension s
  TRI,         // similar triangles among n points
};

std::string_view to_string(FormulaId id);
std::optional<FormulaId> parse_formula(std::string_view text);
const std::vector<FormulaId>& all_formulas();

struct BoundParams {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> t;
  std::optional<int> k;
  std::optional<int> s;
  int mu = 1;
  Rat eps{Int(1), Int(100)};
  long double A = 1.0L;
  // Partition-degree constants.
  long double c = 1.0L;
  long double a = 1.0L;
  long double a_prime = 1.0L;
};

/// How a logarithmic factor's argument is formed; the factor is
/// max(log2(arg), 1)^(2/11).
enum class LogArg { None, M3OverN, M3OverQ };

/// One monomial m^em n^en q^eq t^et (times an optional log factor).
/// Exponents are exact rationals so identities can be checked exactly.
struct Term {
  Rat em, en, eq, et;
  LogArg log = LogArg::None;

  friend bool operator==(const Term&, const Term&) = default;
};

/// The terms of formula `id` at the given k, s, eps. Throws MissingParam
/// if a structural parameter the formula needs is absent.
std::vector<Term> formula_terms(FormulaId id, const BoundParams& p);

long double eval_term(const Term& term, const BoundParams& p);

/// A times the sum of the formula's terms. TRI reads the point count from
/// `n`. Throws MissingParam / InvalidParam on bad inputs.
long double eval_bound(FormulaId id, const BoundParams& p);

/// Crossover exponent (5s - 4k - 2) / (ks - 4k + 2s) between IMPR and MAIN.
Rat impr_threshold_exponent(int k, int s);

/// Degree of the partition: c m^(k/(3k-2)) / n^(1/(3k-2)) in the middle
/// range, c n^(1/2) above a n^(3/2). BelowBase when m < a' n^(1/k).
std::uint64_t partition_degree(std::uint64_t m, std::uint64_t n, int k, long double c,
                               long double a, long double a_prime);

struct Observation {
  BoundParams params;
  long double observed = 0;
};

/// Smallest A for which A * shape dominates every observation.
long double calibrate_A(const std::vector<Observation>& instances, FormulaId id);

/// Least-squares slope of log y on log x.
long double fit_exponent(const std::vector<std::pair<long double, long double>>& series);

/// Human-readable exponent listing, e.g. "m^1/2 n^3/4 + m^2/3 n^1/3 q^1/3 + m + n".
std::string describe(FormulaId id, const BoundParams& p);

}  // namespace inclab
