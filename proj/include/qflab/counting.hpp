#pragma once

// Brute-force representation counts: #{ x in M_{m,n}(Z/p^t) : x^t diag(s) x = T mod p^t }.
//
// This is the independent oracle that every closed form in densities.hpp is
// audited against, so it deliberately uses nothing but enumeration.

#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qflab {

enum class Strategy { naive, mitm };

Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);

struct CountJob {
  std::vector<Rational> s;  // diagonal of the representing form, m entries
  SymMat T;                 // n x n target
  OddPrime p;
  int t = 1;
  Strategy strategy = Strategy::mitm;

  int m() const { return static_cast<int>(s.size()); }
  int n() const { return static_cast<int>(T.rows()); }
  /// Throws std::invalid_argument unless m >= n >= 1, t >= 1, T symmetric and
  /// every scalar p-integral.
  void validate() const;
};

struct CountOptions {
  /// Maximum number of enumerated states; defaults to QFLAB_STATE_BUDGET or 2e9.
  double state_budget = default_state_budget();
  /// Worker threads for the streamed half (0 = hardware concurrency).
  unsigned threads = 0;

  static double default_state_budget();
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double estimated, double budget);
  double estimated() const { return estimated_; }
  double budget() const { return budget_; }

 private:
  double estimated_;
  double budget_;
};

/// States the chosen strategy would enumerate (before multiplicity compression).
double estimated_states(const CountJob& job);

/// Throws BudgetExceeded when estimated_states(job) exceeds the budget.
Integer count_solutions(const CountJob& job, const CountOptions& options = {});

/// m n - n (n + 1) / 2: the count at level t is scaled by p^{-t * this}.
int normalization_exponent(int m, int n);

struct DensityResult {
  Integer raw_count;
  int t_used = 0;
  int exponent = 0;  // normalization_exponent(m, n)
  Rational value;
  bool stabilized = false;
  std::vector<std::pair<int, Rational>> table;  // (t, normalized value) in order computed
};

/// Normalized count at a single level t (stabilized = false).
DensityResult normalized_count(const CountJob& job, const CountOptions& options = {});

class NotStabilized : public std::runtime_error {
 public:
  explicit NotStabilized(std::vector<std::pair<int, Rational>> table);
  const std::vector<std::pair<int, Rational>>& table() const { return table_; }

 private:
  std::vector<std::pair<int, Rational>> table_;
};

struct OracleOptions {
  std::optional<int> t_start;  // default: max Jordan exponent of T, plus one
  std::optional<int> t_max;    // default: t_start + 2
  Strategy strategy = Strategy::mitm;
  /// Require a third level to agree once two consecutive levels agree.
  bool confirm = false;
  CountOptions count;
};

/// Evaluates consecutive levels until two agree. Throws NotStabilized with the
/// partial table if t_max is reached first; never returns an unstabilized value.
DensityResult density_oracle(const std::vector<Rational>& s, const SymMat& T, OddPrime p,
                             const OracleOptions& options = {});

}  // namespace qflab
