#pragma once

#include <vector>

namespace framemap::lp {

enum class Rel { Le, Ge, Eq };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Options {
  double feas_tol = 1e-9;  // bound feasibility tolerance
  double opt_tol = 1e-9;   // reduced-cost tolerance
  int max_iterations = 0;  // 0 picks a size-based default
};

struct Solution {
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> x;       // structural variables
  int iterations = 0;
  double infeasibility = 0.0;  // leftover phase-1 residual when Infeasible
};

// Sparse linear program in maximization form with boxed variables.
// Coefficients accumulate: adding twice to the same cell sums the values.
class Problem {
 public:
  int add_variable(double lower, double upper, double objective);
  int add_constraint(Rel rel, double rhs);
  void add_coefficient(int row, int var, double value);

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }

  double lower(int v) const { return lower_.at(v); }
  double upper(int v) const { return upper_.at(v); }
  double objective(int v) const { return cost_.at(v); }
  Rel rel(int r) const { return rel_.at(r); }
  double rhs(int r) const { return rhs_.at(r); }

  struct Triplet {
    int row;
    int var;
    double value;
  };
  const std::vector<Triplet>& triplets() const { return triplets_; }

 private:
  std::vector<double> lower_, upper_, cost_;
  std::vector<Rel> rel_;
  std::vector<double> rhs_;
  std::vector<Triplet> triplets_;
};

// Bounded-variable two-phase revised simplex. Deterministic: Dantzig pricing
// with index tie-breaks, falling back to Bland's rule after a stall, so the
// same problem always walks the same pivot sequence.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace framemap::lp
