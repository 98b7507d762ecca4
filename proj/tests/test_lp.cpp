#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "doctest.h"
#include "framemap/lp.hpp"
#include "framemap/rng.hpp"

using framemap::Rng;
namespace lp = framemap::lp;

namespace {

struct BoxLp {
  double lo[2], up[2], cost[2];
  struct Row {
    double a, b, rhs;
    lp::Rel rel;
  };
  std::vector<Row> rows;

  lp::Problem build() const {
    lp::Problem p;
    p.add_variable(lo[0], up[0], cost[0]);
    p.add_variable(lo[1], up[1], cost[1]);
    for (const auto& r : rows) {
      const int row = p.add_constraint(r.rel, r.rhs);
      p.add_coefficient(row, 0, r.a);
      p.add_coefficient(row, 1, r.b);
    }
    return p;
  }

  bool feasible(double x, double y, double tol) const {
    if (x < lo[0] - tol || x > up[0] + tol) return false;
    if (y < lo[1] - tol || y > up[1] + tol) return false;
    for (const auto& r : rows) {
      const double v = r.a * x + r.b * y;
      if (r.rel == lp::Rel::Le && v > r.rhs + tol) return false;
      if (r.rel == lp::Rel::Ge && v < r.rhs - tol) return false;
      if (r.rel == lp::Rel::Eq && std::abs(v - r.rhs) > tol) return false;
    }
    return true;
  }

  // Exact optimum by enumerating intersections of constraint boundaries:
  // every vertex of the (box-bounded) feasible region lies on two of them.
  std::optional<double> best_vertex() const {
    std::vector<std::array<double, 3>> lines = {{1, 0, lo[0]}, {1, 0, up[0]},
                                                {0, 1, lo[1]}, {0, 1, up[1]}};
    for (const auto& r : rows) lines.push_back({r.a, r.b, r.rhs});
    std::optional<double> best;
    for (size_t i = 0; i < lines.size(); ++i) {
      for (size_t j = i + 1; j < lines.size(); ++j) {
        const double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
        if (std::abs(det) < 1e-9) continue;
        const double x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
        const double y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
        if (!feasible(x, y, 1e-9)) continue;
        const double obj = cost[0] * x + cost[1] * y;
        if (!best || obj > *best) best = obj;
      }
    }
    return best;
  }
};

double grid_value(Rng& rng, double span) {
  const int steps = static_cast<int>(span * 8.0);
  return (static_cast<double>(rng.next_below(2 * steps + 1)) - steps) * 0.25;
}

}  // namespace

TEST_CASE("simplex solves small programs to their known optima") {
  {
    lp::Problem p;
    p.add_variable(0, 10, 2);
    p.add_variable(0, 2, 3);
    const int r = p.add_constraint(lp::Rel::Le, 4);
    p.add_coefficient(r, 0, 1);
    p.add_coefficient(r, 1, 1);
    const int r2 = p.add_constraint(lp::Rel::Le, 3);
    p.add_coefficient(r2, 0, 1);
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == doctest::Approx(10.0));
    CHECK(s.x[0] == doctest::Approx(2.0));
    CHECK(s.x[1] == doctest::Approx(2.0));
  }
  {
    lp::Problem p;
    p.add_variable(0, 2, 1);
    p.add_variable(0, 2, 1);
    const int r = p.add_constraint(lp::Rel::Eq, 3);
    p.add_coefficient(r, 0, 1);
    p.add_coefficient(r, 1, 1);
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == doctest::Approx(3.0));
  }
  {
    lp::Problem p;
    p.add_variable(0, 5, -1);
    const int r = p.add_constraint(lp::Rel::Ge, 2);
    p.add_coefficient(r, 0, 1);
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == doctest::Approx(-2.0));
    CHECK(s.x[0] == doctest::Approx(2.0));
  }
}

TEST_CASE("bound flips and unboundedness") {
  {
    lp::Problem p;
    p.add_variable(0, 1, 1);
    p.add_variable(0, 1, -1);
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(0.0));
  }
  {
    lp::Problem p;
    p.add_variable(0, std::numeric_limits<double>::infinity(), 1);
    const auto s = lp::solve(p);
    CHECK(s.status == lp::Status::Unbounded);
  }
}

TEST_CASE("coefficients accumulate per cell") {
  lp::Problem p;
  p.add_variable(0, 10, 1);
  const int r = p.add_constraint(lp::Rel::Le, 6);
  p.add_coefficient(r, 0, 1);
  p.add_coefficient(r, 0, 2);
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.x[0] == doctest::Approx(2.0));
}

TEST_CASE("infeasible programs are diagnosed, not mis-solved") {
  {
    lp::Problem p;
    p.add_variable(0, 5, 1);
    p.add_variable(0, 5, 1);
    const int a = p.add_constraint(lp::Rel::Le, 1);
    p.add_coefficient(a, 0, 1);
    p.add_coefficient(a, 1, 1);
    const int b = p.add_constraint(lp::Rel::Ge, 2);
    p.add_coefficient(b, 0, 1);
    p.add_coefficient(b, 1, 1);
    const auto s = lp::solve(p);
    CHECK(s.status == lp::Status::Infeasible);
    CHECK(s.infeasibility > 0.5);
  }
  {
    lp::Problem p;
    p.add_variable(0, 1, 0);
    const int r = p.add_constraint(lp::Rel::Eq, 5);
    p.add_coefficient(r, 0, 1);
    CHECK(lp::solve(p).status == lp::Status::Infeasible);
  }
}

TEST_CASE("storyline flow program matches its hand solution") {
  // Documents s, m, e with coherences sm=0.8, me=0.6, se=0.3; variables
  // x_sm, x_me, x_se and the bottleneck; unit flow, conservation at m, and
  // a total-flow budget pin the optimum.
  auto build = [](int k) {
    lp::Problem p;
    const double coh[3] = {0.8, 0.6, 0.3};
    for (int e = 0; e < 3; ++e) p.add_variable(0, 1, 0);
    const int mu = p.add_variable(0, 1, 1);
    for (int e = 0; e < 3; ++e) {
      const int r = p.add_constraint(lp::Rel::Le, 1);
      p.add_coefficient(r, mu, 1);
      p.add_coefficient(r, e, 1.0 - coh[e]);
    }
    const int src = p.add_constraint(lp::Rel::Eq, 1);
    p.add_coefficient(src, 0, 1);
    p.add_coefficient(src, 2, 1);
    const int snk = p.add_constraint(lp::Rel::Eq, 1);
    p.add_coefficient(snk, 1, 1);
    p.add_coefficient(snk, 2, 1);
    const int mid = p.add_constraint(lp::Rel::Eq, 0);
    p.add_coefficient(mid, 0, 1);
    p.add_coefficient(mid, 1, -1);
    const int total = p.add_constraint(lp::Rel::Eq, k - 1);
    for (int e = 0; e < 3; ++e) p.add_coefficient(total, e, 1);
    return p;
  };

  const auto k3 = lp::solve(build(3));
  REQUIRE(k3.status == lp::Status::Optimal);
  CHECK(k3.objective == doctest::Approx(0.6));
  CHECK(k3.x[0] == doctest::Approx(1.0));
  CHECK(k3.x[1] == doctest::Approx(1.0));
  CHECK(k3.x[2] == doctest::Approx(0.0));

  const auto k2 = lp::solve(build(2));
  REQUIRE(k2.status == lp::Status::Optimal);
  CHECK(k2.objective == doctest::Approx(0.3));
  CHECK(k2.x[2] == doctest::Approx(1.0));

  const auto again = lp::solve(build(3));
  CHECK(again.x == k3.x);
}

TEST_CASE("random box programs agree with vertex enumeration") {
  Rng rng(1234);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    BoxLp b;
    for (int v = 0; v < 2; ++v) {
      const double a = grid_value(rng, 3.0);
      const double c = grid_value(rng, 3.0);
      b.lo[v] = std::min(a, c);
      b.up[v] = std::max(a, c);
      b.cost[v] = grid_value(rng, 2.0);
    }
    const size_t nrows = 1 + rng.next_below(3);
    for (size_t r = 0; r < nrows; ++r) {
      const lp::Rel rel = std::array{lp::Rel::Le, lp::Rel::Ge, lp::Rel::Eq}[rng.next_below(3)];
      b.rows.push_back({grid_value(rng, 2.0), grid_value(rng, 2.0), grid_value(rng, 3.0), rel});
    }

    const auto oracle = b.best_vertex();
    const auto s = lp::solve(b.build());
    CAPTURE(trial);
    if (oracle) {
      ++optimal;
      REQUIRE(s.status == lp::Status::Optimal);
      CHECK(s.objective == doctest::Approx(*oracle).epsilon(1e-6));
      CHECK(b.feasible(s.x[0], s.x[1], 1e-7));
    } else {
      ++infeasible;
      REQUIRE(s.status == lp::Status::Infeasible);
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
}

TEST_CASE("assignment relaxation reaches the best permutation") {
  constexpr int n = 7;
  Rng rng(99);
  std::vector<double> cost(n * n);
  for (auto& c : cost) c = rng.next_double();

  lp::Problem p;
  for (int i = 0; i < n * n; ++i) p.add_variable(0, 1, cost[i]);
  for (int i = 0; i < n; ++i) {
    const int r = p.add_constraint(lp::Rel::Eq, 1);
    for (int j = 0; j < n; ++j) p.add_coefficient(r, i * n + j, 1);
  }
  for (int j = 0; j < n; ++j) {
    const int r = p.add_constraint(lp::Rel::Eq, 1);
    for (int i = 0; i < n; ++i) p.add_coefficient(r, i * n + j, 1);
  }

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1.0;
  do {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += cost[i * n + perm[i]];
    best = std::max(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(best).epsilon(1e-8));

  lp::Options capped;
  capped.max_iterations = 2;
  CHECK(lp::solve(p, capped).status == lp::Status::IterationLimit);
}
