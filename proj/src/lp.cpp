#include "framemap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framemap/error.hpp"

namespace framemap::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivTol = 1e-10;       // smallest usable pivot element
constexpr double kUpdateGuard = 1e-8;   // rank-1 update denominator guard
constexpr double kInfeasTol = 1e-7;     // phase-1 residual considered nonzero
constexpr int kRefactorEvery = 128;
constexpr int kStallLimit = 500;

enum VarState : char { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

// The basis of this LP family is mostly unit columns (slacks, artificials):
// those solve by direct division, and only the handful of general columns
// need a dense core whose explicit inverse is kept fresh by rank-1 updates.
class Simplex {
 public:
  Simplex(const Problem& p, const Options& opt) : opt_(opt) {
    m_ = p.num_constraints();
    nstruct_ = p.num_variables();
    const int total = nstruct_ + m_;
    lo_.reserve(total);
    up_.reserve(total);
    cost_.reserve(total);
    cols_.resize(total);
    for (int v = 0; v < nstruct_; ++v) {
      lo_.push_back(p.lower(v));
      up_.push_back(p.upper(v));
      cost_.push_back(p.objective(v));
    }
    rhs_.resize(m_);
    for (int r = 0; r < m_; ++r) rhs_[r] = p.rhs(r);
    for (const auto& t : p.triplets()) cols_[t.var].emplace_back(t.row, t.value);
    for (int v = 0; v < nstruct_; ++v) {
      auto& c = cols_[v];
      std::sort(c.begin(), c.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // merge duplicate rows
      size_t w = 0;
      for (size_t i = 0; i < c.size(); ++i) {
        if (w > 0 && c[w - 1].first == c[i].first) c[w - 1].second += c[i].second;
        else c[w++] = c[i];
      }
      c.resize(w);
      c.erase(std::remove_if(c.begin(), c.end(),
                             [](const auto& e) { return e.second == 0.0; }),
              c.end());
    }
    for (int r = 0; r < m_; ++r) {
      int s = nstruct_ + r;
      switch (p.rel(r)) {
        case Rel::Le: lo_.push_back(0.0); up_.push_back(kInf); break;
        case Rel::Ge: lo_.push_back(-kInf); up_.push_back(0.0); break;
        case Rel::Eq: lo_.push_back(0.0); up_.push_back(0.0); break;
      }
      cost_.push_back(0.0);
      cols_[s].emplace_back(r, 1.0);
    }
    cost1_.assign(lo_.size(), 0.0);
    max_iter_ = opt_.max_iterations > 0 ? opt_.max_iterations
                                        : 20000 + 10 * (m_ + static_cast<int>(lo_.size()));
  }

  Solution run() {
    setup_basis();
    Solution out;
    if (have_artificials_) {
      phase1_ = true;
      Status s = iterate();
      if (s != Status::Optimal) {
        out.status = s;
        out.iterations = iterations_;
        return out;
      }
      double infeas = 0.0;
      for (int v = first_art_; v < nvars(); ++v) infeas += std::abs(val_[v]);
      if (infeas > kInfeasTol) {
        out.status = Status::Infeasible;
        out.infeasibility = infeas;
        out.iterations = iterations_;
        out.x = snapshot_x();
        return out;
      }
      for (int v = first_art_; v < nvars(); ++v) {
        lo_[v] = 0.0;
        up_[v] = 0.0;
        if (state_[v] != kBasic) val_[v] = 0.0;
      }
      phase1_ = false;
      refactor();
      recompute_vals();
    }
    Status s = iterate();
    out.status = s;
    out.iterations = iterations_;
    out.x = snapshot_x();
    out.objective = 0.0;
    for (int v = 0; v < nstruct_; ++v) out.objective += cost_[v] * out.x[v];
    return out;
  }

 private:
  int nvars() const { return static_cast<int>(lo_.size()); }
  bool unit(int v) const { return cols_[v].size() == 1; }
  double cur_cost(int v) const { return phase1_ ? cost1_[v] : cost_[v]; }

  std::vector<double> snapshot_x() const {
    std::vector<double> x(nstruct_);
    for (int v = 0; v < nstruct_; ++v) {
      double xv = val_[v];
      if (lo_[v] > -kInf && std::abs(xv - lo_[v]) <= 1e-9) xv = lo_[v];
      if (up_[v] < kInf && std::abs(xv - up_[v]) <= 1e-9) xv = up_[v];
      x[v] = std::min(std::max(xv, lo_[v]), up_[v]);
    }
    return x;
  }

  void setup_basis() {
    state_.assign(nvars(), kAtLower);
    val_.assign(nvars(), 0.0);
    row_unit_.assign(m_, -1);
    pos_r_.assign(m_, -1);
    pos_g_.assign(nvars(), -1);
    acc_.assign(m_, 0.0);
    y_.assign(m_, 0.0);

    std::vector<double> act(m_, 0.0);
    for (int v = 0; v < nstruct_; ++v) {
      if (lo_[v] > -kInf) {
        state_[v] = kAtLower;
        val_[v] = lo_[v];
      } else if (up_[v] < kInf) {
        state_[v] = kAtUpper;
        val_[v] = up_[v];
      } else {
        fail(ErrorKind::Argument, "lp: free variables are not supported");
      }
      if (val_[v] != 0.0)
        for (const auto& [r, a] : cols_[v]) act[r] += a * val_[v];
    }

    first_art_ = nstruct_ + m_;
    for (int r = 0; r < m_; ++r) {
      const int s = nstruct_ + r;
      const double sv = rhs_[r] - act[r];
      if (sv < lo_[s]) {
        state_[s] = kAtLower;
        val_[s] = lo_[s];
      } else if (sv > up_[s]) {
        state_[s] = kAtUpper;
        val_[s] = up_[s];
      } else {
        state_[s] = kBasic;
        val_[s] = sv;
        row_unit_[r] = s;
        continue;
      }
      const double residual = sv - val_[s];
      const double sigma = residual >= 0.0 ? 1.0 : -1.0;
      const int a = nvars();
      lo_.push_back(0.0);
      up_.push_back(kInf);
      cost_.push_back(0.0);
      cost1_.push_back(-1.0);
      cols_.push_back({{r, sigma}});
      state_.push_back(kBasic);
      val_.push_back(std::abs(residual));
      pos_g_.push_back(-1);
      row_unit_[r] = a;
    }
    have_artificials_ = nvars() > first_art_;
  }

  double unit_coeff(int r) const { return cols_[row_unit_[r]][0].second; }

  // ---- factorization ----

  void refactor() {
    const int g = static_cast<int>(gvars_.size());
    // aug = [C | I] reduced by Gauss-Jordan with partial pivoting.
    std::vector<std::vector<double>> aug(g, std::vector<double>(2 * g, 0.0));
    for (int p = 0; p < g; ++p)
      for (const auto& [r, a] : cols_[gvars_[p]]) {
        int q = pos_r_[r];
        if (q >= 0) aug[q][p] = a;
      }
    for (int q = 0; q < g; ++q) aug[q][g + q] = 1.0;
    for (int k = 0; k < g; ++k) {
      int piv = k;
      double best = std::abs(aug[k][k]);
      for (int q = k + 1; q < g; ++q)
        if (std::abs(aug[q][k]) > best) {
          best = std::abs(aug[q][k]);
          piv = q;
        }
      if (best < 1e-12) fail(ErrorKind::State, "lp: basis core became singular");
      std::swap(aug[k], aug[piv]);
      const double inv_p = 1.0 / aug[k][k];
      for (int c = 0; c < 2 * g; ++c) aug[k][c] *= inv_p;
      for (int q = 0; q < g; ++q) {
        if (q == k) continue;
        const double f = aug[q][k];
        if (f == 0.0) continue;
        for (int c = 0; c < 2 * g; ++c) aug[q][c] -= f * aug[k][c];
      }
    }
    // aug right half is C^-1, already oriented (gvar position x grow position).
    inv_.assign(g, std::vector<double>(g, 0.0));
    for (int p = 0; p < g; ++p)
      for (int q = 0; q < g; ++q) inv_[p][q] = aug[p][g + q];
    pivots_since_refactor_ = 0;
  }

  // Recompute every basic value from the nonbasic assignment.
  void recompute_vals() {
    std::vector<double> t = rhs_;
    for (int v = 0; v < nvars(); ++v) {
      if (state_[v] == kBasic || val_[v] == 0.0) continue;
      for (const auto& [r, a] : cols_[v]) t[r] -= a * val_[v];
    }
    const int g = static_cast<int>(gvars_.size());
    std::vector<double> z(g, 0.0);
    for (int p = 0; p < g; ++p) {
      double s = 0.0;
      for (int q = 0; q < g; ++q) s += inv_[p][q] * t[grows_[q]];
      z[p] = s;
      val_[gvars_[p]] = s;
    }
    std::fill(acc_.begin(), acc_.end(), 0.0);
    for (int p = 0; p < g; ++p)
      for (const auto& [r, a] : cols_[gvars_[p]])
        if (row_unit_[r] >= 0) acc_[r] += a * z[p];
    for (int r = 0; r < m_; ++r)
      if (row_unit_[r] >= 0) {
        val_[row_unit_[r]] = (t[r] - acc_[r]) / unit_coeff(r);
        acc_[r] = 0.0;
      }
  }

  // B w = a_e. Fills wg_ (general positions) and wu_ ((row, value) pairs for
  // unit-covered rows).
  void ftran(int e) {
    const int g = static_cast<int>(gvars_.size());
    std::vector<double> rhsg(g, 0.0);
    touched_.clear();
    for (const auto& [r, a] : cols_[e]) {
      if (row_unit_[r] >= 0) {
        if (acc_[r] == 0.0) touched_.push_back(r);
        acc_[r] += a;
      } else {
        rhsg[pos_r_[r]] = a;
      }
    }
    wg_.assign(g, 0.0);
    for (int p = 0; p < g; ++p) {
      double s = 0.0;
      for (int q = 0; q < g; ++q) s += inv_[p][q] * rhsg[q];
      wg_[p] = s;
    }
    for (int p = 0; p < g; ++p) {
      if (wg_[p] == 0.0) continue;
      for (const auto& [r, a] : cols_[gvars_[p]])
        if (row_unit_[r] >= 0) {
          if (acc_[r] == 0.0) touched_.push_back(r);
          acc_[r] -= a * wg_[p];
        }
    }
    wu_.clear();
    for (int r : touched_) {
      if (acc_[r] != 0.0) wu_.emplace_back(r, acc_[r] / unit_coeff(r));
      acc_[r] = 0.0;
    }
  }

  // Duals for the current costs, then the best entering variable.
  int choose_entering(double& d_out) {
    const int g = static_cast<int>(gvars_.size());
    std::fill(y_.begin(), y_.end(), 0.0);
    for (int r = 0; r < m_; ++r)
      if (row_unit_[r] >= 0) y_[r] = cur_cost(row_unit_[r]) / unit_coeff(r);
    std::vector<double> rhsg(g, 0.0);
    for (int p = 0; p < g; ++p) {
      double s = cur_cost(gvars_[p]);
      for (const auto& [r, a] : cols_[gvars_[p]])
        if (row_unit_[r] >= 0) s -= a * y_[r];
      rhsg[p] = s;
    }
    for (int q = 0; q < g; ++q) {
      double s = 0.0;
      for (int p = 0; p < g; ++p) s += rhsg[p] * inv_[p][q];
      y_[grows_[q]] = s;
    }

    int best = -1;
    double best_score = 0.0;
    double best_d = 0.0;
    for (int v = 0; v < nvars(); ++v) {
      if (state_[v] == kBasic || lo_[v] == up_[v]) continue;
      double d = cur_cost(v);
      for (const auto& [r, a] : cols_[v]) d -= a * y_[r];
      bool eligible = (state_[v] == kAtLower && d > opt_.opt_tol) ||
                      (state_[v] == kAtUpper && d < -opt_.opt_tol);
      if (!eligible) continue;
      if (bland_) {
        d_out = d;
        return v;
      }
      double score = std::abs(d);
      if (score > best_score) {
        best_score = score;
        best = v;
        best_d = d;
      }
    }
    d_out = best_d;
    return best;
  }

  Status iterate() {
    while (true) {
      if (iterations_ >= max_iter_) return Status::IterationLimit;
      double d = 0.0;
      const int e = choose_entering(d);
      if (e < 0) return Status::Optimal;
      ++iterations_;
      ftran(e);

      const double sigma = d > 0.0 ? 1.0 : -1.0;
      double best_t = up_[e] - lo_[e];  // may be +inf
      int leave = -1;                   // -1 means bound flip
      char leave_side = kAtLower;
      double leave_w = 0.0;

      auto consider = [&](int v, double w) {
        const double we = sigma * w;
        double t;
        char side;
        if (we > kPivTol) {
          if (lo_[v] == -kInf) return;
          t = (val_[v] - lo_[v]) / we;
          side = kAtLower;
        } else if (we < -kPivTol) {
          if (up_[v] == kInf) return;
          t = (up_[v] - val_[v]) / (-we);
          side = kAtUpper;
        } else {
          return;
        }
        if (t < 0.0) t = 0.0;
        bool better = t < best_t;
        if (!better && t == best_t && leave >= 0) {
          if (bland_) better = v < leave;
          else if (std::abs(w) > std::abs(leave_w)) better = true;
          else if (std::abs(w) == std::abs(leave_w) && v < leave) better = true;
        }
        if (better) {
          best_t = t;
          leave = v;
          leave_side = side;
          leave_w = w;
        }
      };
      for (size_t p = 0; p < gvars_.size(); ++p) consider(gvars_[p], wg_[p]);
      for (const auto& [r, w] : wu_) consider(row_unit_[r], w);

      if (leave < 0 && best_t == kInf) return Status::Unbounded;

      const double t = best_t;
      // step the basic values
      for (size_t p = 0; p < gvars_.size(); ++p)
        val_[gvars_[p]] -= sigma * t * wg_[p];
      for (const auto& [r, w] : wu_) val_[row_unit_[r]] -= sigma * t * w;

      if (std::abs(d) * t <= 1e-12) {
        if (++stall_ > kStallLimit) bland_ = true;
      } else {
        stall_ = 0;
      }

      if (leave < 0) {
        // bound flip
        state_[e] = state_[e] == kAtLower ? kAtUpper : kAtLower;
        val_[e] = state_[e] == kAtLower ? lo_[e] : up_[e];
        continue;
      }

      val_[e] = (sigma > 0.0 ? lo_[e] : up_[e]) + sigma * t;
      state_[e] = kBasic;
      state_[leave] = leave_side;
      val_[leave] = leave_side == kAtLower ? lo_[leave] : up_[leave];
      update_basis(e, leave);

      if (++pivots_since_refactor_ >= kRefactorEvery) {
        refactor();
        recompute_vals();
      }
    }
  }

  // ---- basis structure updates (e entered, l left) ----

  void update_basis(int e, int l) {
    const bool e_unit = unit(e);
    const bool l_unit = unit(l);
    if (l_unit) {
      const int r_l = cols_[l][0].first;
      if (e_unit) {
        const int r_e = cols_[e][0].first;
        if (r_e == r_l) {
          row_unit_[r_l] = e;
          return;
        }
        // The entering unit column covers a previously uncovered row; that
        // row replaces r_l inside the core.
        replace_grow_row(pos_r_[r_e], r_l, e);
        return;
      }
      grow_core(r_l, e);
      return;
    }
    const int b = pos_g_[l];
    if (e_unit) {
      const int r_e = cols_[e][0].first;
      shrink_core(pos_r_[r_e], b, l, e);
      return;
    }
    replace_core_column(b, l, e);
  }

  // row content of row r restricted to the general columns
  std::vector<double> core_row(int r) const {
    const int g = static_cast<int>(gvars_.size());
    std::vector<double> out(g, 0.0);
    for (int p = 0; p < g; ++p)
      for (const auto& [rr, a] : cols_[gvars_[p]])
        if (rr == r) {
          out[p] = a;
          break;
        }
    return out;
  }

  double coeff_at(int v, int r) const {
    for (const auto& [rr, a] : cols_[v])
      if (rr == r) return a;
    return 0.0;
  }

  void replace_grow_row(int a_pos, int new_row, int e) {
    // Case: unit leaves row new_row uncovered, unit e covers grows_[a_pos].
    const int g = static_cast<int>(gvars_.size());
    const int old_row = grows_[a_pos];
    const std::vector<double> rnew = core_row(new_row);
    std::vector<double> trow(g, 0.0);
    for (int q = 0; q < g; ++q) {
      double s = 0.0;
      for (int p = 0; p < g; ++p) s += rnew[p] * inv_[p][q];
      trow[q] = s;
    }
    const double kappa = trow[a_pos];
    row_unit_[old_row] = e;
    row_unit_[new_row] = -1;
    grows_[a_pos] = new_row;
    pos_r_[old_row] = -1;
    pos_r_[new_row] = a_pos;
    if (std::abs(kappa) < kUpdateGuard) {
      refactor();
      recompute_vals();
      return;
    }
    std::vector<double> cola(g);
    for (int p = 0; p < g; ++p) cola[p] = inv_[p][a_pos];
    for (int p = 0; p < g; ++p) {
      const double f = cola[p] / kappa;
      if (f == 0.0) continue;
      for (int q = 0; q < g; ++q) {
        double delta = trow[q];
        if (q == a_pos) delta -= 1.0;
        inv_[p][q] -= f * delta;
      }
    }
  }

  void grow_core(int new_row, int e) {
    const int g = static_cast<int>(gvars_.size());
    const std::vector<double> rvec = core_row(new_row);
    const double s = coeff_at(e, new_row);
    std::vector<double> qvec(g, 0.0);
    for (int q = 0; q < g; ++q) {
      double acc = 0.0;
      for (int p = 0; p < g; ++p) acc += rvec[p] * inv_[p][q];
      qvec[q] = acc;
    }
    double kappa = s;
    for (int p = 0; p < g; ++p) kappa -= rvec[p] * wg_[p];

    row_unit_[new_row] = -1;
    gvars_.push_back(e);
    grows_.push_back(new_row);
    pos_g_[e] = g;
    pos_r_[new_row] = g;
    if (std::abs(kappa) < kUpdateGuard) {
      refactor();
      recompute_vals();
      return;
    }
    inv_.resize(g + 1);
    for (int p = 0; p < g; ++p) inv_[p].resize(g + 1, 0.0);
    inv_[g].assign(g + 1, 0.0);
    for (int p = 0; p < g; ++p) {
      const double f = wg_[p] / kappa;
      for (int q = 0; q < g; ++q) inv_[p][q] += f * qvec[q];
      inv_[p][g] = -f;
    }
    for (int q = 0; q < g; ++q) inv_[g][q] = -qvec[q] / kappa;
    inv_[g][g] = 1.0 / kappa;
  }

  void shrink_core(int a_pos, int b_pos, int l, int e) {
    const int g = static_cast<int>(gvars_.size());
    const int r_e = grows_[a_pos];
    const double kappa = inv_[b_pos][a_pos];
    const bool ok = std::abs(kappa) >= kUpdateGuard;
    if (ok) {
      std::vector<double> cola(g), rowb(g);
      for (int p = 0; p < g; ++p) cola[p] = inv_[p][a_pos];
      for (int q = 0; q < g; ++q) rowb[q] = inv_[b_pos][q];
      for (int p = 0; p < g; ++p) {
        if (p == b_pos) continue;
        const double f = cola[p] / kappa;
        if (f == 0.0) continue;
        for (int q = 0; q < g; ++q) inv_[p][q] -= f * rowb[q];
      }
    }
    // swap-remove gvar row b_pos and grow column a_pos
    const int last = g - 1;
    pos_g_[l] = -1;
    if (b_pos != last) {
      gvars_[b_pos] = gvars_[last];
      pos_g_[gvars_[b_pos]] = b_pos;
      inv_[b_pos].swap(inv_[last]);
    }
    gvars_.pop_back();
    pos_r_[r_e] = -1;
    if (a_pos != last) {
      grows_[a_pos] = grows_[last];
      pos_r_[grows_[a_pos]] = a_pos;
      for (int p = 0; p < last; ++p) inv_[p][a_pos] = inv_[p][last];
    }
    grows_.pop_back();
    inv_.pop_back();
    for (auto& row : inv_) row.resize(last);
    row_unit_[r_e] = e;
    if (!ok) {
      refactor();
      recompute_vals();
    }
  }

  void replace_core_column(int k, int l, int e) {
    const int g = static_cast<int>(gvars_.size());
    const double kappa = wg_[k];
    gvars_[k] = e;
    pos_g_[l] = -1;
    pos_g_[e] = k;
    if (std::abs(kappa) < kUpdateGuard) {
      refactor();
      recompute_vals();
      return;
    }
    std::vector<double> rowk(g);
    for (int q = 0; q < g; ++q) rowk[q] = inv_[k][q];
    for (int p = 0; p < g; ++p) {
      double f = wg_[p];
      if (p == k) f -= 1.0;
      f /= kappa;
      if (f == 0.0) continue;
      for (int q = 0; q < g; ++q) inv_[p][q] -= f * rowk[q];
    }
  }

  // ---- data ----
  Options opt_;
  int m_ = 0;
  int nstruct_ = 0;
  int first_art_ = 0;
  int max_iter_ = 0;
  bool have_artificials_ = false;
  bool phase1_ = false;
  bool bland_ = false;
  int stall_ = 0;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;

  std::vector<double> lo_, up_, cost_, cost1_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> rhs_;

  std::vector<char> state_;
  std::vector<double> val_;
  std::vector<int> row_unit_;
  std::vector<int> gvars_, grows_;
  std::vector<int> pos_g_, pos_r_;
  std::vector<std::vector<double>> inv_;

  std::vector<double> acc_, y_, wg_;
  std::vector<int> touched_;
  std::vector<std::pair<int, double>> wu_;
};

}  // namespace

int Problem::add_variable(double lower, double upper, double objective) {
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(objective))
    fail(ErrorKind::Argument, "lp: bad variable bounds or objective");
  if (lower > upper) fail(ErrorKind::Argument, "lp: lower bound exceeds upper bound");
  if (lower == -kInf && upper == kInf)
    fail(ErrorKind::Argument, "lp: free variables are not supported");
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(objective);
  return static_cast<int>(lower_.size()) - 1;
}

int Problem::add_constraint(Rel rel, double rhs) {
  if (!std::isfinite(rhs)) fail(ErrorKind::Argument, "lp: constraint rhs must be finite");
  rel_.push_back(rel);
  rhs_.push_back(rhs);
  return static_cast<int>(rhs_.size()) - 1;
}

void Problem::add_coefficient(int row, int var, double value) {
  if (row < 0 || row >= num_constraints())
    fail(ErrorKind::Argument, "lp: constraint index out of range");
  if (var < 0 || var >= num_variables())
    fail(ErrorKind::Argument, "lp: variable index out of range");
  if (!std::isfinite(value)) fail(ErrorKind::Argument, "lp: coefficient must be finite");
  if (value == 0.0) return;
  triplets_.push_back({row, var, value});
}

Solution solve(const Problem& problem, const Options& options) {
  if (problem.num_variables() == 0)
    fail(ErrorKind::Argument, "lp: problem has no variables");
  Simplex s(problem, options);
  return s.run();
}

}  // namespace framemap::lp
