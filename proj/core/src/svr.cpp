#include "repagg/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

#include "repagg/error.hpp"

namespace repagg {

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

namespace {

constexpr double kTau = 1e-12;

// Kernel rows over the training set with least-recently-used eviction.
class KernelCache {
 public:
  KernelCache(const FeatureMatrix& x, double gamma, std::size_t cache_bytes)
      : x_(x), gamma_(gamma), rows_(x.rows()), slot_(x.rows(), lru_.end()) {
    const std::size_t row_bytes = std::max<std::size_t>(1, x.rows() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, cache_bytes / row_bytes);
  }

  const std::vector<double>& row(std::size_t i) {
    if (slot_[i] != lru_.end()) {
      lru_.splice(lru_.begin(), lru_, slot_[i]);
      return rows_[i];
    }
    if (lru_.size() >= capacity_) {
      const std::size_t victim = lru_.back();
      lru_.pop_back();
      slot_[victim] = lru_.end();
      std::vector<double>().swap(rows_[victim]);
    }
    auto& r = rows_[i];
    r.resize(x_.rows());
    const auto xi = x_.row(i);
    for (std::size_t j = 0; j < x_.rows(); ++j) r[j] = rbf_kernel(xi, x_.row(j), gamma_);
    lru_.push_front(i);
    slot_[i] = lru_.begin();
    return r;
  }

 private:
  const FeatureMatrix& x_;
  double gamma_;
  std::size_t capacity_ = 2;
  std::vector<std::vector<double>> rows_;
  std::list<std::size_t> lru_;
  std::vector<std::list<std::size_t>::iterator> slot_;
};

// Solver over the 2l dual variables: t < l is a_t (sign +1), t >= l is a*_{t-l} (sign -1).
class SmoSolver {
 public:
  SmoSolver(const FeatureMatrix& x, std::span<const double> y, const SvrParams& params)
      : l_(x.rows()), c_(params.c), eps_(params.tolerance), kernel_(x, params.gamma, params.cache_bytes),
        sign_(2 * l_), beta_(2 * l_, 0.0), grad_(2 * l_), p_(2 * l_) {
    for (std::size_t t = 0; t < l_; ++t) {
      sign_[t] = 1;
      sign_[t + l_] = -1;
      p_[t] = params.epsilon - y[t];
      p_[t + l_] = params.epsilon + y[t];
    }
    grad_ = p_;
  }

  std::size_t solve(std::size_t max_iterations, bool& converged) {
    std::size_t iter = 0;
    converged = false;
    while (iter < max_iterations) {
      std::size_t i = 0;
      std::size_t j = 0;
      if (!select_working_set(i, j)) {
        // Confirm against a freshly computed gradient before stopping.
        recompute_gradient();
        if (!select_working_set(i, j)) {
          converged = true;
          break;
        }
      }
      ++iter;
      update_pair(i, j);
    }
    return iter;
  }

  double rho() const {
    std::size_t free_count = 0;
    double free_sum = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      const double yg = sign_[t] * grad_[t];
      if (at_upper(t)) {
        if (sign_[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (sign_[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++free_count;
        free_sum += yg;
      }
    }
    return free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  }

  double beta(std::size_t t) const { return beta_[t]; }

 private:
  bool at_upper(std::size_t t) const { return beta_[t] >= c_; }
  bool at_lower(std::size_t t) const { return beta_[t] <= 0.0; }

  // Q_ts = s_t s_s K(t mod l, s mod l)
  double q(const std::vector<double>& krow_t, std::size_t t, std::size_t s) const {
    return sign_[t] * sign_[s] * krow_t[s % l_];
  }

  bool select_working_set(std::size_t& out_i, std::size_t& out_j) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t gmax_idx = -1;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      if (sign_[t] == 1) {
        if (!at_upper(t) && -grad_[t] >= gmax) { gmax = -grad_[t]; gmax_idx = static_cast<std::ptrdiff_t>(t); }
      } else {
        if (!at_lower(t) && grad_[t] >= gmax) { gmax = grad_[t]; gmax_idx = static_cast<std::ptrdiff_t>(t); }
      }
    }
    if (gmax_idx < 0) return false;
    const auto i = static_cast<std::size_t>(gmax_idx);
    const auto& ki = kernel_.row(i % l_);
    const double kii = ki[i % l_];

    double gmax2 = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t gmin_idx = -1;
    double obj_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      double grad_diff = 0.0;
      if (sign_[t] == 1) {
        if (at_lower(t)) continue;
        grad_diff = gmax + grad_[t];
        gmax2 = std::max(gmax2, grad_[t]);
      } else {
        if (at_upper(t)) continue;
        grad_diff = gmax - grad_[t];
        gmax2 = std::max(gmax2, -grad_[t]);
      }
      if (grad_diff <= 0.0) continue;
      // RBF diagonal entries are exactly 1.
      double quad = kii + 1.0 - 2.0 * ki[t % l_];
      if (quad <= 0.0) quad = kTau;
      const double obj = -(grad_diff * grad_diff) / quad;
      if (obj <= obj_min) {
        obj_min = obj;
        gmin_idx = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gmax + gmax2 < eps_ || gmin_idx < 0) return false;
    out_i = i;
    out_j = static_cast<std::size_t>(gmin_idx);
    return true;
  }

  void update_pair(std::size_t i, std::size_t j) {
    const std::vector<double> ki = kernel_.row(i % l_);
    const auto& kj = kernel_.row(j % l_);
    const double qii = ki[i % l_];
    const double qjj = kj[j % l_];
    const double qij = q(ki, i, j);
    const double old_i = beta_[i];
    const double old_j = beta_[j];
    double& ai = beta_[i];
    double& aj = beta_[j];

    if (sign_[i] != sign_[j]) {
      double quad = qii + qjj + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) { aj = 0.0; ai = diff; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = -diff; }
      }
      if (diff > 0.0) {
        if (ai > c_) { ai = c_; aj = c_ - diff; }
      } else {
        if (aj > c_) { aj = c_; ai = c_ + diff; }
      }
    } else {
      double quad = qii + qjj - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) { ai = c_; aj = sum - c_; }
      } else {
        if (aj < 0.0) { aj = 0.0; ai = sum; }
      }
      if (sum > c_) {
        if (aj > c_) { aj = c_; ai = sum - c_; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = sum; }
      }
    }
    ai = std::clamp(ai, 0.0, c_);
    aj = std::clamp(aj, 0.0, c_);

    const double di = ai - old_i;
    const double dj = aj - old_j;
    const auto& kj2 = kernel_.row(j % l_);
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      grad_[t] += sign_[t] * (sign_[i] * ki[t % l_] * di + sign_[j] * kj2[t % l_] * dj);
    }
  }

  void recompute_gradient() {
    grad_ = p_;
    for (std::size_t s = 0; s < 2 * l_; ++s) {
      if (beta_[s] == 0.0) continue;
      const auto& ks = kernel_.row(s % l_);
      for (std::size_t t = 0; t < 2 * l_; ++t) grad_[t] += q(ks, s, t) * beta_[s];
    }
  }

  std::size_t l_;
  double c_;
  double eps_;
  KernelCache kernel_;
  std::vector<int> sign_;
  std::vector<double> beta_;
  std::vector<double> grad_;
  std::vector<double> p_;
};

}  // namespace

SupportVectorRegression SupportVectorRegression::fit(const FeatureMatrix& x,
                                                     std::span<const double> y,
                                                     const SvrParams& params) {
  if (x.rows() == 0) throw EmptyInputError("SVR needs at least one row");
  if (y.size() != x.rows()) throw ConfigError("feature and target counts differ");
  if (!(params.c > 0.0)) throw ConfigError("svr_c must be > 0");
  if (!(params.epsilon >= 0.0)) throw ConfigError("svr_epsilon must be >= 0");
  if (!(params.gamma > 0.0)) throw ConfigError("svr_gamma must be > 0");
  if (!(params.tolerance > 0.0)) throw ConfigError("svr_tolerance must be > 0");

  SmoSolver solver(x, y, params);
  SupportVectorRegression model;
  model.params_ = params;
  model.iterations_ = solver.solve(params.max_iterations, model.converged_);
  model.bias_ = -solver.rho();

  const std::size_t l = x.rows();
  model.alpha_.resize(l);
  model.alpha_star_.resize(l);
  model.support_ = FeatureMatrix(x.cols());
  for (std::size_t i = 0; i < l; ++i) {
    model.alpha_[i] = solver.beta(i);
    model.alpha_star_[i] = solver.beta(i + l);
    const double coef = model.alpha_[i] - model.alpha_star_[i];
    if (coef != 0.0) {
      model.support_.push_row(x.row(i));
      model.coefficients_.push_back(coef);
    }
  }
  return model;
}

double SupportVectorRegression::predict(std::span<const double> row) const {
  double value = bias_;
  for (std::size_t s = 0; s < coefficients_.size(); ++s) {
    value += coefficients_[s] * rbf_kernel(support_.row(s), row, params_.gamma);
  }
  return value;
}

}  // namespace repagg
