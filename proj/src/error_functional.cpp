#include "alphad/error_functional.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace alphad {

namespace {

constexpr double kSimplexTol = 1e-9;
constexpr double kBoundaryMargin = 1e-9;
constexpr double kDiameterStop = 1e-10;
constexpr int kMaxRestarts = 6;

struct Term {
  double coefficient;
  std::vector<std::pair<std::size_t, unsigned>> factors;
};

// f = sum of terms; the subject enters with +1, the right-hand side negated.
using Residual = std::vector<Term>;

std::vector<Residual> residuals(const Problem& problem) {
  if (problem.has_inequalities()) {
    throw Error(ErrorKind::NonEquationPreference, "the error functional covers equation preferences only");
  }
  std::vector<Residual> out;
  for (const auto& pref : problem.preferences()) {
    const Preference canon = canonicalize(pref);
    Residual f;
    Rational smallest = 1;
    if (const auto* lin = std::get_if<LinearPreference>(&canon)) {
      f.push_back({1.0, {{lin->subject, 1u}}});
      for (const auto& [j, a] : lin->terms) smallest = std::min(smallest, a);
      for (const auto& [j, a] : lin->terms) f.push_back({-to_double(a / smallest), {{j, 1u}}});
    } else if (const auto* mono = std::get_if<MonomialPreference>(&canon)) {
      f.push_back({1.0, {{mono->subject, 1u}}});
      smallest = std::min(smallest, mono->coefficient);
      Term t{-to_double(mono->coefficient / smallest), {}};
      for (const auto& [j, e] : mono->exponents) t.factors.emplace_back(j, e);
      f.push_back(std::move(t));
    }
    f.front().coefficient = to_double(Rational(1) / smallest);
    out.push_back(std::move(f));
  }
  return out;
}

double evaluate(const std::vector<Residual>& fs, std::span<const double> x) {
  double total = 0.0;
  for (const auto& f : fs) {
    double v = 0.0;
    for (const auto& t : f) {
      double p = t.coefficient;
      for (const auto& [j, e] : t.factors) {
        for (unsigned k = 0; k < e; ++k) p *= x[j];
      }
      v += p;
    }
    total += std::abs(v);
  }
  return total;
}

double grid_size(int g, std::size_t n) {
  // C(g - 1, n - 1) interior compositions.
  double c = 1.0;
  for (std::size_t k = 1; k < n; ++k) c = c * static_cast<double>(g - static_cast<int>(k)) / static_cast<double>(k);
  return c;
}

int effective_grid(int grid_points, std::size_t n) {
  int g = std::max(grid_points, static_cast<int>(n));
  while (g > static_cast<int>(n) && grid_size(g, n) > static_cast<double>(kMaxGridPoints)) --g;
  return g;
}

void enumerate(std::size_t n, int g, std::vector<int>& parts, std::size_t k, int remaining,
               const std::function<void(const std::vector<int>&)>& visit) {
  if (k + 1 == n) {
    parts[k] = remaining;
    visit(parts);
    return;
  }
  const int slots_after = static_cast<int>(n - k - 1);
  for (int i = 1; i <= remaining - slots_after; ++i) {
    parts[k] = i;
    enumerate(n, g, parts, k + 1, remaining - i, visit);
  }
}

class NelderMead {
 public:
  NelderMead(const std::vector<Residual>& fs, std::size_t n, std::size_t& evaluations)
      : fs_(fs), n_(n), evals_(evaluations), x_(n) {}

  // Objective on the reduced coordinates; +inf outside the interior.
  double operator()(const std::vector<double>& y) {
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (y[i] < kBoundaryMargin) return std::numeric_limits<double>::infinity();
      x_[i] = y[i];
      rest -= y[i];
    }
    if (rest < kBoundaryMargin) return std::numeric_limits<double>::infinity();
    x_[n_ - 1] = rest;
    ++evals_;
    return evaluate(fs_, x_);
  }

  // Minimizes from `start` with initial step `step`; returns iterations used.
  int run(std::vector<double>& best, double& best_value, double step, int max_iters) {
    const std::size_t d = n_ - 1;
    std::vector<std::vector<double>> pts(d + 1, best);
    std::vector<double> vals(d + 1);
    vals[0] = best_value;
    for (std::size_t i = 0; i < d; ++i) {
      pts[i + 1][i] += step;
      vals[i + 1] = (*this)(pts[i + 1]);
      if (!std::isfinite(vals[i + 1])) {
        pts[i + 1][i] = best[i] - step;
        vals[i + 1] = (*this)(pts[i + 1]);
      }
    }
    int it = 0;
    std::vector<std::size_t> order(d + 1);
    for (; it < max_iters; ++it) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[d > 0 ? d - 1 : 0];
      double diameter = 0.0;
      for (const auto& p : pts) {
        for (std::size_t i = 0; i < d; ++i) diameter = std::max(diameter, std::abs(p[i] - pts[lo][i]));
      }
      if (diameter < kDiameterStop) break;

      std::vector<double> centroid(d, 0.0);
      for (std::size_t k = 0; k <= d; ++k) {
        if (k == hi) continue;
        for (std::size_t i = 0; i < d; ++i) centroid[i] += pts[k][i] / static_cast<double>(d);
      }
      auto along = [&](double t) {
        std::vector<double> p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = centroid[i] + t * (pts[hi][i] - centroid[i]);
        return p;
      };
      const auto reflected = along(-1.0);
      const double fr = (*this)(reflected);
      if (fr < vals[lo]) {
        const auto expanded = along(-2.0);
        const double fe = (*this)(expanded);
        if (fe < fr) {
          pts[hi] = expanded;
          vals[hi] = fe;
        } else {
          pts[hi] = reflected;
          vals[hi] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[hi] = reflected;
        vals[hi] = fr;
        continue;
      }
      const bool outside = fr < vals[hi];
      const auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = (*this)(contracted);
      if (fc < std::min(fr, vals[hi])) {
        pts[hi] = contracted;
        vals[hi] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= d; ++k) {
        if (k == lo) continue;
        for (std::size_t i = 0; i < d; ++i) pts[k][i] = pts[lo][i] + 0.5 * (pts[k][i] - pts[lo][i]);
        vals[k] = (*this)(pts[k]);
      }
    }
    const std::size_t lo =
        static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    if (vals[lo] < best_value) {
      best = pts[lo];
      best_value = vals[lo];
    }
    return it;
  }

 private:
  const std::vector<Residual>& fs_;
  std::size_t n_;
  std::size_t& evals_;
  std::vector<double> x_;
};

void require_simplex(std::span<const double> x, std::size_t n) {
  if (x.size() != n) {
    throw Error(ErrorKind::OffSimplex, "expected " + std::to_string(n) + " coordinates, got " +
                                           std::to_string(x.size()));
  }
  double s = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw Error(ErrorKind::OffSimplex, "coordinates must be strictly positive");
    s += v;
  }
  if (std::abs(s - 1.0) > kSimplexTol) throw Error(ErrorKind::OffSimplex, "coordinates must sum to 1");
}

}  // namespace

double eval_error(const Problem& problem, std::span<const double> x) {
  const auto fs = residuals(problem);
  require_simplex(x, problem.size());
  return evaluate(fs, x);
}

int scan_error_grid(const Problem& problem, int grid_points,
                    const std::function<void(std::span<const double>, double)>& visit) {
  const auto fs = residuals(problem);
  const std::size_t n = problem.size();
  const int g = effective_grid(grid_points, n);
  std::vector<int> parts(n);
  std::vector<double> x(n);
  enumerate(n, g, parts, 0, g, [&](const std::vector<int>& p) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(p[i]) / static_cast<double>(g);
    visit(x, evaluate(fs, x));
  });
  return g;
}

ErrorMinResult minimize_error(const Problem& problem, int grid_points, int refine_iters) {
  if (grid_points < 2) throw Error(ErrorKind::InvalidProblem, "grid needs at least 2 subdivisions");
  const auto fs = residuals(problem);
  const std::size_t n = problem.size();

  ErrorMinResult result;
  result.value = std::numeric_limits<double>::infinity();
  result.grid_points = scan_error_grid(problem, grid_points, [&](std::span<const double> x, double e) {
    ++result.evaluations;
    if (e < result.value) {
      result.value = e;
      result.argmin.assign(x.begin(), x.end());
    }
  });

  const double grid_value = result.value;
  std::vector<double> y(result.argmin.begin(), result.argmin.end() - 1);
  double value = result.value;
  NelderMead nm(fs, n, result.evaluations);
  double step = 1.0 / static_cast<double>(result.grid_points);
  for (int restart = 0; restart < kMaxRestarts && refine_iters > 0; ++restart) {
    const double before = value;
    nm.run(y, value, step, refine_iters);
    step *= 0.1;
    if (restart > 0 && before - value <= 1e-15) break;
  }
  if (value < grid_value) {
    result.refined = true;
    result.value = value;
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      result.argmin[i] = y[i];
      rest -= y[i];
    }
    result.argmin[n - 1] = rest;
  }
  return result;
}

}  // namespace alphad
