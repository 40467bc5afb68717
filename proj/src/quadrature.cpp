#include "heic/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "heic/errors.hpp"

namespace heic {
namespace {

constexpr int kOrder = 20;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guess.
Rule make_gauss_legendre() {
  Rule rule;
  for (int i = 0; i < kOrder; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const Rule& gauss_legendre() {
  static const Rule rule = make_gauss_legendre();
  return rule;
}

double apply_rule(const std::function<double(double)>& f, double a, double b) {
  const Rule& rule = gauss_legendre();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < kOrder; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

struct Panel {
  double a;
  double b;
  double value;  // refined (two-half) estimate
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
  const double whole = apply_rule(f, a, b);
  const double mid = 0.5 * (a + b);
  const double halves = apply_rule(f, a, mid) + apply_rule(f, mid, b);
  return {a, b, halves, std::abs(whole - halves)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureConfig& cfg) {
  if (!(a < b)) throw ValidationError("integration interval must satisfy a < b");
  std::vector<double> cuts{a};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (const double x : inner) {
    if (x > cuts.back() && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);

  std::priority_queue<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) panels.push(make_panel(f, cuts[i], cuts[i + 1]));

  auto summarize = [&panels]() {
    auto copy = panels;
    QuadratureResult r;
    r.panels = static_cast<int>(copy.size());
    // Sum small contributions first.
    std::vector<Panel> all;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return std::abs(x.value) < std::abs(y.value); });
    for (const Panel& p : all) {
      r.value += p.value;
      r.error += p.error;
    }
    return r;
  };

  double total_error = summarize().error;
  while (total_error > cfg.abs_tol) {
    if (static_cast<int>(panels.size()) >= cfg.max_panels) {
      const QuadratureResult best = summarize();
      throw QuadratureError("adaptive quadrature did not converge within the panel budget", best.value,
                            best.error);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(f, worst.a, mid);
    const Panel right = make_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    // Re-anchor the running error now and then to shed cancellation drift.
    if (panels.size() % 64 == 0) total_error = summarize().error;
  }
  return summarize();
}

}  // namespace heic
