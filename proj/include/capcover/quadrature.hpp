#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "capcover/errors.hpp"

namespace capcover {

struct QuadratureResult {
  double value = 0.0;
  // Sum over panels of |K15 - G7|, an upper estimate of the absolute error.
  double error = 0.0;
  int panels = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  friend bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[k] * pair;
    // Gauss nodes are the odd-indexed Kronrod nodes.
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [lo, hi]: the panel
// with the largest error estimate is bisected until the summed estimate is at
// most abs_tol. Throws ConvergenceError if max_panels is reached first.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double lo, double hi, double abs_tol,
                                    int max_panels = 20000) {
  if (!(hi > lo)) return {0.0, 0.0, 0};
  std::vector<detail::Panel> heap{detail::gauss_kronrod_15(f, lo, hi)};
  const auto exact_error = [&heap] {
    double e = 0.0;
    for (const auto& p : heap) e += p.error;
    return e;
  };
  double total_error = heap.front().error;
  while (total_error > abs_tol) {
    if (static_cast<int>(heap.size()) >= max_panels) {
      throw ConvergenceError("adaptive quadrature did not reach tolerance", exact_error());
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw ConvergenceError("adaptive quadrature panel width underflow", exact_error());
    }
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.lo, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.hi);
    for (const auto& half : {left, right}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end());
    }
    total_error += left.error + right.error - worst.error;
    // The running sum drifts; recompute before trusting it.
    if (total_error <= abs_tol) total_error = exact_error();
  }
  std::sort(heap.begin(), heap.end(),
            [](const detail::Panel& a, const detail::Panel& b) { return a.lo < b.lo; });
  QuadratureResult result;
  for (const auto& p : heap) {
    result.value += p.value;
    result.error += p.error;
  }
  result.panels = static_cast<int>(heap.size());
  return result;
}

}  // namespace capcover
