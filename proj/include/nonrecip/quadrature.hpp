// Copyright 2026 The nonrecip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>

#include "nonrecip/units.hpp"

namespace nonrecip {

struct QuadratureResult {
  double value = 0.0;
  int evaluations = 0;
};

namespace detail {

template <class F>
double checked_eval(F& f, double x, int& evaluations) {
  const double y = f(x);
  ++evaluations;
  if (!std::isfinite(y)) throw DomainError("quadrature: non-finite integrand at t = " + std::to_string(x));
  return y;
}

template <class F>
double adaptive_simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                             int depth, int& evaluations) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = checked_eval(f, lm, evaluations);
  const double frm = checked_eval(f, rm, evaluations);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evaluations) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evaluations);
}

}  // namespace detail

/// Adaptive Simpson quadrature of a real integrand on [a, b] to absolute
/// tolerance `tol`. The interval is pre-split into `panels` pieces so that
/// narrow features are not missed by the first coarse estimate.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int panels = 16, int max_depth = 40) {
  QuadratureResult out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == panels) ? b : a + (p + 1) * h;
    const double flo = detail::checked_eval(f, lo, out.evaluations);
    const double fhi = detail::checked_eval(f, hi, out.evaluations);
    const double fmid = detail::checked_eval(f, 0.5 * (lo + hi), out.evaluations);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    out.value += detail::adaptive_simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / panels, max_depth,
                                               out.evaluations);
  }
  return out;
}

}  // namespace nonrecip
