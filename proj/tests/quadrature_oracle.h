//
// Copyright 2026 The PolyPlace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Independent numerical oracle for the PolyPlace density. The density is
// re-evaluated here straight from its definition with std::pow, and moments are
// integrated in x space with Boost quadrature, so nothing is shared with the
// library's closed forms.

#ifndef POLYPLACE_TESTS_QUADRATURE_ORACLE_H_
#define POLYPLACE_TESTS_QUADRATURE_ORACLE_H_

#include <cmath>

#include "boost/math/quadrature/exp_sinh.hpp"
#include "boost/math/quadrature/gauss_kronrod.hpp"

namespace polyplace::testing {

inline double ReferencePdf(double s, double alpha, double x) {
  const double y = std::abs(x) / s;
  const double k =
      2.0 * (2.0 * std::pow((alpha - 1.0) / alpha, alpha) + alpha - 1.0);
  const double n = alpha / (k * s);
  if (y < 1.0 / alpha) return n * (alpha - 1.0) * std::pow(1.0 - y, alpha - 1.0);
  return n * (alpha + 1.0) * std::pow(1.0 - 1.0 / (alpha * alpha), alpha) *
         std::pow(1.0 + y, -alpha - 1.0);
}

// Integral of |x|^power * pdf(x) over [lo, hi] with 0 <= lo <= hi <= s/alpha.
inline double CoreMoment(double s, double alpha, int power, double lo,
                         double hi) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
      [&](double x) { return std::pow(x, power) * ReferencePdf(s, alpha, x); },
      lo, hi, 10, 1e-13);
}

// log pdf on the tail branch as a function of log|x|, so that |x| far beyond
// the double range is still representable.
inline double ReferenceLogTailPdf(double s, double alpha, double log_x) {
  const double log_y = log_x - std::log(s);
  const double log_one_plus_y = log_y > 0
                                    ? log_y + std::log1p(std::exp(-log_y))
                                    : std::log1p(std::exp(log_y));
  const double k =
      2.0 * (2.0 * std::pow((alpha - 1.0) / alpha, alpha) + alpha - 1.0);
  return std::log(alpha / (k * s)) + std::log(alpha + 1.0) +
         alpha * std::log(1.0 - 1.0 / (alpha * alpha)) -
         (alpha + 1.0) * log_one_plus_y;
}

// Integral of |x|^power * pdf(x) over [lo, infinity), lo >= s/alpha > 0.
// Substituting x = lo e^u turns the power-law tail into an exponential decay in
// u; for shapes near 2 the second moment has mass out to |x| ~ e^1000.
inline double TailMoment(double s, double alpha, int power, double lo) {
  boost::math::quadrature::exp_sinh<double> integrator(16);
  const double log_lo = std::log(lo);
  return integrator.integrate(
      [&](double u) {
        const double log_x = log_lo + u;
        const double value = std::exp((power + 1) * log_x +
                                      ReferenceLogTailPdf(s, alpha, log_x));
        return std::isfinite(value) ? value : 0.0;
      },
      1e-13);
}

// Integral of |x|^power * pdf(x) over [lo, hi] with s/alpha <= lo < hi, in
// log x.
inline double TruncatedTailMoment(double s, double alpha, int power, double lo,
                                  double hi) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
      [&](double u) {
        return std::exp((power + 1) * u + ReferenceLogTailPdf(s, alpha, u));
      },
      std::log(lo), std::log(hi), 10, 1e-13);
}

// Integral of |x|^power * pdf(x) over the whole real line.
inline double AbsoluteMoment(double s, double alpha, int power) {
  const double b = s / alpha;
  return 2.0 * (CoreMoment(s, alpha, power, 0.0, b) +
                TailMoment(s, alpha, power, b));
}

// P(X > x) for x >= 0.
inline double UpperTailMass(double s, double alpha, double x) {
  const double b = s / alpha;
  if (x >= b) return TailMoment(s, alpha, 0, x);
  return CoreMoment(s, alpha, 0, x, b) + TailMoment(s, alpha, 0, b);
}

}  // namespace polyplace::testing

#endif  // POLYPLACE_TESTS_QUADRATURE_ORACLE_H_
