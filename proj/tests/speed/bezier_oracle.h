/******************************************************************************
 * Copyright 2026 The Intercept Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

// Power-basis reference for Bezier curves and Gauss-Legendre quadrature.

#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace intercept::testing {

inline double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Power-basis coefficients a_k of sum_i c_i b_{n,i}(tau).
inline std::vector<double> ToMonomial(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> a(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int k = i; k <= n; ++k) {
      const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
      a[k] += c[i] * Binomial(n, i) * Binomial(n - i, k - i) * sign;
    }
  }
  return a;
}

/// d-th derivative of the power-basis polynomial at tau.
inline double MonomialDerivative(const std::vector<double>& a, int d, double tau) {
  double sum = 0.0;
  for (size_t k = d; k < a.size(); ++k) {
    double coef = a[k];
    for (int j = 0; j < d; ++j) coef *= static_cast<double>(k - j);
    sum += coef * std::pow(tau, static_cast<double>(k - d));
  }
  return sum;
}

/// Five-point Gauss-Legendre rule on [0, 1]; exact through degree 9.
template <typename F>
double Quadrature(F&& f) {
  static constexpr std::array<double, 5> x = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
      0.9061798459386640};
  static constexpr std::array<double, 5> w = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
      0.2369268850561891, 0.2369268850561891};
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += w[i] * f(0.5 * (x[i] + 1.0));
  return 0.5 * sum;
}

}  // namespace intercept::testing
