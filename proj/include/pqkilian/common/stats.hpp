// Copyright 2026 The pqkilian Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pqk {

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample stddev (n-1)
  double stderr_mean = 0.0;
  std::size_t n = 0;
};

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

/// 3-sigma allowance on an empirical frequency p_hat out of n trials.
inline double freq_sigma3(double p_hat, std::size_t n) {
  if (n == 0) return 0.0;
  return 3.0 * std::sqrt(std::max(p_hat * (1.0 - p_hat), 1.0 / static_cast<double>(n)) /
                         static_cast<double>(n));
}

namespace detail {

inline double gamma_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; i++) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; i++) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(a,x).
inline double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_series(a, x);
  return detail::gamma_cf(a, x);
}

/// Survival function of the chi-squared distribution with df degrees of freedom.
inline double chi2_sf(double x, double df) { return gammq(df / 2.0, x / 2.0); }

/// Pearson chi-squared two-sample homogeneity test over shared bins.
/// Bins with combined expected count < 5 must be merged by the caller.
inline double chi2_two_sample(const std::vector<double>& count_a, const std::vector<double>& count_b,
                              std::size_t* df_out) {
  if (count_a.size() != count_b.size()) throw std::invalid_argument("chi2: bin mismatch");
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < count_a.size(); i++) {
    na += count_a[i];
    nb += count_b[i];
  }
  double stat = 0;
  std::size_t df = 0;
  for (std::size_t i = 0; i < count_a.size(); i++) {
    double tot = count_a[i] + count_b[i];
    if (tot <= 0) continue;
    double ea = tot * na / (na + nb);
    double eb = tot * nb / (na + nb);
    stat += (count_a[i] - ea) * (count_a[i] - ea) / ea;
    stat += (count_b[i] - eb) * (count_b[i] - eb) / eb;
    df++;
  }
  if (df_out) *df_out = df > 0 ? df - 1 : 0;
  return stat;
}

/// Least-squares fit y = a*x + b; returns (a, b, r_squared).
struct LinFit {
  double a = 0, b = 0, r2 = 0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); i++) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinFit f;
  double denom = n * sxx - sx * sx;
  f.a = (n * sxy - sx * sy) / denom;
  f.b = (sy - f.a * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); i++) {
    double pred = f.a * x[i] + f.b;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

/// log of the binomial pmf, for exact tail sums at large n.
inline double log_binom_pmf(std::uint64_t n, std::uint64_t k, double p) {
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  double dn = static_cast<double>(n), dk = static_cast<double>(k);
  return std::lgamma(dn + 1) - std::lgamma(dk + 1) - std::lgamma(dn - dk + 1) +
         dk * std::log(p) + (dn - dk) * std::log1p(-p);
}

/// Pr[lo <= Bin(n,p) <= hi], exact up to double rounding.
inline double binom_range_prob(std::uint64_t n, std::uint64_t lo, std::uint64_t hi, double p) {
  if (hi > n) hi = n;
  if (lo > hi) return 0.0;
  if (p <= 0.0) return lo == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return hi == n ? 1.0 : 0.0;
  // Sum pmf across the window with a multiplicative recurrence from the mode side.
  double total = 0.0;
  double logp = log_binom_pmf(n, lo, p);
  double term = std::exp(logp);
  total += term;
  double dn = static_cast<double>(n);
  for (std::uint64_t k = lo; k < hi; k++) {
    double dk = static_cast<double>(k);
    term *= (dn - dk) / (dk + 1.0) * (p / (1.0 - p));
    total += term;
    if (term < 1e-320) {  // underflow guard; re-anchor
      logp = log_binom_pmf(n, k + 1, p);
      term = std::exp(logp);
    }
  }
  return std::min(total, 1.0);
}

}  // namespace pqk
