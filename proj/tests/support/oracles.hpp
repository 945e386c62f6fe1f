#pragma once

// Naive reference implementations used to cross-check the library. They
// deliberately share no code with src/ and favor the most literal reading
// of each textbook formula over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

inline double precision(const std::vector<int>& r) {
  double hits = 0;
  for (int x : r) hits += x;
  return hits / static_cast<double>(r.size());
}

inline int hits(const std::vector<int>& r) {
  for (int x : r)
    if (x) return 1;
  return 0;
}

inline double reciprocal_rank(const std::vector<int>& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i]) return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

// (1/R) sum over relevant positions i of (relevant in 1..i) / i.
inline double average_precision(const std::vector<int>& r, int r_total) {
  if (r_total == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i]) continue;
    int seen = 0;
    for (std::size_t j = 0; j <= i; ++j) seen += r[j];
    sum += static_cast<double>(seen) / static_cast<double>(i + 1);
  }
  return sum / r_total;
}

inline double dcg(const std::vector<double>& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    s += g[i] / (std::log(static_cast<double>(i + 2)) / std::log(2.0));
  return s;
}

inline double ndcg(const std::vector<double>& g) {
  std::vector<double> ideal = g;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double best = dcg(ideal);
  return best == 0.0 ? 0.0 : dcg(g) / best;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// sigmoid(mean(max(u,0)) + gamma * mean(min(u,0))).
inline double udcg(const std::vector<double>& u, double gamma) {
  double pos = 0.0, neg = 0.0;
  for (double x : u) {
    if (x > 0) pos += x;
    if (x < 0) neg += x;
  }
  const double k = static_cast<double>(u.size());
  return logistic(pos / k + gamma * neg / k);
}

// rank_i = 1 + #{j: v_j < v_i} + (#{j: v_j == v_i} - 1) / 2.
inline std::vector<double> midranks(const std::vector<double>& v) {
  std::vector<double> out;
  for (double a : v) {
    int less = 0, equal = 0;
    for (double b : v) {
      if (b < a) ++less;
      if (b == a) ++equal;
    }
    out.push_back(1.0 + less + (equal - 1) / 2.0);
  }
  return out;
}

// Sum over tie groups of (t^3 - t) / 12.
inline double tie_term(const std::vector<double>& v) {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end());
  double term = 0.0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double t = static_cast<double>(j - i);
    term += (t * t * t - t) / 12.0;
    i = j;
  }
  return term;
}

// Tie-corrected Spearman:
//   rho = (Sx + Sy - sum d^2) / (2 sqrt(Sx Sy)),
//   Sx = (n^3 - n)/12 - sum_ties (t^3 - t)/12.
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double sx = (n * n * n - n) / 12.0 - tie_term(x);
  const double sy = (n * n * n - n) / 12.0 - tie_term(y);
  return (sx + sy - d2) / (2.0 * std::sqrt(sx * sy));
}

}  // namespace oracle
