#pragma once

// Reference implementations used only by tests. Each one takes a different
// route from the library code so agreement is evidence rather than echo.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace argconc::oracle {

using Matrix = std::vector<std::vector<double>>;

// Stationary vector of s = (1 - d) p + d W s, with W the column-normalized
// weights (zero columns spread uniformly), solved directly as
// (I - d W) s = (1 - d) p by Gaussian elimination with partial pivoting.
inline std::vector<double> pagerank_direct(const Matrix& weights, double d,
                                           std::vector<double> p = {}) {
  const std::size_t n = weights.size();
  if (p.empty()) p.assign(n, 1.0 / static_cast<double>(n));
  Matrix w(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += weights[i][j];
    for (std::size_t i = 0; i < n; ++i) {
      w[i][j] = col > 0.0 ? weights[i][j] / col : 1.0 / static_cast<double>(n);
    }
  }
  // Augmented system [I - dW | (1 - d) p].
  Matrix a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - d * w[i][j];
    a[i][n] = (1.0 - d) * p[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = a[i][n] / a[i][i];
  return s;
}

inline std::vector<std::string> lower_alnum_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char ch : s) {
    const bool word = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch >= 0x80;
    if (word) {
      cur.push_back((ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a')
                                             : static_cast<char>(ch));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Novelty by brute force: every conclusion type is looked up by a linear
// scan over the text tokens.
inline double novelty_brute(const std::string& conclusion, const std::string& text) {
  auto c = lower_alnum_tokens(conclusion);
  auto t = lower_alnum_tokens(text);
  std::vector<std::string> types;
  for (const auto& w : c) {
    bool seen = false;
    for (const auto& u : types) seen = seen || u == w;
    if (!seen) types.push_back(w);
  }
  std::size_t novel = 0;
  for (const auto& w : types) {
    bool found = false;
    for (const auto& u : t) found = found || u == w;
    if (!found) ++novel;
  }
  return 100.0 * static_cast<double>(novel) / static_cast<double>(types.size());
}

// F1 of token-level exact matching: a candidate token counts toward
// precision when it occurs anywhere in the reference, and vice versa.
inline double membership_f1(const std::vector<std::string>& cand,
                            const std::vector<std::string>& ref) {
  std::set<std::string> cs(cand.begin(), cand.end()), rs(ref.begin(), ref.end());
  double hit_c = 0, hit_r = 0;
  for (const auto& w : cand) hit_c += rs.count(w) ? 1 : 0;
  for (const auto& w : ref) hit_r += cs.count(w) ? 1 : 0;
  const double p = hit_c / static_cast<double>(cand.size());
  const double r = hit_r / static_cast<double>(ref.size());
  return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
}

}  // namespace argconc::oracle
