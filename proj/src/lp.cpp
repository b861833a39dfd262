#include "wpn/lp.hpp"

#include <stdexcept>

namespace wpn {

std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("row count mismatch");
  const std::size_t n = m ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("ragged constraint matrix");
  if (m == 0) return std::vector<Rational>(n, 0);

  // Columns: x (n), surplus (m), artificial (m), rhs.
  const std::size_t cols = n + 2 * m + 1;
  const std::size_t rhs = cols - 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, 0));
  std::vector<std::size_t> basis(m);
  std::vector<bool> artificial_row(m, false);

  for (std::size_t i = 0; i < m; ++i) {
    // sum a_ij x_j - s_i = b_i
    Rational sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = -sign;
    t[i][rhs] = sign * b[i];
    if (sign < 0) {
      basis[i] = n + i;  // surplus enters with coefficient +1
    } else {
      t[i][n + m + i] = 1;
      basis[i] = n + m + i;
      artificial_row[i] = true;
    }
  }
  auto& cost = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    if (!artificial_row[i]) continue;
    for (std::size_t j = 0; j < n + m; ++j) cost[j] -= t[i][j];
    cost[rhs] -= t[i][rhs];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (cost[rhs] != 0) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][rhs];
  return x;
}

}  // namespace wpn
