#include "sandpile/enumeration.hpp"

#include <numeric>
#include <sstream>

#include "sandpile/error.hpp"
#include "sandpile/recurrence.hpp"
#include "sandpile/toppling.hpp"

namespace sandpile {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigInt power(int base, int exponent) {
  BigInt out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Advances v in lexicographic order over sequences with entries in
// [0, bound). Sorted mode keeps v weakly increasing.
bool advance(std::vector<Grain>& v, Grain bound, bool sorted) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] + 1 < bound) {
      ++v[i];
      if (sorted) std::fill(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), v[i]);
      else std::fill(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace

BigInt stable_count(BipartiteShape shape, bool sorted_only) {
  const int m = shape.m();
  const int n = shape.n();
  if (sorted_only) {
    // multisets of size m from n values, times multisets of size n from m+1 values
    return binomial(n + m - 1, m) * binomial(m + n, n);
  }
  return power(n, m) * power(m + 1, n);
}

void for_each_stable(BipartiteShape shape, bool sorted_only,
                     const std::function<void(const Configuration&)>& visit, std::uint64_t limit) {
  const BigInt count = stable_count(shape, sorted_only);
  if (count > limit) {
    throw GuardExceeded("enumeration of " + count.str() + " configurations exceeds the limit of " +
                        std::to_string(limit));
  }
  std::vector<Grain> top(shape.m(), 0);
  do {
    std::vector<Grain> bottom(shape.n(), 0);
    do {
      visit(Configuration(top, bottom));
    } while (advance(bottom, shape.bottom_degree(), sorted_only));
  } while (advance(top, shape.top_degree(), sorted_only));
}

std::vector<Configuration> enumerate_stable(BipartiteShape shape, bool sorted_only, std::uint64_t limit) {
  std::vector<Configuration> out;
  for_each_stable(shape, sorted_only, [&](const Configuration& c) { out.push_back(c); }, limit);
  return out;
}

std::uint64_t LevelPolynomial::total() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), std::uint64_t{0});
}

std::string LevelPolynomial::to_string() const {
  std::ostringstream out;
  for (std::size_t l = 0; l < coefficients.size(); ++l) {
    if (l > 0) out << '+';
    out << coefficients[l];
    if (l == 1) out << "*q";
    else if (l > 1) out << "*q^" << l;
  }
  return out.str();
}

std::string to_csv(const CensusRow& row) {
  std::ostringstream out;
  out << row.m << ',' << row.n << ',' << to_string(row.model) << ',' << (row.sorted ? "true" : "false")
      << ',' << row.count << ',' << row.level_poly.to_string();
  return out.str();
}

CensusRow census(BipartiteShape shape, Model model, bool sorted_only, std::uint64_t limit) {
  CensusRow row;
  row.m = shape.m();
  row.n = shape.n();
  row.model = model;
  row.sorted = sorted_only;
  row.level_poly.coefficients.assign(static_cast<std::size_t>(shape.m()) * (shape.n() - 1) + 1, 0);
  for_each_stable(
      shape, sorted_only,
      [&](const Configuration& c) {
        if (!is_recurrent(model, c)) return;
        const std::int64_t l = level(c);
        if (l < 0 || static_cast<std::size_t>(l) >= row.level_poly.coefficients.size()) {
          throw std::logic_error("census: recurrent configuration with level " + std::to_string(l));
        }
        ++row.level_poly.coefficients[static_cast<std::size_t>(l)];
        ++row.count;
      },
      limit);
  return row;
}

BigInt spanning_tree_count(BipartiteShape shape) {
  // Vertices of K_{m+1,n}: tops 0..m (0 is removed), then bottoms.
  const int m = shape.m();
  const int n = shape.n();
  const int size = m + n;
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size, 0));
  for (int i = 0; i < m; ++i) a[i][i] = n;
  for (int j = 0; j < n; ++j) a[m + j][m + j] = m + 1;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][m + j] = -1;
      a[m + j][i] = -1;
    }
  }
  // Bareiss fraction-free elimination.
  BigInt sign = 1;
  BigInt previous = 1;
  for (int k = 0; k < size; ++k) {
    if (a[k][k] == 0) {
      int swap_row = k + 1;
      while (swap_row < size && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == size) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
      }
    }
    previous = a[k][k];
  }
  return size == 0 ? BigInt(1) : sign * a[size - 1][size - 1];
}

std::set<Configuration> empirical_support(Model model, BipartiteShape shape, std::uint64_t steps,
                                          std::uint64_t seed, double p, std::uint64_t burn_in) {
  std::set<Configuration> seen;
  if (steps <= burn_in) return seen;
  run_chain(model, shape, steps, seed, p, [&](std::uint64_t t, const Configuration& c) {
    if (t > burn_in) seen.insert(c);
  });
  return seen;
}

}  // namespace sandpile
