#include "sandpile/recurrence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sandpile/error.hpp"
#include "sandpile/toppling.hpp"

namespace sandpile {

namespace {

void require_stable(const Configuration& c, const char* what) {
  if (!is_stable(c)) throw InvalidArgument(std::string(what) + " requires a stable configuration");
}

// Advances idx (strictly increasing, values in [0, universe)) to the next
// combination of the same size in lexicographic order.
bool next_combination(std::vector<int>& idx, int universe) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == universe - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::vector<int> first_combination(int size) {
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

std::vector<int> one_based(const std::vector<int>& idx) {
  std::vector<int> out(idx.size());
  std::transform(idx.begin(), idx.end(), out.begin(), [](int i) { return i + 1; });
  return out;
}

void check_guard(const Configuration& c, int vertex_limit) {
  if (c.m() + c.n() > vertex_limit) {
    throw GuardExceeded("forbidden-subconfiguration search limited to m+n <= " +
                        std::to_string(vertex_limit) + ", got " + std::to_string(c.m() + c.n()));
  }
}

// Drives the (|B|, B, |A|, A) scan. `size_admits(sumB, |B|, a)` says whether
// some A of size a can complete a witness with this B; only then is the
// lexicographic scan over A run, with `accepts(A, B, sumB)` deciding.
template <class SizeAdmits, class Accepts>
std::optional<ForbiddenWitness> scan_witnesses(const Configuration& c, SizeAdmits&& size_admits,
                                               Accepts&& accepts) {
  const int m = c.m();
  const int n = c.n();
  for (int b_size = 1; b_size <= n; ++b_size) {
    auto b_idx = first_combination(b_size);
    do {
      std::int64_t sum_b = 0;
      for (int j : b_idx) sum_b += c.bottom()[j];
      for (int a_size = 1; a_size <= m; ++a_size) {
        if (!size_admits(sum_b, b_size, a_size, b_idx)) continue;
        auto a_idx = first_combination(a_size);
        do {
          if (accepts(a_idx, b_idx, sum_b)) return ForbiddenWitness{one_based(a_idx), one_based(b_idx)};
        } while (next_combination(a_idx, m));
      }
    } while (next_combination(b_idx, n));
  }
  return std::nullopt;
}

}  // namespace

std::vector<Grain> counting_sort(std::span<const Grain> values, Grain max_value) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(max_value) + 1, 0);
  for (Grain v : values) {
    if (v < 0 || v > max_value) {
      throw InvalidArgument("counting_sort: value " + std::to_string(v) + " outside [0, " +
                            std::to_string(max_value) + "]");
    }
    ++counts[v];
  }
  std::vector<Grain> out;
  out.reserve(values.size());
  for (Grain v = 0; v <= max_value; ++v) out.insert(out.end(), counts[v], v);
  return out;
}

KVector compute_k(int n, std::span<const Grain> top) {
  if (n < 1) throw InvalidArgument("compute_k requires n >= 1");
  // exact[j] = |{ i : top_i = j }| for j = 0..n-1
  std::vector<std::int32_t> exact(n, 0);
  for (Grain g : top) {
    if (g < 0 || g >= n) {
      throw InvalidArgument("compute_k: top entry " + std::to_string(g) + " is not in [0, " +
                            std::to_string(n - 1) + "]");
    }
    ++exact[g];
  }
  KVector k;
  k.values.resize(n);
  std::int32_t sum = 0;
  for (int j = 1; j <= n; ++j) {
    sum += exact[j - 1];
    k.values[j - 1] = sum;
  }
  return k;
}

namespace {

// Walks j = 1..n with k_j and the j-th smallest bottom value, both read off
// count arrays, and stops as soon as `holds(k_j, b_j)` fails.
template <class Holds>
bool scan_k_against_bottom(const Configuration& c, Holds&& holds) {
  const int m = c.m();
  const int n = c.n();
  // top_count[j] = |{ i : top_i = j }|, bottom_count[v] = |{ j : bottom_j = v }|
  std::vector<std::int32_t> top_count(n, 0);
  for (Grain g : c.top()) ++top_count[g];
  std::vector<std::int32_t> bottom_count(static_cast<std::size_t>(m) + 1, 0);
  for (Grain g : c.bottom()) ++bottom_count[g];

  std::int32_t k = 0;
  Grain value = 0;
  for (int j = 0; j < n; ++j) {
    k += top_count[j];
    while (bottom_count[value] == 0) ++value;
    --bottom_count[value];
    if (!holds(k, value)) return false;
  }
  return true;
}

}  // namespace

bool is_stochastically_recurrent(const Configuration& c) {
  require_stable(c, "is_stochastically_recurrent");
  std::int64_t sum_k = 0;
  std::int64_t sum_c = 0;
  return scan_k_against_bottom(c, [&](std::int32_t k, Grain b) {
    sum_k += k;
    sum_c += b;
    return sum_c >= sum_k;
  });
}

bool is_deterministically_recurrent(const Configuration& c) {
  require_stable(c, "is_deterministically_recurrent");
  return scan_k_against_bottom(c, [](std::int32_t k, Grain b) { return b >= k; });
}

bool is_recurrent(Model model, const Configuration& c) {
  return model == Model::abelian ? is_deterministically_recurrent(c) : is_stochastically_recurrent(c);
}

std::int64_t level(const Configuration& c) {
  const std::int64_t by_total =
      c.total_grains() - static_cast<std::int64_t>(c.m()) * static_cast<std::int64_t>(c.n());
  if (is_stable(c)) {
    const KVector k = compute_k(c.n(), c.top());
    const std::int64_t sum_k = std::accumulate(k.values.begin(), k.values.end(), std::int64_t{0});
    const std::int64_t sum_b = std::accumulate(c.bottom().begin(), c.bottom().end(), std::int64_t{0});
    if (sum_b - sum_k != by_total) throw std::logic_error("level: k-vector identity violated");
  }
  return by_total;
}

std::optional<ForbiddenWitness> forbidden_witness_ssm(const Configuration& c, int vertex_limit) {
  check_guard(c, vertex_limit);
  require_stable(c, "forbidden_witness_ssm");
  // smallest[a] = sum of the a smallest top entries
  const auto sorted_top = counting_sort(c.top(), static_cast<Grain>(c.n() - 1));
  std::vector<std::int64_t> smallest(c.m() + 1, 0);
  for (int a = 1; a <= c.m(); ++a) smallest[a] = smallest[a - 1] + sorted_top[a - 1];

  return scan_witnesses(
      c, [&](std::int64_t sum_b, int b_size, int a_size, const std::vector<int>&) {
        return smallest[a_size] + sum_b < static_cast<std::int64_t>(a_size) * b_size;
      },
      [&](const std::vector<int>& a_idx, const std::vector<int>& b_idx, std::int64_t sum_b) {
        std::int64_t sum = sum_b;
        for (int i : a_idx) sum += c.top()[i];
        return sum < static_cast<std::int64_t>(a_idx.size()) * static_cast<std::int64_t>(b_idx.size());
      });
}

std::optional<ForbiddenWitness> forbidden_witness_asm(const Configuration& c, int vertex_limit) {
  check_guard(c, vertex_limit);
  require_stable(c, "forbidden_witness_asm");
  return scan_witnesses(
      c, [&](std::int64_t, int b_size, int a_size, const std::vector<int>& b_idx) {
        for (int j : b_idx)
          if (c.bottom()[j] >= a_size) return false;
        const auto eligible = std::count_if(c.top().begin(), c.top().end(),
                                            [&](Grain g) { return g < b_size; });
        return eligible >= a_size;
      },
      [&](const std::vector<int>& a_idx, const std::vector<int>& b_idx, std::int64_t) {
        const auto b_size = static_cast<Grain>(b_idx.size());
        return std::all_of(a_idx.begin(), a_idx.end(), [&](int i) { return c.top()[i] < b_size; });
      });
}

std::optional<ForbiddenWitness> forbidden_witness(Model model, const Configuration& c, int vertex_limit) {
  return model == Model::abelian ? forbidden_witness_asm(c, vertex_limit)
                                 : forbidden_witness_ssm(c, vertex_limit);
}

Configuration sort_config(const Configuration& c) {
  auto sort_side = [](const std::vector<Grain>& side) {
    if (side.empty()) return side;
    const Grain max_value = *std::max_element(side.begin(), side.end());
    // Stable inputs have max_value < n or <= m, so the counting range stays
    // linear in the input. Huge unstable piles fall back to std::sort.
    if (static_cast<std::size_t>(max_value) <= 4 * side.size() + 1024) {
      return counting_sort(side, max_value);
    }
    auto out = side;
    std::sort(out.begin(), out.end());
    return out;
  };
  return Configuration(sort_side(c.top()), sort_side(c.bottom()));
}

}  // namespace sandpile
