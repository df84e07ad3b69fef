#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sandpile/configuration.hpp"
#include "sandpile/model.hpp"

namespace sandpile {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationLimit = 100'000'000;

// Number of stable configurations on the shape, or of sorted ones.
BigInt stable_count(BipartiteShape shape, bool sorted_only);

// Calls visit on every stable configuration exactly once, in lexicographic
// order (top side first). Sorted mode visits only weakly increasing
// representatives. Throws GuardExceeded when stable_count exceeds `limit`.
void for_each_stable(BipartiteShape shape, bool sorted_only,
                     const std::function<void(const Configuration&)>& visit,
                     std::uint64_t limit = kDefaultEnumerationLimit);
std::vector<Configuration> enumerate_stable(BipartiteShape shape, bool sorted_only,
                                            std::uint64_t limit = kDefaultEnumerationLimit);

// coefficients[l] counts recurrent configurations of level l, l = 0..m(n-1).
struct LevelPolynomial {
  std::vector<std::uint64_t> coefficients;

  std::uint64_t total() const;
  // `c0+c1*q+c2*q^2+...`, zero coefficients kept.
  std::string to_string() const;
  friend bool operator==(const LevelPolynomial&, const LevelPolynomial&) = default;
};

struct CensusRow {
  int m = 0;
  int n = 1;
  Model model = Model::abelian;
  bool sorted = false;
  std::uint64_t count = 0;
  LevelPolynomial level_poly;
};

inline constexpr const char* kCensusCsvHeader = "m,n,model,sorted,count,level_poly";
std::string to_csv(const CensusRow& row);

CensusRow census(BipartiteShape shape, Model model, bool sorted_only,
                 std::uint64_t limit = kDefaultEnumerationLimit);

// Spanning trees of the complete bipartite graph K_{m+1,n}, by an exact
// determinant of the reduced Laplacian.
BigInt spanning_tree_count(BipartiteShape shape);

// Stable states seen at times t with burn_in < t <= steps of the chain run by
// run_chain(model, shape, steps, seed, p, ...).
std::set<Configuration> empirical_support(Model model, BipartiteShape shape, std::uint64_t steps,
                                          std::uint64_t seed, double p, std::uint64_t burn_in);

}  // namespace sandpile
