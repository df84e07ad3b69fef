#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sandpile/configuration.hpp"
#include "sandpile/model.hpp"

namespace sandpile {

// k_j = |{ i : top_i < j }| for j = 1..n, stored at index j-1.
struct KVector {
  std::vector<std::int32_t> values;

  std::int32_t operator[](int j) const { return values[j - 1]; }  // 1-based
  std::size_t size() const { return values.size(); }
  friend bool operator==(const KVector&, const KVector&) = default;
};

// Counting sort of values in [0, max_value]. Throws InvalidArgument for a
// value outside that range.
std::vector<Grain> counting_sort(std::span<const Grain> values, Grain max_value);

// Linear-time k-vector of a stable top side (entries in [0, n-1]).
KVector compute_k(int n, std::span<const Grain> top);

// Stochastic burning: prefix sums of the sorted bottom side dominate those of k.
// Throws InvalidArgument on an unstable configuration.
bool is_stochastically_recurrent(const Configuration& c);

// Rowwise test: the j-th smallest bottom entry is at least k_j.
bool is_deterministically_recurrent(const Configuration& c);

bool is_recurrent(Model model, const Configuration& c);

// Total grains minus m*n. Defined on every configuration; for stable inputs
// it is cross-checked against sum(bottom) - sum(k).
std::int64_t level(const Configuration& c);

// Subsets are 1-based and sorted ascending.
struct ForbiddenWitness {
  std::vector<int> top;     // A, subset of [m]
  std::vector<int> bottom;  // B, subset of [n]
  friend bool operator==(const ForbiddenWitness&, const ForbiddenWitness&) = default;
};

inline constexpr int kDefaultWitnessVertexLimit = 24;

// Exhaustive search for (A, B) with sum_A top + sum_B bottom < |A||B|.
// Subsets are scanned in the order (|B|, B, |A|, A), each B and A in
// lexicographic order among subsets of its size, so the first witness found
// is deterministic. Throws GuardExceeded when m + n > vertex_limit.
std::optional<ForbiddenWitness> forbidden_witness_ssm(const Configuration& c,
                                                      int vertex_limit = kDefaultWitnessVertexLimit);

// Exhaustive search for non-empty (A, B) on which c restricted to the induced
// subgraph is stable: top_i < |B| for i in A and bottom_j < |A| for j in B.
std::optional<ForbiddenWitness> forbidden_witness_asm(const Configuration& c,
                                                      int vertex_limit = kDefaultWitnessVertexLimit);

std::optional<ForbiddenWitness> forbidden_witness(Model model, const Configuration& c,
                                                  int vertex_limit = kDefaultWitnessVertexLimit);

// Sorted representative (both sides weakly increasing).
Configuration sort_config(const Configuration& c);

}  // namespace sandpile
