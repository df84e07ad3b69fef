#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sandpile/configuration.hpp"
#include "sandpile/model.hpp"

namespace sandpile {

// Source of the Bernoulli bits used by stochastic topplings. The bit for
// (vertex, k-th firing of that vertex, neighbour) must be fixed: querying
// the same key twice gives the same answer. This is what makes stochastic
// stabilisation independent of the toppling order.
class BitOracle {
 public:
  virtual ~BitOracle() = default;
  virtual bool bit(VertexId vertex, std::uint64_t firing_index, VertexId neighbour) const = 0;
};

// Counter-mode oracle: every bit is a pure function of (seed, p, key).
class ToppleOracle final : public BitOracle {
 public:
  // p must lie in the open interval (0, 1).
  ToppleOracle(std::uint64_t seed, double p);

  std::uint64_t seed() const { return seed_; }
  double p() const { return p_; }

  bool bit(VertexId vertex, std::uint64_t firing_index, VertexId neighbour) const override;

  // Oracle for step `step` of a Markov chain run; keys never collide with
  // this oracle's own keys or with the vertex-choice stream.
  ToppleOracle for_step(std::uint64_t step) const;

 private:
  std::uint64_t seed_;
  double p_;
};

// Every bit equal to `value`. With value = true stochastic toppling is
// exactly the abelian toppling.
class ConstantOracle final : public BitOracle {
 public:
  explicit ConstantOracle(bool value) : value_(value) {}
  bool bit(VertexId, std::uint64_t, VertexId) const override { return value_; }

 private:
  bool value_;
};

// Explicit bit table, used to replay recorded traces. Querying a key that
// was never set throws InvalidArgument unless a fallback was given.
class ScriptedOracle final : public BitOracle {
 public:
  ScriptedOracle() = default;
  explicit ScriptedOracle(bool fallback) : fallback_(fallback), has_fallback_(true) {}

  ScriptedOracle& set(VertexId vertex, std::uint64_t firing_index, VertexId neighbour, bool value);
  bool bit(VertexId vertex, std::uint64_t firing_index, VertexId neighbour) const override;

 private:
  struct Key {
    VertexId vertex;
    std::uint64_t firing;
    VertexId neighbour;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, bool> bits_;
  bool fallback_ = false;
  bool has_fallback_ = false;
};

enum class TopplePolicy { fifo, lifo, min_index };

struct FiringCounts {
  std::vector<std::uint64_t> top;
  std::vector<std::uint64_t> bottom;

  std::uint64_t total() const;
  friend bool operator==(const FiringCounts&, const FiringCounts&) = default;
};

struct Stabilization {
  Configuration config;
  FiringCounts firings;
};

inline constexpr std::uint64_t kDefaultFiringCap = 1'000'000'000;

bool is_stable(const Configuration& c);
bool is_stable_at(const Configuration& c, VertexId v);

// Neighbours of a non-sink vertex in bit-query order: sink first (bottom
// vertices only), then ascending index.
std::vector<VertexId> neighbours(BipartiteShape shape, VertexId v);

// Throws InvalidArgument if v is the sink or is stable in c.
Configuration topple_deterministic(const Configuration& c, VertexId v);
Configuration topple_stochastic(const Configuration& c, VertexId v, const BitOracle& oracle,
                                std::uint64_t firing_index);

Stabilization stabilize_deterministic(const Configuration& c,
                                      TopplePolicy policy = TopplePolicy::fifo);

// The k-th firing of a vertex (k counted from 0, zero-grain firings
// included) queries the oracle with firing index k. Throws StallError once
// more than `max_firings` topplings have been performed.
Stabilization stabilize_stochastic(const Configuration& c, const BitOracle& oracle,
                                   TopplePolicy policy = TopplePolicy::fifo,
                                   std::uint64_t max_firings = kDefaultFiringCap);

// Add a grain at v to the stable configuration c, then stabilise under
// `model`. The oracle is ignored for the abelian model.
Configuration markov_step(Model model, const Configuration& c, VertexId v, const BitOracle& oracle);

// Vertex chosen at step `step` (1-based) of a chain seeded with `seed`.
VertexId chain_vertex(BipartiteShape shape, std::uint64_t seed, std::uint64_t step);

// Runs the grain-addition chain from the all-zero configuration and calls
// visit(t, state) for t = 0..steps. Step t adds a grain at
// chain_vertex(shape, seed, t) and stabilises with ToppleOracle(seed, p).for_step(t).
void run_chain(Model model, BipartiteShape shape, std::uint64_t steps, std::uint64_t seed,
               double p, const std::function<void(std::uint64_t, const Configuration&)>& visit);

// Visit counts over the states at t = 0..steps.
std::map<Configuration, std::uint64_t> simulate(Model model, BipartiteShape shape,
                                                std::uint64_t steps, std::uint64_t seed, double p);

}  // namespace sandpile
