#include "sandpile/toppling.hpp"

#include <deque>
#include <set>

#include "sandpile/error.hpp"
#include "prf.hpp"

namespace sandpile {

namespace {

// Key domains so that topple bits, step seeds and vertex choices never share
// an input to the mixing function.
constexpr std::uint64_t kToppleDomain = 0x746f70706c65ULL;
constexpr std::uint64_t kStepDomain = 0x73746570ULL;
constexpr std::uint64_t kChoiceDomain = 0x63686f696365ULL;

std::uint64_t vertex_code(VertexId v) {
  return (static_cast<std::uint64_t>(v.side) << 32) | static_cast<std::uint32_t>(v.index);
}

void require_topplable(const Configuration& c, VertexId v) {
  if (v.is_sink()) throw InvalidArgument("the sink never topples");
  if (!is_valid_vertex(c.shape(), v)) throw InvalidArgument("no such vertex " + to_string(v));
  if (is_stable_at(c, v)) throw InvalidArgument("vertex " + to_string(v) + " is stable");
}

// Neighbours of v in bit-query order.
template <class Visit>
void for_each_neighbour(const Configuration& c, VertexId v, Visit&& send) {
  const BipartiteShape shape = c.shape();
  if (v.side == Side::top) {
    for (int j = 1; j <= shape.n(); ++j) send(VertexId::bottom(j));
  } else {
    send(VertexId::sink());
    for (int i = 1; i <= shape.m(); ++i) send(VertexId::top(i));
  }
}

class Worklist {
 public:
  Worklist(TopplePolicy policy, int size) : policy_(policy), queued_(size, false) {}

  void push(int v) {
    if (queued_[v]) return;
    queued_[v] = true;
    if (policy_ == TopplePolicy::min_index) {
      ordered_.insert(v);
    } else {
      items_.push_back(v);
    }
  }

  bool empty() const { return policy_ == TopplePolicy::min_index ? ordered_.empty() : items_.empty(); }

  int pop() {
    int v = 0;
    switch (policy_) {
      case TopplePolicy::fifo:
        v = items_.front();
        items_.pop_front();
        break;
      case TopplePolicy::lifo:
        v = items_.back();
        items_.pop_back();
        break;
      case TopplePolicy::min_index:
        v = *ordered_.begin();
        ordered_.erase(ordered_.begin());
        break;
    }
    queued_[v] = false;
    return v;
  }

 private:
  TopplePolicy policy_;
  std::vector<bool> queued_;
  std::deque<int> items_;
  std::set<int> ordered_;
};

// Shared driver. `fire(c, v, k)` performs the k-th toppling of v in place and
// reports each receiving neighbour through its callback.
template <class Fire>
Stabilization stabilize_with(const Configuration& start, TopplePolicy policy, std::uint64_t cap,
                             Fire&& fire) {
  Configuration c = start;
  const BipartiteShape shape = c.shape();
  FiringCounts counts{std::vector<std::uint64_t>(shape.m(), 0),
                      std::vector<std::uint64_t>(shape.n(), 0)};
  Worklist work(policy, shape.vertex_count());
  for (int f = 0; f < shape.vertex_count(); ++f)
    if (!is_stable_at(c, vertex_at(shape, f))) work.push(f);

  std::uint64_t total = 0;
  while (!work.empty()) {
    const int f = work.pop();
    const VertexId v = vertex_at(shape, f);
    if (is_stable_at(c, v)) continue;
    if (total == cap) {
      throw StallError("stabilisation exceeded " + std::to_string(cap) + " topplings");
    }
    auto& slot = v.side == Side::top ? counts.top[v.index - 1] : counts.bottom[v.index - 1];
    fire(c, v, slot, [&](VertexId w) {
      if (!w.is_sink() && !is_stable_at(c, w)) work.push(flat_index(shape, w));
    });
    ++slot;
    ++total;
    if (!is_stable_at(c, v)) work.push(f);
  }
  return {std::move(c), std::move(counts)};
}

void fire_deterministic(Configuration& c, VertexId v, std::uint64_t,
                        const std::function<void(VertexId)>& touched) {
  const Grain degree = v.side == Side::top ? c.shape().top_degree() : c.shape().bottom_degree();
  c.at(v) -= degree;
  for_each_neighbour(c, v, [&](VertexId w) {
    if (w.is_sink()) return;
    ++c.at(w);
    touched(w);
  });
}

void fire_stochastic(Configuration& c, VertexId v, std::uint64_t firing, const BitOracle& oracle,
                     const std::function<void(VertexId)>& touched) {
  for_each_neighbour(c, v, [&](VertexId w) {
    if (!oracle.bit(v, firing, w)) return;
    --c.at(v);
    if (w.is_sink()) return;
    ++c.at(w);
    touched(w);
  });
}

}  // namespace

ToppleOracle::ToppleOracle(std::uint64_t seed, double p) : seed_(seed), p_(p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("toppling probability must lie in (0, 1)");
}

bool ToppleOracle::bit(VertexId vertex, std::uint64_t firing_index, VertexId neighbour) const {
  std::uint64_t h = detail::mix64(seed_ ^ kToppleDomain);
  h = detail::mix64(h ^ vertex_code(vertex));
  h = detail::mix64(h ^ firing_index);
  h = detail::mix64(h ^ vertex_code(neighbour));
  return detail::unit_interval(h) < p_;
}

ToppleOracle ToppleOracle::for_step(std::uint64_t step) const {
  std::uint64_t h = detail::mix64(seed_ ^ kStepDomain);
  return ToppleOracle(detail::mix64(h ^ step), p_);
}

ScriptedOracle& ScriptedOracle::set(VertexId vertex, std::uint64_t firing_index, VertexId neighbour,
                                    bool value) {
  bits_[Key{vertex, firing_index, neighbour}] = value;
  return *this;
}

bool ScriptedOracle::bit(VertexId vertex, std::uint64_t firing_index, VertexId neighbour) const {
  auto it = bits_.find(Key{vertex, firing_index, neighbour});
  if (it != bits_.end()) return it->second;
  if (has_fallback_) return fallback_;
  throw InvalidArgument("scripted oracle has no bit for (" + to_string(vertex) + ", " +
                        std::to_string(firing_index) + ", " + to_string(neighbour) + ")");
}

std::uint64_t FiringCounts::total() const {
  std::uint64_t sum = 0;
  for (auto k : top) sum += k;
  for (auto k : bottom) sum += k;
  return sum;
}

bool is_stable_at(const Configuration& c, VertexId v) {
  if (v.side == Side::top) return c.at(v) < c.shape().top_degree();
  if (v.side == Side::bottom) return c.at(v) < c.shape().bottom_degree();
  return true;
}

bool is_stable(const Configuration& c) {
  const BipartiteShape shape = c.shape();
  for (Grain g : c.top())
    if (g >= shape.top_degree()) return false;
  for (Grain g : c.bottom())
    if (g >= shape.bottom_degree()) return false;
  return true;
}

std::vector<VertexId> neighbours(BipartiteShape shape, VertexId v) {
  if (!is_valid_vertex(shape, v)) throw InvalidArgument("no such vertex " + to_string(v));
  std::vector<VertexId> out;
  if (v.side == Side::top) {
    for (int j = 1; j <= shape.n(); ++j) out.push_back(VertexId::bottom(j));
  } else {
    out.push_back(VertexId::sink());
    for (int i = 1; i <= shape.m(); ++i) out.push_back(VertexId::top(i));
  }
  return out;
}

Configuration topple_deterministic(const Configuration& c, VertexId v) {
  require_topplable(c, v);
  Configuration out = c;
  fire_deterministic(out, v, 0, [](VertexId) {});
  return out;
}

Configuration topple_stochastic(const Configuration& c, VertexId v, const BitOracle& oracle,
                                std::uint64_t firing_index) {
  require_topplable(c, v);
  Configuration out = c;
  fire_stochastic(out, v, firing_index, oracle, [](VertexId) {});
  return out;
}

Stabilization stabilize_deterministic(const Configuration& c, TopplePolicy policy) {
  return stabilize_with(c, policy, kDefaultFiringCap,
                        [](Configuration& cfg, VertexId v, std::uint64_t k, const auto& touched) {
                          fire_deterministic(cfg, v, k, touched);
                        });
}

Stabilization stabilize_stochastic(const Configuration& c, const BitOracle& oracle,
                                   TopplePolicy policy, std::uint64_t max_firings) {
  return stabilize_with(c, policy, max_firings,
                        [&](Configuration& cfg, VertexId v, std::uint64_t k, const auto& touched) {
                          fire_stochastic(cfg, v, k, oracle, touched);
                        });
}

Configuration markov_step(Model model, const Configuration& c, VertexId v, const BitOracle& oracle) {
  if (v.is_sink()) throw InvalidArgument("grains are never added at the sink");
  if (!is_stable(c)) throw InvalidArgument("markov_step expects a stable configuration");
  Configuration next = c.with_grain(v);
  if (model == Model::abelian) return stabilize_deterministic(next).config;
  return stabilize_stochastic(next, oracle).config;
}

VertexId chain_vertex(BipartiteShape shape, std::uint64_t seed, std::uint64_t step) {
  std::uint64_t h = detail::mix64(detail::mix64(seed ^ kChoiceDomain) ^ step);
  return vertex_at(shape, static_cast<int>(detail::bounded(h, shape.vertex_count())));
}

void run_chain(Model model, BipartiteShape shape, std::uint64_t steps, std::uint64_t seed, double p,
               const std::function<void(std::uint64_t, const Configuration&)>& visit) {
  // The abelian chain never queries the oracle; p only has to be valid for SSM.
  const ToppleOracle base(seed, model == Model::stochastic ? p : 0.5);
  Configuration state = Configuration::zeros(shape);
  visit(0, state);
  for (std::uint64_t t = 1; t <= steps; ++t) {
    state = markov_step(model, state, chain_vertex(shape, seed, t), base.for_step(t));
    visit(t, state);
  }
}

std::map<Configuration, std::uint64_t> simulate(Model model, BipartiteShape shape,
                                                std::uint64_t steps, std::uint64_t seed, double p) {
  std::map<Configuration, std::uint64_t> visits;
  run_chain(model, shape, steps, seed, p,
            [&](std::uint64_t, const Configuration& c) { ++visits[c]; });
  return visits;
}

std::string to_string(Model model) { return model == Model::abelian ? "asm" : "ssm"; }

Model parse_model(std::string_view text) {
  if (text == "asm" || text == "ASM") return Model::abelian;
  if (text == "ssm" || text == "SSM") return Model::stochastic;
  throw ParseError("unknown model '" + std::string(text) + "' (expected asm or ssm)");
}

}  // namespace sandpile
