// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance AC3 AC5    run the named ones

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sandpile/enumeration.hpp>
#include <sandpile/ferrers.hpp>
#include <sandpile/motzkin.hpp>
#include <sandpile/polyomino.hpp>
#include <sandpile/recurrence.hpp>
#include <sandpile/toppling.hpp>

#include "oracles/oracles.hpp"

using namespace sandpile;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed expectations; the first few are reported.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  std::string summary() const {
    std::string s = std::to_string(failures) + " failure(s)";
    for (const auto& n : notes) s += "; " + n;
    return s;
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

Configuration cfg(std::string_view text) { return parse_configuration(text); }

Configuration from_oracle(const oracle::Config& c) {
  return Configuration(std::vector<Grain>(c.top.begin(), c.top.end()),
                       std::vector<Grain>(c.bottom.begin(), c.bottom.end()));
}

oracle::Config to_oracle(const Configuration& c) {
  return {oracle::Vec(c.top().begin(), c.top().end()), oracle::Vec(c.bottom().begin(), c.bottom().end())};
}

Outcome ac1() {
  const auto start = Clock::now();
  Check ck;

  const auto sr = cfg("3,1,3,2,3;2,0,4,3");
  ck.expect(is_stochastically_recurrent(sr), "SR example not recurrent");
  ck.expect(level(sr) == 1, "SR example level != 1");
  ck.expect(compute_k(sr.n(), sr.top()).values == std::vector<std::int32_t>{0, 1, 2, 5}, "k != (0,1,2,5)");

  for (auto policy : {TopplePolicy::fifo, TopplePolicy::lifo, TopplePolicy::min_index})
    ck.expect(stabilize_deterministic(cfg("2,1;0,2"), policy).config == cfg("1,0;2,1"), "abelian stabilization");

  const auto t1 = VertexId::top(1), t2 = VertexId::top(2);
  const auto b1 = VertexId::bottom(1), b2 = VertexId::bottom(2);
  ScriptedOracle bits;
  bits.set(t1, 0, b1, false).set(t1, 0, b2, true);
  bits.set(b2, 0, VertexId::sink(), true).set(b2, 0, t1, false).set(b2, 0, t2, true);
  bits.set(t2, 0, b1, true).set(t2, 0, b2, true);
  ck.expect(stabilize_stochastic(cfg("2,1;0,2"), bits).config == cfg("1,0;1,2"), "stochastic trace");

  const FerrersDiagram f({1, 1, 3}), g({2, 2, 2});
  ck.expect(is_compatible(f, g) && !is_strongly_compatible(f, g), "Ferrers compatibility example");
  ck.expect(replay(f, witness_sequence(Model::stochastic, f, g)) == g, "Ferrers witness sequence");

  const auto dr = cfg("0,2,2;2,2,3");
  ck.expect(is_deterministically_recurrent(dr), "DR example not recurrent");
  ck.expect(psi(Model::abelian, dr) == FerrersPair{FerrersDiagram({1, 1, 3}), FerrersDiagram({2, 2, 3})},
            "DR example Ferrers pair");

  const auto pc = cfg("0,1,2,2;2,4,4");
  const auto p = phi(pc);
  ck.expect(p.upper() == "NENENEEE" && p.lower() == "EEENEENN", "polyomino paths");
  ck.expect(polyomino_area(p) == 10, "polyomino area != 10");
  ck.expect(phi_inverse(p) == pc, "polyomino inverse");

  const auto mc = cfg("2,2,2,4,4;2,3,4,5,5");
  const MotzkinWord w("UUDeDUneD");
  ck.expect(config_to_motzkin(mc) == w, "configuration -> Motzkin word");
  ck.expect(motzkin_to_config(w) == mc, "Motzkin word -> configuration");
  ck.expect(xi(ParallelogramPolyomino("NNNEEENNEEE", "EEENENENENN")) == w, "polyomino -> Motzkin word");
  ck.expect(motzkin_area(w) == HalfInteger{16}, "Motzkin area != 8");

  const double secs = seconds_since(start);
  ck.expect(secs < 1.0, "runtime over 1 s");
  return {ck.failures == 0, "worked examples, " + ck.summary() + ", " + std::to_string(secs) + " s"};
}

Outcome ac2() {
  const auto start = Clock::now();
  Check ck;
  std::uint64_t checked = 0;
  auto compare = [&](const oracle::Config& oc) {
    const auto c = from_oracle(oc);
    const bool sr = is_stochastically_recurrent(c);
    const bool dr = is_deterministically_recurrent(c);
    ck.expect(sr == !forbidden_witness_ssm(c).has_value(), "SSM check vs witness search " + format_configuration(c));
    ck.expect(dr == !forbidden_witness_asm(c).has_value(), "ASM check vs witness search " + format_configuration(c));
    ck.expect(sr == oracle::sr_by_subsets(oc), "SSM check vs subset oracle " + format_configuration(c));
    ck.expect(dr == oracle::dr_by_subsets(oc), "ASM check vs subset oracle " + format_configuration(c));
    ++checked;
  };
  for (int m = 0; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (const auto& oc : oracle::all_stable(m, n)) compare(oc);

  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 10'000; ++trial) {
    const int m = std::uniform_int_distribution<int>(0, 6)(rng);
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    oracle::Config oc{oracle::Vec(m), oracle::Vec(n)};
    for (auto& v : oc.top) v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    for (auto& v : oc.bottom) v = std::uniform_int_distribution<int>(0, m)(rng);
    compare(oc);
  }
  const double secs = seconds_since(start);
  ck.expect(secs < 30.0, "runtime over 30 s");
  return {ck.failures == 0, "recurrence checks vs forbidden-subconfiguration search on " + std::to_string(checked) +
                                " configurations, " + ck.summary() + ", " + std::to_string(secs) + " s"};
}

Outcome ac3() {
  const auto start = Clock::now();
  Check ck;
  std::uint64_t trips = 0;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const BipartiteShape shape(m, n);
      for_each_stable(shape, false, [&](const Configuration& c) {
        for (auto model : {Model::abelian, Model::stochastic}) {
          if (!is_recurrent(model, c)) continue;
          ck.expect(unlabel_pair(model, label_pair(model, c)) == c, "labelled round trip " + format_configuration(c));
          ++trips;
          if (!c.is_sorted()) continue;
          const auto pair = psi(model, c);
          ck.expect(psi_inverse(model, pair) == c, "Psi round trip " + format_configuration(c));
          ++trips;
          if (model != Model::abelian) continue;
          const auto p = phi(c);
          const auto w = config_to_motzkin(c);
          ck.expect(phi_inverse(p) == c, "Phi round trip " + format_configuration(c));
          ck.expect(diff(pair) == p, "Phi != Diff o Psi at " + format_configuration(c));
          ck.expect(xi(p) == w, "Xi o Phi != config_to_motzkin at " + format_configuration(c));
          ck.expect(motzkin_to_config(w) == c, "Motzkin round trip " + format_configuration(c));
          ck.expect(phi_inverse(xi_inverse(w)) == c, "Phi^-1 o Xi^-1 at " + format_configuration(c));
          trips += 5;
        }
      });
      for (const auto& pp : oracle::all_polyominoes(m + 1, n)) {
        const ParallelogramPolyomino p(pp.upper, pp.lower);
        ck.expect(xi_inverse(xi(p)) == p, "Xi round trip " + pp.upper + "/" + pp.lower);
        ck.expect(phi(phi_inverse(p)) == p, "Phi inverse round trip " + pp.upper + "/" + pp.lower);
        trips += 2;
      }
      for (const auto& s : oracle::all_motzkin_words(m, n)) {
        const MotzkinWord w(s);
        ck.expect(xi(xi_inverse(w)) == w, "Xi inverse round trip " + s);
        ck.expect(config_to_motzkin(motzkin_to_config(w)) == w, "Motzkin inverse round trip " + s);
        trips += 2;
      }
    }
  }
  const double secs = seconds_since(start);
  ck.expect(secs < 30.0, "runtime over 30 s");
  return {ck.failures == 0, "bijection round trips (" + std::to_string(trips) + "), " + ck.summary() + ", " +
                                std::to_string(secs) + " s"};
}

Outcome ac4() {
  const auto start = Clock::now();
  Check ck;
  std::uint64_t count = 0;
  for (int m = 0; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for_each_stable(BipartiteShape(m, n), true, [&](const Configuration& c) {
        if (!is_deterministically_recurrent(c)) return;
        ++count;
        const std::int64_t by_total = c.total_grains() - static_cast<std::int64_t>(m) * n;
        const auto pair = psi(Model::abelian, c);
        const std::int64_t by_ferrers = pair.second.area() - pair.first.area();
        const std::int64_t by_polyomino = polyomino_area(phi(c)) - m - n;
        const HalfInteger area = motzkin_area(config_to_motzkin(c));
        const std::string at = " at " + format_configuration(c);
        ck.expect(area.is_integral(), "non-integral Motzkin area" + at);
        ck.expect(by_total == by_ferrers && by_total == by_polyomino && 2 * by_total == area.halves,
                  "level disagreement" + at);
        ck.expect(level(c) == by_total, "level()" + at);
        ck.expect(by_total >= 0 && by_total <= static_cast<std::int64_t>(m) * (n - 1), "level out of range" + at);
      });
    }
  }
  return {ck.failures == 0, "level identity on " + std::to_string(count) + " sorted recurrent configurations, " +
                                ck.summary() + ", " + std::to_string(seconds_since(start)) + " s"};
}

std::vector<oracle::Edge> edges_of(const FerrersDag& dag) {
  std::vector<oracle::Edge> out;
  for (const auto& e : dag.edges) out.push_back({e.from, e.to, e.color == EdgeColor::add_red});
  return out;
}

Outcome ac5() {
  Check ck;
  const auto s = build_dag(Model::stochastic, BipartiteShape(3, 3));
  const auto d = build_dag(Model::abelian, BipartiteShape(3, 3));
  ck.expect(s.vertices.size() == 16, "stochastic DAG has " + std::to_string(s.vertices.size()) + " vertices");
  ck.expect(d.vertices.size() == 10, "abelian DAG has " + std::to_string(d.vertices.size()) + " vertices");
  for (const FerrersDag* dag : {&s, &d}) {
    const auto edges = edges_of(*dag);
    const std::size_t v = dag->vertices.size();
    ck.expect(oracle::acyclic(v, edges), "cycle found");
    std::vector<int> in(v, 0), out(v, 0);
    for (const auto& e : edges) {
      ++out[e.from];
      ++in[e.to];
    }
    ck.expect(std::count(in.begin(), in.end(), 0) == 1 && std::count(out.begin(), out.end(), 0) == 1,
              "not bipolar");
    const auto reach = oracle::reachability(v, edges);
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = 0; b < v; ++b) {
        const bool compat = is_compatible(dag->model, dag->vertices[a], dag->vertices[b]);
        ck.expect(reach[a][b] == compat, "reachability != compatibility for " + format_diagram(dag->vertices[a]) +
                                             " -> " + format_diagram(dag->vertices[b]));
        if (!reach[a][b]) continue;
        const auto reds = oracle::red_counts_on_paths(v, edges, a, b);
        const auto delta = static_cast<int>(dag->vertices[b].area() - dag->vertices[a].area());
        ck.expect(reds == std::set<int>{delta}, "red-edge count differs from area difference");
      }
    }
  }
  return {ck.failures == 0, "Ferrers DAGs (16 and 10 vertices), " + ck.summary()};
}

Outcome ac6() {
  Check ck;
  std::string seen;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const BigInt trees = spanning_tree_count(BipartiteShape(m, n));
      const auto row = census(BipartiteShape(m, n), Model::abelian, false);
      ck.expect(trees == row.count, "K0_{" + std::to_string(m) + "," + std::to_string(n) + "}: " + trees.str() +
                                        " trees vs " + std::to_string(row.count) + " recurrent");
      if (m == 2 && n == 2) seen = trees.str();
    }
  }
  return {ck.failures == 0, "spanning trees = abelian recurrent count (K0_{2,2}: " + seen + "), " + ck.summary()};
}

// Every configuration with the given number of vertices and total <= budget.
void for_each_bounded(int vertices, int budget, const std::function<void(const std::vector<Grain>&)>& visit) {
  std::vector<Grain> v(vertices, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == vertices) {
      visit(v);
      return;
    }
    for (int g = 0; g <= left; ++g) {
      v[i] = g;
      rec(i + 1, left - g);
    }
    v[i] = 0;
  };
  rec(0, budget);
}

Outcome ac7() {
  const auto start = Clock::now();
  Check ck;
  const TopplePolicy policies[] = {TopplePolicy::fifo, TopplePolicy::lifo, TopplePolicy::min_index};
  std::uint64_t abelian = 0;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for_each_bounded(m + n, 3 * m * n, [&](const std::vector<Grain>& v) {
        const Configuration c(std::vector<Grain>(v.begin(), v.begin() + m), std::vector<Grain>(v.begin() + m, v.end()));
        const auto ref = stabilize_deterministic(c, policies[0]);
        for (auto policy : {policies[1], policies[2]}) {
          const auto other = stabilize_deterministic(c, policy);
          ck.expect(other.config == ref.config && other.firings == ref.firings,
                    "abelian policy dependence at " + format_configuration(c));
        }
        ++abelian;
      });
    }
  }
  std::uint64_t stochastic = 0;
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ToppleOracle bits(seed, 0.5);
    for (int m = 0; m <= 3; ++m) {
      for (int n = 1; n <= 3; ++n) {
        std::uniform_int_distribution<int> grains(0, 3 * std::max(m, 1) * n);
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<Grain> top(m), bottom(n);
          for (auto& g : top) g = grains(rng);
          for (auto& g : bottom) g = grains(rng);
          const Configuration c(top, bottom);
          const auto ref = stabilize_stochastic(c, bits, policies[0]);
          for (auto policy : {policies[1], policies[2]}) {
            const auto other = stabilize_stochastic(c, bits, policy);
            ck.expect(other.config == ref.config && other.firings == ref.firings,
                      "stochastic policy dependence at " + format_configuration(c) + " seed " + std::to_string(seed));
          }
          ++stochastic;
        }
      }
    }
  }
  return {ck.failures == 0, "toppling-order independence (" + std::to_string(abelian) + " abelian, " +
                                std::to_string(stochastic) + " stochastic over 100 seeds), " + ck.summary() + ", " +
                                std::to_string(seconds_since(start)) + " s"};
}

Outcome ac8() {
  const auto start = Clock::now();
  Check ck;
  const std::uint64_t steps = 100'000;
  const std::uint64_t burn_in = 1'000;
  for (auto model : {Model::abelian, Model::stochastic}) {
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      const BipartiteShape shape(m, n);
      const auto name = to_string(model) + " K0_{" + std::to_string(m) + "," + std::to_string(n) + "}";
      std::set<Configuration> recurrent;
      for_each_stable(shape, false, [&](const Configuration& c) {
        if (is_recurrent(model, c)) recurrent.insert(c);
      });
      const auto seen = empirical_support(model, shape, steps, 42, 0.5, burn_in);
      ck.expect(std::includes(recurrent.begin(), recurrent.end(), seen.begin(), seen.end()),
                name + ": visited a non-recurrent state");
      const bool small = (m == 1 && n == 1) || (m == 2 && n == 2);
      if (small) {
        ck.expect(seen == recurrent, name + ": visited " + std::to_string(seen.size()) + " of " +
                                         std::to_string(recurrent.size()) + " recurrent states");
        ck.expect(empirical_support(model, shape, steps, 42, 0.5, burn_in) == seen, name + ": not seed-deterministic");
      }
    }
  }
  const double secs = seconds_since(start);
  ck.expect(secs < 60.0, "runtime over 60 s");
  return {ck.failures == 0, "Markov-chain support after burn-in, " + ck.summary() + ", " + std::to_string(secs) + " s"};
}

double median_check_time(int size, int repeats) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(size));
  std::uniform_int_distribution<Grain> top_dist(0, size - 1);
  std::uniform_int_distribution<Grain> bottom_dist(size / 2, size);
  std::vector<Grain> top(size), bottom(size);
  for (auto& g : top) g = top_dist(rng);
  for (auto& g : bottom) g = bottom_dist(rng);
  const Configuration c(std::move(top), std::move(bottom));
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    const bool sr = is_stochastically_recurrent(c);
    times.push_back(seconds_since(start));
    if (!sr) return -1.0;  // the instance is built to be recurrent so the full scan runs
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Outcome ac9() {
  Check ck;
  const double t5 = median_check_time(100'000, 11);
  const double t6 = median_check_time(1'000'000, 5);
  const double t7 = median_check_time(10'000'000, 3);
  ck.expect(t5 > 0 && t6 > 0 && t7 > 0, "benchmark instance unexpectedly not recurrent");
  ck.expect(t7 < 5.0, "m=n=1e7 took " + std::to_string(t7) + " s");
  const double r1 = t6 / t5;
  const double r2 = t7 / t6;
  ck.expect(r1 <= 20.0 && r2 <= 20.0, "decade ratio above 20");
  std::ostringstream detail;
  detail << "linear-time stochastic check: 1e5 " << t5 << " s, 1e6 " << t6 << " s, 1e7 " << t7
         << " s, ratios " << r1 << " and " << r2 << ", " << ck.summary();
  return {ck.failures == 0, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  int ran = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted.empty() && !wanted.count(name)) continue;
    ++ran;
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << name << ' ' << (outcome.pass ? "PASS" : "FAIL") << "  " << outcome.detail << std::endl;
    failed += !outcome.pass;
  }
  if (ran == 0) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
