#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <sandpile/enumeration.hpp>
#include <sandpile/error.hpp>
#include <sandpile/ferrers.hpp>
#include <sandpile/motzkin.hpp>
#include <sandpile/polyomino.hpp>
#include <sandpile/recurrence.hpp>
#include <sandpile/toppling.hpp>

namespace sandpile::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string model;
  std::uint64_t seed = 0;
  double p = 0.5;
  std::string format = "text";
  std::string policy = "fifo";
  int m = -1;
  int n = -1;
  std::uint64_t steps = 1000;
  std::uint64_t burn_in = 0;
  std::string dot;
  std::string to;
  std::string from;
  bool sorted = false;
  bool recurrent = false;
  std::optional<std::string> input;
};

Model require_model(const Options& o, const char* command) {
  if (o.model.empty()) throw InvalidArgument(std::string(command) + " requires --model asm|ssm");
  return parse_model(o.model);
}

BipartiteShape require_shape(const Options& o) {
  if (o.m < 0 || o.n < 1) throw InvalidArgument("--m >= 0 and --n >= 1 are required");
  return BipartiteShape(o.m, o.n);
}

TopplePolicy parse_policy(const std::string& name) {
  if (name == "fifo") return TopplePolicy::fifo;
  if (name == "lifo") return TopplePolicy::lifo;
  if (name == "min") return TopplePolicy::min_index;
  throw InvalidArgument("unknown policy '" + name + "' (expected fifo, lifo or min)");
}

std::string read_input(const Options& o, std::istream& in) {
  if (o.input) return *o.input;
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string join_indices(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const Model model = require_model(o, "check");
  const Configuration c = parse_configuration(read_input(o, in));
  if (!is_stable(c)) throw InvalidArgument("check expects a stable configuration");
  const bool recurrent = is_recurrent(model, c);
  const KVector k = compute_k(c.n(), c.top());
  std::optional<ForbiddenWitness> witness;
  if (!recurrent && c.m() + c.n() <= kDefaultWitnessVertexLimit) witness = forbidden_witness(model, c);

  if (o.format == "json") {
    json j{{"model", to_string(model)},
           {"configuration", format_configuration(c)},
           {"recurrent", recurrent},
           {"level", level(c)},
           {"k", k.values},
           {"witness", nullptr}};
    if (witness) j["witness"] = {{"top", witness->top}, {"bottom", witness->bottom}};
    out << j.dump() << '\n';
  } else {
    out << (recurrent ? "recurrent" : "not recurrent") << '\n';
    out << "level: " << level(c) << '\n';
    out << "k: " << format_grain_list(k.values) << '\n';
    if (witness) out << "witness: A={" << join_indices(witness->top) << "} B={" << join_indices(witness->bottom) << "}\n";
  }
  return recurrent ? kOk : kNotRecurrent;
}

int cmd_stabilize(const Options& o, std::istream& in, std::ostream& out) {
  const Model model = require_model(o, "stabilize");
  const Configuration c = parse_configuration(read_input(o, in));
  const TopplePolicy policy = parse_policy(o.policy);
  const Stabilization result = model == Model::abelian
                                   ? stabilize_deterministic(c, policy)
                                   : stabilize_stochastic(c, ToppleOracle(o.seed, o.p), policy);
  if (o.format == "json") {
    out << json{{"model", to_string(model)},
                {"configuration", format_configuration(result.config)},
                {"firings", {{"top", result.firings.top}, {"bottom", result.firings.bottom}}}}
               .dump()
        << '\n';
  } else {
    auto list = [](const std::vector<std::uint64_t>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    out << format_configuration(result.config) << '\n';
    out << "firings: top=" << list(result.firings.top) << " bottom=" << list(result.firings.bottom) << '\n';
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Model model = require_model(o, "simulate");
  const BipartiteShape shape = require_shape(o);
  if (model == Model::stochastic) ToppleOracle(o.seed, o.p);  // validates p
  std::map<Configuration, std::uint64_t> visits;
  run_chain(model, shape, o.steps, o.seed, o.p, [&](std::uint64_t t, const Configuration& c) {
    if (t > o.burn_in || o.burn_in == 0) ++visits[c];
  });
  if (o.format == "json") {
    json states = json::array();
    for (const auto& [c, count] : visits) states.push_back({{"configuration", format_configuration(c)}, {"visits", count}});
    out << json{{"model", to_string(model)}, {"m", shape.m()}, {"n", shape.n()}, {"steps", o.steps},
                {"seed", o.seed}, {"burn_in", o.burn_in}, {"states", states}}
               .dump()
        << '\n';
  } else {
    for (const auto& [c, count] : visits) out << format_configuration(c) << ' ' << count << '\n';
  }
  return kOk;
}

int cmd_level(const Options& o, std::istream& in, std::ostream& out) {
  const Configuration c = parse_configuration(read_input(o, in));
  if (o.format == "json") {
    out << json{{"configuration", format_configuration(c)}, {"level", level(c)}}.dump() << '\n';
  } else {
    out << level(c) << '\n';
  }
  return kOk;
}

int cmd_biject(const Options& o, std::istream& in, std::ostream& out) {
  if (o.to.empty() == o.from.empty()) throw InvalidArgument("biject needs exactly one of --to or --from");
  const Model model = o.model.empty() ? Model::abelian : parse_model(o.model);
  const std::string text = read_input(o, in);
  const std::string& kind = o.to.empty() ? o.from : o.to;
  if (kind != "ferrers" && kind != "polyomino" && kind != "motzkin") {
    throw InvalidArgument("unknown representation '" + kind + "' (expected ferrers, polyomino or motzkin)");
  }
  if (model == Model::stochastic && kind != "ferrers") {
    throw InvalidArgument(kind + " representation exists only for --model asm");
  }

  std::string result;
  if (!o.to.empty()) {
    const Configuration c = parse_configuration(text);
    if (!c.is_sorted()) throw InvalidArgument("biject expects a sorted configuration");
    if (!is_stable(c)) throw InvalidArgument("biject expects a stable configuration");
    if (!is_recurrent(model, c)) throw InvalidArgument("biject expects a recurrent configuration");
    if (kind == "ferrers") result = format_pair(psi(model, c));
    else if (kind == "polyomino") result = format_polyomino(phi(c));
    else result = format_motzkin(config_to_motzkin(c));
  } else {
    Configuration c = kind == "ferrers"     ? psi_inverse(model, parse_pair(text))
                      : kind == "polyomino" ? phi_inverse(parse_polyomino(text))
                                            : motzkin_to_config(parse_motzkin(text));
    result = format_configuration(c);
  }
  if (o.format == "json") {
    out << json{{"model", to_string(model)}, {"input", text}, {o.to.empty() ? "configuration" : kind, result}}.dump()
        << '\n';
  } else {
    out << result << '\n';
  }
  return kOk;
}

int cmd_dag(const Options& o, std::ostream& out) {
  const Model model = require_model(o, "dag");
  const FerrersDag dag = build_dag(model, require_shape(o));
  if (!o.dot.empty()) {
    const std::string dot = to_dot(dag);
    if (o.dot == "-") {
      out << dot;
      return kOk;
    }
    std::ofstream file(o.dot);
    if (!file) throw InvalidArgument("cannot write " + o.dot);
    file << dot;
  }
  std::size_t blue = 0;
  for (const auto& e : dag.edges) blue += e.color == EdgeColor::shift_blue;
  if (o.format == "json") {
    json vertices = json::array();
    for (const auto& v : dag.vertices) vertices.push_back(format_diagram(v));
    json edges = json::array();
    for (const auto& e : dag.edges)
      edges.push_back({{"from", e.from}, {"to", e.to}, {"color", e.color == EdgeColor::shift_blue ? "blue" : "red"}});
    out << json{{"model", to_string(model)}, {"m", dag.shape.m()}, {"n", dag.shape.n()},
                {"vertices", vertices}, {"edges", edges}}
               .dump()
        << '\n';
  } else {
    out << "vertices: " << dag.vertices.size() << '\n';
    out << "edges: " << dag.edges.size() << " (blue " << blue << ", red " << dag.edges.size() - blue << ")\n";
  }
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const BipartiteShape shape = require_shape(o);
  std::optional<Model> model;
  if (o.recurrent) model = require_model(o, "enumerate --recurrent");
  json list = json::array();
  for_each_stable(shape, o.sorted, [&](const Configuration& c) {
    if (model && !is_recurrent(*model, c)) return;
    if (o.format == "json") list.push_back(format_configuration(c));
    else out << format_configuration(c) << '\n';
  });
  if (o.format == "json") out << list.dump() << '\n';
  return kOk;
}

int cmd_census(const Options& o, std::ostream& out) {
  const Model model = require_model(o, "census");
  const CensusRow row = census(require_shape(o), model, o.sorted);
  if (o.format == "json") {
    out << json{{"m", row.m}, {"n", row.n}, {"model", to_string(row.model)}, {"sorted", row.sorted},
                {"count", row.count}, {"level_poly", row.level_poly.coefficients}}
               .dump()
        << '\n';
  } else {
    out << kCensusCsvHeader << '\n' << to_csv(row) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sandpile models on complete bipartite graphs", "sandpile"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--model", o.model, "asm or ssm")->check(CLI::IsMember({"asm", "ssm"}));
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--p", o.p, "grain-passing probability for ssm");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto positional = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what);
  };
  auto shape_options = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "number of top vertices")->required();
    sub->add_option("--n", o.n, "number of bottom vertices")->required();
  };

  auto* check = app.add_subcommand("check", "test whether a stable configuration is recurrent");
  positional(check, "configuration TOP;BOTTOM (read from stdin when omitted)");
  auto* stab = app.add_subcommand("stabilize", "topple until stable");
  positional(stab, "configuration TOP;BOTTOM");
  stab->add_option("--policy", o.policy, "fifo, lifo or min");
  auto* sim = app.add_subcommand("simulate", "run the grain-addition Markov chain");
  shape_options(sim);
  sim->add_option("--steps", o.steps, "number of steps");
  sim->add_option("--burn-in", o.burn_in, "only count states after this many steps");
  auto* lvl = app.add_subcommand("level", "total grains minus m*n");
  positional(lvl, "configuration TOP;BOTTOM");
  auto* biject = app.add_subcommand("biject", "convert between sorted recurrent configurations and their encodings");
  positional(biject, "input (read from stdin when omitted)");
  biject->add_option("--to", o.to, "ferrers, polyomino or motzkin");
  biject->add_option("--from", o.from, "ferrers, polyomino or motzkin");
  auto* dag = app.add_subcommand("dag", "DAG of Ferrers diagrams under shift/add moves");
  shape_options(dag);
  dag->add_option("--dot", o.dot, "write Graphviz DOT to this file ('-' for stdout)");
  auto* enumerate = app.add_subcommand("enumerate", "list stable configurations");
  shape_options(enumerate);
  enumerate->add_flag("--sorted", o.sorted, "weakly increasing representatives only");
  enumerate->add_flag("--recurrent", o.recurrent, "keep only recurrent configurations (needs --model)");
  auto* cen = app.add_subcommand("census", "count recurrent configurations by level");
  shape_options(cen);
  cen->add_flag("--sorted", o.sorted, "count sorted configurations only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sandpile: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (check->parsed()) return cmd_check(o, in, out);
    if (stab->parsed()) return cmd_stabilize(o, in, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (lvl->parsed()) return cmd_level(o, in, out);
    if (biject->parsed()) return cmd_biject(o, in, out);
    if (dag->parsed()) return cmd_dag(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (cen->parsed()) return cmd_census(o, out);
  } catch (const GuardExceeded& e) {
    err << "sandpile: " << e.what() << '\n';
    return kLimitExceeded;
  } catch (const StallError& e) {
    err << "sandpile: " << e.what() << '\n';
    return kLimitExceeded;
  } catch (const InvalidArgument& e) {
    err << "sandpile: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace sandpile::cli
