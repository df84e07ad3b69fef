#include "sandpile/ferrers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sandpile/recurrence.hpp"
#include "sandpile/toppling.hpp"

namespace sandpile {

namespace {

// First r (1-based) with rows[r-1] > rows[r], or 0 when weakly increasing.
int first_descent(const std::vector<std::int32_t>& rows) {
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r - 1] > rows[r]) return static_cast<int>(r);
  return 0;
}

void require_same_rows(const FerrersDiagram& f, const FerrersDiagram& g) {
  if (f.row_count() != g.row_count()) {
    throw InvalidArgument("Ferrers diagrams have " + std::to_string(f.row_count()) + " and " +
                          std::to_string(g.row_count()) + " rows");
  }
}

void require_row(const FerrersDiagram& f, int r) {
  if (r < 1 || r > f.row_count()) throw InvalidArgument("row " + std::to_string(r) + " out of range");
}

// Stable ordering of indices by value: position x holds the (1-based)
// vertex with the x-th smallest value, ties by ascending index.
std::vector<int> stable_order(const std::vector<Grain>& values, Grain max_value) {
  std::vector<std::size_t> start(static_cast<std::size_t>(max_value) + 2, 0);
  for (Grain v : values) ++start[v + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<int> order(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) order[start[values[i]]++] = static_cast<int>(i) + 1;
  return order;
}

bool is_permutation_of_range(const std::vector<int>& labels) {
  std::vector<bool> seen(labels.size() + 1, false);
  for (int l : labels) {
    if (l < 1 || l > static_cast<int>(labels.size()) || seen[l]) return false;
    seen[l] = true;
  }
  return true;
}

}  // namespace

FerrersDiagram::FerrersDiagram(std::vector<std::int32_t> rows) : rows_(std::move(rows)) {
  for (auto r : rows_)
    if (r < 0) throw InvalidArgument("Ferrers diagram rows must be non-negative");
  if (int r = first_descent(rows_)) {
    throw InvalidArgument("Ferrers diagram rows must be weakly increasing bottom to top (row " +
                          std::to_string(r) + " > row " + std::to_string(r + 1) + ")");
  }
}

std::int32_t FerrersDiagram::row(int r) const {
  require_row(*this, r);
  return rows_[r - 1];
}

std::int64_t FerrersDiagram::area() const {
  return std::accumulate(rows_.begin(), rows_.end(), std::int64_t{0});
}

std::vector<std::int32_t> FerrersDiagram::column_heights() const {
  std::vector<std::int32_t> heights(columns(), 0);
  for (auto len : rows_)
    for (std::int32_t x = 0; x < len; ++x) ++heights[x];
  return heights;
}

FerrersDiagram shift(const FerrersDiagram& f, int from, int to) {
  require_row(f, from);
  require_row(f, to);
  if (to >= from) throw InvalidArgument("shift must move a cell to a lower row");
  auto rows = f.rows();
  if (rows[from - 1] == 0) throw IllegalMove("shift from an empty row", from, to);
  --rows[from - 1];
  ++rows[to - 1];
  if (int r = first_descent(rows)) {
    throw IllegalMove("shift " + std::to_string(from) + "->" + std::to_string(to) +
                          " breaks monotonicity at rows " + std::to_string(r) + "," + std::to_string(r + 1),
                      r, r + 1);
  }
  return FerrersDiagram(std::move(rows));
}

FerrersDiagram add(const FerrersDiagram& f, int row) {
  require_row(f, row);
  auto rows = f.rows();
  ++rows[row - 1];
  if (int r = first_descent(rows)) {
    throw IllegalMove("add to row " + std::to_string(row) + " breaks monotonicity at rows " +
                          std::to_string(r) + "," + std::to_string(r + 1),
                      r, r + 1);
  }
  return FerrersDiagram(std::move(rows));
}

bool is_compatible(const FerrersDiagram& f, const FerrersDiagram& g) {
  require_same_rows(f, g);
  std::int64_t sum_f = 0;
  std::int64_t sum_g = 0;
  for (int r = 0; r < f.row_count(); ++r) {
    sum_f += f.rows()[r];
    sum_g += g.rows()[r];
    if (sum_g < sum_f) return false;
  }
  return true;
}

bool is_strongly_compatible(const FerrersDiagram& f, const FerrersDiagram& g) {
  require_same_rows(f, g);
  for (int r = 0; r < f.row_count(); ++r)
    if (g.rows()[r] < f.rows()[r]) return false;
  return true;
}

bool is_compatible(Model model, const FerrersDiagram& f, const FerrersDiagram& g) {
  return model == Model::abelian ? is_strongly_compatible(f, g) : is_compatible(f, g);
}

FerrersPair psi(Model model, const Configuration& c) {
  if (!c.is_sorted()) throw InvalidArgument("psi expects a sorted configuration");
  if (!is_stable(c)) throw InvalidArgument("psi expects a stable configuration");
  if (!is_recurrent(model, c)) {
    throw InvalidArgument("psi expects a recurrent configuration (" + to_string(model) + ")");
  }
  return {FerrersDiagram(compute_k(c.n(), c.top()).values), FerrersDiagram(c.bottom())};
}

std::vector<Grain> top_from_k_diagram(const FerrersDiagram& k_diagram) {
  std::vector<Grain> top;
  top.reserve(k_diagram.columns());
  std::int32_t x = 0;
  for (int r = 0; r < k_diagram.row_count(); ++r) {
    // East steps along the border of row r+1 sit at height r.
    for (; x < k_diagram.rows()[r]; ++x) top.push_back(r);
  }
  return top;
}

Configuration psi_inverse(Model model, const FerrersPair& pair) {
  require_same_rows(pair.first, pair.second);
  if (pair.first.row_count() < 1) throw InvalidArgument("Ferrers pair needs at least one row");
  const std::int32_t m = pair.first.columns();
  if (pair.second.columns() > m) {
    throw InvalidArgument("second diagram has more columns than the first (" +
                          std::to_string(pair.second.columns()) + " > " + std::to_string(m) + ")");
  }
  if (!is_compatible(model, pair.first, pair.second)) {
    throw InvalidArgument(model == Model::abelian ? "pair is not strongly compatible"
                                                  : "pair is not compatible");
  }
  Configuration c(top_from_k_diagram(pair.first), pair.second.rows());
  if (!is_recurrent(model, c)) throw std::logic_error("psi_inverse produced a non-recurrent configuration");
  return c;
}

LabelledFerrersPair label_pair(Model model, const Configuration& c) {
  if (!is_stable(c)) throw InvalidArgument("label_pair expects a stable configuration");
  if (!is_recurrent(model, c)) throw InvalidArgument("label_pair expects a recurrent configuration");
  LabelledFerrersPair out{psi(model, sort_config(c)), {}, {}};
  out.column_labels = stable_order(c.top(), static_cast<Grain>(c.n() - 1));
  out.row_labels = stable_order(c.bottom(), static_cast<Grain>(c.m()));
  return out;
}

Configuration unlabel_pair(Model model, const LabelledFerrersPair& labelled) {
  const Configuration sorted = psi_inverse(model, labelled.pair);
  const auto& cols = labelled.column_labels;
  const auto& rows = labelled.row_labels;
  if (cols.size() != sorted.top().size() || !is_permutation_of_range(cols))
    throw InvalidArgument("column labels must be a permutation of [m]");
  if (rows.size() != sorted.bottom().size() || !is_permutation_of_range(rows))
    throw InvalidArgument("row labels must be a permutation of [n]");
  // Column x+1 has height n - top_x, so equal heights mean equal top values.
  for (std::size_t x = 1; x < cols.size(); ++x)
    if (sorted.top()[x] == sorted.top()[x - 1] && cols[x] < cols[x - 1])
      throw InvalidArgument("equal-height columns must carry increasing labels");
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (sorted.bottom()[r] == sorted.bottom()[r - 1] && rows[r] < rows[r - 1])
      throw InvalidArgument("equal-length rows must carry increasing labels");

  std::vector<Grain> top(cols.size());
  std::vector<Grain> bottom(rows.size());
  for (std::size_t x = 0; x < cols.size(); ++x) top[cols[x] - 1] = sorted.top()[x];
  for (std::size_t r = 0; r < rows.size(); ++r) bottom[rows[r] - 1] = sorted.bottom()[r];
  return Configuration(std::move(top), std::move(bottom));
}

std::vector<LegalMove> witness_sequence(Model model, const FerrersDiagram& f, const FerrersDiagram& g) {
  if (!is_compatible(model, f, g)) {
    throw InvalidArgument(model == Model::abelian ? "pair is not strongly compatible"
                                                  : "pair is not compatible");
  }
  const int n = f.row_count();
  std::vector<std::int32_t> v = f.rows();
  const std::vector<std::int32_t>& t = g.rows();
  std::vector<LegalMove> moves;

  if (model == Model::stochastic) {
    // p: lowest row where the current diagram exceeds the target; p': highest
    // lower row still short of the target. Shift p -> p' until row p fits.
    for (int p = 0; p < n; ++p) {
      while (v[p] > t[p]) {
        int q = p - 1;
        while (q >= 0 && t[q] <= v[q]) --q;
        if (q < 0) throw std::logic_error("witness_sequence: no row to shift into");
        --v[p];
        ++v[q];
        moves.push_back({MoveKind::shift, p + 1, q + 1});
      }
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    for (; v[r] < t[r]; ++v[r]) moves.push_back({MoveKind::add, r + 1, r + 1});
  }
  return moves;
}

FerrersDiagram replay(const FerrersDiagram& f, const std::vector<LegalMove>& moves) {
  FerrersDiagram current = f;
  for (const auto& mv : moves)
    current = mv.kind == MoveKind::shift ? shift(current, mv.row, mv.to_row) : add(current, mv.row);
  return current;
}

std::size_t FerrersDag::index_of(const FerrersDiagram& f) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), f);
  if (it == vertices.end() || !(*it == f)) throw InvalidArgument("diagram is not a vertex of the DAG");
  return static_cast<std::size_t>(it - vertices.begin());
}

FerrersDag build_dag(Model model, BipartiteShape shape, int cell_limit) {
  const int m = shape.m();
  const int n = shape.n();
  if (static_cast<std::int64_t>(m) * n > cell_limit) {
    throw GuardExceeded("DAG construction limited to m*n <= " + std::to_string(cell_limit));
  }
  FerrersDag dag{model, shape, {}, {}};

  // All weakly increasing row vectors with entries in [0, m], lexicographic.
  std::vector<std::int32_t> rows(n, 0);
  while (true) {
    const std::int64_t area = std::accumulate(rows.begin(), rows.end(), std::int64_t{0});
    const bool keep = model == Model::abelian ? rows.back() == m : area >= m;
    if (keep) dag.vertices.emplace_back(rows);
    int r = n - 1;
    while (r >= 0 && rows[r] == m) --r;
    if (r < 0) break;
    ++rows[r];
    for (int s = r + 1; s < n; ++s) rows[s] = rows[r];
  }

  auto link = [&](std::size_t from, const std::vector<std::int32_t>& target, EdgeColor color) {
    if (first_descent(target) != 0) return;
    if (!target.empty() && target.back() > m) return;
    FerrersDiagram to(target);
    auto it = std::lower_bound(dag.vertices.begin(), dag.vertices.end(), to);
    if (it == dag.vertices.end() || !(*it == to)) return;
    dag.edges.push_back({from, static_cast<std::size_t>(it - dag.vertices.begin()), color});
  };

  for (std::size_t i = 0; i < dag.vertices.size(); ++i) {
    const auto& base = dag.vertices[i].rows();
    if (model == Model::stochastic) {
      for (int p = 1; p < n; ++p) {
        if (base[p] == 0) continue;
        for (int q = 0; q < p; ++q) {
          auto target = base;
          --target[p];
          ++target[q];
          link(i, target, EdgeColor::shift_blue);
        }
      }
    }
    for (int r = 0; r < n; ++r) {
      auto target = base;
      ++target[r];
      link(i, target, EdgeColor::add_red);
    }
  }
  std::sort(dag.edges.begin(), dag.edges.end());
  dag.edges.erase(std::unique(dag.edges.begin(), dag.edges.end()), dag.edges.end());
  return dag;
}

std::string to_dot(const FerrersDag& dag) {
  std::ostringstream out;
  out << "digraph ferrers_" << to_string(dag.model) << '_' << dag.shape.m() << '_' << dag.shape.n()
      << " {\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < dag.vertices.size(); ++i)
    out << "  v" << i << " [label=\"" << format_diagram(dag.vertices[i]) << "\"];\n";
  for (const auto& e : dag.edges) {
    out << "  v" << e.from << " -> v" << e.to
        << " [color=" << (e.color == EdgeColor::shift_blue ? "blue" : "red") << "];\n";
  }
  out << "}\n";
  return out.str();
}

FerrersDiagram parse_diagram(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.remove_suffix(1);
  auto rows = parse_grain_list(text);
  if (rows.empty()) throw ParseError("Ferrers diagram needs at least one row");
  try {
    return FerrersDiagram(std::vector<std::int32_t>(rows.begin(), rows.end()));
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string format_diagram(const FerrersDiagram& f) { return format_grain_list(f.rows()); }

FerrersPair parse_pair(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("Ferrers pair must have the form ROWS/ROWS");
  return {parse_diagram(text.substr(0, slash)), parse_diagram(text.substr(slash + 1))};
}

std::string format_pair(const FerrersPair& pair) {
  return format_diagram(pair.first) + "/" + format_diagram(pair.second);
}

std::string format_move(const LegalMove& move) {
  if (move.kind == MoveKind::add) return "add " + std::to_string(move.row);
  return "shift " + std::to_string(move.row) + " " + std::to_string(move.to_row);
}

}  // namespace sandpile
