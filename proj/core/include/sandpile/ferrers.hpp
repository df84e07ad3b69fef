#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sandpile/configuration.hpp"
#include "sandpile/error.hpp"
#include "sandpile/model.hpp"

namespace sandpile {

// Left-aligned rows of cells, row lengths weakly increasing from bottom to
// top. Rows are numbered 1..n from the bottom; columns are never stored.
class FerrersDiagram {
 public:
  explicit FerrersDiagram(std::vector<std::int32_t> rows);

  const std::vector<std::int32_t>& rows() const { return rows_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  std::int32_t row(int r) const;  // 1-based
  // Number of columns, i.e. the length of the top row (0 when there are no rows).
  std::int32_t columns() const { return rows_.empty() ? 0 : rows_.back(); }
  std::int64_t area() const;
  // Column heights from left to right.
  std::vector<std::int32_t> column_heights() const;

  friend bool operator==(const FerrersDiagram&, const FerrersDiagram&) = default;
  friend auto operator<=>(const FerrersDiagram&, const FerrersDiagram&) = default;

 private:
  std::vector<std::int32_t> rows_;
};

// Legality failure of a Shift or Add. `row` and `other_row` name the rows
// whose order was violated.
class IllegalMove : public InvalidArgument {
 public:
  IllegalMove(const std::string& what, int row, int other_row)
      : InvalidArgument(what), row_(row), other_row_(other_row) {}
  int row() const { return row_; }
  int other_row() const { return other_row_; }

 private:
  int row_;
  int other_row_;
};

// Move one cell from row `from` to the lower row `to`.
FerrersDiagram shift(const FerrersDiagram& f, int from, int to);
// Append one cell to row `row`.
FerrersDiagram add(const FerrersDiagram& f, int row);

// Prefix dominance from the bottom row: F' reachable from F by legal Shift/Add.
bool is_compatible(const FerrersDiagram& f, const FerrersDiagram& g);
// Rowwise dominance: F' reachable from F by legal Adds.
bool is_strongly_compatible(const FerrersDiagram& f, const FerrersDiagram& g);
bool is_compatible(Model model, const FerrersDiagram& f, const FerrersDiagram& g);

struct FerrersPair {
  FerrersDiagram first;   // F(k), exactly m columns
  FerrersDiagram second;  // F(sorted bottom side)
  friend bool operator==(const FerrersPair&, const FerrersPair&) = default;
};

// Requires c sorted and recurrent under `model`.
FerrersPair psi(Model model, const Configuration& c);
// Inverse of psi; rejects pairs that are not (strongly) compatible or whose
// shapes do not come from a stable configuration.
Configuration psi_inverse(Model model, const FerrersPair& pair);

// Top side of a sorted configuration read off the south-east border of F(k).
std::vector<Grain> top_from_k_diagram(const FerrersDiagram& k_diagram);

// Labels: column_labels[x] is the top vertex of column x+1 (left to right),
// row_labels[r] the bottom vertex of row r+1 (bottom to top). Equal-height
// columns and equal-length rows carry increasing labels.
struct LabelledFerrersPair {
  FerrersPair pair;
  std::vector<int> column_labels;
  std::vector<int> row_labels;
  friend bool operator==(const LabelledFerrersPair&, const LabelledFerrersPair&) = default;
};

LabelledFerrersPair label_pair(Model model, const Configuration& c);
Configuration unlabel_pair(Model model, const LabelledFerrersPair& labelled);

enum class MoveKind { shift, add };

struct LegalMove {
  MoveKind kind;
  int row;      // source row for shift, target row for add
  int to_row;   // destination of a shift; equal to row for add
  friend bool operator==(const LegalMove&, const LegalMove&) = default;
};

// A legal sequence from f to g: all shifts first, then adds from the top
// row down. Abelian model: adds only. Throws when the pair is incompatible.
std::vector<LegalMove> witness_sequence(Model model, const FerrersDiagram& f, const FerrersDiagram& g);
FerrersDiagram replay(const FerrersDiagram& f, const std::vector<LegalMove>& moves);

enum class EdgeColor { shift_blue, add_red };

struct DagEdge {
  std::size_t from;
  std::size_t to;
  EdgeColor color;
  friend auto operator<=>(const DagEdge&, const DagEdge&) = default;
};

struct FerrersDag {
  Model model;
  BipartiteShape shape;
  std::vector<FerrersDiagram> vertices;  // sorted ascending
  std::vector<DagEdge> edges;            // sorted, no duplicates

  std::size_t index_of(const FerrersDiagram& f) const;  // throws if absent
};

inline constexpr int kDefaultDagCellLimit = 36;

// Stochastic: diagrams with n rows, at most m columns and area >= m, with
// every legal Shift (blue) and Add (red) between them. Abelian: diagrams
// with exactly m columns and Add edges. Throws GuardExceeded when m*n > cell_limit.
FerrersDag build_dag(Model model, BipartiteShape shape, int cell_limit = kDefaultDagCellLimit);

std::string to_dot(const FerrersDag& dag);

// `1,1,3`: row lengths bottom to top.
FerrersDiagram parse_diagram(std::string_view text);
std::string format_diagram(const FerrersDiagram& f);
// `1,1,3/2,2,2`
FerrersPair parse_pair(std::string_view text);
std::string format_pair(const FerrersPair& pair);
std::string format_move(const LegalMove& move);

}  // namespace sandpile
