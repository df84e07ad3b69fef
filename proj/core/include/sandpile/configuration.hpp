#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sandpile {

using Grain = std::int32_t;

// Shape of K0_{m,n}: m non-sink top vertices, one sink, n bottom vertices.
class BipartiteShape {
 public:
  BipartiteShape(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }

  // Degree of a (non-sink) top vertex.
  Grain top_degree() const { return n_; }
  // Degree of a bottom vertex, the sink edge included.
  Grain bottom_degree() const { return m_ + 1; }
  // Number of non-sink vertices.
  int vertex_count() const { return m_ + n_; }

  friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;

 private:
  int m_;
  int n_;
};

enum class Side : std::uint8_t { top, bottom, sink };

// A vertex of K0_{m,n}. Indices are 1-based; the sink has index 0.
struct VertexId {
  Side side = Side::sink;
  int index = 0;

  static VertexId top(int i) { return {Side::top, i}; }
  static VertexId bottom(int j) { return {Side::bottom, j}; }
  static VertexId sink() { return {Side::sink, 0}; }

  bool is_sink() const { return side == Side::sink; }

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

std::string to_string(VertexId v);

// Grain counts on the non-sink vertices of K0_{m,n}.
class Configuration {
 public:
  Configuration(std::vector<Grain> top, std::vector<Grain> bottom);

  static Configuration zeros(BipartiteShape shape);

  BipartiteShape shape() const {
    return {static_cast<int>(top_.size()), static_cast<int>(bottom_.size())};
  }
  int m() const { return static_cast<int>(top_.size()); }
  int n() const { return static_cast<int>(bottom_.size()); }

  const std::vector<Grain>& top() const { return top_; }
  const std::vector<Grain>& bottom() const { return bottom_; }

  // Throws InvalidArgument for the sink or an out-of-range index.
  Grain at(VertexId v) const;
  Grain& at(VertexId v);

  // Copy with one extra grain on v.
  Configuration with_grain(VertexId v) const;

  std::int64_t total_grains() const;

  bool is_sorted() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    if (auto c = a.top_ <=> b.top_; c != 0) return c;
    return a.bottom_ <=> b.bottom_;
  }

 private:
  std::vector<Grain> top_;
  std::vector<Grain> bottom_;
};

// Index of a non-sink vertex in [0, m+n): top vertices first.
int flat_index(BipartiteShape shape, VertexId v);
VertexId vertex_at(BipartiteShape shape, int flat);

bool is_valid_vertex(BipartiteShape shape, VertexId v);

// `TOP;BOTTOM`, comma separated, e.g. `3,1,3,2,3;2,0,4,3` or `;0` for m = 0.
Configuration parse_configuration(std::string_view text);
std::string format_configuration(const Configuration& c);

// `{"top":[...],"bottom":[...]}`
Configuration configuration_from_json(std::string_view json_text);
std::string configuration_to_json(const Configuration& c);

// Comma-separated non-negative integers; empty text gives an empty vector.
std::vector<Grain> parse_grain_list(std::string_view text);
std::string format_grain_list(std::span<const Grain> values);

}  // namespace sandpile
