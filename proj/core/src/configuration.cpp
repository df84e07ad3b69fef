#include "sandpile/configuration.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sandpile/error.hpp"

namespace sandpile {

BipartiteShape::BipartiteShape(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 1) {
    throw InvalidArgument("shape requires m >= 0 and n >= 1, got m=" + std::to_string(m) +
                          " n=" + std::to_string(n));
  }
}

std::string to_string(VertexId v) {
  switch (v.side) {
    case Side::top:
      return "t" + std::to_string(v.index);
    case Side::bottom:
      return "b" + std::to_string(v.index);
    case Side::sink:
      break;
  }
  return "sink";
}

Configuration::Configuration(std::vector<Grain> top, std::vector<Grain> bottom)
    : top_(std::move(top)), bottom_(std::move(bottom)) {
  if (bottom_.empty()) throw InvalidArgument("configuration needs at least one bottom vertex");
  for (Grain g : top_)
    if (g < 0) throw InvalidArgument("negative grain count on a top vertex");
  for (Grain g : bottom_)
    if (g < 0) throw InvalidArgument("negative grain count on a bottom vertex");
}

Configuration Configuration::zeros(BipartiteShape shape) {
  return Configuration(std::vector<Grain>(shape.m(), 0), std::vector<Grain>(shape.n(), 0));
}

bool is_valid_vertex(BipartiteShape shape, VertexId v) {
  switch (v.side) {
    case Side::top:
      return v.index >= 1 && v.index <= shape.m();
    case Side::bottom:
      return v.index >= 1 && v.index <= shape.n();
    case Side::sink:
      return false;
  }
  return false;
}

Grain Configuration::at(VertexId v) const {
  if (!is_valid_vertex(shape(), v)) throw InvalidArgument("no grain slot for vertex " + to_string(v));
  return v.side == Side::top ? top_[v.index - 1] : bottom_[v.index - 1];
}

Grain& Configuration::at(VertexId v) {
  if (!is_valid_vertex(shape(), v)) throw InvalidArgument("no grain slot for vertex " + to_string(v));
  return v.side == Side::top ? top_[v.index - 1] : bottom_[v.index - 1];
}

Configuration Configuration::with_grain(VertexId v) const {
  Configuration out = *this;
  ++out.at(v);
  return out;
}

std::int64_t Configuration::total_grains() const {
  std::int64_t total = std::accumulate(top_.begin(), top_.end(), std::int64_t{0});
  return std::accumulate(bottom_.begin(), bottom_.end(), total);
}

bool Configuration::is_sorted() const {
  return std::is_sorted(top_.begin(), top_.end()) && std::is_sorted(bottom_.begin(), bottom_.end());
}

int flat_index(BipartiteShape shape, VertexId v) {
  if (!is_valid_vertex(shape, v)) throw InvalidArgument("invalid vertex " + to_string(v));
  return v.side == Side::top ? v.index - 1 : shape.m() + v.index - 1;
}

VertexId vertex_at(BipartiteShape shape, int flat) {
  if (flat < 0 || flat >= shape.vertex_count()) throw InvalidArgument("vertex index out of range");
  return flat < shape.m() ? VertexId::top(flat + 1) : VertexId::bottom(flat - shape.m() + 1);
}

std::vector<Grain> parse_grain_list(std::string_view text) {
  std::vector<Grain> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    Grain value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParseError("not a grain count: '" + std::string(item) + "'");
    }
    if (value < 0) throw ParseError("negative grain count: " + std::string(item));
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_grain_list(std::span<const Grain> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

Configuration parse_configuration(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  if (!text.empty() && text.front() == '{') return configuration_from_json(text);
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos) {
    throw ParseError("configuration must have the form TOP;BOTTOM");
  }
  auto top = parse_grain_list(text.substr(0, semi));
  auto bottom = parse_grain_list(text.substr(semi + 1));
  if (bottom.empty()) throw ParseError("configuration needs at least one bottom entry");
  return Configuration(std::move(top), std::move(bottom));
}

std::string format_configuration(const Configuration& c) {
  return format_grain_list(c.top()) + ";" + format_grain_list(c.bottom());
}

Configuration configuration_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  auto read_side = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array())
      throw ParseError(std::string("JSON configuration needs an array '") + key + "'");
    std::vector<Grain> out;
    for (const auto& v : j[key]) {
      if (!v.is_number_integer()) throw ParseError("grain counts must be integers");
      auto value = v.get<std::int64_t>();
      if (value < 0 || value > std::numeric_limits<Grain>::max())
        throw ParseError("grain count out of range");
      out.push_back(static_cast<Grain>(value));
    }
    return out;
  };
  auto top = read_side("top");
  auto bottom = read_side("bottom");
  if (bottom.empty()) throw ParseError("configuration needs at least one bottom entry");
  return Configuration(std::move(top), std::move(bottom));
}

std::string configuration_to_json(const Configuration& c) {
  nlohmann::json j;
  j["top"] = c.top();
  j["bottom"] = c.bottom();
  return j.dump();
}

}  // namespace sandpile
