#include "sandpile/polyomino.hpp"

#include <algorithm>
#include <stdexcept>

#include "sandpile/error.hpp"
#include "sandpile/recurrence.hpp"
#include "sandpile/toppling.hpp"

namespace sandpile {

namespace {

// Heights of the E steps of a path, in order.
std::vector<std::int32_t> east_heights(std::string_view path) {
  std::vector<std::int32_t> out;
  std::int32_t y = 0;
  for (char s : path) {
    if (s == 'N') ++y;
    else out.push_back(y);
  }
  return out;
}

// Abscissae of the N steps of a path, in order.
std::vector<std::int32_t> north_abscissae(std::string_view path) {
  std::vector<std::int32_t> out;
  std::int32_t x = 0;
  for (char s : path) {
    if (s == 'E') ++x;
    else out.push_back(x);
  }
  return out;
}

// Path whose E steps sit at the given (weakly increasing) heights, padded with
// N steps up to `height`.
std::string path_from_east_heights(const std::vector<std::int32_t>& heights, std::int32_t height) {
  std::string path;
  std::int32_t y = 0;
  for (auto h : heights) {
    path.append(static_cast<std::size_t>(std::max(0, h - y)), 'N');
    y = std::max(y, h);
    path.push_back('E');
  }
  path.append(static_cast<std::size_t>(std::max(0, height - y)), 'N');
  return path;
}

// Path whose N steps sit at the given (weakly increasing) abscissae, padded
// with E steps up to `width`.
std::string path_from_north_abscissae(const std::vector<std::int32_t>& xs, std::int32_t width) {
  std::string path;
  std::int32_t x = 0;
  for (auto target : xs) {
    path.append(static_cast<std::size_t>(std::max(0, target - x)), 'E');
    x = std::max(x, target);
    path.push_back('N');
  }
  path.append(static_cast<std::size_t>(std::max(0, width - x)), 'E');
  return path;
}

}  // namespace

std::string polyomino_defect(std::string_view upper, std::string_view lower) {
  if (upper.size() != lower.size()) return "paths have different lengths";
  if (upper.size() < 2) return "paths are too short";
  for (std::string_view path : {upper, lower}) {
    for (char s : path)
      if (s != 'N' && s != 'E') return std::string("unexpected step '") + s + "'";
  }
  const auto north = [](std::string_view p) { return std::count(p.begin(), p.end(), 'N'); };
  if (north(upper) != north(lower)) return "paths end at different points";
  if (north(upper) == 0 || north(upper) == static_cast<std::ptrdiff_t>(upper.size()))
    return "bounding box is degenerate";
  // After i steps both paths lie on the anti-diagonal x + y = i; the upper one
  // must be strictly higher there for every interior i.
  std::int32_t yu = 0;
  std::int32_t yl = 0;
  for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
    yu += upper[i] == 'N';
    yl += lower[i] == 'N';
    if (yu <= yl) return "paths touch or cross after step " + std::to_string(i + 1);
  }
  return {};
}

ParallelogramPolyomino::ParallelogramPolyomino(std::string upper, std::string lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (auto defect = polyomino_defect(upper_, lower_); !defect.empty()) {
    throw InvalidArgument("not a parallelogram polyomino: " + defect);
  }
  height_ = static_cast<int>(std::count(upper_.begin(), upper_.end(), 'N'));
  width_ = static_cast<int>(upper_.size()) - height_;
}

std::vector<std::int32_t> ParallelogramPolyomino::column_tops() const { return east_heights(upper_); }

std::vector<std::int32_t> ParallelogramPolyomino::column_bottoms() const { return east_heights(lower_); }

ParallelogramPolyomino phi(const Configuration& c) {
  if (!c.is_sorted()) throw InvalidArgument("phi expects a sorted configuration");
  if (!is_stable(c)) throw InvalidArgument("phi expects a stable configuration");
  const int m = c.m();
  const int n = c.n();
  std::vector<std::int32_t> heights;
  heights.reserve(m + 1);
  for (Grain g : c.top()) heights.push_back(g + 1);
  heights.push_back(n);  // the sink's column
  std::vector<std::int32_t> xs;
  xs.reserve(n);
  for (Grain g : c.bottom()) xs.push_back(g + 1);

  std::string upper = path_from_east_heights(heights, n);
  std::string lower = path_from_north_abscissae(xs, m + 1);
  const bool valid = polyomino_defect(upper, lower).empty();
  if (valid != is_deterministically_recurrent(c)) {
    throw std::logic_error("phi: path validity disagrees with the recurrence check");
  }
  if (!valid) throw InvalidArgument("phi expects a deterministically recurrent configuration");
  return ParallelogramPolyomino(std::move(upper), std::move(lower));
}

Configuration phi_inverse(const ParallelogramPolyomino& p) {
  auto heights = east_heights(p.upper());
  heights.pop_back();  // final E step at height n belongs to the sink
  std::vector<Grain> top(heights.size());
  std::transform(heights.begin(), heights.end(), top.begin(), [](std::int32_t h) { return h - 1; });
  const auto xs = north_abscissae(p.lower());
  std::vector<Grain> bottom(xs.size());
  std::transform(xs.begin(), xs.end(), bottom.begin(), [](std::int32_t x) { return x - 1; });
  return Configuration(std::move(top), std::move(bottom));
}

ParallelogramPolyomino diff(const FerrersPair& pair) {
  const auto& f1 = pair.first;
  const auto& f2 = pair.second;
  if (f1.row_count() < 1) throw InvalidArgument("diff needs diagrams with at least one row");
  if (!is_strongly_compatible(f1, f2)) throw InvalidArgument("diff expects a strongly compatible pair");
  const std::int32_t m = f1.columns();
  if (f2.columns() != m) throw InvalidArgument("diff expects both diagrams to have the same column count");
  const int n = f1.row_count();

  // Row r of the difference spans [left[r], right[r]).
  std::vector<std::int32_t> left(n);
  std::vector<std::int32_t> right(n);
  for (int r = 0; r < n; ++r) {
    left[r] = r == 0 ? 0 : f1.rows()[r - 1];
    right[r] = f2.rows()[r] + 1;
  }
  // Upper path turns north at the left end of each row; lower path at the right end.
  std::string upper = path_from_north_abscissae(left, m + 1);
  std::string lower = path_from_north_abscissae(right, m + 1);
  return ParallelogramPolyomino(std::move(upper), std::move(lower));
}

std::int64_t polyomino_area(const ParallelogramPolyomino& p) {
  const auto tops = p.column_tops();
  const auto bottoms = p.column_bottoms();
  std::int64_t area = 0;
  for (std::size_t x = 0; x < tops.size(); ++x) area += tops[x] - bottoms[x];
  return area;
}

ParallelogramPolyomino parse_polyomino(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.remove_suffix(1);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("polyomino must have the form upper=...;lower=...");
  std::string_view up = text.substr(0, semi);
  std::string_view low = text.substr(semi + 1);
  if (!up.starts_with("upper=") || !low.starts_with("lower=")) {
    throw ParseError("polyomino must have the form upper=...;lower=...");
  }
  up.remove_prefix(6);
  low.remove_prefix(6);
  if (auto defect = polyomino_defect(up, low); !defect.empty()) {
    throw ParseError("not a parallelogram polyomino: " + defect);
  }
  return ParallelogramPolyomino(std::string(up), std::string(low));
}

std::string format_polyomino(const ParallelogramPolyomino& p) {
  return "upper=" + p.upper() + ";lower=" + p.lower();
}

}  // namespace sandpile
