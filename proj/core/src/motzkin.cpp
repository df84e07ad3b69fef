#include "sandpile/motzkin.hpp"

#include <algorithm>
#include <stdexcept>

#include "sandpile/error.hpp"
#include "sandpile/recurrence.hpp"
#include "sandpile/toppling.hpp"

namespace sandpile {

std::string motzkin_defect(std::string_view steps) {
  std::int64_t height = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    switch (steps[i]) {
      case 'U': ++height; break;
      case 'D':
        if (--height < 0) return "path goes below the axis at step " + std::to_string(i + 1);
        break;
      case 'n':
      case 'e': break;
      default: return std::string("unexpected step '") + steps[i] + "'";
    }
  }
  if (height != 0) return "path ends at height " + std::to_string(height);
  return {};
}

MotzkinWord::MotzkinWord(std::string steps) : steps_(std::move(steps)) {
  if (auto defect = motzkin_defect(steps_); !defect.empty()) {
    throw InvalidArgument("not a Motzkin word: " + defect);
  }
  const auto downs = std::count(steps_.begin(), steps_.end(), 'D');
  m_ = static_cast<int>(downs + std::count(steps_.begin(), steps_.end(), 'e'));
  n_ = static_cast<int>(downs + std::count(steps_.begin(), steps_.end(), 'n')) + 1;
}

MotzkinWord xi(const ParallelogramPolyomino& p) {
  const auto& up = p.upper();
  const auto& low = p.lower();
  std::string steps;
  steps.reserve(up.size() - 2);
  for (std::size_t i = 1; i + 1 < up.size(); ++i) {
    if (up[i] == 'N') steps.push_back(low[i] == 'E' ? 'U' : 'n');
    else steps.push_back(low[i] == 'E' ? 'e' : 'D');
  }
  return MotzkinWord(std::move(steps));
}

ParallelogramPolyomino xi_inverse(const MotzkinWord& w) {
  std::string up = "N";
  std::string low = "E";
  for (char s : w.steps()) {
    up.push_back(s == 'U' || s == 'n' ? 'N' : 'E');
    low.push_back(s == 'U' || s == 'e' ? 'E' : 'N');
  }
  up.push_back('E');
  low.push_back('N');
  return ParallelogramPolyomino(std::move(up), std::move(low));
}

std::string to_string(HalfInteger value) {
  if (value.is_integral()) return std::to_string(value.halves / 2);
  return std::to_string(value.halves) + "/2";
}

HalfInteger motzkin_area(const MotzkinWord& w) {
  std::int64_t height = 0;
  HalfInteger area;
  for (char s : w.steps()) {
    switch (s) {
      case 'U': area.halves += 2 * height + 1; ++height; break;
      case 'D': area.halves += 2 * height - 1; --height; break;
      default: area.halves += 2 * height; break;
    }
  }
  return area;
}

Configuration motzkin_to_config(const MotzkinWord& w) {
  std::vector<Grain> top;
  std::vector<Grain> bottom;
  top.reserve(w.m());
  bottom.reserve(w.n());
  Grain t_val = 0;
  Grain b_val = 0;
  for (char s : w.steps()) {
    switch (s) {
      case 'U': ++t_val; ++b_val; break;
      case 'e': top.push_back(t_val); ++b_val; break;
      case 'n': bottom.push_back(b_val); ++t_val; break;
      default: top.push_back(t_val); bottom.push_back(b_val); break;
    }
  }
  bottom.push_back(w.m());
  return Configuration(std::move(top), std::move(bottom));
}

namespace {

// Sorted stack read from the head, with a lazy offset subtracted from every
// element so that "decrease all values" is O(1).
class OffsetStack {
 public:
  explicit OffsetStack(std::vector<Grain> values) : values_(std::move(values)) {}
  bool empty() const { return head_ == values_.size(); }
  std::int64_t head() const { return static_cast<std::int64_t>(values_[head_]) - offset_; }
  void pop() { ++head_; }
  void decrement_all() { ++offset_; }

 private:
  std::vector<Grain> values_;
  std::size_t head_ = 0;
  std::int64_t offset_ = 0;
};

}  // namespace

MotzkinWord config_to_motzkin(const Configuration& c) {
  if (!c.is_sorted()) throw InvalidArgument("config_to_motzkin expects a sorted configuration");
  if (!is_stable(c)) throw InvalidArgument("config_to_motzkin expects a stable configuration");
  if (!is_deterministically_recurrent(c)) {
    throw InvalidArgument("config_to_motzkin expects a deterministically recurrent configuration");
  }
  std::vector<Grain> top_values = c.top();
  top_values.push_back(static_cast<Grain>(c.n() - 1));
  OffsetStack top(std::move(top_values));
  OffsetStack bottom(c.bottom());

  std::string steps;
  steps.reserve(static_cast<std::size_t>(c.m() + c.n()));
  while (!top.empty() && !bottom.empty()) {
    while (top.head() > 0 && bottom.head() > 0) {
      steps.push_back('U');
      top.decrement_all();
      bottom.decrement_all();
    }
    if (top.head() == 0 && bottom.head() > 0) {
      top.pop();
      steps.push_back('e');
      bottom.decrement_all();
    } else if (bottom.head() == 0 && top.head() > 0) {
      bottom.pop();
      steps.push_back('n');
      top.decrement_all();
    } else {
      top.pop();
      bottom.pop();
      steps.push_back('D');
    }
  }
  if (steps.empty() || steps.back() != 'D' || !top.empty() || !bottom.empty() ||
      steps.size() != static_cast<std::size_t>(c.m() + c.n())) {
    throw std::logic_error("config_to_motzkin: stacks did not drain together");
  }
  steps.pop_back();
  return MotzkinWord(std::move(steps));
}

MotzkinWord parse_motzkin(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.remove_suffix(1);
  if (auto defect = motzkin_defect(text); !defect.empty()) throw ParseError("not a Motzkin word: " + defect);
  return MotzkinWord(std::string(text));
}

}  // namespace sandpile
