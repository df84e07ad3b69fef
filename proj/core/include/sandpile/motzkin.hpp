#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sandpile/configuration.hpp"
#include "sandpile/polyomino.hpp"

namespace sandpile {

// Labelled Motzkin path. Steps are written as single characters:
// U (up), D (down), n (horizontal, labelled N), e (horizontal, labelled E).
class MotzkinWord {
 public:
  MotzkinWord() = default;
  // Throws InvalidArgument on a foreign character or a path that dips below
  // the axis or does not return to it.
  explicit MotzkinWord(std::string steps);

  const std::string& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  // Number of D or e steps.
  int m() const { return m_; }
  // One more than the number of D or n steps.
  int n() const { return n_; }

  friend bool operator==(const MotzkinWord&, const MotzkinWord&) = default;
  friend auto operator<=>(const MotzkinWord&, const MotzkinWord&) = default;

 private:
  std::string steps_;
  int m_ = 0;
  int n_ = 1;
};

// Empty string when valid, otherwise the reason.
std::string motzkin_defect(std::string_view steps);

// Step i pairs the i-th interior steps of the upper and lower paths:
// (N,E) -> U, (N,N) -> n, (E,E) -> e, (E,N) -> D.
MotzkinWord xi(const ParallelogramPolyomino& p);
ParallelogramPolyomino xi_inverse(const MotzkinWord& w);

// Exact value held as a count of halves.
struct HalfInteger {
  std::int64_t halves = 0;
  bool is_integral() const { return halves % 2 == 0; }
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};
std::string to_string(HalfInteger value);

// Area between the path and the axis.
HalfInteger motzkin_area(const MotzkinWord& w);

// Sorted DR configuration of K0_{m,n} read off the word in one pass.
Configuration motzkin_to_config(const MotzkinWord& w);
// Inverse of motzkin_to_config. Requires c sorted and DR; throws
// InvalidArgument otherwise. Runs in O(m + n).
MotzkinWord config_to_motzkin(const Configuration& c);

MotzkinWord parse_motzkin(std::string_view text);
inline std::string format_motzkin(const MotzkinWord& w) { return w.steps(); }

}  // namespace sandpile
