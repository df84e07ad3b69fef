#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sandpile/configuration.hpp"
#include "sandpile/ferrers.hpp"

namespace sandpile {

// Parallelogram polyomino in a width x height box, stored as its upper and
// lower N/E lattice paths from (0,0) to (width, height). The paths meet only
// at their endpoints.
class ParallelogramPolyomino {
 public:
  // Throws InvalidArgument unless the two paths bound a parallelogram polyomino.
  ParallelogramPolyomino(std::string upper, std::string lower);

  const std::string& upper() const { return upper_; }
  const std::string& lower() const { return lower_; }
  int width() const { return width_; }
  int height() const { return height_; }

  // Cells per column x = 0..width-1 lie in [bottom[x], top[x]).
  std::vector<std::int32_t> column_tops() const;
  std::vector<std::int32_t> column_bottoms() const;

  friend bool operator==(const ParallelogramPolyomino&, const ParallelogramPolyomino&) = default;
  friend auto operator<=>(const ParallelogramPolyomino&, const ParallelogramPolyomino&) = default;

 private:
  std::string upper_;
  std::string lower_;
  int width_ = 0;
  int height_ = 0;
};

// Validity check without constructing; returns an empty string when valid,
// otherwise the reason.
std::string polyomino_defect(std::string_view upper, std::string_view lower);

// Upper path: E steps at heights 1+top_1, ..., 1+top_m, n. Lower path: N
// steps at abscissae 1+bottom_1, ..., 1+bottom_n. Requires c sorted and
// stable; rejects inputs whose paths intersect (exactly the non-recurrent ones).
ParallelogramPolyomino phi(const Configuration& c);
Configuration phi_inverse(const ParallelogramPolyomino& p);

// F2' \ F1' where F1' is F1 with an empty bottom row and one extra cell on
// its top row, and F2' is F2 with one extra cell per row and a full top row.
// Requires a strongly compatible pair whose diagrams both have m columns.
ParallelogramPolyomino diff(const FerrersPair& pair);

std::int64_t polyomino_area(const ParallelogramPolyomino& p);

// `upper=NEN...;lower=EEN...`
ParallelogramPolyomino parse_polyomino(std::string_view text);
std::string format_polyomino(const ParallelogramPolyomino& p);

}  // namespace sandpile
