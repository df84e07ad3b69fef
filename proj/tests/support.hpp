#pragma once

#include <sandpile/configuration.hpp>

#include "oracles/oracles.hpp"

inline sandpile::Configuration to_lib(const oracle::Config& c) {
  return sandpile::Configuration(std::vector<sandpile::Grain>(c.top.begin(), c.top.end()),
                                 std::vector<sandpile::Grain>(c.bottom.begin(), c.bottom.end()));
}

inline oracle::Config to_oracle(const sandpile::Configuration& c) {
  return {oracle::Vec(c.top().begin(), c.top().end()), oracle::Vec(c.bottom().begin(), c.bottom().end())};
}

inline sandpile::Configuration cfg(std::string_view text) { return sandpile::parse_configuration(text); }
