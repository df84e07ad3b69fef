#pragma once

#include <string>
#include <string_view>

namespace sandpile {

// Abelian (deterministic toppling) or stochastic sandpile model.
enum class Model { abelian, stochastic };

// "asm" / "ssm"
std::string to_string(Model model);
Model parse_model(std::string_view text);

}  // namespace sandpile
