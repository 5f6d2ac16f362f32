#pragma once

#include <string>

#include "tauber/hidden_game.hpp"
#include "tauber/stochastic_game.hpp"

namespace tauber {

/// JSON game files:
///   { "states": [names], "actions1": [per state], "actions2": [per state],
///     "payoff": [k][i][j], "transition": [k][i][j] -> [prob per next state] }
/// The hidden variant adds "signals": [names] and "kernel": [k][i][j] -> flat
/// (next state, signal) probabilities, next-state major; "transition" may then
/// be omitted. Probability rows are checked to 1e-9 and renormalized.
/// All failures throw InputError.
FiniteGame parse_game(const std::string& json_text);
FiniteGame load_game(const std::string& path);

HiddenGameSpec parse_hidden_game(const std::string& json_text);
HiddenGameSpec load_hidden_game(const std::string& path);

/// Serializes a finite game in the same schema.
std::string game_to_json(const FiniteGame& game);

}  // namespace tauber
