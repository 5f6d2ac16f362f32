#include "tauber/game_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tauber/errors.hpp"

namespace tauber {

namespace {

using nlohmann::json;

constexpr double kLoadTolerance = 1e-9;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("game file is not valid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open game file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw InputError(std::string("game file is missing \"") + name + "\"");
  }
  return doc.at(name);
}

template <typename T>
std::vector<T> as_vector(const json& node, const std::string& what) {
  try {
    return node.get<std::vector<T>>();
  } catch (const json::exception&) {
    throw InputError(what + ": expected an array");
  }
}

void normalize_row(double* row, std::size_t size, const std::string& where) {
  double total = 0.0;
  for (std::size_t c = 0; c < size; ++c) {
    if (!std::isfinite(row[c]) || row[c] < 0.0) throw InputError(where + ": invalid probability");
    total += row[c];
  }
  if (std::abs(total - 1.0) > kLoadTolerance) {
    throw InputError(where + ": probabilities sum to " + std::to_string(total));
  }
  for (std::size_t c = 0; c < size; ++c) row[c] /= total;
}

// Reads [k][i][j] -> scalar or -> array of `width` entries into flat per-state rows.
std::vector<std::vector<double>> read_tensor(const json& node, const std::string& name,
                                             const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& cols,
                                             std::size_t width) {
  const std::size_t states = rows.size();
  if (!node.is_array() || node.size() != states) {
    throw InputError("\"" + name + "\" must have one entry per state");
  }
  std::vector<std::vector<double>> out(states);
  for (std::size_t k = 0; k < states; ++k) {
    const std::string where = "\"" + name + "\"[" + std::to_string(k) + "]";
    const json& stage = node[k];
    if (!stage.is_array() || stage.size() != rows[k]) {
      throw InputError(where + ": expected " + std::to_string(rows[k]) + " rows");
    }
    for (std::size_t i = 0; i < rows[k]; ++i) {
      const json& row = stage[i];
      if (!row.is_array() || row.size() != cols[k]) {
        throw InputError(where + "[" + std::to_string(i) + "]: expected " +
                         std::to_string(cols[k]) + " columns");
      }
      for (std::size_t j = 0; j < cols[k]; ++j) {
        const json& cell = row[j];
        if (width == 0) {
          if (!cell.is_number()) throw InputError(where + ": payoff entries must be numbers");
          out[k].push_back(cell.get<double>());
        } else {
          const auto probs = as_vector<double>(cell, where);
          if (probs.size() != width) {
            throw InputError(where + ": expected " + std::to_string(width) + " probabilities");
          }
          out[k].insert(out[k].end(), probs.begin(), probs.end());
        }
      }
    }
  }
  return out;
}

struct Header {
  std::vector<std::string> names;
  std::vector<std::size_t> actions1;
  std::vector<std::size_t> actions2;
};

Header read_header(const json& doc) {
  Header h;
  h.names = as_vector<std::string>(field(doc, "states"), "\"states\"");
  if (h.names.empty()) throw InputError("game file has no states");
  h.actions1 = as_vector<std::size_t>(field(doc, "actions1"), "\"actions1\"");
  h.actions2 = as_vector<std::size_t>(field(doc, "actions2"), "\"actions2\"");
  if (h.actions1.size() != h.names.size() || h.actions2.size() != h.names.size()) {
    throw InputError("\"actions1\"/\"actions2\" must have one count per state");
  }
  for (std::size_t k = 0; k < h.names.size(); ++k) {
    if (h.actions1[k] == 0 || h.actions2[k] == 0) throw InputError("action counts must be positive");
  }
  return h;
}

FiniteGame game_from_json(const json& doc) {
  const Header h = read_header(doc);
  FiniteGame game;
  game.num_states = h.names.size();
  game.state_names = h.names;
  game.actions1 = h.actions1;
  game.actions2 = h.actions2;
  game.payoff = read_tensor(field(doc, "payoff"), "payoff", h.actions1, h.actions2, 0);
  game.transition =
      read_tensor(field(doc, "transition"), "transition", h.actions1, h.actions2, game.num_states);
  for (std::size_t k = 0; k < game.num_states; ++k) {
    const std::size_t pairs = game.actions1[k] * game.actions2[k];
    for (std::size_t p = 0; p < pairs; ++p) {
      normalize_row(game.transition[k].data() + p * game.num_states, game.num_states,
                    "transition of state " + std::to_string(k));
    }
  }
  game.validate();
  return game;
}

HiddenGameSpec hidden_from_json(const json& doc) {
  const Header h = read_header(doc);
  HiddenGameSpec spec;
  spec.num_states = h.names.size();
  spec.state_names = h.names;
  spec.actions1 = h.actions1.front();
  spec.actions2 = h.actions2.front();
  for (std::size_t k = 0; k < spec.num_states; ++k) {
    if (h.actions1[k] != spec.actions1 || h.actions2[k] != spec.actions2) {
      throw InputError("hidden game: action sets must not depend on the hidden state");
    }
  }
  spec.signal_names = as_vector<std::string>(field(doc, "signals"), "\"signals\"");
  spec.num_signals = spec.signal_names.size();
  if (spec.num_signals == 0) throw InputError("hidden game needs at least one signal");
  spec.payoff = read_tensor(field(doc, "payoff"), "payoff", h.actions1, h.actions2, 0);
  const std::size_t block = spec.num_states * spec.num_signals;
  spec.kernel = read_tensor(field(doc, "kernel"), "kernel", h.actions1, h.actions2, block);
  for (std::size_t k = 0; k < spec.num_states; ++k) {
    for (std::size_t p = 0; p < spec.actions1 * spec.actions2; ++p) {
      normalize_row(spec.kernel[k].data() + p * block, block,
                    "kernel of state " + std::to_string(k));
    }
  }
  spec.validate();
  if (doc.contains("transition")) {
    // Optional: must agree with the kernel's marginal.
    const FiniteGame declared = game_from_json(doc);
    const FiniteGame marginal = spec.transition_marginal();
    for (std::size_t k = 0; k < spec.num_states; ++k) {
      for (std::size_t c = 0; c < declared.transition[k].size(); ++c) {
        if (std::abs(declared.transition[k][c] - marginal.transition[k][c]) > kLoadTolerance) {
          throw InputError("hidden game: \"transition\" disagrees with the kernel marginal");
        }
      }
    }
  }
  return spec;
}

}  // namespace

FiniteGame parse_game(const std::string& json_text) { return game_from_json(parse_text(json_text)); }

FiniteGame load_game(const std::string& path) { return parse_game(read_file(path)); }

HiddenGameSpec parse_hidden_game(const std::string& json_text) {
  return hidden_from_json(parse_text(json_text));
}

HiddenGameSpec load_hidden_game(const std::string& path) {
  return parse_hidden_game(read_file(path));
}

std::string game_to_json(const FiniteGame& game) {
  game.validate();
  json doc;
  std::vector<std::string> names = game.state_names;
  if (names.empty()) {
    for (std::size_t k = 0; k < game.num_states; ++k) names.push_back("s" + std::to_string(k));
  }
  doc["states"] = names;
  doc["actions1"] = game.actions1;
  doc["actions2"] = game.actions2;
  json payoff = json::array();
  json transition = json::array();
  for (std::size_t k = 0; k < game.num_states; ++k) {
    json stage = json::array();
    json law = json::array();
    for (std::size_t i = 0; i < game.actions1[k]; ++i) {
      json row = json::array();
      json law_row = json::array();
      for (std::size_t j = 0; j < game.actions2[k]; ++j) {
        row.push_back(game.payoff_at(k, i, j));
        const double* q = game.next_state_law(k, i, j);
        law_row.push_back(std::vector<double>(q, q + game.num_states));
      }
      stage.push_back(row);
      law.push_back(law_row);
    }
    payoff.push_back(stage);
    transition.push_back(law);
  }
  doc["payoff"] = payoff;
  doc["transition"] = transition;
  return doc.dump(2);
}

}  // namespace tauber
