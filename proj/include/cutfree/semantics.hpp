#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cutfree/formula.hpp"
#include "cutfree/logic.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

/// Sets of worlds are bitmasks; models have at most 16 worlds.
using WorldSet = std::uint32_t;

struct ConditionalFrame {
  bool id = false;   // f(w,X) ⊆ X
  bool mp = false;   // w ∈ X ⇒ w ∈ f(w,X)
  bool cem = false;  // |f(w,X)| ≤ 1
};

struct KripkeFrame {
  bool reflexive = false;
  bool transitive = false;
};

ConditionalFrame conditional_frame(LogicId logic);
KripkeFrame kripke_frame(LogicId logic);

/// Selection-function model. `selection` is extensional: entry w·2ⁿ + X holds f(w,X).
struct ConditionalModel {
  int worlds = 1;
  std::map<std::string, WorldSet> valuation;
  std::vector<WorldSet> selection;
  ConditionalFrame frame;

  explicit ConditionalModel(int n = 1, ConditionalFrame fr = {});
  WorldSet select(int w, WorldSet x) const { return selection[(static_cast<std::size_t>(w) << worlds) | x]; }
  void set_select(int w, WorldSet x, WorldSet y) { selection[(static_cast<std::size_t>(w) << worlds) | x] = y; }
  /// Every selection entry meets the frame flags.
  bool frame_ok() const;
};

struct KripkeModel {
  int worlds = 1;
  std::map<std::string, WorldSet> valuation;
  std::vector<WorldSet> successors;
  KripkeFrame frame;

  explicit KripkeModel(int n = 1, KripkeFrame fr = {});
  bool related(int w, int v) const { return (successors[w] >> v) & 1u; }
  bool frame_ok() const;
};

using Model = std::variant<ConditionalModel, KripkeModel>;

/// Truth at a world. Throws SignatureError for □ in a conditional model or ⇒ in a Kripke model.
bool eval(const ConditionalModel& m, int world, Formula f);
bool eval(const KripkeModel& m, int world, Formula f);
bool eval(const Model& m, int world, Formula f);
WorldSet extension(const ConditionalModel& m, Formula f);
WorldSet extension(const KripkeModel& m, Formula f);

struct Countermodel {
  Model model;
  int world = 0;
};

/// Searches models with 1..max_worlds worlds in the logic's frame class for a
/// world falsifying every formula of s. Branches on valuation and selection
/// entries only when evaluation consults them, which visits the same space
/// as full enumeration. Unconsulted selection entries are set to X ∩ {w}.
std::optional<Countermodel> countermodel(const Sequent& s, LogicId logic, int max_worlds = 3);
std::optional<Countermodel> countermodel(Formula f, LogicId logic, int max_worlds = 3);

/// Truth-table check. Throws std::invalid_argument on modal subformulas.
bool is_prop_tautology(Formula f);

nlohmann::json to_json(const Countermodel& cm);

}  // namespace cutfree
