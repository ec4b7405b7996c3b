#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cutfree/calculus.hpp"
#include "cutfree/prover.hpp"

namespace cutfree {

/// Malformed derivation documents (bad JSON, unknown rule, unparsable formula).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node layout:
///   { "sequent": [..], "marked": [i..], "rule": "CKg", "pivot": {"index": 0} | null,
///     "principal": [..], "principal_marked": [i..], "children": [..] }
/// Formulas are printed in the core grammar. Cut nodes use {"cut": formula} as pivot.
nlohmann::json derivation_to_json(const Derivation& d);
/// Rebuilds a derivation without validating it; structural mistakes are left
/// for check_derivation. Throws FormatError on malformed input.
DerivationPtr derivation_from_json(const nlohmann::json& j);
DerivationPtr parse_derivation(const std::string& text);

/// bussproofs fragment (one prooftree environment, plus side trees for nodes
/// with more than five premises).
std::string derivation_to_latex(const Derivation& d);
/// Indented tree, root first.
std::string derivation_to_text(const Derivation& d);

/// Wall-clock time is left out unless `timing` is set, so that repeated runs
/// produce identical documents.
nlohmann::json stats_to_json(const SearchStats& stats, bool timing = false);
nlohmann::json verdict_to_json(const Verdict& v, LogicId logic, StrategyId strategy,
                               bool timing = false);

}  // namespace cutfree
