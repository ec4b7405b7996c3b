#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cutfree/formula.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

enum class LogicId : std::uint8_t {
  K,
  T,
  K4,
  CK,
  CKID,
  CKMP,
  CKMPID,
  CKCEM,
  CKCEMID,
  CKMPCEM,
  CKMPCEMID,
};

inline constexpr std::array<LogicId, 11> kAllLogics{
    LogicId::K,      LogicId::T,       LogicId::K4,      LogicId::CK,
    LogicId::CKID,   LogicId::CKMP,    LogicId::CKMPID,  LogicId::CKCEM,
    LogicId::CKCEMID, LogicId::CKMPCEM, LogicId::CKMPCEMID};

inline constexpr std::array<LogicId, 8> kConditionalLogics{
    LogicId::CK,    LogicId::CKID,    LogicId::CKMP,    LogicId::CKMPID,
    LogicId::CKCEM, LogicId::CKCEMID, LogicId::CKMPCEM, LogicId::CKMPCEMID};

enum class RuleId : std::uint8_t {
  Axiom,
  NegBot,
  NegNeg,
  NegAnd,
  AndSplit,
  K,
  T,
  K4,
  CKg,
  CKIDg,
  MPg,
  CKCEMg,
  CKCEMIDg,
  MPCEMg,
  Cut,  // only in derivations built by prove_with_cut
};

inline constexpr std::size_t kRuleCount = 15;

std::string_view name(LogicId logic);
/// Lower-case CLI spelling, e.g. "ckmpcem".
std::string_view flag_name(LogicId logic);
std::optional<LogicId> parse_logic(std::string_view text);

std::string_view name(RuleId rule);
std::optional<RuleId> parse_rule(std::string_view text);

bool is_conditional(LogicId logic);
bool has_id(LogicId logic);
bool has_mp(LogicId logic);
bool has_cem(LogicId logic);

/// Modal rules of the logic's cut-free calculus (propositional rules and the
/// axioms are shared by every logic).
std::vector<RuleId> modal_rules(LogicId logic);
bool has_rule(LogicId logic, RuleId rule);

/// True when the logic extends `base` at the level of Hilbert axioms
/// (e.g. CK ≤ CKMPID, CKCEM ≤ CKMPCEM, K ≤ T).
bool extends(LogicId logic, LogicId base);

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool in_signature(Formula f, LogicId logic);
/// Throws SignatureError naming the offending formula.
void require_signature(Formula f, LogicId logic);
void require_signature(const Sequent& s, LogicId logic);

}  // namespace cutfree
