#include "cutfree/logic.hpp"

#include <algorithm>

#include "cutfree/syntax.hpp"

namespace cutfree {

namespace {

struct LogicInfo {
  LogicId id;
  std::string_view name;
  std::string_view flag;
};

constexpr std::array<LogicInfo, 11> kLogicInfo{{
    {LogicId::K, "K", "k"},
    {LogicId::T, "T", "t"},
    {LogicId::K4, "K4", "k4"},
    {LogicId::CK, "CK", "ck"},
    {LogicId::CKID, "CKID", "ckid"},
    {LogicId::CKMP, "CKMP", "ckmp"},
    {LogicId::CKMPID, "CKMPID", "ckmpid"},
    {LogicId::CKCEM, "CKCEM", "ckcem"},
    {LogicId::CKCEMID, "CKCEMID", "ckcemid"},
    {LogicId::CKMPCEM, "CKMPCEM", "ckmpcem"},
    {LogicId::CKMPCEMID, "CKMPCEMID", "ckmpcemid"},
}};

constexpr std::array<std::string_view, kRuleCount> kRuleNames{
    "Axiom", "NegBot", "NegNeg", "NegAnd", "AndSplit", "K",      "T",   "K4",
    "CKg",   "CKIDg",  "MPg",    "CKCEMg", "CKCEMIDg", "MPCEMg", "Cut"};

}  // namespace

std::string_view name(LogicId logic) { return kLogicInfo[static_cast<int>(logic)].name; }
std::string_view flag_name(LogicId logic) { return kLogicInfo[static_cast<int>(logic)].flag; }

std::optional<LogicId> parse_logic(std::string_view text) {
  for (const auto& info : kLogicInfo) {
    if (text == info.flag || text == info.name) return info.id;
  }
  return std::nullopt;
}

std::string_view name(RuleId rule) { return kRuleNames[static_cast<int>(rule)]; }

std::optional<RuleId> parse_rule(std::string_view text) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == text) return static_cast<RuleId>(i);
  return std::nullopt;
}

bool is_conditional(LogicId logic) {
  return logic != LogicId::K && logic != LogicId::T && logic != LogicId::K4;
}

bool has_id(LogicId logic) {
  switch (logic) {
    case LogicId::CKID:
    case LogicId::CKMPID:
    case LogicId::CKCEMID:
    case LogicId::CKMPCEMID:
      return true;
    default:
      return false;
  }
}

bool has_mp(LogicId logic) {
  switch (logic) {
    case LogicId::CKMP:
    case LogicId::CKMPID:
    case LogicId::CKMPCEM:
    case LogicId::CKMPCEMID:
      return true;
    default:
      return false;
  }
}

bool has_cem(LogicId logic) {
  switch (logic) {
    case LogicId::CKCEM:
    case LogicId::CKCEMID:
    case LogicId::CKMPCEM:
    case LogicId::CKMPCEMID:
      return true;
    default:
      return false;
  }
}

std::vector<RuleId> modal_rules(LogicId logic) {
  switch (logic) {
    case LogicId::K:
      return {RuleId::K};
    case LogicId::T:
      return {RuleId::K, RuleId::T};
    case LogicId::K4:
      return {RuleId::K4};
    case LogicId::CK:
      return {RuleId::CKg};
    case LogicId::CKID:
      return {RuleId::CKIDg};
    case LogicId::CKMP:
      return {RuleId::CKg, RuleId::MPg};
    case LogicId::CKMPID:
      return {RuleId::CKIDg, RuleId::MPg};
    case LogicId::CKCEM:
      return {RuleId::CKCEMg};
    case LogicId::CKCEMID:
      return {RuleId::CKCEMIDg};
    case LogicId::CKMPCEM:
      return {RuleId::CKCEMg, RuleId::MPg, RuleId::MPCEMg};
    case LogicId::CKMPCEMID:
      return {RuleId::CKCEMIDg, RuleId::MPg, RuleId::MPCEMg};
  }
  return {};
}

bool has_rule(LogicId logic, RuleId rule) {
  switch (rule) {
    case RuleId::Axiom:
    case RuleId::NegBot:
    case RuleId::NegNeg:
    case RuleId::NegAnd:
    case RuleId::AndSplit:
      return true;
    case RuleId::Cut:
      return false;
    default: {
      auto rules = modal_rules(logic);
      return std::find(rules.begin(), rules.end(), rule) != rules.end();
    }
  }
}

bool extends(LogicId logic, LogicId base) {
  if (logic == base) return true;
  if (is_conditional(logic) != is_conditional(base)) return false;
  if (!is_conditional(logic)) {
    // T and K4 both extend K; they are incomparable with each other.
    return base == LogicId::K;
  }
  return (!has_id(base) || has_id(logic)) && (!has_mp(base) || has_mp(logic)) &&
         (!has_cem(base) || has_cem(logic));
}

bool in_signature(Formula f, LogicId logic) {
  return is_conditional(logic) ? !contains_box(f) : !contains_cond(f);
}

void require_signature(Formula f, LogicId logic) {
  if (!in_signature(f, logic)) {
    throw SignatureError(std::string("formula '") + to_string(f) + "' is outside the signature of " +
                         std::string(name(logic)));
  }
}

void require_signature(const Sequent& s, LogicId logic) {
  for (Formula f : s) require_signature(f, logic);
}

}  // namespace cutfree
