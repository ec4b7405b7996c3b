#include "cutfree/proof_io.hpp"

#include <sstream>

#include "cutfree/syntax.hpp"

namespace cutfree {

namespace {

using nlohmann::json;

bool is_pivoted(RuleId r) {
  switch (r) {
    case RuleId::K:
    case RuleId::K4:
    case RuleId::CKg:
    case RuleId::CKIDg:
    case RuleId::CKCEMg:
    case RuleId::CKCEMIDg:
      return true;
    default:
      return false;
  }
}

Formula read_formula(const json& j) {
  if (!j.is_string()) throw FormatError("formula entries must be strings");
  try {
    return parse_formula(j.get<std::string>());
  } catch (const ParseError& e) {
    throw FormatError(std::string("bad formula '") + j.get<std::string>() + "': " + e.what());
  }
}

std::vector<Entry> read_entries(const json& node, const char* formulas_key, const char* marks_key) {
  if (!node.contains(formulas_key) || !node[formulas_key].is_array())
    throw FormatError(std::string("node needs an array '") + formulas_key + "'");
  std::vector<Entry> out;
  for (const json& f : node[formulas_key]) out.push_back({read_formula(f), false});
  if (node.contains(marks_key)) {
    if (!node[marks_key].is_array()) throw FormatError(std::string("'") + marks_key + "' must be an array");
    for (const json& i : node[marks_key]) {
      if (!i.is_number_unsigned() || i.get<std::size_t>() >= out.size())
        throw FormatError(std::string("bad index in '") + marks_key + "'");
      out[i.get<std::size_t>()].marked = true;
    }
  }
  return out;
}

}  // namespace

json derivation_to_json(const Derivation& d) {
  json j;
  json seq = json::array(), marked = json::array();
  for (std::size_t i = 0; i < d.conclusion.size(); ++i) {
    seq.push_back(print_formula(d.conclusion[i].formula));
    if (d.conclusion[i].marked) marked.push_back(i);
  }
  j["sequent"] = seq;
  j["marked"] = marked;
  const RuleInstance& inst = d.instance;
  j["rule"] = std::string(name(inst.rule));
  if (inst.rule == RuleId::Cut && inst.cut_formula)
    j["pivot"] = {{"cut", print_formula(*inst.cut_formula)}};
  else if (inst.pivot >= 0)
    j["pivot"] = {{"index", inst.pivot}};
  else
    j["pivot"] = nullptr;
  json principal = json::array(), pmarked = json::array();
  for (std::size_t i = 0; i < inst.principal.size(); ++i) {
    principal.push_back(print_formula(inst.principal[i].formula));
    if (inst.principal[i].marked) pmarked.push_back(i);
  }
  j["principal"] = principal;
  j["principal_marked"] = pmarked;
  json children = json::array();
  for (const auto& c : d.children) children.push_back(derivation_to_json(*c));
  j["children"] = children;
  return j;
}

DerivationPtr derivation_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("derivation node must be an object");
  auto d = std::make_shared<Derivation>();
  d->conclusion = MarkedSequent(read_entries(j, "sequent", "marked"));
  if (!j.contains("rule") || !j["rule"].is_string()) throw FormatError("node needs a string 'rule'");
  auto rule = parse_rule(j["rule"].get<std::string>());
  if (!rule) throw FormatError("unknown rule '" + j["rule"].get<std::string>() + "'");
  RuleInstance& inst = d->instance;
  inst.rule = *rule;
  inst.principal = read_entries(j, "principal", "principal_marked");
  if (j.contains("pivot") && !j["pivot"].is_null()) {
    const json& p = j["pivot"];
    if (!p.is_object()) throw FormatError("'pivot' must be an object or null");
    if (p.contains("index")) {
      if (!p["index"].is_number_integer()) throw FormatError("pivot index must be an integer");
      inst.pivot = p["index"].get<int>();
    }
    if (p.contains("cut")) inst.cut_formula = read_formula(p["cut"]);
  } else if (is_pivoted(inst.rule) && !inst.principal.empty()) {
    inst.pivot = 0;
  }
  // Context = conclusion minus the principal occurrences that are present;
  // a mismatch surfaces later as a conclusion/principal error in the checker.
  MarkedSequent context = d->conclusion;
  for (const Entry& e : inst.principal) context.remove_one(e);
  inst.context = context;
  if (!j.contains("children") || !j["children"].is_array()) throw FormatError("node needs an array 'children'");
  for (const json& c : j["children"]) d->children.push_back(derivation_from_json(c));
  return d;
}

DerivationPtr parse_derivation(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("derivation")) return derivation_from_json(j["derivation"]);
  return derivation_from_json(j);
}

namespace {

class LatexWriter {
 public:
  std::string run(const Derivation& d) {
    std::ostringstream body;
    tree(d, body);
    std::ostringstream out;
    out << "% needs \\usepackage{bussproofs}\n";
    out << "\\begin{prooftree}\n" << body.str() << "\\end{prooftree}\n";
    for (std::size_t i = 0; i < side_.size(); ++i) {
      out << "\\noindent $\\mathcal{P}_{" << i + 1 << "}$:\n";
      out << "\\begin{prooftree}\n" << side_[i] << "\\end{prooftree}\n";
    }
    return out.str();
  }

 private:
  static std::string label(const Derivation& d) {
    std::string n(name(d.instance.rule));
    return "\\RightLabel{\\scriptsize (" + n + ")}\n";
  }

  static std::string line(const Derivation& d) {
    return "$" + print_sequent(d.conclusion, PrintStyle::Latex) + "$";
  }

  void tree(const Derivation& d, std::ostringstream& out) {
    static const char* const kInf[] = {"\\AxiomC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC",
                                       "\\QuaternaryInfC", "\\QuinaryInfC"};
    std::size_t n = d.children.size();
    if (n == 0) {
      out << "\\AxiomC{}\n" << label(d) << "\\UnaryInfC{" << line(d) << "}\n";
      return;
    }
    std::size_t inline_from = 0;
    if (n > 5) {
      // Leading premises go to side trees, collected into one leaf.
      inline_from = n - 4;
      std::size_t first = side_.size() + 1;
      for (std::size_t i = 0; i < inline_from; ++i) {
        std::ostringstream s;
        tree(*d.children[i], s);
        side_.push_back(s.str());
      }
      out << "\\AxiomC{$\\mathcal{P}_{" << first << "} \\cdots \\mathcal{P}_{" << side_.size() << "}$}\n";
    }
    for (std::size_t i = inline_from; i < n; ++i) tree(*d.children[i], out);
    std::size_t shown = n > 5 ? 5 : n;
    out << label(d) << kInf[shown] << "{" << line(d) << "}\n";
  }

  std::vector<std::string> side_;
};

void text_tree(const Derivation& d, int indent, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "|- " << print_sequent(d.conclusion)
      << "   [" << name(d.instance.rule) << "]\n";
  for (const auto& c : d.children) text_tree(*c, indent + 1, out);
}

}  // namespace

std::string derivation_to_latex(const Derivation& d) { return LatexWriter().run(d); }

std::string derivation_to_text(const Derivation& d) {
  std::ostringstream out;
  text_tree(d, 0, out);
  return out.str();
}

json stats_to_json(const SearchStats& stats, bool timing) {
  json modal = json::object();
  for (std::size_t i = 0; i < kRuleCount; ++i)
    if (stats.modal_applications[i]) modal[std::string(name(static_cast<RuleId>(i)))] = stats.modal_applications[i];
  json j = {{"nodes", stats.nodes},
            {"max_depth", stats.max_depth_reached},
            {"memo_hits", stats.memo_hits},
            {"iterations", stats.iterations},
            {"modal_applications", modal}};
  if (timing) j["elapsed_us"] = stats.elapsed_us;
  return j;
}

json verdict_to_json(const Verdict& v, LogicId logic, StrategyId strategy, bool timing) {
  json j;
  j["verdict"] = std::string(name(v.kind));
  j["logic"] = std::string(name(logic));
  j["strategy"] = std::string(name(strategy));
  if (v.kind == VerdictKind::ResourceExceeded) j["reason"] = v.reason;
  j["stats"] = stats_to_json(v.stats, timing);
  if (v.witness) j["derivation"] = derivation_to_json(*v.witness);
  return j;
}

}  // namespace cutfree
