#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cutfree {

/// Constructor tags of the core language. Sugar (true, or, ->, <->) never
/// reaches this level; the parser rewrites it away.
enum class Tag : std::uint8_t { Bot = 0, Var = 1, Neg = 2, And = 3, Box = 4, Cond = 5 };

namespace detail {
struct FormulaNode {
  Tag tag;
  const FormulaNode* lhs;
  const FormulaNode* rhs;
  std::string name;
  std::uint32_t size;
  std::uint32_t depth;
  std::size_t hash;
};
}  // namespace detail

/// Immutable, hash-consed formula handle.
///
/// Structurally equal formulas share one node, so equality and hashing are
/// pointer operations. Nodes live for the whole process and may be shared
/// freely between threads.
class Formula {
 public:
  Formula();  // bottom

  static Formula bot();
  static Formula var(const std::string& name);
  static Formula neg(Formula arg);
  static Formula conj(Formula left, Formula right);
  static Formula box(Formula arg);
  static Formula cond(Formula antecedent, Formula consequent);

  Tag tag() const { return node_->tag; }
  bool is(Tag t) const { return node_->tag == t; }

  /// Variable name; empty for other constructors.
  const std::string& name() const { return node_->name; }

  /// Argument of Neg/Box, left operand of And, antecedent of Cond.
  Formula left() const { return Formula(node_->lhs); }
  /// Right operand of And, consequent of Cond.
  Formula right() const { return Formula(node_->rhs); }
  Formula arg() const { return Formula(node_->lhs); }

  std::uint32_t size() const { return node_->size; }
  std::uint32_t modal_depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  const void* id() const { return node_; }

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

 private:
  explicit Formula(const detail::FormulaNode* node) : node_(node) {}
  static Formula intern(Tag tag, const detail::FormulaNode* lhs, const detail::FormulaNode* rhs,
                        const std::string& name);

  const detail::FormulaNode* node_;
};

/// Deterministic total order: size, then constructor tag, then arguments
/// left to right, then variable name. Returns <0, 0, >0.
int compare(Formula a, Formula b);

inline bool operator<(Formula a, Formula b) { return compare(a, b) < 0; }

struct FormulaHash {
  std::size_t operator()(Formula f) const { return f.hash(); }
};

// Shorthands used throughout the engine and tests.
inline Formula bot() { return Formula::bot(); }
inline Formula var(const std::string& name) { return Formula::var(name); }
inline Formula neg(Formula f) { return Formula::neg(f); }
inline Formula conj(Formula a, Formula b) { return Formula::conj(a, b); }
inline Formula box(Formula f) { return Formula::box(f); }
inline Formula cond(Formula a, Formula b) { return Formula::cond(a, b); }

/// Sugar constructors; each returns the desugared core formula.
Formula top();
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);

inline std::uint32_t size(Formula f) { return f.size(); }
inline std::uint32_t modal_depth(Formula f) { return f.modal_depth(); }

/// All subformulas (reflexive), without duplicates, in canonical order.
std::vector<Formula> subformulas(Formula f);

/// Variable names occurring in f, sorted.
std::vector<std::string> variables(Formula f);

bool is_propositional(Formula f);
bool contains_box(Formula f);
bool contains_cond(Formula f);

/// A⇒B or ¬(A⇒B).
bool is_conditional_literal(Formula f);
/// □A or ¬□A.
bool is_box_literal(Formula f);

/// Finite map from variable names to formulas; identity elsewhere.
using Substitution = std::map<std::string, Formula>;

Formula substitute(Formula f, const Substitution& s);

/// The substitution `after ∘ before`: applying it equals applying `before`
/// and then `after`.
Substitution compose(const Substitution& after, const Substitution& before);

}  // namespace cutfree

template <>
struct std::hash<cutfree::Formula> {
  std::size_t operator()(cutfree::Formula f) const noexcept { return f.hash(); }
};
