#include "cutfree/formula.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_set>

namespace cutfree {

namespace {

using detail::FormulaNode;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct NodeKeyHash {
  std::size_t operator()(const FormulaNode* n) const { return n->hash; }
};

struct NodeKeyEq {
  bool operator()(const FormulaNode* a, const FormulaNode* b) const {
    return a->tag == b->tag && a->lhs == b->lhs && a->rhs == b->rhs && a->name == b->name;
  }
};

// Sharded intern table. Nodes are never freed.
class InternTable {
 public:
  static constexpr std::size_t kShards = 64;

  const FormulaNode* intern(FormulaNode&& probe) {
    Shard& shard = shards_[probe.hash % kShards];
    std::lock_guard<std::mutex> lock(shard.mutex);
    if (auto it = shard.nodes.find(&probe); it != shard.nodes.end()) return *it;
    shard.storage.push_back(std::make_unique<FormulaNode>(std::move(probe)));
    const FormulaNode* node = shard.storage.back().get();
    shard.nodes.insert(node);
    return node;
  }

 private:
  struct Shard {
    std::mutex mutex;
    std::unordered_set<const FormulaNode*, NodeKeyHash, NodeKeyEq> nodes;
    std::vector<std::unique_ptr<FormulaNode>> storage;
  };
  std::array<Shard, kShards> shards_;
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

}  // namespace

Formula::Formula() : node_(bot().node_) {}

Formula Formula::intern(Tag tag, const FormulaNode* lhs, const FormulaNode* rhs,
                        const std::string& name) {
  FormulaNode probe{tag, lhs, rhs, name, 1, 0, 0};
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(tag));
  if (lhs) {
    probe.size += lhs->size;
    h = mix(h, lhs->hash);
  }
  if (rhs) {
    probe.size += rhs->size;
    h = mix(h, rhs->hash);
  }
  if (tag == Tag::Var) h = mix(h, std::hash<std::string>{}(name));
  if (tag == Tag::Box || tag == Tag::Cond) {
    std::uint32_t d = lhs->depth;
    if (rhs) d = std::max(d, rhs->depth);
    probe.depth = d + 1;
  } else if (lhs) {
    probe.depth = std::max(lhs->depth, rhs ? rhs->depth : 0u);
  }
  probe.hash = h;
  return Formula(table().intern(std::move(probe)));
}

Formula Formula::bot() {
  static const FormulaNode* node = intern(Tag::Bot, nullptr, nullptr, "").node_;
  return Formula(node);
}
Formula Formula::var(const std::string& name) { return intern(Tag::Var, nullptr, nullptr, name); }
Formula Formula::neg(Formula arg) { return intern(Tag::Neg, arg.node_, nullptr, ""); }
Formula Formula::conj(Formula l, Formula r) { return intern(Tag::And, l.node_, r.node_, ""); }
Formula Formula::box(Formula arg) { return intern(Tag::Box, arg.node_, nullptr, ""); }
Formula Formula::cond(Formula a, Formula c) { return intern(Tag::Cond, a.node_, c.node_, ""); }

int compare(Formula a, Formula b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.tag() != b.tag()) return a.tag() < b.tag() ? -1 : 1;
  switch (a.tag()) {
    case Tag::Bot:
      return 0;
    case Tag::Var:
      return a.name().compare(b.name()) < 0 ? -1 : 1;
    case Tag::Neg:
    case Tag::Box:
      return compare(a.arg(), b.arg());
    case Tag::And:
    case Tag::Cond:
      if (int c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
  }
  return 0;
}

Formula top() { return neg(bot()); }
Formula disj(Formula a, Formula b) { return neg(conj(neg(a), neg(b))); }
Formula implies(Formula a, Formula b) { return neg(conj(a, neg(b))); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

namespace {
void collect(Formula f, std::unordered_set<Formula>& seen) {
  if (!seen.insert(f).second) return;
  switch (f.tag()) {
    case Tag::Bot:
    case Tag::Var:
      return;
    case Tag::Neg:
    case Tag::Box:
      collect(f.arg(), seen);
      return;
    case Tag::And:
    case Tag::Cond:
      collect(f.left(), seen);
      collect(f.right(), seen);
      return;
  }
}
}  // namespace

std::vector<Formula> subformulas(Formula f) {
  std::unordered_set<Formula> seen;
  collect(f, seen);
  std::vector<Formula> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> variables(Formula f) {
  std::set<std::string> names;
  for (Formula g : subformulas(f))
    if (g.is(Tag::Var)) names.insert(g.name());
  return {names.begin(), names.end()};
}

namespace {
bool contains_tag(Formula f, Tag t) {
  if (f.is(t)) return true;
  switch (f.tag()) {
    case Tag::Bot:
    case Tag::Var:
      return false;
    case Tag::Neg:
    case Tag::Box:
      return contains_tag(f.arg(), t);
    default:
      return contains_tag(f.left(), t) || contains_tag(f.right(), t);
  }
}
}  // namespace

bool is_propositional(Formula f) { return f.modal_depth() == 0; }
bool contains_box(Formula f) { return f.modal_depth() > 0 && contains_tag(f, Tag::Box); }
bool contains_cond(Formula f) { return f.modal_depth() > 0 && contains_tag(f, Tag::Cond); }

bool is_conditional_literal(Formula f) {
  return f.is(Tag::Cond) || (f.is(Tag::Neg) && f.arg().is(Tag::Cond));
}

bool is_box_literal(Formula f) {
  return f.is(Tag::Box) || (f.is(Tag::Neg) && f.arg().is(Tag::Box));
}

Formula substitute(Formula f, const Substitution& s) {
  switch (f.tag()) {
    case Tag::Bot:
      return f;
    case Tag::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Tag::Neg:
      return neg(substitute(f.arg(), s));
    case Tag::Box:
      return box(substitute(f.arg(), s));
    case Tag::And:
      return conj(substitute(f.left(), s), substitute(f.right(), s));
    case Tag::Cond:
      return cond(substitute(f.left(), s), substitute(f.right(), s));
  }
  return f;
}

Substitution compose(const Substitution& after, const Substitution& before) {
  Substitution out;
  for (const auto& [name, image] : before) out.emplace(name, substitute(image, after));
  for (const auto& [name, image] : after) out.emplace(name, image);  // no-op when already bound
  return out;
}

}  // namespace cutfree
