#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cutfree/formula.hpp"

namespace cutfree {

/// Finite multiset of formulas, read disjunctively. Stored sorted by the
/// canonical formula order, so two sequents are equal iff their vectors are.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::initializer_list<Formula> formulas);
  explicit Sequent(std::vector<Formula> formulas);

  void add(Formula f);
  /// Removes one occurrence; returns false if f does not occur.
  bool remove_one(Formula f);

  std::size_t count(Formula f) const;
  bool contains(Formula f) const { return count(f) > 0; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Sub-multiset test.
  bool includes(const Sequent& other) const;

  /// Same formulas, each occurring once.
  Sequent contracted() const;

  std::span<const Formula> items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend Sequent operator+(const Sequent& a, const Sequent& b);
  friend bool operator==(const Sequent& a, const Sequent& b) { return a.items_ == b.items_; }
  friend bool operator<(const Sequent& a, const Sequent& b);

  std::size_t hash() const;

 private:
  std::vector<Formula> items_;
};

/// One formula occurrence together with its MP mark.
struct Entry {
  Formula formula;
  bool marked = false;

  friend bool operator==(const Entry& a, const Entry& b) {
    return a.formula == b.formula && a.marked == b.marked;
  }
};

bool operator<(const Entry& a, const Entry& b);

/// Sequent whose conditional literals may carry marks: a marked occurrence has
/// had MP_g/MPCEM_g applied to it on the current branch since the last
/// CK-family step.
class MarkedSequent {
 public:
  MarkedSequent() = default;
  MarkedSequent(std::initializer_list<Entry> entries);
  explicit MarkedSequent(std::vector<Entry> entries);
  explicit MarkedSequent(const Sequent& s);

  void add(Entry e);
  void add(Formula f, bool marked = false) { add(Entry{f, marked}); }
  bool remove_one(const Entry& e);

  std::size_t count(const Entry& e) const;
  /// Occurrences of f regardless of mark.
  std::size_t count_formula(Formula f) const;
  bool contains_formula(Formula f) const { return count_formula(f) > 0; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool any_marked() const;

  bool includes(const MarkedSequent& other) const;

  Sequent erased() const;
  MarkedSequent without_marks() const { return MarkedSequent(erased()); }
  /// Collapses duplicate occurrences with equal mark state.
  MarkedSequent contracted() const;

  /// Multiset difference; requires includes(other).
  MarkedSequent minus(const MarkedSequent& other) const;

  std::span<const Entry> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  friend MarkedSequent operator+(const MarkedSequent& a, const MarkedSequent& b);
  friend bool operator==(const MarkedSequent& a, const MarkedSequent& b) {
    return a.entries_ == b.entries_;
  }

  std::size_t hash() const;

 private:
  std::vector<Entry> entries_;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
  std::size_t operator()(const MarkedSequent& s) const { return s.hash(); }
};

}  // namespace cutfree
