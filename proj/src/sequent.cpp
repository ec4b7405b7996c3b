#include "cutfree/sequent.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutfree {

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

Sequent::Sequent(std::initializer_list<Formula> formulas) : items_(formulas) {
  std::sort(items_.begin(), items_.end());
}

Sequent::Sequent(std::vector<Formula> formulas) : items_(std::move(formulas)) {
  std::sort(items_.begin(), items_.end());
}

void Sequent::add(Formula f) {
  items_.insert(std::upper_bound(items_.begin(), items_.end(), f), f);
}

bool Sequent::remove_one(Formula f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f);
  if (it == items_.end() || *it != f) return false;
  items_.erase(it);
  return true;
}

std::size_t Sequent::count(Formula f) const {
  auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), f);
  return static_cast<std::size_t>(hi - lo);
}

bool Sequent::includes(const Sequent& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

Sequent Sequent::contracted() const {
  Sequent out;
  out.items_ = items_;
  out.items_.erase(std::unique(out.items_.begin(), out.items_.end()), out.items_.end());
  return out;
}

Sequent operator+(const Sequent& a, const Sequent& b) {
  Sequent out;
  out.items_.reserve(a.size() + b.size());
  std::merge(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
             std::back_inserter(out.items_));
  return out;
}

bool operator<(const Sequent& a, const Sequent& b) {
  return std::lexicographical_compare(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                      b.items_.end());
}

std::size_t Sequent::hash() const {
  std::size_t h = items_.size();
  for (Formula f : items_) h = mix(h, f.hash());
  return h;
}

bool operator<(const Entry& a, const Entry& b) {
  if (int c = compare(a.formula, b.formula); c != 0) return c < 0;
  return a.marked < b.marked;
}

MarkedSequent::MarkedSequent(std::initializer_list<Entry> entries) : entries_(entries) {
  std::sort(entries_.begin(), entries_.end());
}

MarkedSequent::MarkedSequent(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

MarkedSequent::MarkedSequent(const Sequent& s) {
  entries_.reserve(s.size());
  for (Formula f : s) entries_.push_back(Entry{f, false});
}

void MarkedSequent::add(Entry e) {
  entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), e), e);
}

bool MarkedSequent::remove_one(const Entry& e) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e);
  if (it == entries_.end() || !(*it == e)) return false;
  entries_.erase(it);
  return true;
}

std::size_t MarkedSequent::count(const Entry& e) const {
  auto [lo, hi] = std::equal_range(entries_.begin(), entries_.end(), e);
  return static_cast<std::size_t>(hi - lo);
}

std::size_t MarkedSequent::count_formula(Formula f) const {
  return count(Entry{f, false}) + count(Entry{f, true});
}

bool MarkedSequent::any_marked() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.marked; });
}

bool MarkedSequent::includes(const MarkedSequent& other) const {
  return std::includes(entries_.begin(), entries_.end(), other.entries_.begin(),
                       other.entries_.end());
}

Sequent MarkedSequent::erased() const {
  std::vector<Formula> fs;
  fs.reserve(entries_.size());
  for (const Entry& e : entries_) fs.push_back(e.formula);
  return Sequent(std::move(fs));
}

MarkedSequent MarkedSequent::contracted() const {
  MarkedSequent out;
  out.entries_ = entries_;
  out.entries_.erase(std::unique(out.entries_.begin(), out.entries_.end()), out.entries_.end());
  return out;
}

MarkedSequent MarkedSequent::minus(const MarkedSequent& other) const {
  MarkedSequent out;
  std::set_difference(entries_.begin(), entries_.end(), other.entries_.begin(),
                      other.entries_.end(), std::back_inserter(out.entries_));
  if (out.size() + other.size() != size())
    throw std::logic_error("MarkedSequent::minus: not a sub-multiset");
  return out;
}

MarkedSequent operator+(const MarkedSequent& a, const MarkedSequent& b) {
  MarkedSequent out;
  out.entries_.reserve(a.size() + b.size());
  std::merge(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
             std::back_inserter(out.entries_));
  return out;
}

std::size_t MarkedSequent::hash() const {
  std::size_t h = entries_.size();
  for (const Entry& e : entries_) h = mix(h, e.formula.hash() * 2 + (e.marked ? 1 : 0));
  return h;
}

}  // namespace cutfree
