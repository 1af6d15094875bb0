#pragma once
// Shared basics: membership sets over an index universe, error types.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace finspec {

// An input violated a documented precondition (bad tables, non-prime p,
// elements not generating the unit ideal, ...).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured search budget would be exceeded. Raised instead of returning
// a silent partial answer.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Membership set over {0, ..., universe-1}. Used for ideals, submonoids and
// point sets alike.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(int universe) : bits_(universe, 0) {}

  static IndexSet full(int universe) {
    IndexSet s(universe);
    std::fill(s.bits_.begin(), s.bits_.end(), char(1));
    return s;
  }
  static IndexSet of(int universe, const std::vector<int>& elems) {
    IndexSet s(universe);
    for (int e : elems) s.insert(e);
    return s;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(int i) const { return bits_[i] != 0; }
  void insert(int i) { bits_.at(i) = 1; }
  void erase(int i) { bits_.at(i) = 0; }

  int count() const {
    int n = 0;
    for (char b : bits_) n += (b != 0);
    return n;
  }
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == universe(); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < universe(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool subset_of(const IndexSet& o) const {
    for (int i = 0; i < universe(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }

  IndexSet intersect(const IndexSet& o) const {
    IndexSet s(universe());
    for (int i = 0; i < universe(); ++i) s.bits_[i] = bits_[i] && o.bits_[i];
    return s;
  }
  IndexSet unite(const IndexSet& o) const {
    IndexSet s(universe());
    for (int i = 0; i < universe(); ++i) s.bits_[i] = bits_[i] || o.bits_[i];
    return s;
  }
  IndexSet complement() const {
    IndexSet s(universe());
    for (int i = 0; i < universe(); ++i) s.bits_[i] = !bits_[i];
    return s;
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.bits_ == b.bits_;
  }

private:
  std::vector<char> bits_;
};

// Ascending-element-list lexicographic order; the canonical order for points
// and opens so that serialized output is stable across runs.
inline bool elements_less(const IndexSet& a, const IndexSet& b) {
  return a.elements() < b.elements();
}

inline std::string set_to_string(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

}  // namespace finspec
