#pragma once

#include <set>
#include <string>

namespace fld {

// Hands out fresh symbol names inside one instance. Atoms and predicates
// draw from a shared uppercase namespace so the two never collide; constants
// use lowercase letters, skipping x/y/z which are reserved for variables.
class NameAllocator {
 public:
  std::string next_atom() { return next_upper(atom_i_); }
  std::string next_predicate() { return next_upper(pred_i_); }

  std::string next_constant() {
    for (;;) {
      int round = const_i_ / 23;
      char letter = static_cast<char>('a' + const_i_ % 23);
      ++const_i_;
      std::string name(1, letter);
      if (round > 0) name += std::to_string(round + 1);
      if (used_.insert(name).second) return name;
    }
  }

  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.contains(name); }

 private:
  std::string next_upper(int& counter) {
    for (;;) {
      int round = counter / 26;
      char letter = static_cast<char>('A' + counter % 26);
      ++counter;
      std::string name(1, letter);
      if (round > 0) name += std::to_string(round + 1);
      if (used_.insert(name).second) return name;
    }
  }

  std::set<std::string> used_;
  int atom_i_ = 0;
  int pred_i_ = 5;  // predicates start at F
  int const_i_ = 0;
};

}  // namespace fld
