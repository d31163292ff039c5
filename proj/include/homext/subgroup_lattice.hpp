#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "homext/perm_group.hpp"

namespace homext {

// All subgroups of a small group, found by joining known class
// representatives with one more element at a time (cyclic extension), working
// on explicit element sets. Conjugacy classes are recorded as they appear.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(PermGroup const &group, std::size_t order_cap = 5040);

  std::size_t class_count() const { return classes_.size(); }
  std::size_t subgroup_count() const { return subgroup_count_; }

  // Class representatives, largest subgroups first.
  std::vector<PermGroup> class_representatives(
      std::size_t max_index = std::numeric_limits<std::size_t>::max()) const;

  // Every subgroup (all conjugates of every class).
  std::vector<PermGroup> all_subgroups() const;

 private:
  struct Class {
    std::vector<Permutation> generators;
    std::size_t order = 0;
    std::vector<std::size_t> conjugators;  // one element per distinct conjugate
  };
  PermGroup group_;
  std::vector<Permutation> elements_;
  std::vector<Class> classes_;
  std::size_t subgroup_count_ = 0;
};

}  // namespace homext
