#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "homext/perm_group.hpp"
#include "homext/slp.hpp"

namespace homext {

// Relators are the outputs of `relators`, as words in generators 1..s.
struct Presentation {
  std::size_t generator_count = 0;
  StraightLineProgram relators;
};

// Relators come from the stabilizer chain: one per Schreier pair (orbit point,
// strong generator) at each level, stating that the Schreier generator equals
// its sifted factorisation, plus one per input generator stating that it
// equals its own factorisation.
Presentation presentation_from_group(PermGroup const &group);

// Index of the first relator that does not evaluate to the identity, if any.
std::optional<std::size_t> first_failing_relator(std::vector<Permutation> const &source_gens,
                                                 std::vector<Permutation> const &images);

bool verify_partial_hom(std::vector<Permutation> const &source_gens,
                        std::vector<Permutation> const &images);

}  // namespace homext
