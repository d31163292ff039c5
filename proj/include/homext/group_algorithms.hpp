#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "homext/bigint.hpp"
#include "homext/perm_group.hpp"

namespace homext {

struct MembershipOracle {
  std::size_t degree = 0;
  std::function<bool(Permutation const &)> test;
};

MembershipOracle membership_oracle(PermGroup const &group);

// Right coset representatives (identity first) of a subgroup.
struct CosetRepList {
  PermGroup subgroup;
  std::vector<Permutation> reps;
};

// Tower of groups: orbit of the trivial coset under right multiplication by the
// ambient generators, with Schreier generators sifted into the subgroup.
CosetRepList subgroup_from_membership(PermGroup const &ambient,
                                      MembershipOracle const &oracle,
                                      std::size_t index_bound);

CosetRepList right_coset_reps(PermGroup const &ambient, PermGroup const &sub);

PermGroup normalizer(PermGroup const &ambient, PermGroup const &m);

// A witness g with g^-1 l g == m, if l and m are conjugate in ambient.
std::optional<Permutation> conjugacy_test(PermGroup const &ambient, PermGroup const &l,
                                          PermGroup const &m);

BigInt conjugate_count(PermGroup const &ambient, PermGroup const &m);

PermGroup intersect_with_recognizable(PermGroup const &a, MembershipOracle const &oracle,
                                      std::size_t index_bound);

bool double_coset_membership(PermGroup const &ambient, PermGroup const &l,
                             PermGroup const &m, Permutation const &g,
                             Permutation const &h);

// One representative per double coset l*g*m; each is the lexicographically
// least among the candidate left-coset representatives of its double coset.
std::vector<Permutation> double_coset_reps(PermGroup const &ambient, PermGroup const &l,
                                           PermGroup const &m);

PermGroup centralizer_in_sym(PermGroup const &g);

std::optional<Permutation> move_coset(Subcoset const &c, Point i, Point j);

// Lex-first elements of cosets K*sigma for a fixed K.
class LexFirstTable {
 public:
  explicit LexFirstTable(PermGroup const &k);
  Permutation operator()(Permutation const &sigma) const;
  PermGroup const &chain() const { return chain_; }

 private:
  PermGroup chain_;
};

Permutation lex_first(Subcoset const &c);

// Streams lex-first leaders of the right cosets of k in l, breadth first over
// the Schreier graph. Single consumer.
class CosetRepEnumerator {
 public:
  CosetRepEnumerator(PermGroup const &k, PermGroup const &l);

  std::optional<Permutation> next();
  std::size_t nodes_expanded() const { return expanded_; }

 private:
  LexFirstTable lex_;
  std::vector<Permutation> moves_;
  std::set<Permutation> leaders_;
  std::deque<Permutation> frontier_;
  std::deque<Permutation> ready_;
  std::size_t expanded_ = 0;
};

CosetRepEnumerator enumerate_coset_reps(PermGroup const &k, PermGroup const &l);

// Converts a group index to a machine integer, raising ResourceLimit when it
// does not fit the given cap.
std::size_t index_as_size(BigInt const &index, std::size_t cap);

}  // namespace homext
