#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "homext/bigint.hpp"
#include "homext/permutation.hpp"
#include "homext/slp.hpp"

namespace homext {

namespace detail {
struct GroupData;
}

// One level of the stabilizer chain: the orbit of `base` under the strong
// generators fixing all earlier base points, with a Schreier tree.
struct ChainLevel {
  Point base = 0;
  std::vector<std::size_t> generators;  // indices into strong_generators()
  std::vector<Point> orbit;
  std::vector<std::int32_t> position;   // point -> index in orbit, or -1
  std::vector<Permutation> reps;        // base^reps[k] == orbit[k]
  std::vector<Permutation> rep_inverses;
  std::vector<std::size_t> parent;      // Schreier tree: reps[k] = reps[parent[k]] * s
  std::vector<std::size_t> via;         // ... with s = strong_generators()[via[k]]
  std::vector<std::optional<std::size_t>> rep_steps;  // words in history()

  bool contains(Point p) const { return position[p] >= 0; }
  std::size_t index_of(Point p) const { return static_cast<std::size_t>(position[p]); }
};

// A permutation group with a complete base and strong generating set built by
// deterministic Schreier-Sims at construction. Immutable and cheap to copy.
class PermGroup {
 public:
  PermGroup() : PermGroup(1) {}
  explicit PermGroup(std::size_t degree);
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  // Same group, with a chain whose base starts with `prefix` (redundant
  // points allowed; their levels have trivial orbits).
  static PermGroup with_base_prefix(std::size_t degree,
                                    std::vector<Permutation> generators,
                                    std::vector<Point> const &prefix);

  std::size_t degree() const;
  std::vector<Permutation> const &generators() const;
  std::vector<Permutation> const &strong_generators() const;
  std::vector<ChainLevel> const &levels() const;
  std::vector<Point> base() const;

  // Steps producing each strong generator (and each transversal element, see
  // ChainLevel::rep_steps) from generators().
  StraightLineProgram const &history() const;
  std::vector<std::size_t> const &strong_generator_steps() const;

  BigInt order() const;
  bool is_trivial() const;
  bool contains(Permutation const &p) const;
  bool contains(PermGroup const &other) const;  // other <= *this

  struct Sift {
    Permutation residue;
    std::size_t level;  // first level where sifting stopped; levels().size() if none
    std::vector<std::size_t> positions;  // orbit index used at each level passed
  };
  Sift sift(Permutation const &p, std::size_t from_level = 0) const;

  std::vector<Point> orbit(Point x) const;
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;

  std::vector<Permutation> elements() const;  // small groups only

 private:
  explicit PermGroup(std::shared_ptr<detail::GroupData const> data) : data_(std::move(data)) {}
  std::shared_ptr<detail::GroupData const> data_;
};

PermGroup bsgs_build(std::size_t degree, std::vector<Permutation> const &generators);
bool membership_test(PermGroup const &group, Permutation const &p);
BigInt group_order(PermGroup const &group);
BigInt subgroup_index(PermGroup const &group, PermGroup const &subgroup);
std::vector<std::vector<Point>> orbits(PermGroup const &group);
PermGroup point_stabilizer(PermGroup const &group, Point point);
PermGroup pointwise_stabilizer(PermGroup const &group, std::vector<Point> const &points);
std::vector<Permutation> reduce_generators(PermGroup const &group);
PermGroup restrict_action(PermGroup const &group, std::vector<Point> const &delta);
PermGroup alt_group(std::vector<Point> const &points, std::size_t degree);
PermGroup sym_group(std::vector<Point> const &points, std::size_t degree);
PermGroup alt_group(std::size_t degree);
PermGroup sym_group(std::size_t degree);
PermGroup even_part(PermGroup const &group);
PermGroup direct_product_on_disjoint_supports(PermGroup const &a, PermGroup const &b);
PermGroup conjugate_group(PermGroup const &group, Permutation const &g);  // g^-1 G g

// The coset M*rep.
struct Subcoset {
  PermGroup group;
  Permutation representative;

  bool contains(Permutation const &x) const {
    return group.contains(x * representative.inverse());
  }
};

}  // namespace homext
