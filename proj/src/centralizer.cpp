#include <algorithm>
#include <map>
#include <optional>

#include "homext/group_algorithms.hpp"

namespace homext {

namespace {

// The permutation graph: vertex x has one edge x -> x^t per generator t. A
// centraliser element is a colour-preserving automorphism, and on a connected
// component it is determined by the image of a single vertex.
class PermGraph {
 public:
  explicit PermGraph(PermGroup const &g) : n_(g.degree())
  {
    for (auto const &t : g.generators())
      if (!t.is_identity())
        edges_.push_back(t);
  }

  std::size_t size() const { return n_; }
  bool edgeless() const { return edges_.empty(); }

  // Isomorphism of the component of `a` onto the component of `b` sending a
  // to b, as a partial map (unmapped points hold npos).
  std::optional<std::vector<Point>> propagate(Point a, Point b) const
  {
    std::vector<Point> map(n_, npos);
    std::vector<bool> hit(n_, false);
    map[a] = b;
    hit[b] = true;
    std::vector<Point> queue{a};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Point x = queue[q];
      for (auto const &t : edges_) {
        Point xs = t[x];
        Point ys = t[map[x]];
        if (map[xs] == npos) {
          if (hit[ys])
            return std::nullopt;
          map[xs] = ys;
          hit[ys] = true;
          queue.push_back(xs);
        } else if (map[xs] != ys) {
          return std::nullopt;
        }
      }
    }
    return map;
  }

  static constexpr Point npos = static_cast<Point>(-1);

 private:
  std::size_t n_;
  std::vector<Permutation> edges_;
};

Permutation extend_to_perm(std::vector<Point> const &partial)
{
  std::vector<Point> img(partial.size());
  for (Point x = 0; x < partial.size(); ++x)
    img[x] = partial[x] == PermGraph::npos ? x : partial[x];
  return Permutation(std::move(img));
}

}  // namespace

PermGroup centralizer_in_sym(PermGroup const &g)
{
  std::size_t const m = g.degree();
  PermGraph graph(g);
  if (graph.edgeless())
    return sym_group(m);

  auto comps = g.orbits();
  std::vector<bool> grouped(comps.size(), false);
  std::vector<Permutation> gens;

  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (grouped[c])
      continue;
    grouped[c] = true;
    Point a = comps[c].front();

    // Automorphisms of the class leader component.
    for (Point b : comps[c]) {
      if (b == a)
        continue;
      if (auto map = graph.propagate(a, b))
        gens.push_back(extend_to_perm(*map));
    }

    // Isomorphic components, each with a fixed isomorphism from the leader.
    std::vector<std::vector<Point>> iso{graph.propagate(a, a).value()};
    for (std::size_t d = c + 1; d < comps.size(); ++d) {
      if (grouped[d] || comps[d].size() != comps[c].size())
        continue;
      for (Point b : comps[d]) {
        if (auto map = graph.propagate(a, b)) {
          grouped[d] = true;
          iso.push_back(std::move(*map));
          break;
        }
      }
    }

    // Swap neighbouring copies along the fixed isomorphisms.
    for (std::size_t i = 0; i + 1 < iso.size(); ++i) {
      std::vector<Point> swap(m, PermGraph::npos);
      for (Point x : comps[c]) {
        swap[iso[i][x]] = iso[i + 1][x];
        swap[iso[i + 1][x]] = iso[i][x];
      }
      gens.push_back(extend_to_perm(swap));
    }
  }
  return PermGroup(m, std::move(gens));
}

}  // namespace homext
