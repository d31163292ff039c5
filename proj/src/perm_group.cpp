#include "homext/perm_group.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <set>

#include "homext/errors.hpp"

namespace homext {

namespace detail {

struct GroupData {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<Permutation> strong;
  std::vector<std::size_t> strong_steps;
  std::vector<ChainLevel> levels;
  StraightLineProgram history;
  BigInt order = 1;
};

}  // namespace detail

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

PermGroup::Sift sift_through(std::vector<ChainLevel> const &levels,
                             Permutation const &p, std::size_t from)
{
  PermGroup::Sift s{p, levels.size(), {}};
  for (std::size_t l = from; l < levels.size(); ++l) {
    auto const &lev = levels[l];
    Point img = s.residue[lev.base];
    if (!lev.contains(img)) {
      s.level = l;
      return s;
    }
    std::size_t k = lev.index_of(img);
    s.positions.push_back(k);
    if (k != 0)
      s.residue *= lev.rep_inverses[k];
  }
  return s;
}

// Incremental deterministic Schreier-Sims. S_l (the generators of level l) is
// always the set of strong generators fixing the first l base points, and
// transversals only ever grow, so every tested Schreier pair stays valid.
class ChainBuilder {
 public:
  ChainBuilder(std::size_t degree, std::vector<Point> const &prefix)
  {
    data_.degree = degree;
    for (Point b : prefix) {
      if (b >= degree)
        throw OutOfRange("base point out of range");
      bool dup = std::any_of(data_.levels.begin(), data_.levels.end(),
                             [b](ChainLevel const &l) { return l.base == b; });
      if (!dup)
        new_level(b);
    }
  }

  bool add_generator(Permutation const &g)
  {
    if (g.degree() != data_.degree)
      throw DegreeMismatch("generator " + g.to_string() + " has degree " +
                           std::to_string(g.degree()) + ", expected " +
                           std::to_string(data_.degree));
    std::size_t index = data_.generators.size();
    data_.generators.push_back(g);
    std::size_t step = data_.history.load(index);
    if (g.is_identity())
      return false;

    auto s = sift_through(data_.levels, g, 0);
    if (s.level == data_.levels.size() && s.residue.is_identity())
      return false;
    std::optional<std::size_t> word = step;
    word = append_sift_word(word, s, 0);
    std::size_t j = add_strong(s.residue, *word);
    close(j);
    return true;
  }

  detail::GroupData finish() &&
  {
    data_.order = 1;
    for (auto const &l : data_.levels)
      data_.order *= l.orbit.size();
    return std::move(data_);
  }

 private:
  void new_level(Point base)
  {
    ChainLevel l;
    l.base = base;
    l.position.assign(data_.degree, -1);
    l.position[base] = 0;
    l.orbit.push_back(base);
    l.reps.emplace_back(data_.degree);
    l.rep_inverses.emplace_back(data_.degree);
    l.parent.push_back(npos);
    l.via.push_back(npos);
    l.rep_steps.push_back(std::nullopt);
    data_.levels.push_back(std::move(l));
    inv_steps_.push_back({std::nullopt});
    tested_.push_back({0});
  }

  std::size_t inverse_step(std::size_t level, std::size_t k)
  {
    auto &cache = inv_steps_[level][k];
    if (!cache)
      cache = data_.history.invert(*data_.levels[level].rep_steps[k]);
    return *cache;
  }

  std::optional<std::size_t> append_sift_word(std::optional<std::size_t> word,
                                              PermGroup::Sift const &s,
                                              std::size_t from)
  {
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      std::size_t k = s.positions[i];
      if (k != 0)
        word = data_.history.multiply(word, inverse_step(from + i, k));
    }
    return word;
  }

  void try_extend(std::size_t level, std::size_t k, std::size_t gen)
  {
    auto &l = data_.levels[level];
    Permutation const &s = data_.strong[gen];
    Point p = s[l.orbit[k]];
    if (l.contains(p))
      return;
    l.position[p] = static_cast<std::int32_t>(l.orbit.size());
    l.orbit.push_back(p);
    Permutation rep = l.reps[k] * s;
    l.rep_inverses.push_back(rep.inverse());
    l.reps.push_back(std::move(rep));
    l.parent.push_back(k);
    l.via.push_back(gen);
    l.rep_steps.push_back(
        data_.history.multiply(l.rep_steps[k], data_.strong_steps[gen]));
    inv_steps_[level].push_back(std::nullopt);
    tested_[level].push_back(0);
  }

  void extend_orbit(std::size_t level, std::size_t gen)
  {
    std::size_t old = data_.levels[level].orbit.size();
    for (std::size_t k = 0; k < old; ++k)
      try_extend(level, k, gen);
    for (std::size_t k = old; k < data_.levels[level].orbit.size(); ++k) {
      auto gens = data_.levels[level].generators;
      for (std::size_t g : gens)
        try_extend(level, k, g);
    }
  }

  std::size_t add_strong(Permutation const &y, std::size_t step)
  {
    std::size_t idx = data_.strong.size();
    data_.strong.push_back(y);
    data_.strong_steps.push_back(step);

    std::size_t j = 0;
    while (j < data_.levels.size() && y[data_.levels[j].base] == data_.levels[j].base)
      ++j;
    if (j == data_.levels.size())
      new_level(*y.smallest_moved_point());
    for (std::size_t l = 0; l <= j; ++l) {
      data_.levels[l].generators.push_back(idx);
      extend_orbit(l, idx);
    }
    return j;
  }

  void close(std::size_t start)
  {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start);
    while (i >= 0) {
      std::size_t lv = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t k = 0; k < data_.levels[lv].orbit.size() && !restarted; ++k) {
        while (tested_[lv][k] < data_.levels[lv].generators.size()) {
          auto const &l = data_.levels[lv];
          std::size_t gen = l.generators[tested_[lv][k]++];
          Permutation const &x = data_.strong[gen];
          std::size_t target = l.index_of(x[l.orbit[k]]);
          Permutation h = l.reps[k] * x * l.rep_inverses[target];
          if (h.is_identity())
            continue;
          auto s = sift_through(data_.levels, h, lv + 1);
          if (s.level == data_.levels.size() && s.residue.is_identity())
            continue;

          auto word = data_.history.multiply(l.rep_steps[k], data_.strong_steps[gen]);
          if (target != 0)
            word = data_.history.multiply(word, inverse_step(lv, target));
          word = append_sift_word(word, s, lv + 1);
          assert(word);
          i = static_cast<std::ptrdiff_t>(add_strong(s.residue, *word));
          restarted = true;
          break;
        }
      }
      if (!restarted)
        --i;
    }
  }

  detail::GroupData data_;
  std::vector<std::vector<std::optional<std::size_t>>> inv_steps_;
  std::vector<std::vector<std::size_t>> tested_;
};

detail::GroupData build(std::size_t degree, std::vector<Permutation> const &gens,
                      std::vector<Point> const &prefix)
{
  ChainBuilder b(degree, prefix);
  for (auto const &g : gens)
    b.add_generator(g);
  return std::move(b).finish();
}

}  // namespace

PermGroup::PermGroup(std::size_t degree)
    : data_(std::make_shared<detail::GroupData const>(build(degree, {}, {})))
{
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : data_(std::make_shared<detail::GroupData const>(build(degree, generators, {})))
{
}

PermGroup PermGroup::with_base_prefix(std::size_t degree,
                                      std::vector<Permutation> generators,
                                      std::vector<Point> const &prefix)
{
  return PermGroup(std::make_shared<detail::GroupData const>(build(degree, generators, prefix)));
}

std::size_t PermGroup::degree() const { return data_->degree; }
std::vector<Permutation> const &PermGroup::generators() const { return data_->generators; }
std::vector<Permutation> const &PermGroup::strong_generators() const { return data_->strong; }
std::vector<ChainLevel> const &PermGroup::levels() const { return data_->levels; }
StraightLineProgram const &PermGroup::history() const { return data_->history; }
std::vector<std::size_t> const &PermGroup::strong_generator_steps() const
{
  return data_->strong_steps;
}

std::vector<Point> PermGroup::base() const
{
  std::vector<Point> b;
  for (auto const &l : data_->levels)
    b.push_back(l.base);
  return b;
}

BigInt PermGroup::order() const { return data_->order; }
bool PermGroup::is_trivial() const { return data_->strong.empty(); }

PermGroup::Sift PermGroup::sift(Permutation const &p, std::size_t from_level) const
{
  if (p.degree() != degree())
    throw DegreeMismatch("permutation degree " + std::to_string(p.degree()) +
                         " does not match group degree " + std::to_string(degree()));
  return sift_through(data_->levels, p, from_level);
}

bool PermGroup::contains(Permutation const &p) const
{
  auto s = sift(p);
  return s.level == data_->levels.size() && s.residue.is_identity();
}

bool PermGroup::contains(PermGroup const &other) const
{
  if (other.degree() != degree())
    throw DegreeMismatch("groups of different degree");
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [this](Permutation const &g) { return contains(g); });
}

std::vector<Point> PermGroup::orbit(Point x) const
{
  if (x >= degree())
    throw OutOfRange("point " + std::to_string(x + 1) + " out of range");
  std::vector<bool> seen(degree(), false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto const &g : data_->generators) {
      Point y = g[out[i]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

std::vector<std::vector<Point>> PermGroup::orbits() const
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree(), false);
  for (Point x = 0; x < degree(); ++x) {
    if (seen[x])
      continue;
    auto o = orbit(x);
    for (Point y : o)
      seen[y] = true;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

bool PermGroup::is_transitive() const
{
  return degree() == 0 || orbit(0).size() == degree();
}

std::vector<Permutation> PermGroup::elements() const
{
  std::vector<Permutation> out{Permutation(degree())};
  for (auto const &l : data_->levels) {
    std::vector<Permutation> next;
    next.reserve(out.size() * l.reps.size());
    for (auto const &u : l.reps)
      for (auto const &x : out)
        next.push_back(u * x);
    out = std::move(next);
  }
  return out;
}

PermGroup bsgs_build(std::size_t degree, std::vector<Permutation> const &generators)
{
  return PermGroup(degree, generators);
}

bool membership_test(PermGroup const &group, Permutation const &p)
{
  return group.contains(p);
}

BigInt group_order(PermGroup const &group) { return group.order(); }

BigInt subgroup_index(PermGroup const &group, PermGroup const &subgroup)
{
  if (!group.contains(subgroup))
    throw NotASubgroup("subgroup generator not contained in group");
  return group.order() / subgroup.order();
}

std::vector<std::vector<Point>> orbits(PermGroup const &group) { return group.orbits(); }

PermGroup pointwise_stabilizer(PermGroup const &group, std::vector<Point> const &points)
{
  for (Point p : points)
    if (p >= group.degree())
      throw OutOfRange("point " + std::to_string(p + 1) + " out of range");
  auto chain = PermGroup::with_base_prefix(group.degree(), group.strong_generators(), points);
  std::set<Point> distinct(points.begin(), points.end());
  std::vector<Permutation> gens;
  if (distinct.size() < chain.levels().size())
    for (std::size_t idx : chain.levels()[distinct.size()].generators)
      gens.push_back(chain.strong_generators()[idx]);
  return PermGroup(group.degree(), std::move(gens));
}

PermGroup point_stabilizer(PermGroup const &group, Point point)
{
  return pointwise_stabilizer(group, {point});
}

std::vector<Permutation> reduce_generators(PermGroup const &group)
{
  ChainBuilder b(group.degree(), {});
  std::vector<Permutation> kept;
  for (auto const &g : group.generators())
    if (b.add_generator(g))
      kept.push_back(g);
  return kept;
}

PermGroup restrict_action(PermGroup const &group, std::vector<Point> const &delta)
{
  std::vector<Point> pts = delta;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::int64_t> label(group.degree(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] >= group.degree())
      throw OutOfRange("point out of range");
    label[pts[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Permutation> gens;
  for (auto const &g : group.generators()) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto l = label[g[pts[i]]];
      if (l < 0)
        throw InputError("point set is not invariant under the group");
      img[i] = static_cast<Point>(l);
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(pts.size(), std::move(gens));
}

namespace {

std::vector<Point> sorted_points(std::vector<Point> pts, std::size_t degree)
{
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (!pts.empty() && pts.back() >= degree)
    throw OutOfRange("point out of range");
  return pts;
}

}  // namespace

PermGroup alt_group(std::vector<Point> const &points, std::size_t degree)
{
  auto pts = sorted_points(points, degree);
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < pts.size(); ++i)
    gens.push_back(Permutation::from_cycles(degree, {{pts[0], pts[1], pts[i]}}));
  return PermGroup(degree, std::move(gens));
}

PermGroup sym_group(std::vector<Point> const &points, std::size_t degree)
{
  auto pts = sorted_points(points, degree);
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    gens.push_back(Permutation::from_cycles(degree, {{pts[i], pts[i + 1]}}));
  return PermGroup(degree, std::move(gens));
}

PermGroup alt_group(std::size_t degree)
{
  std::vector<Point> all(degree);
  std::iota(all.begin(), all.end(), Point{0});
  return alt_group(all, degree);
}

PermGroup sym_group(std::size_t degree)
{
  std::vector<Point> all(degree);
  std::iota(all.begin(), all.end(), Point{0});
  return sym_group(all, degree);
}

PermGroup even_part(PermGroup const &group)
{
  auto const &gens = group.generators();
  auto odd = std::find_if(gens.begin(), gens.end(),
                          [](Permutation const &g) { return !g.is_even(); });
  if (odd == gens.end())
    return group;
  // Schreier generators for the transversal {1, t}.
  Permutation t = *odd;
  Permutation t_inv = t.inverse();
  std::vector<Permutation> sub;
  for (auto const &g : gens) {
    if (g.is_even()) {
      sub.push_back(g);
      sub.push_back(t * g * t_inv);
    } else {
      sub.push_back(g * t_inv);
      sub.push_back(t * g);
    }
  }
  return PermGroup(group.degree(), reduce_generators(PermGroup(group.degree(), sub)));
}

PermGroup direct_product_on_disjoint_supports(PermGroup const &a, PermGroup const &b)
{
  if (a.degree() != b.degree())
    throw DegreeMismatch("direct product of groups of different degree");
  std::vector<bool> moved(a.degree(), false);
  for (auto const &g : a.generators())
    for (Point x = 0; x < a.degree(); ++x)
      if (g[x] != x)
        moved[x] = true;
  for (auto const &g : b.generators())
    for (Point x = 0; x < b.degree(); ++x)
      if (g[x] != x && moved[x])
        throw InputError("supports of direct factors overlap");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), std::move(gens));
}

PermGroup conjugate_group(PermGroup const &group, Permutation const &g)
{
  Permutation gi = g.inverse();
  std::vector<Permutation> gens;
  for (auto const &x : group.generators())
    gens.push_back(gi * x * g);
  return PermGroup(group.degree(), std::move(gens));
}

}  // namespace homext
