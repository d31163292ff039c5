#include "homext/group_algorithms.hpp"

#include <algorithm>
#include <limits>

#include "homext/errors.hpp"

namespace homext {

namespace {

std::vector<Permutation> nontrivial_distinct(std::vector<Permutation> const &gens)
{
  std::vector<Permutation> out;
  for (auto const &g : gens)
    if (!g.is_identity() && std::find(out.begin(), out.end(), g) == out.end())
      out.push_back(g);
  return out;
}

void require_subgroup(PermGroup const &ambient, PermGroup const &sub)
{
  if (sub.degree() != ambient.degree())
    throw DegreeMismatch("subgroup degree differs from ambient degree");
  if (!ambient.contains(sub))
    throw NotASubgroup("generator not contained in the ambient group");
}

// Sorted orbit lengths; conjugate subgroups of S_n share them.
std::vector<std::size_t> orbit_profile(PermGroup const &g)
{
  std::vector<std::size_t> lens;
  for (auto const &o : g.orbits())
    lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

}  // namespace

std::size_t index_as_size(BigInt const &index, std::size_t cap)
{
  if (index > cap)
    throw ResourceLimit("index " + index.str() + " exceeds the enumeration cap " +
                        std::to_string(cap));
  return index.convert_to<std::size_t>();
}

MembershipOracle membership_oracle(PermGroup const &group)
{
  return {group.degree(), [group](Permutation const &p) { return group.contains(p); }};
}

CosetRepList subgroup_from_membership(PermGroup const &ambient,
                                      MembershipOracle const &oracle,
                                      std::size_t index_bound)
{
  if (oracle.degree != ambient.degree())
    throw DegreeMismatch("oracle degree differs from ambient degree");
  std::size_t const n = ambient.degree();
  auto moves = nontrivial_distinct(ambient.generators());

  std::vector<Permutation> reps{Permutation(n)};
  std::vector<Permutation> rep_inverses{Permutation(n)};
  std::vector<Permutation> schreier;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (auto const &a : moves) {
      Permutation c = reps[i] * a;
      bool placed = false;
      for (std::size_t q = 0; q < reps.size(); ++q) {
        Permutation s = c * rep_inverses[q];
        if (oracle.test(s)) {
          if (!s.is_identity())
            schreier.push_back(std::move(s));
          placed = true;
          break;
        }
      }
      if (!placed) {
        if (reps.size() >= index_bound)
          throw BoundExceeded("more than " + std::to_string(index_bound) +
                              " cosets found");
        rep_inverses.push_back(c.inverse());
        reps.push_back(std::move(c));
      }
    }
  }
  PermGroup sub(n, reduce_generators(PermGroup(n, std::move(schreier))));
  return {std::move(sub), std::move(reps)};
}

CosetRepList right_coset_reps(PermGroup const &ambient, PermGroup const &sub)
{
  std::size_t idx = index_as_size(subgroup_index(ambient, sub),
                                  std::numeric_limits<std::size_t>::max());
  auto res = subgroup_from_membership(ambient, membership_oracle(sub), idx);
  res.subgroup = sub;
  return res;
}

namespace {

bool conjugates_into(std::vector<Permutation> const &gens, Permutation const &g,
                     PermGroup const &target)
{
  Permutation gi = g.inverse();
  return std::all_of(gens.begin(), gens.end(), [&](Permutation const &s) {
    return target.contains(gi * s * g);
  });
}

}  // namespace

PermGroup normalizer(PermGroup const &ambient, PermGroup const &m)
{
  require_subgroup(ambient, m);
  auto cosets = right_coset_reps(ambient, m);
  std::vector<Permutation> gens = m.generators();
  for (auto const &g : cosets.reps)
    if (!g.is_identity() && conjugates_into(m.generators(), g, m))
      gens.push_back(g);
  return PermGroup(ambient.degree(), reduce_generators(PermGroup(ambient.degree(), gens)));
}

std::optional<Permutation> conjugacy_test(PermGroup const &ambient, PermGroup const &l,
                                          PermGroup const &m)
{
  require_subgroup(ambient, l);
  require_subgroup(ambient, m);
  if (l.order() != m.order() || orbit_profile(l) != orbit_profile(m))
    return std::nullopt;
  if (l.contains(m))
    return Permutation(ambient.degree());

  auto cosets = right_coset_reps(ambient, m);
  auto norm = normalizer(ambient, m);
  std::vector<Permutation> seen;  // one rep per right coset of the normalizer
  for (auto const &g : cosets.reps) {
    bool fresh = std::none_of(seen.begin(), seen.end(), [&](Permutation const &r) {
      return norm.contains(g * r.inverse());
    });
    if (!fresh)
      continue;
    seen.push_back(g);
    if (conjugates_into(m.generators(), g, l))
      return g.inverse();
  }
  return std::nullopt;
}

BigInt conjugate_count(PermGroup const &ambient, PermGroup const &m)
{
  return ambient.order() / normalizer(ambient, m).order();
}

PermGroup intersect_with_recognizable(PermGroup const &a, MembershipOracle const &oracle,
                                      std::size_t index_bound)
{
  return subgroup_from_membership(a, oracle, index_bound).subgroup;
}

namespace {

// h in l*g*m, scanning coset reps of (g^-1 l g) cap m inside g^-1 l g.
bool double_coset_scan(PermGroup const &l, PermGroup const &m, Permutation const &g,
                       Permutation const &h, std::size_t bound)
{
  PermGroup l_star = conjugate_group(l, g);
  Permutation g_star_inv = g.inverse() * h;
  auto cosets = subgroup_from_membership(l_star, membership_oracle(m), bound);
  return std::any_of(cosets.reps.begin(), cosets.reps.end(), [&](Permutation const &r) {
    return m.contains(r * g_star_inv);
  });
}

}  // namespace

bool double_coset_membership(PermGroup const &ambient, PermGroup const &l,
                             PermGroup const &m, Permutation const &g,
                             Permutation const &h)
{
  require_subgroup(ambient, l);
  require_subgroup(ambient, m);
  if (!ambient.contains(g) || !ambient.contains(h))
    throw NotASubgroup("double coset element outside the ambient group");
  auto cap = std::numeric_limits<std::size_t>::max();
  std::size_t s = index_as_size(ambient.order() / m.order(), cap);
  std::size_t t = index_as_size(ambient.order() / l.order(), cap);
  if (t < s)
    return double_coset_scan(m, l, g.inverse(), h.inverse(), t);
  return double_coset_scan(l, m, g, h, s);
}

std::vector<Permutation> double_coset_reps(PermGroup const &ambient, PermGroup const &l,
                                           PermGroup const &m)
{
  require_subgroup(ambient, l);
  require_subgroup(ambient, m);
  // Left cosets x*m, x the inverses of right coset reps of m. l acts on them
  // by left multiplication; each orbit is one double coset.
  auto right = right_coset_reps(ambient, m);
  std::vector<Permutation> cand;
  for (auto const &r : right.reps)
    cand.push_back(r.inverse());
  std::sort(cand.begin(), cand.end());
  std::vector<Permutation> cand_inv;
  for (auto const &x : cand)
    cand_inv.push_back(x.inverse());

  auto moves = nontrivial_distinct(l.generators());
  std::vector<int> orbit_of(cand.size(), -1);
  std::vector<Permutation> reps;
  for (std::size_t start = 0; start < cand.size(); ++start) {
    if (orbit_of[start] >= 0)
      continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(cand[start]);  // candidates are sorted, so this is lex-least
    std::vector<std::size_t> queue{start};
    orbit_of[start] = id;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto const &a : moves) {
        Permutation y = a * cand[queue[q]];
        for (std::size_t j = 0; j < cand.size(); ++j) {
          if (m.contains(cand_inv[j] * y)) {
            if (orbit_of[j] < 0) {
              orbit_of[j] = id;
              queue.push_back(j);
            }
            break;
          }
        }
      }
    }
  }
  return reps;
}

std::optional<Permutation> move_coset(Subcoset const &c, Point i, Point j)
{
  auto const &sigma = c.representative;
  std::size_t n = c.group.degree();
  if (i >= n || j >= n)
    throw OutOfRange("point out of range");
  Point target = sigma.inverse()[j];
  // Orbit of i under the subgroup, with a transversal.
  std::vector<std::optional<Permutation>> via(n);
  via[i] = Permutation(n);
  std::vector<Point> queue{i};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Point x = queue[q];
    if (x == target)
      return *via[x] * sigma;
    for (auto const &g : c.group.generators()) {
      Point y = g[x];
      if (!via[y]) {
        via[y] = *via[x] * g;
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

LexFirstTable::LexFirstTable(PermGroup const &k)
    : chain_([&] {
        std::vector<Point> all(k.degree());
        for (Point x = 0; x < k.degree(); ++x)
          all[x] = x;
        return PermGroup::with_base_prefix(k.degree(), k.generators(), all);
      }())
{
}

Permutation LexFirstTable::operator()(Permutation const &sigma) const
{
  // Level s of the chain has base point s, so its orbit is where the
  // stabiliser of 0..s-1 can send s.
  Permutation tau = sigma;
  for (auto const &lev : chain_.levels()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lev.orbit.size(); ++k)
      if (tau[lev.orbit[k]] < tau[lev.orbit[best]])
        best = k;
    if (best != 0)
      tau = lev.reps[best] * tau;
  }
  return tau;
}

Permutation lex_first(Subcoset const &c)
{
  return LexFirstTable(c.group)(c.representative);
}

CosetRepEnumerator::CosetRepEnumerator(PermGroup const &k, PermGroup const &l)
    : lex_(k), moves_(nontrivial_distinct(reduce_generators(l)))
{
  require_subgroup(l, k);
  Permutation id(k.degree());
  leaders_.insert(id);
  frontier_.push_back(id);
  ready_.push_back(id);
}

std::optional<Permutation> CosetRepEnumerator::next()
{
  while (ready_.empty() && !frontier_.empty()) {
    Permutation r = std::move(frontier_.front());
    frontier_.pop_front();
    ++expanded_;
    for (auto const &s : moves_) {
      Permutation leader = lex_(r * s);
      if (leaders_.insert(leader).second) {
        frontier_.push_back(leader);
        ready_.push_back(std::move(leader));
      }
    }
  }
  if (ready_.empty())
    return std::nullopt;
  Permutation out = std::move(ready_.front());
  ready_.pop_front();
  return out;
}

CosetRepEnumerator enumerate_coset_reps(PermGroup const &k, PermGroup const &l)
{
  return CosetRepEnumerator(k, l);
}

}  // namespace homext
