#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>

#include "homext/errors.hpp"
#include "homext/homext.hpp"

namespace homext {

namespace {

bool contains_alt_of_complement(PermGroup const &k, std::vector<bool> const &in_gamma)
{
  std::vector<Point> rest;
  for (Point x = 0; x < k.degree(); ++x)
    if (!in_gamma[x])
      rest.push_back(x);
  for (std::size_t i = 2; i < rest.size(); ++i)
    if (!k.contains(Permutation::from_cycles(k.degree(), {{rest[0], rest[1], rest[i]}})))
      return false;
  return true;
}

bool same_group(PermGroup const &a, PermGroup const &b)
{
  return a.order() == b.order() && a.contains(b);
}

// Generators of k acting on the invariant set pts only, fixing everything else.
PermGroup restricted_in_place(PermGroup const &k, std::vector<Point> const &pts)
{
  std::vector<bool> in(k.degree(), false);
  for (Point x : pts)
    in[x] = true;
  std::vector<Permutation> gens;
  for (auto const &g : k.generators()) {
    std::vector<Point> img(k.degree());
    std::iota(img.begin(), img.end(), Point{0});
    for (Point x : pts)
      img[x] = g[x];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(k.degree(), std::move(gens));
}

// True when k^{sub} equals target under some bijection sub -> (points of target).
bool equivalent_restriction(PermGroup const &k, std::vector<Point> const &sub,
                            PermGroup const &target)
{
  if (sub.empty())
    return true;
  auto ks = restrict_action(k, sub);
  if (ks.order() != target.order())
    return false;
  std::vector<Point> pi(sub.size());
  std::iota(pi.begin(), pi.end(), Point{0});
  do {
    if (same_group(conjugate_group(ks, Permutation(pi)), target))
      return true;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return false;
}

bool is_invariant(PermGroup const &k, std::vector<Point> const &pts)
{
  std::vector<bool> in(k.degree(), false);
  for (Point x : pts)
    in[x] = true;
  for (auto const &g : k.generators())
    for (Point x : pts)
      if (!in[g[x]])
        return false;
  return true;
}

}  // namespace

std::optional<std::vector<Point>> jordan_liebeck_support(PermGroup const &k, std::size_t r)
{
  std::vector<std::vector<Point>> small;
  for (auto &o : k.orbits())
    if (o.size() < r)
      small.push_back(std::move(o));

  // Unions of small orbits in order of total size, then lexicographically.
  std::optional<std::vector<Point>> best;
  std::vector<std::size_t> chosen;
  std::vector<bool> in_gamma(k.degree(), false);
  std::size_t total = 0;
  auto better = [&](std::vector<Point> const &cand) {
    return !best || cand.size() < best->size() ||
           (cand.size() == best->size() && cand < *best);
  };
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    std::vector<Point> cand;
    for (Point x = 0; x < k.degree(); ++x)
      if (in_gamma[x])
        cand.push_back(x);
    if (better(cand) && contains_alt_of_complement(k, in_gamma))
      best = cand;
    for (std::size_t i = from; i < small.size(); ++i) {
      if (total + small[i].size() >= r)
        continue;
      if (best && total + small[i].size() > best->size())
        continue;
      for (Point x : small[i])
        in_gamma[x] = true;
      total += small[i].size();
      dfs(i + 1);
      total -= small[i].size();
      for (Point x : small[i])
        in_gamma[x] = false;
    }
  };
  if (r > 0)
    dfs(0);
  return best;
}

std::optional<SubgroupClassKey> triangle_oracle(HomExtInstance const &inst,
                                                SubgroupClassKey const &k)
{
  ++inst.counters().tri_oracle_calls;
  std::size_t const n = inst.n();
  auto gamma = jordan_liebeck_support(k.rep, (n + 1) / 2);
  if (!gamma)
    return std::nullopt;

  auto const &sigma = inst.sigma();
  PermGroup const m_sigma = restrict_action(inst.subgroup(), sigma);

  // Candidate Sigma_0: Sigma itself first, then other invariant subsets of Gamma.
  std::optional<std::vector<Point>> sigma0;
  bool sigma_inside = std::includes(gamma->begin(), gamma->end(), sigma.begin(), sigma.end());
  if (sigma_inside && equivalent_restriction(k.rep, sigma, m_sigma))
    sigma0 = sigma;
  if (!sigma0 && sigma.size() <= gamma->size()) {
    std::vector<bool> mask(gamma->size(), false);
    std::fill(mask.begin(), mask.begin() + sigma.size(), true);
    do {
      std::vector<Point> sub;
      for (std::size_t i = 0; i < gamma->size(); ++i)
        if (mask[i])
          sub.push_back((*gamma)[i]);
      if (is_invariant(k.rep, sub) && equivalent_restriction(k.rep, sub, m_sigma)) {
        sigma0 = std::move(sub);
        break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  if (!sigma0)
    return std::nullopt;

  std::vector<Point> gamma_bar;
  std::set_difference(gamma->begin(), gamma->end(), sigma0->begin(), sigma0->end(),
                      std::back_inserter(gamma_bar));
  std::vector<bool> in_bar(n, false);
  for (Point x : gamma_bar)
    in_bar[x] = true;
  std::vector<Point> complement;
  for (Point x = 0; x < n; ++x)
    if (!in_bar[x])
      complement.push_back(x);

  PermGroup k_bar = restricted_in_place(k.rep, gamma_bar);
  bool even = std::all_of(k_bar.generators().begin(), k_bar.generators().end(),
                          [](Permutation const &g) { return g.is_even(); });
  PermGroup l = even ? direct_product_on_disjoint_supports(alt_group(complement, n), k_bar)
                     : even_part(direct_product_on_disjoint_supports(sym_group(complement, n), k_bar));
  // Classes of index above m are outside the index universe.
  if (subgroup_index(inst.group(), l) > inst.m())
    return std::nullopt;
  return SubgroupClassKey{std::move(l)};
}

bool index_preorder(PermGroup const &ambient, SubgroupClassKey const &a,
                    SubgroupClassKey const &b)
{
  if (a.rep.degree() != ambient.degree() || b.rep.degree() != ambient.degree())
    throw DegreeMismatch("class keys are not over the ambient group");
  return a.rep.order() >= b.rep.order();
}

}  // namespace homext
