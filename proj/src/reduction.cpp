#include "homext/errors.hpp"
#include "homext/homext.hpp"

namespace homext {

PermGroup stabilizer_under_hom(HomExtInstance const &inst, Point x)
{
  if (x >= inst.m())
    throw OutOfRange("point " + std::to_string(x + 1) + " exceeds the target degree");
  return inst.psi().preimage_of_stabilizer(x);
}

Multiset<SubgroupClassKey> compute_target_multiset(HomExtInstance const &inst)
{
  Multiset<SubgroupClassKey> raw;
  for (auto const &orbit : inst.psi_image_group().orbits())
    raw.add({stabilizer_under_hom(inst, orbit.front())}, 1);
  auto eq = [&](SubgroupClassKey const &a, SubgroupClassKey const &b) {
    return conjugate_in_subgroup(inst, a, b);
  };
  return consolidate(std::vector{raw}, eq).front();
}

Multiset<SubgroupClassKey> f_oracle(HomExtInstance const &inst, SubgroupClassKey const &l)
{
  ++inst.counters().f_oracle_calls;
  if (l.rep.degree() != inst.n() || !inst.group().contains(l.rep))
    throw NotASubgroup("f-oracle argument is not a subgroup of G");
  if (subgroup_index(inst.group(), l.rep) > inst.m())
    throw BoundExceeded("f-oracle argument has index above m");
  Multiset<SubgroupClassKey> raw;
  for (auto &profile :
       inst.cache().double_coset_profile(inst.group(), inst.subgroup(), l.rep, inst.counters()))
    raw.add({std::move(profile.meet)}, 1);
  auto eq = [&](SubgroupClassKey const &a, SubgroupClassKey const &b) {
    return conjugate_in_subgroup(inst, a, b);
  };
  return consolidate(std::vector{raw}, eq).front();
}

std::vector<SubgroupClassKey> index_classes(HomExtInstance const &inst)
{
  std::vector<SubgroupClassKey> out;
  for (auto &rep : inst.cache().subgroup_classes(inst.group(), inst.m(),
                                                 inst.options().brute_order_cap))
    out.push_back({std::move(rep)});
  return out;
}

// The returned bundle refers to inst, which must outlive it.
SsrInstance reduce_instance(HomExtInstance const &inst)
{
  SsrInstance out;
  out.target = compute_target_multiset(inst);
  auto const *ip = &inst;
  out.oracles.equiv = [ip](SubgroupClassKey const &a, SubgroupClassKey const &b) {
    return conjugate_in_subgroup(*ip, a, b);
  };
  // Peeling starts from the class of largest index in M.
  out.oracles.precedes = [ip](SubgroupClassKey const &a, SubgroupClassKey const &b) {
    return index_preorder(ip->subgroup(), b, a);
  };
  out.oracles.f_oracle = [ip](SubgroupClassKey const &l) { return f_oracle(*ip, l); };
  if (inst.mode() == Mode::triangular)
    out.oracles.tri_oracle = [ip](SubgroupClassKey const &k) { return triangle_oracle(*ip, k); };
  else
    out.oracles.tri_oracle = [](SubgroupClassKey const &) {
      return std::optional<SubgroupClassKey>{};
    };
  return out;
}

std::vector<Multiset<SubgroupClassKey>> solve(HomExtInstance const &inst, std::size_t limit,
                                              SolveStats *stats)
{
  auto ssr = reduce_instance(inst);
  if (limit == 0)
    return {};
  if (inst.mode() == Mode::triangular) {
    auto sol = tri_solve(ssr.target, ssr.oracles, stats);
    if (!sol)
      return {};
    return {std::move(*sol)};
  }
  std::vector<std::pair<SubgroupClassKey, Multiset<SubgroupClassKey>>> family;
  for (auto &l : index_classes(inst)) {
    if (stats)
      ++stats->f_calls;
    auto f = ssr.oracles.f_oracle(l);
    family.emplace_back(std::move(l), std::move(f));
  }
  return brute_subsum(ssr.target, family, limit, ssr.oracles.equiv);
}

}  // namespace homext
