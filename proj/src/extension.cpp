#include <deque>
#include <map>

#include "homext/errors.hpp"
#include "homext/homext.hpp"
#include "homext/presentation.hpp"

namespace homext {

namespace {

struct PoolEntry {
  std::size_t copy;
  Permutation sigma;
  PermGroup meet;
  bool used = false;
};

// For each point y of the orbit of root, an element a_y of M with root^psi(a_y) = y.
std::map<Point, Permutation> orbit_transversal(HomExtInstance const &inst, Point root)
{
  auto const &gamma = inst.gamma();
  auto const &images = inst.psi_images();
  std::map<Point, Permutation> out;
  out.emplace(root, Permutation(inst.n()));
  std::deque<Point> queue{root};
  while (!queue.empty()) {
    Point y = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < images.size(); ++j) {
      Point z = images[j][y];
      if (!out.count(z)) {
        out.emplace(z, out.at(y) * gamma[j].first);
        queue.push_back(z);
      }
    }
  }
  return out;
}

}  // namespace

Extension build_extension(HomExtInstance const &inst, Multiset<SubgroupClassKey> const &solution)
{
  PermGroup const &g = inst.group();
  PermGroup const &m = inst.subgroup();
  std::size_t const deg = inst.m();

  // One copy of L\G per unit of multiplicity, split into its M-orbits.
  std::vector<PermGroup> copies;
  std::vector<PoolEntry> pool;
  for (auto const &[key, mult] : solution.entries()) {
    auto profile = inst.cache().double_coset_profile(g, m, key.rep, inst.counters());
    for (BigInt c = 0; c < mult; ++c) {
      if (copies.size() >= deg)
        throw InconsistentSolution("solution has more orbits than points");
      for (auto const &p : profile)
        pool.push_back({copies.size(), p.sigma, p.meet});
      copies.push_back(key.rep);
    }
  }

  std::vector<std::size_t> copy_of(deg);
  std::vector<Permutation> coset_of(deg, Permutation(inst.n()));
  std::vector<bool> covered(deg, false);
  for (auto const &orbit : inst.psi_image_group().orbits()) {
    Point root = orbit.front();
    PermGroup k = stabilizer_under_hom(inst, root);
    std::optional<Permutation> mu;
    auto entry = pool.begin();
    for (; entry != pool.end(); ++entry) {
      if (entry->used)
        continue;
      ++inst.counters().conjugacy_tests;
      if ((mu = conjugacy_test(m, entry->meet, k)))
        break;
    }
    if (entry == pool.end())
      throw InconsistentSolution("no double coset matches the orbit of point " +
                                 std::to_string(root + 1));
    entry->used = true;
    Permutation base = entry->sigma * *mu;
    for (auto const &[y, a] : orbit_transversal(inst, root)) {
      copy_of[y] = entry->copy;
      coset_of[y] = base * a;
      covered[y] = true;
    }
  }
  for (auto const &e : pool)
    if (!e.used)
      throw InconsistentSolution("solution has unmatched double cosets");

  // Points are labelled by the canonical leader of their coset in each copy.
  std::vector<LexFirstTable> leaders;
  std::vector<std::map<Permutation, Point>> point_of(copies.size());
  for (auto const &l : copies)
    leaders.emplace_back(l);
  for (Point y = 0; y < deg; ++y)
    point_of[copy_of[y]].emplace(leaders[copy_of[y]](coset_of[y]), y);

  Extension ext;
  for (auto const &gen : g.generators()) {
    std::vector<Point> img(deg);
    for (Point y = 0; y < deg; ++y) {
      auto c = copy_of[y];
      auto it = point_of[c].find(leaders[c](coset_of[y] * gen));
      if (it == point_of[c].end())
        throw InconsistentSolution("coset action leaves the labelled points");
      img[y] = it->second;
    }
    ext.images.emplace_back(std::move(img));
  }
  if (!is_extension(inst, ext.images))
    throw InconsistentSolution("constructed action does not extend the partial map");
  ext.class_data = solution;
  return ext;
}

bool is_extension(HomExtInstance const &inst, std::vector<Permutation> const &images)
{
  return is_extension(inst, inst.group().generators(), images);
}

bool is_extension(HomExtInstance const &inst, std::vector<Permutation> const &gens,
                  std::vector<Permutation> const &images)
{
  for (auto const &x : gens)
    if (x.degree() != inst.n() || !inst.group().contains(x))
      return false;
  if (PermGroup(inst.n(), gens).order() != inst.group().order())
    return false;
  if (images.size() != gens.size())
    return false;
  for (auto const &x : images)
    if (x.degree() != inst.m())
      return false;
  if (!verify_partial_hom(gens, images))
    return false;
  HomomorphismEvaluator phi(inst.n(), gens, inst.m(), images);
  for (auto const &[a, b] : inst.gamma())
    if (phi.image(a) != b)
      return false;
  return true;
}

ExtensionStream::ExtensionStream(HomExtInstance const &inst, Extension phi)
    : phi_(std::move(phi)),
      psi_centralizer_(centralizer_in_sym(inst.psi_image_group())),
      phi_centralizer_(centralizer_in_sym(PermGroup(inst.m(), phi_.images))),
      reps_(phi_centralizer_, psi_centralizer_),
      counters_(&inst.counters())
{
}

std::optional<Extension> ExtensionStream::next()
{
  auto before = reps_.nodes_expanded();
  auto lambda = reps_.next();
  counters_->coset_bfs_nodes += reps_.nodes_expanded() - before;
  if (!lambda)
    return std::nullopt;
  Extension out;
  out.class_data = phi_.class_data;
  for (auto const &x : phi_.images)
    out.images.push_back(x.conjugate_by(*lambda));
  return out;
}

BigInt ExtensionStream::class_size() const
{
  return psi_centralizer_.order() / phi_centralizer_.order();
}

ExtensionStream enumerate_equivalent(HomExtInstance const &inst, Extension const &phi)
{
  return ExtensionStream(inst, phi);
}

BigInt count_extensions(HomExtInstance const &inst)
{
  BigInt total = 0;
  for (auto const &sol : solve(inst))
    total += enumerate_equivalent(inst, build_extension(inst, sol)).class_size();
  return total;
}

ThresholdResult<Extension> homext_threshold(HomExtInstance const &inst, std::size_t k)
{
  auto solutions = solve(inst, k + 1);
  std::size_t next_solution = 0;
  std::optional<ExtensionStream> stream;
  std::function<std::optional<Extension>()> producer = [&]() -> std::optional<Extension> {
    while (true) {
      if (stream)
        if (auto e = stream->next())
          return e;
      if (next_solution == solutions.size())
        return std::nullopt;
      stream.emplace(inst, build_extension(inst, solutions[next_solution++]));
    }
  };
  return threshold_enumerate(producer, k);
}

}  // namespace homext
