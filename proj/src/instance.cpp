#include <algorithm>
#include <numeric>
#include <sstream>

#include "homext/errors.hpp"
#include "homext/homext.hpp"
#include "homext/presentation.hpp"
#include "homext/subgroup_lattice.hpp"

namespace homext {

namespace {

Permutation first_points(Permutation const &p, std::size_t n)
{
  std::vector<Point> img(p.images().begin(), p.images().begin() + n);
  return Permutation(std::move(img));
}

std::string group_key(PermGroup const &g)
{
  std::ostringstream os;
  os << g.degree() << ':';
  for (auto const &x : g.generators())
    os << x.to_image_string();
  return os.str();
}

BigInt binomial(std::size_t n, std::size_t k)
{
  if (k > n)
    return 0;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i)
    r = r * (n - i) / (i + 1);
  return r;
}

BigInt factorial(std::size_t n)
{
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

}  // namespace

HomomorphismEvaluator::HomomorphismEvaluator(std::size_t source_degree,
                                             std::vector<Permutation> const &sources,
                                             std::size_t target_degree,
                                             std::vector<Permutation> const &images)
    : n_(source_degree), m_(target_degree)
{
  if (sources.size() != images.size())
    throw InputError("generator and image counts differ");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i].degree() != n_ || images[i].degree() != m_)
      throw DegreeMismatch("generator or image has the wrong degree");
    std::vector<Point> img(n_ + m_);
    for (Point x = 0; x < n_; ++x)
      img[x] = sources[i][x];
    for (Point x = 0; x < m_; ++x)
      img[n_ + x] = static_cast<Point>(n_ + images[i][x]);
    gens.emplace_back(std::move(img));
  }
  std::vector<Point> prefix(n_);
  std::iota(prefix.begin(), prefix.end(), Point{0});
  graph_ = PermGroup::with_base_prefix(n_ + m_, gens, prefix);
  // The graph of a homomorphism meets {1} x S_m trivially.
  well_defined_ = graph_.levels().size() <= n_;
}

std::optional<Permutation> HomomorphismEvaluator::image(Permutation const &a) const
{
  if (a.degree() != n_)
    throw DegreeMismatch("element has the wrong degree");
  Permutation h = a;
  Permutation acc(n_ + m_);
  auto const &levels = graph_.levels();
  for (std::size_t l = 0; l < n_ && l < levels.size(); ++l) {
    auto const &lev = levels[l];
    Point p = h[lev.base];
    if (!lev.contains(p))
      return std::nullopt;
    std::size_t k = lev.index_of(p);
    if (k == 0)
      continue;
    h *= first_points(lev.rep_inverses[k], n_);
    acc = lev.reps[k] * acc;
  }
  if (!h.is_identity())
    return std::nullopt;
  std::vector<Point> img(m_);
  for (Point x = 0; x < m_; ++x)
    img[x] = static_cast<Point>(acc[n_ + x] - n_);
  return Permutation(std::move(img));
}

PermGroup HomomorphismEvaluator::preimage_of_stabilizer(Point x) const
{
  auto stab = point_stabilizer(graph_, static_cast<Point>(n_ + x));
  std::vector<Permutation> gens;
  for (auto const &g : stab.generators())
    gens.push_back(first_points(g, n_));
  return PermGroup(n_, std::move(gens));
}

HomExtInstance::HomExtInstance(PermGroup g, std::size_t m,
                               std::vector<std::pair<Permutation, Permutation>> gamma,
                               InstanceOptions options)
    : g_(std::move(g)), m_(m), gamma_(std::move(gamma)), options_(std::move(options)),
      counters_(std::make_shared<Counters>())
{
  std::size_t const n = g_.degree();
  if (m_ == 0)
    throw InputError("target degree must be positive");
  std::vector<Permutation> domain;
  for (auto const &[a, img] : gamma_) {
    if (a.degree() != n)
      throw DegreeMismatch("domain element " + a.to_string() + " is not of degree " +
                           std::to_string(n));
    if (img.degree() != m_)
      throw DegreeMismatch("image " + img.to_string() + " is not of degree " +
                           std::to_string(m_));
    if (!g_.contains(a))
      throw InputError("domain element " + a.to_string() + " is not in G");
    domain.push_back(a);
    images_.push_back(img);
  }
  if (auto bad = first_failing_relator(domain, images_))
    throw InputError("the partial map does not extend to a homomorphism: relator " +
                     std::to_string(*bad + 1) + " of the domain presentation fails");

  m_group_ = PermGroup(n, domain);
  image_group_ = PermGroup(m_, images_);
  psi_ = std::make_shared<HomomorphismEvaluator const>(n, domain, m_, images_);
  if (!options_.cache)
    options_.cache = std::make_shared<ReductionCache>();

  if (options_.mode == Mode::triangular) {
    bool alternating = g_.order() == factorial(n) / 2 &&
                       std::all_of(g_.generators().begin(), g_.generators().end(),
                                   [](Permutation const &x) { return x.is_even(); });
    if (!alternating || n < 3)
      throw InputError("triangular mode needs G = A_n");
    if (options_.enforce_size_bounds) {
      BigInt index = g_.order() / m_group_.order();
      if (index > binomial(n, options_.index_r))
        throw InputError("[G:M] = " + index.str() + " exceeds C(n, " +
                         std::to_string(options_.index_r) + ")");
      // m < 2^(n-1) / sqrt(n)  <=>  4 m^2 n < 2^(2n)
      BigInt lhs = BigInt(4) * m_ * m_ * n;
      if (lhs >= (BigInt(1) << (2 * n)))
        throw InputError("m = " + std::to_string(m_) + " is not below 2^(n-1)/sqrt(n)");
    }
    auto sigma = jordan_liebeck_support(m_group_, (n + 1) / 2);
    if (!sigma)
      throw InputError("M is not between a pointwise and a setwise stabiliser of a small set");
    sigma_ = std::move(*sigma);
  }
}

std::vector<PermGroup> ReductionCache::subgroup_classes(PermGroup const &g,
                                                        std::size_t max_index,
                                                        std::size_t order_cap)
{
  std::string key = group_key(g) + "#" + std::to_string(max_index);
  {
    std::lock_guard lock(mutex_);
    if (auto it = lattices_.find(key); it != lattices_.end())
      return it->second;
  }
  auto reps = SubgroupLattice(g, order_cap).class_representatives(max_index);
  std::lock_guard lock(mutex_);
  return lattices_.emplace(std::move(key), std::move(reps)).first->second;
}

std::vector<ReductionCache::Profile>
ReductionCache::double_coset_profile(PermGroup const &g, PermGroup const &m,
                                     PermGroup const &l, Counters &counters)
{
  std::string key = group_key(g) + "|" + group_key(m) + "|" + group_key(l);
  {
    std::lock_guard lock(mutex_);
    if (auto it = profiles_.find(key); it != profiles_.end())
      return it->second;
  }
  ++counters.double_coset_reps;
  std::size_t bound = index_as_size(g.order() / m.order(), static_cast<std::size_t>(-1));
  std::vector<Profile> out;
  for (auto const &sigma : double_coset_reps(g, l, m))
    out.push_back({sigma, intersect_with_recognizable(conjugate_group(l, sigma),
                                                      membership_oracle(m), bound)});
  std::lock_guard lock(mutex_);
  return profiles_.emplace(std::move(key), std::move(out)).first->second;
}

bool conjugate_in_subgroup(HomExtInstance const &inst, SubgroupClassKey const &a,
                           SubgroupClassKey const &b)
{
  ++inst.counters().conjugacy_tests;
  return conjugacy_test(inst.subgroup(), a.rep, b.rep).has_value();
}

bool conjugate_in_group(HomExtInstance const &inst, SubgroupClassKey const &a,
                        SubgroupClassKey const &b)
{
  ++inst.counters().conjugacy_tests;
  return conjugacy_test(inst.group(), a.rep, b.rep).has_value();
}

}  // namespace homext
