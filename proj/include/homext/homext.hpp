#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "homext/group_algorithms.hpp"
#include "homext/multissr.hpp"
#include "homext/perm_group.hpp"

namespace homext {

// A subgroup standing for its conjugacy class in some ambient group.
struct SubgroupClassKey {
  PermGroup rep;
};

enum class Mode { triangular, brute };

struct Counters {
  std::atomic<std::uint64_t> conjugacy_tests{0};
  std::atomic<std::uint64_t> f_oracle_calls{0};
  std::atomic<std::uint64_t> tri_oracle_calls{0};
  std::atomic<std::uint64_t> double_coset_reps{0};
  std::atomic<std::uint64_t> coset_bfs_nodes{0};
};

// Memoises the expensive per-(G, M) data of the reduction so that instances
// sharing G and M (differing only in the partial map) can reuse it.
class ReductionCache {
 public:
  struct Profile {
    Permutation sigma;  // double coset representative
    PermGroup meet;     // sigma^-1 L sigma cap M
  };

  std::vector<PermGroup> subgroup_classes(PermGroup const &g, std::size_t max_index,
                                          std::size_t order_cap);
  std::vector<Profile> double_coset_profile(PermGroup const &g, PermGroup const &m,
                                            PermGroup const &l, Counters &counters);

 private:
  std::mutex mutex_;
  std::map<std::string, std::vector<PermGroup>> lattices_;
  std::map<std::string, std::vector<Profile>> profiles_;
};

struct InstanceOptions {
  Mode mode = Mode::brute;
  std::size_t index_r = 2;            // triangular mode: [G:M] <= C(n, r)
  std::size_t brute_order_cap = 5040;  // brute mode: |G| cap
  bool enforce_size_bounds = true;  // triangular mode: index and m bounds
  std::shared_ptr<ReductionCache> cache;
};

// Evaluates a homomorphism given on generators, using the graph of the map as a
// subgroup of S_{n+m} with a base inside the first n points.
class HomomorphismEvaluator {
 public:
  HomomorphismEvaluator(std::size_t source_degree, std::vector<Permutation> const &sources,
                        std::size_t target_degree, std::vector<Permutation> const &images);

  // True when the generator map is a well-defined homomorphism.
  bool well_defined() const { return well_defined_; }
  std::optional<Permutation> image(Permutation const &a) const;
  // Elements of the source group whose image fixes target point x.
  PermGroup preimage_of_stabilizer(Point x) const;

 private:
  std::size_t n_, m_;
  PermGroup graph_;
  bool well_defined_;
};

class HomExtInstance {
 public:
  HomExtInstance(PermGroup g, std::size_t m,
                 std::vector<std::pair<Permutation, Permutation>> gamma,
                 InstanceOptions options = {});

  std::size_t n() const { return g_.degree(); }
  std::size_t m() const { return m_; }
  Mode mode() const { return options_.mode; }
  InstanceOptions const &options() const { return options_; }
  PermGroup const &group() const { return g_; }
  PermGroup const &subgroup() const { return m_group_; }
  std::vector<std::pair<Permutation, Permutation>> const &gamma() const { return gamma_; }
  std::vector<Permutation> const &psi_images() const { return images_; }
  PermGroup const &psi_image_group() const { return image_group_; }
  HomomorphismEvaluator const &psi() const { return *psi_; }
  std::vector<Point> const &sigma() const { return sigma_; }  // triangular mode
  Counters &counters() const { return *counters_; }
  ReductionCache &cache() const { return *options_.cache; }

 private:
  PermGroup g_;
  std::size_t m_;
  std::vector<std::pair<Permutation, Permutation>> gamma_;
  InstanceOptions options_;
  PermGroup m_group_;
  std::vector<Permutation> images_;
  PermGroup image_group_;
  std::shared_ptr<HomomorphismEvaluator const> psi_;
  std::vector<Point> sigma_;
  std::shared_ptr<Counters> counters_;
};

struct Extension {
  std::vector<Permutation> images;  // one per generator of G
  std::optional<Multiset<SubgroupClassKey>> class_data;
};

struct SsrInstance {
  Multiset<SubgroupClassKey> target;
  OracleBundle<SubgroupClassKey, SubgroupClassKey> oracles;
};

PermGroup stabilizer_under_hom(HomExtInstance const &inst, Point x);
Multiset<SubgroupClassKey> compute_target_multiset(HomExtInstance const &inst);
Multiset<SubgroupClassKey> f_oracle(HomExtInstance const &inst, SubgroupClassKey const &l);

// Subgroup classes of G of index at most m (brute mode universe).
std::vector<SubgroupClassKey> index_classes(HomExtInstance const &inst);

bool conjugate_in_subgroup(HomExtInstance const &inst, SubgroupClassKey const &a,
                           SubgroupClassKey const &b);
bool conjugate_in_group(HomExtInstance const &inst, SubgroupClassKey const &a,
                        SubgroupClassKey const &b);

std::optional<std::vector<Point>> jordan_liebeck_support(PermGroup const &k, std::size_t r);
std::optional<SubgroupClassKey> triangle_oracle(HomExtInstance const &inst,
                                                SubgroupClassKey const &k);
bool index_preorder(PermGroup const &ambient, SubgroupClassKey const &a,
                    SubgroupClassKey const &b);

SsrInstance reduce_instance(HomExtInstance const &inst);

std::vector<Multiset<SubgroupClassKey>> solve(HomExtInstance const &inst,
                                              std::size_t limit = static_cast<std::size_t>(-1),
                                              SolveStats *stats = nullptr);

Extension build_extension(HomExtInstance const &inst,
                          Multiset<SubgroupClassKey> const &solution);

// True when the images define a homomorphism of G agreeing with gamma.
bool is_extension(HomExtInstance const &inst, std::vector<Permutation> const &images);
// Same, for images given on an arbitrary generating list of G.
bool is_extension(HomExtInstance const &inst, std::vector<Permutation> const &generators,
                  std::vector<Permutation> const &images);

class ExtensionStream {
 public:
  ExtensionStream(HomExtInstance const &inst, Extension phi);
  std::optional<Extension> next();
  BigInt class_size() const;

 private:
  Extension phi_;
  PermGroup psi_centralizer_;
  PermGroup phi_centralizer_;
  CosetRepEnumerator reps_;
  Counters *counters_;
};

ExtensionStream enumerate_equivalent(HomExtInstance const &inst, Extension const &phi);
BigInt count_extensions(HomExtInstance const &inst);
ThresholdResult<Extension> homext_threshold(HomExtInstance const &inst, std::size_t k);

}  // namespace homext
