#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homext/homext.hpp"

namespace homext::io {

using json = nlohmann::json;

// {"alternating": true} or {"symmetric": true} or {"generators": ["(1 2)", ...]}
PermGroup parse_group(json const &desc, std::size_t degree);

// Reads {"n", "m", "G", "gamma", "mode"}; `mode` overrides the file when set.
HomExtInstance load_instance(json const &doc, InstanceOptions options,
                             std::optional<Mode> mode = std::nullopt);

json group_json(PermGroup const &g);
json class_multiset_json(Multiset<SubgroupClassKey> const &ms);
json extension_json(PermGroup const &g, Extension const &ext);
// Returns (generators, images) from an extension document.
std::pair<std::vector<Permutation>, std::vector<Permutation>>
parse_extension(json const &doc, std::size_t n, std::size_t m);

BigInt parse_count(json const &value);

// A multiset subset-sum instance with named elements and string equality.
struct ExplicitSsr {
  Multiset<std::string> target;
  std::vector<std::pair<std::string, Multiset<std::string>>> family;
  std::optional<std::map<std::string, BigInt>> rank;
};

ExplicitSsr parse_multissr(json const &doc);

struct ExplicitSsrResult {
  bool triangular = false;  // solved by peeling rather than exhaustive search
  std::vector<Multiset<std::string>> solutions;
};

// Uses tri_solve when ranks are given and every family member has a unique
// rank-minimal element with distinct minima; exhaustive search otherwise.
ExplicitSsrResult solve_multissr(ExplicitSsr const &inst, std::size_t limit, SolveStats *stats);

json string_multiset_json(Multiset<std::string> const &ms);

}  // namespace homext::io
