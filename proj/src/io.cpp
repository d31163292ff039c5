#include "homext/io.hpp"

#include <limits>
#include <set>

#include "homext/errors.hpp"

namespace homext::io {

namespace {

json big_json(BigInt const &x)
{
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max())
    return x.convert_to<std::uint64_t>();
  return x.str();
}

Multiset<std::string> named_multiset(json const &obj, std::string const &what)
{
  if (!obj.is_object())
    throw InputError(what + " must be an object of multiplicities");
  Multiset<std::string> out;
  for (auto const &[name, mult] : obj.items())
    out.add(name, parse_count(mult));
  return out;
}

std::size_t require_size(json const &doc, char const *field)
{
  if (!doc.contains(field) || !doc[field].is_number_unsigned())
    throw InputError(std::string("missing or invalid \"") + field + "\"");
  return doc[field].get<std::size_t>();
}

}  // namespace

BigInt parse_count(json const &value)
{
  if (value.is_number_unsigned())
    return BigInt(value.get<std::uint64_t>());
  if (value.is_string()) {
    auto const &s = value.get_ref<std::string const &>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("invalid multiplicity \"" + s + "\"");
    return BigInt(s);
  }
  throw InputError("multiplicity must be a non-negative integer");
}

PermGroup parse_group(json const &desc, std::size_t degree)
{
  if (!desc.is_object())
    throw InputError("\"G\" must be an object");
  if (desc.value("alternating", false))
    return alt_group(degree);
  if (desc.value("symmetric", false))
    return sym_group(degree);
  if (!desc.contains("generators") || !desc["generators"].is_array())
    throw InputError("\"G\" needs \"generators\", \"alternating\" or \"symmetric\"");
  std::vector<Permutation> gens;
  for (auto const &g : desc["generators"])
    gens.push_back(Permutation::parse(g.get<std::string>(), degree));
  return PermGroup(degree, std::move(gens));
}

HomExtInstance load_instance(json const &doc, InstanceOptions options, std::optional<Mode> mode)
{
  std::size_t n = require_size(doc, "n");
  std::size_t m = require_size(doc, "m");
  if (!doc.contains("G"))
    throw InputError("missing \"G\"");
  PermGroup g = parse_group(doc["G"], n);

  std::vector<std::pair<Permutation, Permutation>> gamma;
  for (auto const &entry : doc.value("gamma", json::array())) {
    if (!entry.contains("g") || !entry.contains("image"))
      throw InputError("each gamma entry needs \"g\" and \"image\"");
    gamma.emplace_back(Permutation::parse(entry["g"].get<std::string>(), n),
                       Permutation::parse(entry["image"].get<std::string>(), m));
  }

  if (mode)
    options.mode = *mode;
  else if (doc.contains("mode")) {
    auto text = doc["mode"].get<std::string>();
    if (text == "triangular")
      options.mode = Mode::triangular;
    else if (text == "brute")
      options.mode = Mode::brute;
    else
      throw InputError("unknown mode \"" + text + "\"");
  }
  return HomExtInstance(std::move(g), m, std::move(gamma), std::move(options));
}

json group_json(PermGroup const &g)
{
  json gens = json::array();
  for (auto const &x : reduce_generators(g))
    gens.push_back(x.to_string());
  return {{"generators", gens}, {"order", big_json(g.order())}};
}

json class_multiset_json(Multiset<SubgroupClassKey> const &ms)
{
  json out = json::array();
  for (auto const &[key, mult] : ms.entries()) {
    json entry = group_json(key.rep);
    entry["multiplicity"] = big_json(mult);
    out.push_back(std::move(entry));
  }
  return out;
}

json extension_json(PermGroup const &g, Extension const &ext)
{
  json gens = json::array();
  json imgs = json::array();
  for (auto const &x : g.generators())
    gens.push_back(x.to_string());
  for (auto const &x : ext.images)
    imgs.push_back(x.to_string());
  return {{"generators", gens}, {"images", imgs}};
}

std::pair<std::vector<Permutation>, std::vector<Permutation>>
parse_extension(json const &doc, std::size_t n, std::size_t m)
{
  if (!doc.contains("generators") || !doc.contains("images"))
    throw InputError("an extension needs \"generators\" and \"images\"");
  std::pair<std::vector<Permutation>, std::vector<Permutation>> out;
  for (auto const &x : doc["generators"])
    out.first.push_back(Permutation::parse(x.get<std::string>(), n));
  for (auto const &x : doc["images"])
    out.second.push_back(Permutation::parse(x.get<std::string>(), m));
  if (out.first.size() != out.second.size())
    throw InputError("generator and image lists differ in length");
  return out;
}

ExplicitSsr parse_multissr(json const &doc)
{
  ExplicitSsr out;
  out.target = named_multiset(doc.value("target", json::object()), "\"target\"");
  auto family = doc.value("family", json::object());
  if (!family.is_object())
    throw InputError("\"family\" must be an object");
  for (auto const &[index, member] : family.items())
    out.family.emplace_back(index, named_multiset(member, "family member \"" + index + "\""));
  if (doc.contains("rank")) {
    std::map<std::string, BigInt> rank;
    for (auto const &[name, r] : doc["rank"].items())
      rank.emplace(name, parse_count(r));
    out.rank = std::move(rank);
  }
  return out;
}

ExplicitSsrResult solve_multissr(ExplicitSsr const &inst, std::size_t limit, SolveStats *stats)
{
  auto eq = [](std::string const &a, std::string const &b) { return a == b; };
  ExplicitSsrResult result;

  std::map<std::string, std::string> tau_inverse;
  bool triangular = inst.rank.has_value();
  auto rank_of = [&](std::string const &u) -> BigInt {
    auto it = inst.rank->find(u);
    if (it == inst.rank->end())
      throw InputError("element \"" + u + "\" has no rank");
    return it->second;
  };
  if (triangular) {
    for (auto const &[index, member] : inst.family) {
      std::optional<std::string> least;
      bool unique = false;
      for (auto const &[u, mult] : member.entries()) {
        if (!least || rank_of(u) < rank_of(*least)) {
          least = u;
          unique = true;
        } else if (rank_of(u) == rank_of(*least)) {
          unique = false;
        }
      }
      if (!least || !unique || !tau_inverse.emplace(*least, index).second) {
        triangular = false;
        break;
      }
    }
  }

  if (!triangular) {
    result.solutions = brute_subsum(inst.target, inst.family, limit, eq);
    return result;
  }
  result.triangular = true;
  if (limit == 0)
    return result;
  OracleBundle<std::string, std::string> oracles;
  oracles.equiv = eq;
  oracles.precedes = [&](std::string const &a, std::string const &b) {
    return rank_of(a) <= rank_of(b);
  };
  oracles.f_oracle = [&](std::string const &v) {
    for (auto const &[index, member] : inst.family)
      if (index == v)
        return member;
    throw InputError("unknown family index \"" + v + "\"");
  };
  oracles.tri_oracle = [&](std::string const &u) -> std::optional<std::string> {
    auto it = tau_inverse.find(u);
    if (it == tau_inverse.end())
      return std::nullopt;
    return it->second;
  };
  if (auto sol = tri_solve(inst.target, oracles, stats))
    result.solutions.push_back(std::move(*sol));
  return result;
}

json string_multiset_json(Multiset<std::string> const &ms)
{
  json out = json::object();
  for (auto const &[name, mult] : ms.entries())
    out[name] = big_json(mult);
  return out;
}

}  // namespace homext::io
