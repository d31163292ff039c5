#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>

#include "homext/multissr.hpp"

using namespace homext;
using Ms = Multiset<std::string>;

namespace {

auto const same = [](std::string const &a, std::string const &b) { return a == b; };

// a ~ b when they agree after dropping a trailing prime.
auto const prime_blind = [](std::string const &a, std::string const &b) {
  auto strip = [](std::string s) {
    if (!s.empty() && s.back() == '\'')
      s.pop_back();
    return s;
  };
  return strip(a) == strip(b);
};

std::map<std::string, BigInt> as_map(Ms const &ms)
{
  std::map<std::string, BigInt> out;
  for (auto const &[k, v] : ms.entries())
    out[k] += v;
  return out;
}

OracleBundle<std::string, std::string> explicit_bundle(
    std::vector<std::pair<std::string, Ms>> const &family, std::map<std::string, int> const &rank)
{
  OracleBundle<std::string, std::string> b;
  b.equiv = same;
  b.precedes = [rank](std::string const &x, std::string const &y) {
    return rank.at(x) <= rank.at(y);
  };
  b.f_oracle = [family](std::string const &v) {
    for (auto const &[idx, ms] : family)
      if (idx == v)
        return ms;
    return Ms{};
  };
  std::map<std::string, std::string> inv;
  for (auto const &[idx, ms] : family) {
    auto best = ms.entries().front().first;
    for (auto const &[u, c] : ms.entries())
      if (rank.at(u) < rank.at(best))
        best = u;
    inv[best] = idx;
  }
  b.tri_oracle = [inv](std::string const &u) -> std::optional<std::string> {
    auto it = inv.find(u);
    if (it == inv.end())
      return std::nullopt;
    return it->second;
  };
  return b;
}

}  // namespace

TEST_CASE("multiset basics")
{
  Ms a{{"x", 2}, {"y", 1}};
  CHECK(a.size() == 3);
  CHECK(a.support_size() == 2);
  a.add("x", 0);
  CHECK(a.support_size() == 2);
  a.add("x", 1);
  CHECK(a.multiplicity("x", same) == 3);
  CHECK_THROWS(a.add("z", -1));
}

TEST_CASE("consolidate")
{
  auto r = consolidate(std::vector{Ms{{"a", 1}, {"a'", 2}}}, prime_blind);
  CHECK(as_map(r[0]) == std::map<std::string, BigInt>{{"a", 3}});
  auto r2 = consolidate(std::vector{Ms{{"a", 1}}, Ms{{"a'", 1}}}, prime_blind);
  CHECK(as_map(r2[0]) == std::map<std::string, BigInt>{{"a", 1}});
  CHECK(as_map(r2[1]) == std::map<std::string, BigInt>{{"a", 1}});
  auto r3 = consolidate(std::vector{Ms{{"a", 1}, {"b", 4}}}, same);
  CHECK(as_map(r3[0]) == as_map(Ms{{"a", 1}, {"b", 4}}));
}

TEST_CASE("consolidate is insensitive to support order")
{
  Ms one{{"a", 1}, {"b'", 2}, {"a'", 3}, {"b", 1}};
  Ms two{{"b", 1}, {"a'", 3}, {"b'", 2}, {"a", 1}};
  auto x = consolidate(std::vector{one}, prime_blind).front();
  auto y = consolidate(std::vector{two}, prime_blind).front();
  CHECK(x.support_size() == 2);
  CHECK(y.support_size() == 2);
  CHECK(x.multiplicity("a", prime_blind) == y.multiplicity("a", prime_blind));
  CHECK(x.multiplicity("b", prime_blind) == y.multiplicity("b", prime_blind));
}

TEST_CASE("remove")
{
  auto r = remove(Ms{{"u", 3}}, Ms{{"u", 1}}, 2, same);
  REQUIRE(r);
  CHECK(as_map(*r) == std::map<std::string, BigInt>{{"u", 1}});
  CHECK_FALSE(remove(Ms{{"u", 3}}, Ms{{"u", 1}}, 4, same));
  auto r2 = remove(Ms{{"u", 2}, {"w", 1}}, Ms{{"u", 1}, {"w", 1}}, 1, same);
  REQUIRE(r2);
  CHECK(as_map(*r2) == std::map<std::string, BigInt>{{"u", 1}});
}

TEST_CASE("tri_solve examples")
{
  std::vector<std::pair<std::string, Ms>> family{{"v1", Ms{{"u1", 1}, {"u2", 1}}},
                                                 {"v2", Ms{{"u2", 1}}}};
  auto b = explicit_bundle(family, {{"u1", 0}, {"u2", 1}});
  CHECK(tri_solve(Ms{}, b)->empty());
  auto sol = tri_solve(Ms{{"u1", 2}, {"u2", 3}}, b);
  REQUIRE(sol);
  CHECK(as_map(*sol) == std::map<std::string, BigInt>{{"v1", 2}, {"v2", 1}});

  std::vector<std::pair<std::string, Ms>> only{{"v1", Ms{{"u1", 1}, {"u2", 2}}}};
  CHECK_FALSE(tri_solve(Ms{{"u2", 1}, {"u1", 1}}, explicit_bundle(only, {{"u1", 0}, {"u2", 1}})));
}

TEST_CASE("tri_solve reports non-integral quotients")
{
  std::vector<std::pair<std::string, Ms>> family{{"v", Ms{{"u", 2}}}};
  CHECK_FALSE(tri_solve(Ms{{"u", 3}}, explicit_bundle(family, {{"u", 0}})));
}

TEST_CASE("brute_subsum examples")
{
  std::vector<std::pair<std::string, Ms>> family{{"a", Ms{{"u", 1}}}, {"b", Ms{{"u", 2}}}};
  auto sols = brute_subsum(Ms{{"u", 2}}, family, 10, same);
  REQUIRE(sols.size() == 2);
  CHECK(as_map(sols[0]) == std::map<std::string, BigInt>{{"a", 2}});
  CHECK(as_map(sols[1]) == std::map<std::string, BigInt>{{"b", 1}});
  auto empty = brute_subsum(Ms{}, family, 10, same);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());
  std::vector<std::pair<std::string, Ms>> unrelated{{"a", Ms{{"w", 1}}}};
  CHECK(brute_subsum(Ms{{"u", 1}}, unrelated, 10, same).empty());
  CHECK(brute_subsum(Ms{{"u", 2}}, family, 1, same).size() == 1);
}

TEST_CASE("threshold_enumerate")
{
  auto stream = [](int total) {
    return [total, i = 0]() mutable -> std::optional<int> {
      if (i == total)
        return std::nullopt;
      return i++;
    };
  };
  auto r = threshold_enumerate<int>(stream(2), 3);
  CHECK_FALSE(r.more);
  CHECK(r.items == std::vector{0, 1});
  auto r2 = threshold_enumerate<int>(stream(5), 2);
  CHECK(r2.more);
  CHECK(r2.items.size() == 2);
  CHECK(threshold_enumerate<int>(stream(0), 0).count() == 0);
  CHECK(threshold_enumerate<int>(stream(4), 0).more);

  int pulled = 0;
  std::function<std::optional<int>()> counting = [&]() -> std::optional<int> { return pulled++; };
  threshold_enumerate(counting, 3);
  CHECK(pulled == 4);
}

TEST_CASE("random triangular instances: tri_solve matches exhaustive search")
{
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int universe = 1 + rng() % 12;
    int members = 1 + rng() % std::min(8, universe);
    std::map<std::string, int> rank;
    std::vector<std::string> names;
    for (int u = 0; u < universe; ++u) {
      names.push_back("u" + std::to_string(u));
      rank[names.back()] = u;
    }
    std::vector<int> minima(universe);
    std::iota(minima.begin(), minima.end(), 0);
    std::shuffle(minima.begin(), minima.end(), rng);
    std::vector<std::pair<std::string, Ms>> family;
    for (int v = 0; v < members; ++v) {
      Ms f;
      f.add(names[minima[v]], 1 + rng() % 6);
      for (int u = minima[v] + 1; u < universe; ++u)
        if (rng() % 3 == 0)
          f.add(names[u], 1 + rng() % 6);
      family.emplace_back("v" + std::to_string(v), f);
    }
    Ms target;
    if (rng() % 2) {
      for (auto const &[idx, f] : family) {
        BigInt c = rng() % 3;
        for (auto const &[u, mult] : f.entries())
          target.add(u, c * mult);
      }
    } else {
      for (int u = 0; u < universe; ++u)
        if (rng() % 2)
          target.add(names[u], 1 + rng() % 6);
    }
    auto brute = brute_subsum(target, family, 5, same);
    SolveStats stats;
    auto tri = tri_solve(target, explicit_bundle(family, rank), &stats);
    CHECK(brute.size() <= 1);
    CHECK(tri.has_value() == !brute.empty());
    if (tri && !brute.empty())
      CHECK(as_map(*tri) == as_map(brute.front()));
    CHECK(stats.iterations <= target.support_size());
  }
}

TEST_CASE("tri_solve solutions satisfy the defining equation")
{
  std::vector<std::pair<std::string, Ms>> family{{"v1", Ms{{"a", 2}, {"b", 1}, {"c", 1}}},
                                                 {"v2", Ms{{"b", 3}}},
                                                 {"v3", Ms{{"c", 2}}}};
  auto bundle = explicit_bundle(family, {{"a", 0}, {"b", 1}, {"c", 2}});
  Ms target{{"a", 4}, {"b", 5}, {"c", 6}};
  auto sol = tri_solve(target, bundle);
  REQUIRE(sol);
  Ms sum;
  for (auto const &[v, c] : sol->entries()) {
    Ms f = bundle.f_oracle(v);
    for (auto const &[u, mult] : f.entries())
      sum.add(u, c * mult);
  }
  CHECK(as_map(sum) == as_map(target));
}
