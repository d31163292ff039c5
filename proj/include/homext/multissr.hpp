#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "homext/multiset.hpp"

namespace homext {

// Oracles describing a multiset subset-sum instance over a universe U of
// encoded elements and an index set V. tri_oracle returns nullopt for Error.
template <typename U, typename V>
struct OracleBundle {
  std::function<bool(U const &, U const &)> equiv;
  std::function<bool(U const &, U const &)> precedes;
  std::function<Multiset<U>(V const &)> f_oracle;
  std::function<std::optional<V>(U const &)> tri_oracle;
};

struct SolveStats {
  std::size_t iterations = 0;
  std::size_t equiv_calls = 0;
  std::size_t precedes_calls = 0;
  std::size_t f_calls = 0;
  std::size_t tri_calls = 0;
};

// Algorithm for triangular families: peel off the family member whose unique
// minimal element is the current minimum of the target.
template <typename U, typename V>
std::optional<Multiset<V>> tri_solve(Multiset<U> const &k, OracleBundle<U, V> const &oracles,
                                     SolveStats *stats = nullptr)
{
  SolveStats local;
  SolveStats &st = stats ? *stats : local;
  auto eq = [&](U const &a, U const &b) {
    ++st.equiv_calls;
    return oracles.equiv(a, b);
  };
  auto prec = [&](U const &a, U const &b) {
    ++st.precedes_calls;
    return oracles.precedes(a, b);
  };

  Multiset<U> rest = consolidate(std::vector<Multiset<U>>{k}, eq).front();
  Multiset<V> solution;
  while (!rest.empty()) {
    ++st.iterations;
    auto const &entries = rest.entries();
    // Strictly smaller wins; ties keep the earlier support position.
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (prec(entries[i].first, entries[best].first) &&
          !prec(entries[best].first, entries[i].first))
        best = i;
    U const u = entries[best].first;
    BigInt const ku = entries[best].second;

    ++st.tri_calls;
    auto v = oracles.tri_oracle(u);
    if (!v)
      return std::nullopt;
    ++st.f_calls;
    Multiset<U> f = oracles.f_oracle(*v);

    auto idx = detail::index_classes(std::vector<Multiset<U>>{rest, f}, eq);
    // u keeps its class index: rest was consolidated and is indexed first.
    std::size_t ru = best;
    BigInt const fu = idx.counts[1][ru];
    if (fu == 0 || ku % fu != 0)
      return std::nullopt;
    BigInt const m = ku / fu;
    std::vector<BigInt> left = idx.counts[0];
    for (std::size_t r = 0; r < left.size(); ++r) {
      left[r] -= m * idx.counts[1][r];
      if (left[r] < 0)
        return std::nullopt;
    }
    rest = detail::from_counts(idx.reps, left);
    solution.add(*v, m);
  }
  return solution;
}

// Exhaustive search over coefficient vectors, each bounded by
// floor(size(k) / size(family member)); returns at most `limit` solutions.
template <typename U, typename V, typename Eq>
std::vector<Multiset<V>> brute_subsum(Multiset<U> const &k,
                                      std::vector<std::pair<V, Multiset<U>>> const &family,
                                      std::size_t limit, Eq &&eq)
{
  std::vector<Multiset<U>> sets{k};
  for (auto const &member : family)
    sets.push_back(member.second);
  auto idx = detail::index_classes(sets, eq);
  std::size_t const classes = idx.reps.size();
  BigInt const total = k.size();

  std::vector<BigInt> bound(family.size(), 0);
  for (std::size_t v = 0; v < family.size(); ++v) {
    auto const &row = idx.counts[v + 1];
    BigInt sz = 0;
    bool fits = true;
    for (std::size_t r = 0; r < classes; ++r) {
      sz += row[r];
      if (row[r] > idx.counts[0][r])
        fits = false;
    }
    if (sz > 0 && fits)
      bound[v] = total / sz;
  }

  std::vector<Multiset<V>> found;
  std::vector<BigInt> coeff(family.size(), 0);
  std::vector<BigInt> rest = idx.counts[0];

  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (found.size() >= limit)
      return;
    if (v == family.size()) {
      for (auto const &x : rest)
        if (x != 0)
          return;
      Multiset<V> sol;
      for (std::size_t i = 0; i < family.size(); ++i)
        sol.add(family[i].first, coeff[i]);
      found.push_back(std::move(sol));
      return;
    }
    auto const &row = idx.counts[v + 1];
    for (BigInt c = bound[v]; c >= 0; --c) {
      bool ok = true;
      for (std::size_t r = 0; r < classes; ++r)
        if (rest[r] < c * row[r]) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      for (std::size_t r = 0; r < classes; ++r)
        rest[r] -= c * row[r];
      coeff[v] = c;
      dfs(v + 1);
      for (std::size_t r = 0; r < classes; ++r)
        rest[r] += c * row[r];
      if (found.size() >= limit)
        break;
    }
    coeff[v] = 0;
  };
  if (limit > 0)
    dfs(0);
  return found;
}

template <typename T>
struct ThresholdResult {
  bool more = false;  // true: more than k items exist and `items` holds k of them
  std::vector<T> items;

  std::size_t count() const { return items.size(); }
};

template <typename T>
ThresholdResult<T> threshold_enumerate(std::function<std::optional<T>()> const &producer,
                                       std::size_t k)
{
  ThresholdResult<T> res;
  while (true) {
    auto item = producer();
    if (!item)
      return res;
    if (res.items.size() == k) {
      res.more = true;
      return res;
    }
    res.items.push_back(std::move(*item));
  }
}

}  // namespace homext
