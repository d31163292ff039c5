#pragma once

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "homext/bigint.hpp"

namespace homext {

// A finite multiset over opaque keys. Keys may have several encodings of one
// element; entries are only merged by consolidate() under a caller-supplied
// equivalence (or by == when the key type provides it).
template <typename Key>
class Multiset {
 public:
  using Entry = std::pair<Key, BigInt>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> entries)
  {
    for (auto const &e : entries)
      add(e.first, e.second);
  }

  void add(Key key, BigInt const &mult)
  {
    if (mult < 0)
      throw std::invalid_argument("negative multiplicity");
    if (mult == 0)
      return;
    if constexpr (std::equality_comparable<Key>) {
      for (auto &e : entries_)
        if (e.first == key) {
          e.second += mult;
          return;
        }
    }
    entries_.emplace_back(std::move(key), mult);
  }

  std::vector<Entry> const &entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  BigInt size() const
  {
    BigInt s = 0;
    for (auto const &e : entries_)
      s += e.second;
    return s;
  }

  template <typename Eq>
  BigInt multiplicity(Key const &key, Eq &&eq) const
  {
    BigInt s = 0;
    for (auto const &e : entries_)
      if (eq(e.first, key))
        s += e.second;
    return s;
  }

 private:
  std::vector<Entry> entries_;
};

namespace detail {

// Multisets rewritten over one shared list of class representatives.
template <typename Key>
struct Indexed {
  std::vector<Key> reps;
  std::vector<std::vector<BigInt>> counts;  // counts[i][r]: multiset i, class r
};

template <typename Key, typename Eq>
Indexed<Key> index_classes(std::vector<Multiset<Key>> const &sets, Eq &&eq)
{
  Indexed<Key> out;
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> sparse;
  for (auto const &ms : sets) {
    auto &row = sparse.emplace_back();
    for (auto const &[key, mult] : ms.entries()) {
      std::size_t r = 0;
      while (r < out.reps.size() && !eq(out.reps[r], key))
        ++r;
      if (r == out.reps.size())
        out.reps.push_back(key);
      row.emplace_back(r, mult);
    }
  }
  for (auto const &row : sparse) {
    auto &dense = out.counts.emplace_back(out.reps.size(), BigInt(0));
    for (auto const &[r, mult] : row)
      dense[r] += mult;
  }
  return out;
}

template <typename Key>
Multiset<Key> from_counts(std::vector<Key> const &reps, std::vector<BigInt> const &counts)
{
  Multiset<Key> ms;
  for (std::size_t r = 0; r < reps.size(); ++r)
    if (counts[r] > 0)
      ms.add(reps[r], counts[r]);
  return ms;
}

}  // namespace detail

// Rewrites the multisets so that each equivalence class across all of them is
// carried by one key: the first one met in input order.
template <typename Key, typename Eq>
std::vector<Multiset<Key>> consolidate(std::vector<Multiset<Key>> const &sets, Eq &&eq)
{
  auto idx = detail::index_classes(sets, eq);
  std::vector<Multiset<Key>> out;
  for (auto const &row : idx.counts)
    out.push_back(detail::from_counts(idx.reps, row));
  return out;
}

// k - count*f, or nullopt when some multiplicity would go negative.
template <typename Key, typename Eq>
std::optional<Multiset<Key>> remove(Multiset<Key> const &k, Multiset<Key> const &f,
                                    BigInt const &count, Eq &&eq)
{
  auto idx = detail::index_classes(std::vector<Multiset<Key>>{k, f}, eq);
  std::vector<BigInt> rest = idx.counts[0];
  for (std::size_t r = 0; r < rest.size(); ++r) {
    rest[r] -= count * idx.counts[1][r];
    if (rest[r] < 0)
      return std::nullopt;
  }
  return detail::from_counts(idx.reps, rest);
}

}  // namespace homext
