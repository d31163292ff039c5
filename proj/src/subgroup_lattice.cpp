#include "homext/subgroup_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "homext/errors.hpp"

namespace homext {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(Bits const &b) const noexcept
  {
    std::size_t h = 0;
    for (auto w : b)
      h = h * 0x9e3779b97f4a7c15ULL ^ w;
    return h;
  }
};

class ElementTable {
 public:
  explicit ElementTable(std::vector<Permutation> const &elements) : elements_(elements)
  {
    for (std::size_t i = 0; i < elements.size(); ++i)
      index_.emplace(elements[i], static_cast<std::uint32_t>(i));
    columns_.resize(elements.size());
    inverse_.resize(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
      inverse_[i] = index_.at(elements[i].inverse());
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b)
  {
    auto &col = columns_[b];
    if (col.empty()) {
      col.resize(elements_.size());
      for (std::size_t i = 0; i < elements_.size(); ++i)
        col[i] = index_.at(elements_[i] * elements_[b]);
    }
    return col[a];
  }

  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t identity() const { return index_.at(Permutation(elements_.front().degree())); }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Permutation> const &elements_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
  std::vector<std::vector<std::uint32_t>> columns_;
  std::vector<std::uint32_t> inverse_;
};

struct Explicit {
  Bits bits;
  std::vector<std::uint32_t> members;
  std::vector<std::uint32_t> gens;
};

bool test(Bits const &b, std::uint32_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
void set(Bits &b, std::uint32_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

Explicit join(ElementTable &t, Explicit const &h, std::uint32_t extra)
{
  Explicit j = h;
  j.gens.push_back(extra);
  for (std::size_t q = 0; q < j.members.size(); ++q)
    for (auto s : j.gens) {
      auto y = t.mul(j.members[q], s);
      if (!test(j.bits, y)) {
        set(j.bits, y);
        j.members.push_back(y);
      }
    }
  return j;
}

}  // namespace

SubgroupLattice::SubgroupLattice(PermGroup const &group, std::size_t order_cap)
    : group_(group)
{
  if (group.order() > order_cap)
    throw ResourceLimit("group order " + group.order().str() +
                        " exceeds the subgroup lattice cap " + std::to_string(order_cap));
  elements_ = group.elements();
  std::sort(elements_.begin(), elements_.end());
  ElementTable table(elements_);
  std::size_t const n = elements_.size();
  std::size_t const words = (n + 63) / 64;

  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Explicit> reps;

  auto record = [&](Explicit j) {
    Class c;
    c.order = j.members.size();
    for (auto g : j.gens)
      c.generators.push_back(elements_[g]);
    for (std::uint32_t g = 0; g < n; ++g) {
      Bits conj(words, 0);
      auto gi = table.inverse(g);
      for (auto x : j.members)
        set(conj, table.mul(table.mul(gi, x), g));
      if (seen.insert(std::move(conj)).second)
        c.conjugators.push_back(g);
    }
    subgroup_count_ += c.conjugators.size();
    classes_.push_back(std::move(c));
    reps.push_back(std::move(j));
  };

  Explicit trivial{Bits(words, 0), {table.identity()}, {}};
  set(trivial.bits, table.identity());
  record(std::move(trivial));

  for (std::size_t q = 0; q < reps.size(); ++q) {
    Bits covered(words, 0);
    for (std::uint32_t c = 0; c < n; ++c) {
      if (test(covered, c))
        continue;
      for (auto h : reps[q].members)
        set(covered, table.mul(h, c));
      if (test(reps[q].bits, c))
        continue;
      Explicit j = join(table, reps[q], c);
      if (!seen.count(j.bits))
        record(std::move(j));
    }
  }
}

std::vector<PermGroup> SubgroupLattice::class_representatives(std::size_t max_index) const
{
  std::vector<std::size_t> order(classes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return classes_[a].order > classes_[b].order;
  });
  std::vector<PermGroup> out;
  std::size_t const n = elements_.size();
  for (auto i : order)
    if (n / classes_[i].order <= max_index)
      out.emplace_back(group_.degree(), classes_[i].generators);
  return out;
}

std::vector<PermGroup> SubgroupLattice::all_subgroups() const
{
  std::vector<PermGroup> out;
  for (auto const &c : classes_) {
    PermGroup rep(group_.degree(), c.generators);
    for (auto g : c.conjugators)
      out.push_back(conjugate_group(rep, elements_[g]));
  }
  return out;
}

}  // namespace homext
