#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homext/permutation.hpp"

namespace homext {

struct SlpStep {
  enum class Kind { load, invert, multiply };
  Kind kind;
  std::size_t lhs = 0;  // generator index for load, step index otherwise
  std::size_t rhs = 0;  // second factor for multiply
};

// Steps may only reference earlier steps. Text form, one item per line and
// 1-based: "Lk" load generator k, "Ij" invert step j, "Mj,k" multiply, "O j"
// mark step j as an output.
class StraightLineProgram {
 public:
  explicit StraightLineProgram(std::size_t generator_count = 0)
      : generator_count_(generator_count) {}

  std::size_t load(std::size_t generator);
  std::size_t invert(std::size_t step);
  std::size_t multiply(std::size_t lhs, std::size_t rhs);
  void add_output(std::size_t step);

  // Helpers treating std::nullopt as the empty word.
  std::optional<std::size_t> multiply(std::optional<std::size_t> lhs,
                                      std::optional<std::size_t> rhs);

  std::size_t generator_count() const { return generator_count_; }
  std::vector<SlpStep> const &steps() const { return steps_; }
  std::vector<std::size_t> const &outputs() const { return outputs_; }
  std::size_t size() const { return steps_.size(); }

  std::string serialize() const;
  static StraightLineProgram parse(std::string_view text,
                                   std::size_t generator_count);

 private:
  std::size_t generator_count_;
  std::vector<SlpStep> steps_;
  std::vector<std::size_t> outputs_;
};

// Evaluates under generator_i -> images[i]. `degree` is only consulted when
// there are no images.
std::vector<Permutation> slp_evaluate(StraightLineProgram const &slp,
                                      std::vector<Permutation> const &images,
                                      std::size_t degree = 0);

}  // namespace homext
