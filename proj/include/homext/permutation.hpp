#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace homext {

using Point = std::uint32_t;

// A permutation of {0, ..., degree-1}. Products compose left to right:
// x^(a*b) = (x^a)^b. Text forms are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<Point>> const &cycles);

  // Accepts "(1 2 3)(4 5)", "(1,2,3)", "()" and one-line "[2,3,1]". A degree
  // of 0 means: infer it from the largest point mentioned.
  static Permutation parse(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::vector<Point> const &images() const { return images_; }

  Permutation operator*(Permutation const &rhs) const;
  Permutation &operator*=(Permutation const &rhs);
  Permutation inverse() const;
  Permutation conjugate_by(Permutation const &g) const;  // g^-1 * this * g
  Permutation extended(std::size_t degree) const;

  bool is_identity() const;
  bool is_even() const;
  std::optional<Point> smallest_moved_point() const;
  std::vector<std::vector<Point>> cycles() const;

  std::string to_string() const;          // cycle notation
  std::string to_image_string() const;    // "[2,3,1]"

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &a, Permutation const &b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const &p) const noexcept;
};

// Splits "(1 2),(1 2 3)" or "(1 2) ; [2,1,3]" into single permutations.
std::vector<Permutation> parse_permutation_list(std::string_view text,
                                                std::size_t degree = 0);

std::size_t infer_degree(std::string_view text);

}  // namespace homext
