#include "homext/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "homext/errors.hpp"

namespace homext {

namespace {

// Reads the integers of one bracket group; commas and whitespace separate.
std::vector<long> read_numbers(std::string_view body)
{
  std::vector<long> out;
  std::size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError("unexpected character '" + std::string(1, c) +
                       "' in permutation");
    long v = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      v = v * 10 + (body[i] - '0');
      if (v > 1'000'000)
        throw InputError("point out of range in permutation");
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

struct Parsed {
  bool one_line = false;
  std::vector<std::vector<long>> groups;
};

Parsed tokenize(std::string_view text)
{
  Parsed p;
  text = trim(text);
  if (text.empty())
    throw InputError("empty permutation");
  if (text.front() == '[') {
    if (text.back() != ']')
      throw InputError("unterminated one-line permutation");
    p.one_line = true;
    p.groups.push_back(read_numbers(text.substr(1, text.size() - 2)));
    return p;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw InputError("expected '(' in cycle notation: " + std::string(text));
    auto close = text.find(')', i);
    if (close == std::string_view::npos)
      throw InputError("unterminated cycle: " + std::string(text));
    p.groups.push_back(read_numbers(text.substr(i + 1, close - i - 1)));
    i = close + 1;
  }
  return p;
}

std::size_t max_point(Parsed const &p)
{
  if (p.one_line)
    return p.groups.front().size();
  long hi = 0;
  for (auto const &g : p.groups)
    for (long v : g)
      hi = std::max(hi, v);
  return static_cast<std::size_t>(hi);
}

}  // namespace

Permutation::Permutation(std::size_t degree) : images_(degree)
{
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw InputError("image list is not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::vector<std::vector<Point>> const &cycles)
{
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (auto const &cyc : cycles) {
    for (Point x : cyc) {
      if (x >= degree)
        throw OutOfRange("cycle point " + std::to_string(x + 1) +
                         " exceeds degree " + std::to_string(degree));
      if (used[x])
        throw InputError("cycles are not disjoint");
      used[x] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i)
      p.images_[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree)
{
  Parsed parsed = tokenize(text);
  std::size_t needed = max_point(parsed);
  if (degree == 0)
    degree = std::max<std::size_t>(needed, 1);
  if (needed > degree)
    throw OutOfRange("permutation '" + std::string(text) +
                     "' does not fit degree " + std::to_string(degree));

  if (parsed.one_line) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    auto const &vals = parsed.groups.front();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] < 1)
        throw InputError("points are 1-based");
      img[i] = static_cast<Point>(vals[i] - 1);
    }
    return Permutation(std::move(img));
  }

  std::vector<std::vector<Point>> cycles;
  for (auto const &g : parsed.groups) {
    std::vector<Point> cyc;
    for (long v : g) {
      if (v < 1)
        throw InputError("points are 1-based");
      cyc.push_back(static_cast<Point>(v - 1));
    }
    cycles.push_back(std::move(cyc));
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::operator*(Permutation const &rhs) const
{
  Permutation r = *this;
  r *= rhs;
  return r;
}

Permutation &Permutation::operator*=(Permutation const &rhs)
{
  if (rhs.degree() != degree())
    throw DegreeMismatch("cannot multiply permutations of degree " +
                         std::to_string(degree()) + " and " +
                         std::to_string(rhs.degree()));
  for (auto &x : images_)
    x = rhs.images_[x];
  return *this;
}

Permutation Permutation::inverse() const
{
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::conjugate_by(Permutation const &g) const
{
  return g.inverse() * *this * g;
}

Permutation Permutation::extended(std::size_t degree) const
{
  if (degree < images_.size())
    throw DegreeMismatch("cannot shrink a permutation");
  Permutation r(degree);
  std::copy(images_.begin(), images_.end(), r.images_.begin());
  return r;
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

bool Permutation::is_even() const
{
  std::size_t even_cycles = 0;
  for (auto const &c : cycles())
    if (c.size() % 2 == 0)
      ++even_cycles;
  return even_cycles % 2 == 0;
}

std::optional<Point> Permutation::smallest_moved_point() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return static_cast<Point>(i);
  return std::nullopt;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start)
      continue;
    std::vector<Point> cyc;
    for (Point x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_string() const
{
  auto cs = cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

std::string Permutation::to_image_string() const
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i)
    os << (i ? "," : "") << images_[i] + 1;
  os << ']';
  return os.str();
}

std::size_t PermutationHash::operator()(Permutation const &p) const noexcept
{
  std::size_t h = p.degree();
  for (Point x : p.images())
    h = h * 1000003u ^ x;
  return h;
}

namespace {

std::vector<std::string_view> split_top_level(std::string_view text)
{
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  bool in_item = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[') {
      ++depth;
      in_item = true;
    } else if (c == ')' || c == ']') {
      --depth;
    } else if ((c == ',' || c == ';') && depth == 0) {
      if (in_item)
        out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
      in_item = false;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      in_item = true;
    }
  }
  if (in_item)
    out.push_back(trim(text.substr(start)));
  return out;
}

}  // namespace

std::size_t infer_degree(std::string_view text)
{
  std::size_t deg = 1;
  for (auto piece : split_top_level(text))
    deg = std::max(deg, max_point(tokenize(piece)));
  return deg;
}

std::vector<Permutation> parse_permutation_list(std::string_view text,
                                                std::size_t degree)
{
  if (degree == 0)
    degree = infer_degree(text);
  std::vector<Permutation> out;
  for (auto piece : split_top_level(text))
    out.push_back(Permutation::parse(piece, degree));
  return out;
}

}  // namespace homext
