#include "homext/presentation.hpp"

#include <map>
#include <sstream>

#include "homext/errors.hpp"

namespace homext {

std::size_t StraightLineProgram::load(std::size_t generator)
{
  if (generator >= generator_count_)
    generator_count_ = generator + 1;
  steps_.push_back({SlpStep::Kind::load, generator, 0});
  return steps_.size() - 1;
}

std::size_t StraightLineProgram::invert(std::size_t step)
{
  if (step >= steps_.size())
    throw OutOfRange("invert references a later step");
  steps_.push_back({SlpStep::Kind::invert, step, 0});
  return steps_.size() - 1;
}

std::size_t StraightLineProgram::multiply(std::size_t lhs, std::size_t rhs)
{
  if (lhs >= steps_.size() || rhs >= steps_.size())
    throw OutOfRange("multiply references a later step");
  steps_.push_back({SlpStep::Kind::multiply, lhs, rhs});
  return steps_.size() - 1;
}

std::optional<std::size_t> StraightLineProgram::multiply(std::optional<std::size_t> lhs,
                                                         std::optional<std::size_t> rhs)
{
  if (!lhs)
    return rhs;
  if (!rhs)
    return lhs;
  return multiply(*lhs, *rhs);
}

void StraightLineProgram::add_output(std::size_t step)
{
  if (step >= steps_.size())
    throw OutOfRange("output references a missing step");
  outputs_.push_back(step);
}

std::string StraightLineProgram::serialize() const
{
  std::ostringstream os;
  for (auto const &s : steps_) {
    switch (s.kind) {
    case SlpStep::Kind::load:
      os << 'L' << s.lhs + 1 << '\n';
      break;
    case SlpStep::Kind::invert:
      os << 'I' << s.lhs + 1 << '\n';
      break;
    case SlpStep::Kind::multiply:
      os << 'M' << s.lhs + 1 << ',' << s.rhs + 1 << '\n';
      break;
    }
  }
  for (auto o : outputs_)
    os << "O " << o + 1 << '\n';
  return os.str();
}

StraightLineProgram StraightLineProgram::parse(std::string_view text,
                                               std::size_t generator_count)
{
  StraightLineProgram slp(generator_count);
  std::istringstream is{std::string(text)};
  std::string line;
  auto index = [](std::string const &s) {
    std::size_t v = std::stoul(s);
    if (v == 0)
      throw InputError("straight-line program indices are 1-based");
    return v - 1;
  };
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    char kind = line[0];
    std::string rest = line.substr(1);
    try {
      if (kind == 'L') {
        std::size_t g = index(rest);
        if (g >= generator_count)
          throw OutOfRange("generator index out of range");
        slp.load(g);
      } else if (kind == 'I') {
        slp.invert(index(rest));
      } else if (kind == 'M') {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
          throw InputError("multiply step needs two operands");
        slp.multiply(index(rest.substr(0, comma)), index(rest.substr(comma + 1)));
      } else if (kind == 'O') {
        slp.add_output(index(rest));
      } else {
        throw InputError("unknown straight-line program step: " + line);
      }
    } catch (std::logic_error const &e) {
      if (dynamic_cast<InputError const *>(&e))
        throw;
      throw InputError("malformed straight-line program line: " + line);
    }
  }
  return slp;
}

std::vector<Permutation> slp_evaluate(StraightLineProgram const &slp,
                                      std::vector<Permutation> const &images,
                                      std::size_t degree)
{
  if (images.size() < slp.generator_count())
    throw OutOfRange("straight-line program needs " +
                     std::to_string(slp.generator_count()) + " generator images");
  if (!images.empty())
    degree = images.front().degree();
  for (auto const &img : images)
    if (img.degree() != degree)
      throw DegreeMismatch("generator images have different degrees");

  std::vector<Permutation> values;
  values.reserve(slp.size());
  for (auto const &s : slp.steps()) {
    switch (s.kind) {
    case SlpStep::Kind::load:
      values.push_back(images[s.lhs]);
      break;
    case SlpStep::Kind::invert:
      values.push_back(values[s.lhs].inverse());
      break;
    case SlpStep::Kind::multiply:
      values.push_back(values[s.lhs] * values[s.rhs]);
      break;
    }
  }
  std::vector<Permutation> out;
  for (auto o : slp.outputs())
    out.push_back(values[o]);
  return out;
}

Presentation presentation_from_group(PermGroup const &group)
{
  Presentation pres{group.generators().size(), group.history()};
  auto &slp = pres.relators;
  auto const &levels = group.levels();
  auto const &strong = group.strong_generators();
  auto const &strong_steps = group.strong_generator_steps();

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> inverse_cache;
  auto rep_inverse = [&](std::size_t level, std::size_t k) -> std::optional<std::size_t> {
    auto const &word = levels[level].rep_steps[k];
    if (!word)
      return std::nullopt;
    auto [it, fresh] = inverse_cache.try_emplace({level, k}, 0);
    if (fresh)
      it->second = slp.invert(*word);
    return it->second;
  };
  auto emit = [&](std::optional<std::size_t> word, PermGroup::Sift const &s,
                  std::size_t from) {
    for (std::size_t i = 0; i < s.positions.size(); ++i)
      word = slp.multiply(word, rep_inverse(from + i, s.positions[i]));
    if (word)
      slp.add_output(*word);
  };

  for (std::size_t l = 0; l < levels.size(); ++l) {
    auto const &lev = levels[l];
    for (std::size_t k = 0; k < lev.orbit.size(); ++k) {
      for (std::size_t gen : lev.generators) {
        std::size_t target = lev.index_of(strong[gen][lev.orbit[k]]);
        Permutation h = lev.reps[k] * strong[gen] * lev.rep_inverses[target];
        auto s = group.sift(h, l + 1);
        auto word = slp.multiply(lev.rep_steps[k], std::optional<std::size_t>(strong_steps[gen]));
        word = slp.multiply(word, rep_inverse(l, target));
        emit(word, s, l + 1);
      }
    }
  }
  for (std::size_t i = 0; i < group.generators().size(); ++i) {
    auto s = group.sift(group.generators()[i], 0);
    emit(slp.load(i), s, 0);
  }
  return pres;
}

std::optional<std::size_t> first_failing_relator(std::vector<Permutation> const &source_gens,
                                                 std::vector<Permutation> const &images)
{
  if (source_gens.size() != images.size())
    throw InputError("generator and image counts differ");
  if (source_gens.empty())
    return std::nullopt;
  for (auto const &img : images)
    if (img.degree() != images.front().degree())
      throw DegreeMismatch("images have different degrees");
  PermGroup group(source_gens.front().degree(), source_gens);
  auto pres = presentation_from_group(group);
  auto values = slp_evaluate(pres.relators, images);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!values[i].is_identity())
      return i;
  return std::nullopt;
}

bool verify_partial_hom(std::vector<Permutation> const &source_gens,
                        std::vector<Permutation> const &images)
{
  return !first_failing_relator(source_gens, images).has_value();
}

}  // namespace homext
