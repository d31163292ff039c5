#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "homext/errors.hpp"
#include "homext/group_algorithms.hpp"
#include "homext/homext.hpp"
#include "homext/io.hpp"

using namespace homext;
using io::json;

namespace {

enum Exit { ok = 0, internal = 1, input_error = 2, resource = 3 };

struct Config {
  std::string command;
  std::vector<std::string> files;
  std::optional<std::size_t> k;
  std::string mode;
  std::string format = "json";
  std::size_t order_cap = 5040;
  std::size_t index_r = 2;
  bool no_bounds = false;
  std::size_t jobs = 1;
  std::string extension_file;

  // group utilities
  std::string gens, sub, other;
  std::size_t degree = 0;
  std::size_t point = 1;
};

struct Outcome {
  int status = ok;
  json report;
};

json read_json(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (json::exception const &e) {
    throw InputError(path + ": " + e.what());
  }
}

json counters_json(Counters const &c, SolveStats const &s)
{
  return {{"conjugacy_tests", c.conjugacy_tests.load()},
          {"f_oracle_calls", c.f_oracle_calls.load()},
          {"tri_oracle_calls", c.tri_oracle_calls.load()},
          {"double_coset_computations", c.double_coset_reps.load()},
          {"coset_bfs_nodes", c.coset_bfs_nodes.load()},
          {"solver_iterations", s.iterations},
          {"equiv_calls", s.equiv_calls},
          {"precedes_calls", s.precedes_calls}};
}

template <typename Body>
Outcome guarded(Body &&body)
{
  Outcome out;
  try {
    out.report = body();
  } catch (ResourceLimit const &e) {
    out.status = resource;
    out.report = {{"error", e.what()}, {"kind", "resource"}};
  } catch (InputError const &e) {
    out.status = input_error;
    out.report = {{"error", e.what()}, {"kind", "input"}};
  } catch (BoundExceeded const &e) {
    out.status = input_error;
    out.report = {{"error", e.what()}, {"kind", "input"}};
  } catch (json::exception const &e) {
    out.status = input_error;
    out.report = {{"error", e.what()}, {"kind", "input"}};
  } catch (std::exception const &e) {
    out.status = internal;
    out.report = {{"error", e.what()}, {"kind", "internal"}};
  }
  return out;
}

json run_instance(Config const &cfg, std::string const &path,
                  std::shared_ptr<ReductionCache> const &cache)
{
  InstanceOptions options;
  options.brute_order_cap = cfg.order_cap;
  options.index_r = cfg.index_r;
  options.enforce_size_bounds = !cfg.no_bounds;
  options.cache = cache;
  std::optional<Mode> mode;
  if (cfg.mode == "triangular")
    mode = Mode::triangular;
  else if (cfg.mode == "brute")
    mode = Mode::brute;

  auto start = std::chrono::steady_clock::now();
  HomExtInstance inst = io::load_instance(read_json(path), options, mode);
  SolveStats stats;
  json report = {{"command", cfg.command}, {"file", path},
                 {"mode", inst.mode() == Mode::triangular ? "triangular" : "brute"}};

  if (cfg.command == "decide") {
    report["extendable"] = !solve(inst, 1, &stats).empty();
  } else if (cfg.command == "search") {
    auto sols = solve(inst, 1, &stats);
    if (sols.empty()) {
      report["extension"] = nullptr;
      report["result"] = "no solution";
    } else {
      auto ext = build_extension(inst, sols.front());
      report["extension"] = io::extension_json(inst.group(), ext);
      report["solution"] = io::class_multiset_json(sols.front());
    }
  } else if (cfg.command == "count") {
    auto c = count_extensions(inst);
    report["count"] = c <= std::numeric_limits<std::uint64_t>::max()
                          ? json(c.convert_to<std::uint64_t>())
                          : json(c.str());
  } else if (cfg.command == "enum") {
    auto res = homext_threshold(inst, cfg.k.value_or(1));
    if (res.more)
      report["val"] = "more";
    else
      report["val"] = res.count();
    json exts = json::array();
    for (auto const &e : res.items)
      exts.push_back(io::extension_json(inst.group(), e));
    report["extensions"] = exts;
  } else if (cfg.command == "verify") {
    if (cfg.extension_file.empty())
      throw InputError("verify needs --extension");
    auto [gens, images] = io::parse_extension(read_json(cfg.extension_file), inst.n(), inst.m());
    report["valid"] = is_extension(inst, gens, images);
  }
  report["counters"] = counters_json(inst.counters(), stats);
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void print(Config const &cfg, json const &report)
{
  if (cfg.format == "text" && report.is_object()) {
    for (auto const &[key, value] : report.items())
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                << '\n';
    return;
  }
  std::cout << report.dump() << '\n';
}

int cmd_homext(Config const &cfg)
{
  auto cache = std::make_shared<ReductionCache>();
  std::vector<Outcome> outcomes(cfg.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cfg.files.size();)
    {
      outcomes[i] = guarded([&] { return run_instance(cfg, cfg.files[i], cache); });
      outcomes[i].report["file"] = cfg.files[i];
    }
  };
  std::size_t workers = std::clamp<std::size_t>(cfg.jobs, 1, cfg.files.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  int status = ok;
  for (auto const &o : outcomes) {
    print(cfg, o.report);
    status = std::max(status, o.status);
  }
  return status;
}

std::vector<Permutation> gens_of(std::string const &text, std::size_t degree)
{
  return parse_permutation_list(text, degree);
}

json perm_list_json(std::vector<Permutation> const &perms)
{
  json out = json::array();
  for (auto const &p : perms)
    out.push_back(p.to_string());
  return out;
}

json run_group(Config const &cfg)
{
  std::size_t degree = cfg.degree;
  for (auto const *text : {&cfg.gens, &cfg.sub, &cfg.other})
    degree = std::max(degree, infer_degree(*text));
  if (degree == 0)
    throw InputError("cannot infer a degree; pass --degree");
  PermGroup g(degree, gens_of(cfg.gens, degree));
  auto needs = [&](std::string const &text, char const *flag) {
    if (text.empty())
      throw InputError(std::string("this operation needs ") + flag);
    return PermGroup(degree, gens_of(text, degree));
  };
  auto subgroup_of_g = [&](std::string const &text, char const *flag) {
    auto h = needs(text, flag);
    if (!g.contains(h))
      throw NotASubgroup(std::string(flag) + " is not a subgroup of the group");
    return h;
  };

  std::string const &op = cfg.command;
  if (op == "order")
    return g.order().str().size() <= 18 ? json(g.order().convert_to<std::uint64_t>())
                                         : json(g.order().str());
  if (op == "orbits") {
    json out = json::array();
    for (auto const &o : g.orbits()) {
      json orbit = json::array();
      for (Point x : o)
        orbit.push_back(x + 1);
      out.push_back(orbit);
    }
    return out;
  }
  if (op == "stabilizer") {
    if (cfg.point == 0 || cfg.point > degree)
      throw OutOfRange("point out of range");
    return io::group_json(point_stabilizer(g, static_cast<Point>(cfg.point - 1)));
  }
  if (op == "index")
    return subgroup_index(g, needs(cfg.sub, "--sub")).str();
  if (op == "normalizer")
    return io::group_json(normalizer(g, subgroup_of_g(cfg.sub, "--sub")));
  if (op == "conjugate") {
    auto w = conjugacy_test(g, subgroup_of_g(cfg.sub, "--sub"), subgroup_of_g(cfg.other, "--other"));
    return w ? json(w->to_string()) : json(nullptr);
  }
  if (op == "centralizer")
    return io::group_json(centralizer_in_sym(g));
  if (op == "double-cosets")
    return perm_list_json(
        double_coset_reps(g, subgroup_of_g(cfg.sub, "--sub"), subgroup_of_g(cfg.other, "--other")));
  if (op == "coset-reps") {
    CosetRepEnumerator reps(subgroup_of_g(cfg.sub, "--sub"), g);
    std::vector<Permutation> out;
    while (auto r = reps.next())
      out.push_back(*r);
    return perm_list_json(out);
  }
  throw InputError("unknown group operation " + op);
}

json run_multissr(Config const &cfg)
{
  if (cfg.files.size() != 1)
    throw InputError("multissr solve takes one instance file");
  auto inst = io::parse_multissr(read_json(cfg.files.front()));
  std::size_t limit = cfg.k ? *cfg.k + 1 : static_cast<std::size_t>(-1);
  SolveStats stats;
  auto res = io::solve_multissr(inst, limit, &stats);
  json sols = json::array();
  bool more = cfg.k && res.solutions.size() > *cfg.k;
  if (more)
    res.solutions.resize(*cfg.k);
  for (auto const &s : res.solutions)
    sols.push_back(io::string_multiset_json(s));
  json report = {{"triangular", res.triangular}, {"solutions", sols}};
  report["val"] = more ? json("more") : json(res.solutions.size());
  report["counters"] = {{"iterations", stats.iterations}, {"equiv_calls", stats.equiv_calls},
                        {"precedes_calls", stats.precedes_calls}};
  return report;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Extension of partial permutation-group homomorphisms"};
  app.require_subcommand(1);
  Config cfg;

  auto add_instance_flags = [&](CLI::App *sub) {
    sub->add_option("files", cfg.files, "instance files")->required()->check(CLI::ExistingFile);
    sub->add_option("--mode", cfg.mode, "override the instance mode")
        ->check(CLI::IsMember({"triangular", "brute"}));
    sub->add_option("--order-cap", cfg.order_cap, "largest |G| for brute mode");
    sub->add_option("--index-r", cfg.index_r, "triangular mode: [G:M] <= C(n, r)");
    sub->add_flag("--no-bounds", cfg.no_bounds, "skip the index and degree bounds of triangular mode");
    sub->add_option("--jobs", cfg.jobs, "worker threads over input files")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
  };
  std::pair<char const *, char const *> const commands[] = {
      {"decide", "does gamma extend to G -> S_m"},
      {"search", "one extension, if any"},
      {"count", "number of extensions"},
      {"enum", "up to k extensions, or \"more\""},
      {"verify", "check a candidate extension"}};
  for (auto const &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    add_instance_flags(sub);
    if (std::string(name) == "enum")
      sub->add_option("--k", cfg.k, "threshold")->check(CLI::NonNegativeNumber);
    if (std::string(name) == "verify")
      sub->add_option("--extension", cfg.extension_file, "extension file")
          ->required()
          ->check(CLI::ExistingFile);
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  auto *group = app.add_subcommand("group", "permutation group utilities");
  group->require_subcommand(1);
  for (auto const *op : {"order", "orbits", "stabilizer", "index", "normalizer", "conjugate",
                         "centralizer", "double-cosets", "coset-reps"}) {
    auto *sub = group->add_subcommand(op);
    sub->add_option("--gens", cfg.gens, "generators in cycle notation")->required();
    sub->add_option("--degree", cfg.degree);
    sub->add_option("--sub", cfg.sub, "subgroup generators");
    sub->add_option("--other", cfg.other, "second subgroup generators");
    sub->add_option("--point", cfg.point, "1-based point");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    sub->callback([&cfg, op] { cfg.command = op; });
  }

  auto *mssr = app.add_subcommand("multissr", "explicit multiset subset-sum instances");
  mssr->require_subcommand(1);
  auto *mssr_solve = mssr->add_subcommand("solve", "all solutions, triangular when ranks allow");
  mssr_solve->add_option("file", cfg.files)->required()->check(CLI::ExistingFile);
  mssr_solve->add_option("--k", cfg.k, "report at most k solutions")->check(CLI::NonNegativeNumber);
  mssr_solve->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  if (group->parsed()) {
    auto out = guarded([&] { return run_group(cfg); });
    print(cfg, out.report);
    return out.status;
  }
  if (mssr->parsed()) {
    auto out = guarded([&] { return run_multissr(cfg); });
    print(cfg, out.report);
    return out.status;
  }
  return cmd_homext(cfg);
}
