#include "metent_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "metent/body_json.hpp"
#include "metent/constructions.hpp"
#include "metent/covering.hpp"
#include "metent/duality.hpp"
#include "metent/error.hpp"
#include "metent/parallel.hpp"
#include "metent/report_io.hpp"
#include "metent/sampling.hpp"

namespace metent::cli {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log")) {
    throw InputError("grid must look like start:stop:points[:log], got '" + spec + "'");
  }
  double start = 0.0;
  double stop = 0.0;
  long points = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    points = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw InputError("grid has a non-numeric field: '" + spec + "'");
  }
  if (!(start > 0.0) || !(stop >= start) || points < 1 || (points == 1 && stop != start)) {
    throw InputError("grid needs 0 < start <= stop and points >= 1: '" + spec + "'");
  }
  const bool log = parts.size() == 4;
  std::vector<double> grid;
  for (long i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(log ? start * std::pow(stop / start, f) : start + f * (stop - start));
  }
  grid.back() = stop;
  return grid;
}

namespace {

struct Options {
  std::string body;
  double t = 1.0;
  std::optional<std::uint64_t> seed;
  std::string grid = "0.5:4:6:log";
  std::vector<double> alpha{1.0, 2.0, 4.0, 8.0};
  std::optional<std::size_t> budget;
  std::string config;
  std::string out;
  unsigned workers = default_workers();
  std::string kind;
  std::optional<double> r0;
  std::optional<std::size_t> dim;
};

struct Context {
  Options opt;
  Json config = Json::object();
  PaperConstants constants;
  std::ostream& out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Body body_arg(const Context& ctx) {
  if (ctx.opt.body.empty()) throw InputError("--body is required for this command");
  return load_body(ctx.opt.body, ctx.opt.dim);
}

std::size_t budget_for(const Context& ctx, std::size_t dim) {
  return ctx.opt.budget.value_or(default_budget(dim));
}

double section_number(const Context& ctx, const char* section, const char* key, double fallback) {
  if (!ctx.config.contains(section)) return fallback;
  const auto& s = ctx.config.at(section);
  if (!s.contains(key)) return fallback;
  if (!s.at(key).is_number()) {
    throw InputError(std::string("config: ") + section + "." + key + " must be a number");
  }
  return s.at(key).get<double>();
}

// Writes `text` into --out/<name> when --out is set, else to stdout.
void emit(const Context& ctx, const std::string& stem, const std::string& ext,
          const std::string& text) {
  if (ctx.opt.out.empty()) {
    ctx.out << text;
    if (!text.empty() && text.back() != '\n') ctx.out << '\n';
    return;
  }
  fs::create_directories(ctx.opt.out);
  const fs::path path =
      fs::path(ctx.opt.out) / report_filename(stem, *ctx.opt.seed, ctx.constants, ext);
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
  ctx.out << path.string() << '\n';
}

int cmd_cover(const Context& ctx) {
  const Body k = body_arg(ctx);
  const auto est = covering_bounds(k, Body::ball(k.dim(), 1.0), ctx.opt.t, budget_for(ctx, k.dim()),
                                   *ctx.opt.seed);
  ctx.out << "lower/upper = " << est.lower << '/' << est.upper << " ("
          << to_string(est.certification) << ", eta " << est.eta << ")\n";
  if (!ctx.opt.out.empty()) emit(ctx, "cover", "json", to_json(est));
  return ok;
}

int cmd_staircase(const Context& ctx) {
  const Body k = body_arg(ctx);
  const auto st = staircase(k, Body::ball(k.dim(), 1.0), parse_grid(ctx.opt.grid),
                            budget_for(ctx, k.dim()), *ctx.opt.seed, ctx.opt.workers);
  emit(ctx, "staircase", "csv", staircase_csv(st));
  return ok;
}

int cmd_duality(const Context& ctx) {
  const Body k = body_arg(ctx);
  const auto rep = duality_report(k, parse_grid(ctx.opt.grid), ctx.opt.alpha, ctx.constants,
                                  budget_for(ctx, k.dim()), *ctx.opt.seed, ctx.opt.workers);
  emit(ctx, "duality", "json", to_json(rep));
  if (!ctx.opt.out.empty()) emit(ctx, "duality_ratios", "csv", ratio_csv(rep));
  return ok;
}

int cmd_gamma(const Context& ctx) {
  const Body k = body_arg(ctx);
  const auto rec = check_first_step(k, ctx.constants, budget_for(ctx, k.dim()), *ctx.opt.seed);
  emit(ctx, "gamma", "json", to_json(rec));
  return ok;
}

int cmd_combine(const Context& ctx) {
  const Body k = body_arg(ctx);
  const std::size_t n = k.dim();
  const double a = section_number(ctx, "combine", "a", 13.0);
  const double b = section_number(ctx, "combine", "b", 1.0);
  const double big_a = section_number(ctx, "combine", "A", 40.0);
  const double big_b = section_number(ctx, "combine", "B", 4.0);
  const std::size_t budget = budget_for(ctx, n);
  const std::uint64_t seed = *ctx.opt.seed;
  const Body disk = Body::ball(n, 1.0);
  SeparationOptions first_fit;
  first_fit.strategy = PackingStrategy::first_fit;

  if (ctx.opt.kind.empty() || ctx.opt.kind == "primal") {
    const Body outer = Body::intersect({k, Body::ball(n, big_a)});
    const Body inner = Body::intersect({k, Body::ball(n, big_b)});
    auto xs = greedy_separated(outer, disk, a, budget, derive_seed(seed, 0), first_fit);
    auto ys = greedy_separated(inner, disk, b, budget, derive_seed(seed, 1), first_fit);
    xs.container = k;
    ys.container = k;
    const auto z = primal_combine({xs, ys, a, b, big_a, big_b});
    emit(ctx, "combine_primal", "json", to_json(z));
  } else if (ctx.opt.kind == "dual") {
    auto xs = greedy_separated(disk, Body::polar(k), a, budget, derive_seed(seed, 0), first_fit);
    auto ys = mixed_gauge_separated(k, a, b, big_b, budget, derive_seed(seed, 1));
    const auto z = dual_combine({xs, ys, a, b, big_a, big_b}, k);
    emit(ctx, "combine_dual", "json", to_json(z));
  } else {
    throw InputError("combine: --kind must be primal or dual");
  }
  return ok;
}

int cmd_iterate(const Context& ctx) {
  const Body k = body_arg(ctx);
  SequenceKind kind = SequenceKind::primal;
  if (ctx.opt.kind == "dual") kind = SequenceKind::dual;
  else if (!ctx.opt.kind.empty() && ctx.opt.kind != "primal") {
    throw InputError("iterate: --kind must be primal or dual");
  }
  const auto rec = check_iteration(k, kind, ctx.constants, budget_for(ctx, k.dim()), *ctx.opt.seed);
  Json j = Json::parse(to_json(rec));
  j["telescope"] = Json::parse(to_json(telescope_schedule(rec.sequence)));
  j["constants"] = Json::parse(constants_json(ctx.constants));
  emit(ctx, std::string("iterate_") + std::string(to_string(kind)), "json", j.dump(2));
  return ok;
}

int cmd_probe(const Context& ctx) {
  FamilySpec spec;
  spec.family = body_family_from_string(ctx.opt.kind.empty() ? "sphere_hull" : ctx.opt.kind);
  spec.dim = ctx.opt.dim.value_or(2);
  spec.radius = section_number(ctx, "probe", "radius", 8.0);
  spec.points = static_cast<std::size_t>(section_number(ctx, "probe", "points", 6.0));
  const auto count = static_cast<std::size_t>(section_number(ctx, "probe", "count", 50.0));
  const auto probe = geometric_lemma_probe(spec, count, ctx.constants, budget_for(ctx, spec.dim),
                                           *ctx.opt.seed, ctx.opt.workers);
  emit(ctx, "probe", "json", to_json(probe));
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering numbers and entropy duality experiments", "metent"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_body) {
    auto* body = sub->add_option("--body", opt.body, "body JSON file");
    if (needs_body) body->required();
    sub->add_option("--seed", opt.seed, "random seed")->required();
    sub->add_option("--budget", opt.budget, "candidate budget per covering computation");
    sub->add_option("--config", opt.config, "JSON config with a \"constants\" section");
    sub->add_option("--out", opt.out, "output directory (default: stdout)");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--R0", opt.r0, "first radius of the iteration");
    sub->add_option("--dim", opt.dim, "default dimension for balls without \"dim\"");
  };

  auto* cover = app.add_subcommand("cover", "two-sided bound on N(K, tD)");
  add_common(cover, true);
  cover->add_option("--t", opt.t, "resolution")->check(CLI::PositiveNumber);

  auto* stair = app.add_subcommand("staircase", "covering staircase of K against D as CSV");
  add_common(stair, true);
  stair->add_option("--grid", opt.grid, "start:stop:points[:log]");

  auto* dual = app.add_subcommand("duality", "paired staircases and exponent ratios");
  add_common(dual, true);
  dual->add_option("--grid", opt.grid, "start:stop:points[:log]");
  dual->add_option("--alpha", opt.alpha, "scale factors (repeatable)")->check(CLI::PositiveNumber);

  auto* gam = app.add_subcommand("gamma", "gamma, gamma' and first-step inequality checks");
  add_common(gam, true);

  auto* comb = app.add_subcommand("combine", "product of two separated sets");
  add_common(comb, true);
  comb->add_option("--kind", opt.kind, "primal | dual");

  auto* iter = app.add_subcommand("iterate", "iteration inequalities along a radius sequence");
  add_common(iter, true);
  iter->add_option("--kind", opt.kind, "primal | dual");

  auto* probe = app.add_subcommand("probe", "mean-width statistics over a random body family");
  add_common(probe, false);
  probe->add_option("--kind", opt.kind, "sphere_hull | diagonal_ellipsoid | zonotope");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    Context ctx{opt, Json::object(), PaperConstants{}, out};
    if (!opt.config.empty()) {
      const std::string text = read_file(opt.config);
      ctx.constants = parse_constants(text);
      ctx.config = Json::parse(text);
    }
    if (opt.r0) ctx.constants.R0 = *opt.r0;
    ctx.constants.validate();

    if (*cover) return cmd_cover(ctx);
    if (*stair) return cmd_staircase(ctx);
    if (*dual) return cmd_duality(ctx);
    if (*gam) return cmd_gamma(ctx);
    if (*comb) return cmd_combine(ctx);
    if (*iter) return cmd_iterate(ctx);
    if (*probe) return cmd_probe(ctx);
    return input_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return certification_failure;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return certification_failure;
  }
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace metent::cli
