// Command-line front end. Exit codes: 0 decided, 2 invalid input or usage, 3 unknown.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "sbsplit/json_io.hpp"

using namespace sbsplit;
namespace fs = std::filesystem;

namespace {

constexpr int kDecided = 0;
constexpr int kInternal = 1;
constexpr int kInvalid = 2;
constexpr int kUnknown = 3;

struct Config {
  std::uint64_t seed = 0;
  long bound = 3;
  long norm_bound = 200;
  std::string out;
  int jobs = 1;
  std::string input;
  std::string second;  // map file for verify, beta for norm-solve
};

struct Outcome {
  Json json;
  int code = kDecided;
};

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InvalidInput(cfg.out + ": cannot write");
  f << text;
}

int code_for(PipelineVerdict::Status s) {
  switch (s) {
    case PipelineVerdict::Status::Invalid:
      return kInvalid;
    case PipelineVerdict::Status::Unknown:
      return kUnknown;
    default:
      return kDecided;
  }
}

Outcome run_decide(const Json& in, Rng& rng, const Config& cfg, bool with_matrix) {
  PipelineOptions opt;
  opt.norm_bound = cfg.norm_bound;
  SurfaceQuadrics s = surface_from_json(in);
  PipelineVerdict v = decide_and_parametrize(s, rng, opt);
  Outcome o;
  o.code = code_for(v.status);
  if (with_matrix && v.matrix) {
    o.json = map_to_json(*v.matrix);
  } else {
    o.json = verdict_to_json(v);
    o.json.erase("matrix");
    o.json.erase("tau_applied");
  }
  return o;
}

Outcome run_lie_split(const Json& in, Rng& rng, const Config& cfg) {
  LieAlgebra g = lie_from_json(in);
  if (g.dim() != 8) throw InvalidInput("lie-split: expected an 8-dimensional Lie algebra");
  SplitOptions opt;
  opt.norm_bound = cfg.norm_bound;
  Sl3Decision d = recognize_sl3(g, rng, opt);
  return {sl3_decision_to_json(d), d.status == Sl3Decision::Status::Unknown ? kUnknown : kDecided};
}

Outcome run_csa_split(const Json& in, Rng& rng, const Config& cfg) {
  AssocAlg a = algebra_from_json(in);
  if (a.dim() != 9 || !centre_and_simplicity(a).central_simple)
    throw InvalidInput("csa-split: expected a 9-dimensional central simple algebra");
  SplitOptions opt;
  opt.norm_bound = cfg.norm_bound;
  CsaResult r = split_csa(a, rng, opt);
  return {csa_result_to_json(r), r.status == CsaResult::Status::Unknown ? kUnknown : kDecided};
}

Outcome run_command(const std::string& cmd, const Json& in, Rng& rng, const Config& cfg) {
  if (cmd == "decide") return run_decide(in, rng, cfg, false);
  if (cmd == "parametrize") return run_decide(in, rng, cfg, true);
  if (cmd == "lie-split") return run_lie_split(in, rng, cfg);
  return run_csa_split(in, rng, cfg);
}

// Parse errors already name the file; schema errors get it prefixed.
Outcome run_single(const std::string& cmd, const std::string& path, Rng& rng, const Config& cfg) {
  Json in = read_json_file(path);
  try {
    return run_command(cmd, in, rng, cfg);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// One file, with per-file isolation of input errors.
Outcome run_file(const std::string& cmd, const std::string& path, std::uint64_t seed, std::size_t id,
                 const Config& cfg) {
  Rng rng = Rng::derive(seed, id);
  try {
    return run_single(cmd, path, rng, cfg);
  } catch (const InvalidInput& e) {
    return {Json{{"status", "invalid"}, {"error", e.what()}}, kInvalid};
  }
}

int cmd_batch(const std::string& cmd, const Config& cfg) {
  if (!fs::is_directory(cfg.input)) {
    Rng rng(cfg.seed);
    Outcome o = run_single(cmd, cfg.input, rng, cfg);
    write_output(cfg, dump_json(o.json));
    return o.code;
  }
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(cfg.input))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<Outcome> results(files.size());
  // Streams derive from (seed, position in sorted order), so results do not depend on jobs.
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
  for (std::size_t i = 0; i < files.size(); ++i)
    results[i] = run_file(cmd, files[i], cfg.seed, i, cfg);
  Json all = Json::array();
  int code = kDecided;
  for (std::size_t i = 0; i < files.size(); ++i) {
    Json r;
    r["file"] = fs::path(files[i]).filename().string();
    r["exit"] = results[i].code;
    r["result"] = std::move(results[i].json);
    all.push_back(std::move(r));
    code = std::max(code, results[i].code);
  }
  write_output(cfg, dump_json(Json{{"results", std::move(all)}}));
  return code;
}

int cmd_gen(const Config& cfg) {
  if (cfg.bound < 1) throw InvalidInput("gen: --bound must be at least 1");
  Rng rng(cfg.seed);
  QMatrix m = random_twist_matrix(rng, cfg.bound);
  write_output(cfg, dump_json(surface_to_json(twist_surface(m))));
  std::string sidecar = cfg.out.empty() ? "gen-" + std::to_string(cfg.seed) + ".hidden.json" : cfg.out + ".hidden.json";
  Json side;
  side["seed"] = cfg.seed;
  side["bound"] = cfg.bound;
  side["matrix"] = to_json(m);
  std::ofstream f(sidecar, std::ios::binary);
  if (!f) throw InvalidInput(sidecar + ": cannot write");
  f << dump_json(side);
  return kDecided;
}

int cmd_norm_solve(const Config& cfg) {
  FieldPtr f;
  try {
    f = field_from_json(read_json_file(cfg.input));
  } catch (const InvalidInput& e) {
    if (std::string(e.what()).rfind(cfg.input, 0) == 0) throw;
    throw InvalidInput(cfg.input + ": " + e.what());
  }
  if (f->degree() != 3 || !is_galois_cubic(f->modulus()))
    throw InvalidInput(cfg.input + ": expected a cyclic cubic field");
  Rat beta = parse_rat(cfg.second);
  if (sgn(beta) == 0) throw InvalidInput("norm-solve: beta must be nonzero");
  NormProblem p{cubic_sigma(f->modulus()), beta};
  NormResult r = solve_norm(p, cfg.norm_bound);
  write_output(cfg, dump_json(norm_result_to_json(r)));
  return r.status == NormResult::Status::Unknown ? kUnknown : kDecided;
}

int cmd_verify(const Config& cfg) {
  SurfaceQuadrics s = surface_from_json(read_json_file(cfg.input));
  validate_surface(s);
  QMatrix m = map_from_json(read_json_file(cfg.second));
  if (!inverse(m)) throw InvalidInput(cfg.second + ": matrix is singular");
  bool ok = verify_parametrization(s, m);
  write_output(cfg, dump_json(Json{{"status", ok ? "verified" : "failed"}}));
  return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether a Severi-Brauer surface given by 27 quadrics is split over Q"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool batch) {
    sub->add_option("--seed", cfg.seed, "seed of the random generator");
    sub->add_option("--norm-bound", cfg.norm_bound, "height bound of the norm equation search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    if (batch)
      sub->add_option("--jobs", cfg.jobs, "parallel workers for a directory of inputs")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "random twist of S0; the hidden M goes to a .hidden.json sidecar");
  gen->add_option("--seed", cfg.seed, "seed of the random generator");
  gen->add_option("--bound", cfg.bound, "entries of M lie in [-bound, bound]");
  gen->add_option("--out", cfg.out, "output file (default: standard output)");

  std::vector<std::pair<std::string, std::string>> batch_cmds{
      {"decide", "split / non-split verdict for a surface file or a directory of them"},
      {"parametrize", "the matrix M of a split surface"},
      {"lie-split", "decide whether an 8-dimensional Lie algebra is sl3(Q)"},
      {"csa-split", "decide whether a 9-dimensional central simple algebra is M3(Q)"}};
  std::vector<CLI::App*> batch;
  for (const auto& [name, help] : batch_cmds) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "JSON file or directory")->required();
    common(sub, true);
    batch.push_back(sub);
  }

  auto* norm = app.add_subcommand("norm-solve", "solve x sigma(x) sigma^2(x) = 1/beta in a cyclic cubic field");
  norm->add_option("field", cfg.input, "field JSON")->required();
  norm->add_option("beta", cfg.second, "nonzero rational")->required();
  common(norm, false);

  auto* verify = app.add_subcommand("verify", "check a parametrization matrix against a surface");
  verify->add_option("surface", cfg.input, "surface JSON")->required();
  verify->add_option("map", cfg.second, "map JSON")->required();
  verify->add_option("--out", cfg.out, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (norm->parsed()) return cmd_norm_solve(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    for (auto* sub : batch)
      if (sub->parsed()) return cmd_batch(sub->get_name(), cfg);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalid;
}
