// nasq: classify bipartite states against the absolutely separable set and
// quantify how far outside it they sit.
//
// Exit codes: 0 ok, 2 input parse failure, 3 unsupported dimensions,
// 4 unsupported measure/mode combination, 5 unwritable output path,
// 6 oracle failure or unknown suite.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nasq/as_geometry.hpp"
#include "nasq/io.hpp"
#include "nasq/metric_bounds.hpp"
#include "nasq/nas_distance.hpp"
#include "nasq/nas_witness.hpp"
#include "nasq/oracles.hpp"
#include "nasq/parallel.hpp"
#include "nasq/qcore.hpp"
#include "nasq/states.hpp"

namespace {

using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitDims = 3;
constexpr int kExitCombo = 4;
constexpr int kExitWrite = 5;
constexpr int kExitOracle = 6;

nasq::DensityMatrix load_or_exit(const std::string& path) {
  try {
    return nasq::load_state(path);
  } catch (const nasq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kExitParse);
  }
}

json spectrum_to_json(const nasq::RealVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.steps) || c1 != ':' ||
      c2 != ':' || g.steps < 2 || g.stop < g.start) {
    throw CLI::ValidationError("--grid", "expected start:stop:steps");
  }
  return g;
}

int cmd_classify(const std::string& input, double tol) {
  const nasq::DensityMatrix rho = load_or_exit(input);
  const Eigen::Index lo = std::min(rho.dims().m, rho.dims().n);
  const Eigen::Index hi = std::max(rho.dims().m, rho.dims().n);
  if (lo != 2 || hi > 4) {
    std::cerr << "error: classify supports 2 x d states with d <= 4; got "
              << rho.dims().m << " x " << rho.dims().n << "\n";
    return kExitDims;
  }
  const nasq::AsVerdict verdict = nasq::is_absolutely_separable(rho, tol);
  const double pt_min = nasq::pt_min_eigenvalue(rho);

  std::string label;
  if (verdict.on_boundary) {
    label = "Boundary";
  } else if (verdict.is_as) {
    label = "AS";
  } else if (pt_min < -tol) {
    label = "Entangled";
  } else {
    label = "NonAS-Separable";
  }
  json out;
  out["verdict"] = label;
  out["criterion_value"] = verdict.criterion_value;
  out["pt_min_eigenvalue"] = pt_min;
  out["tol"] = tol;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_measure(const std::string& input, const std::string& measure,
                const std::string& mode, double tol, std::uint64_t seed) {
  const nasq::DensityMatrix rho = load_or_exit(input);
  const auto t0 = std::chrono::steady_clock::now();
  json out;
  out["measure"] = measure;
  out["mode"] = mode;
  out["tol"] = tol;
  out["seed"] = seed;

  try {
    if (measure == "witness") {
      if (mode == "aligned") {
        throw nasq::UnsupportedKind("witness has closed and full modes only");
      }
      nasq::WitnessConfig cfg;
      cfg.threads = nasq::recommended_threads();
      if (mode == "full") cfg.force_grid = true;
      const nasq::WitnessResult r = nasq::nas_witness_measure(rho, cfg);
      if (mode == "closed" && r.method != nasq::NasMethod::ClosedForm) {
        throw nasq::UnsupportedKind(
            "closed witness mode needs a pure state on d x d");
      }
      out["value"] = r.value;
      out["method"] = nasq::to_string(r.method);
      out["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
      if (r.certificate && r.method == nasq::NasMethod::FullNumeric) {
        out["certificate"] = {
            {"a1", r.certificate->params.a1},
            {"a2", r.certificate->params.a2},
            {"a3", r.certificate->params.a3},
        };
      }
    } else {
      nasq::DistanceKind kind;
      if (measure == "relent") kind = nasq::DistanceKind::relative_entropy();
      else if (measure == "bures") kind = nasq::DistanceKind::bures();
      else if (measure == "trace") kind = nasq::DistanceKind::trace();
      else if (measure == "hs") kind = nasq::DistanceKind::hilbert_schmidt();
      else throw nasq::UnsupportedKind("unknown measure " + measure);

      if (mode == "closed") {
        // closed forms exist for pure states (relent, Bures)
        const nasq::RealVector vals = nasq::eigvals_hermitian(rho.mat());
        const Eigen::Index d = std::max(rho.dims().m, rho.dims().n);
        if (std::min(rho.dims().m, rho.dims().n) != 2 ||
            vals[0] < 1.0 - 1e-10) {
          throw nasq::UnsupportedKind(
              "closed mode needs a pure 2 x d state");
        }
        double value = 0.0;
        if (kind.tag == nasq::DistanceKind::Tag::RelativeEntropy) {
          value = nasq::nas_pure_relent(d);
        } else if (kind.tag == nasq::DistanceKind::Tag::Bures) {
          value = nasq::nas_pure_bures(d);
        } else {
          throw nasq::UnsupportedKind(
              "closed mode covers relent and bures");
        }
        out["value"] = value;
        out["method"] = nasq::to_string(nasq::NasMethod::ClosedForm);
      } else {
        const nasq::NasMethod method =
            (mode == "aligned") ? nasq::NasMethod::ConjectureAligned
                                : nasq::NasMethod::FullNumeric;
        nasq::OptimizerConfig cfg;
        cfg.seed = seed;
        const nasq::NasResult r = nasq::nas_numeric(rho, kind, cfg, method);
        out["value"] = r.value;
        out["method"] = nasq::to_string(r.method);
        out["gap_estimate"] = r.gap_estimate;
        out["certificate"] = {
            {"nearest_as_spectrum",
             spectrum_to_json(
                 nasq::eigvals_hermitian(r.nearest_as.mat()))}};
      }
    }
  } catch (const nasq::UnsupportedKind& e) {
    std::cerr << "error: unsupported combination: " << e.what() << "\n";
    return kExitCombo;
  } catch (const nasq::Unsupported& e) {
    std::cerr << "error: unsupported combination: " << e.what() << "\n";
    return kExitCombo;
  }

  const auto t1 = std::chrono::steady_clock::now();
  out["wall_time_s"] =
      std::chrono::duration<double>(t1 - t0).count();
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_sweep_werner(double gamma, double phi, const GridSpec& grid,
                     const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitWrite;
  }
  const int n = grid.steps;
  struct Row {
    double p, relent, bures, witness;
    nasq::WernerClass cls;
  };
  std::vector<Row> rows(n);
  nasq::parallel_for(n, nasq::recommended_threads(), [&](int i) {
    const double p =
        grid.start + (grid.stop - grid.start) * double(i) / double(n - 1);
    const nasq::WernerParams wp{p, gamma, phi};
    Row row;
    row.p = p;
    row.relent =
        nasq::nas_werner(wp, nasq::DistanceKind::relative_entropy()).value;
    row.bures = nasq::nas_werner(wp, nasq::DistanceKind::bures()).value;
    row.witness = nasq::nas_witness_werner(wp);
    row.cls = nasq::classify_werner(wp);
    rows[i] = row;
  });
  out << "p,n_relent,n_bures,n_witness,classification\n";
  out.precision(17);
  for (const Row& r : rows) {
    out << r.p << ',' << r.relent << ',' << r.bures << ',' << r.witness
        << ',' << nasq::to_string(r.cls) << '\n';
  }
  if (!out) {
    std::cerr << "error: write failed for '" << out_path << "'\n";
    return kExitWrite;
  }
  return 0;
}

int cmd_oracle(const std::string& suite, std::uint64_t seed, int trials) {
  const int threads = nasq::recommended_threads();
  nasq::SuiteReport rep;
  if (suite == "monotonicity") {
    rep = nasq::run_monotonicity_suite(seed, trials, threads);
  } else if (suite == "convexity") {
    rep = nasq::run_convexity_suite(seed, trials, threads);
  } else if (suite == "conjecture") {
    rep = nasq::run_conjecture_suite(seed, trials, threads);
  } else if (suite == "witness-identity") {
    rep = nasq::run_witness_identity_suite(seed, trials, threads);
  } else if (suite == "segment") {
    rep = nasq::run_segment_suite(seed, trials, threads);
  } else {
    std::cerr << "error: unknown suite '" << suite
              << "'; known suites: monotonicity convexity conjecture "
                 "witness-identity segment\n";
    return kExitOracle;
  }

  json out;
  out["suite"] = rep.suite;
  out["trials"] = rep.trials;
  out["passes"] = rep.passes;
  out["failures"] = rep.failures;
  out["worst_slack"] = rep.worst_slack;
  out["seed"] = rep.seed;
  out["detail"] = rep.detail;
  std::cout << out.dump() << "\n";

  if (rep.failures > 0) {
    const std::string path = "nasq_oracle_failcase.json";
    std::ofstream f(path);
    f << rep.failing_case << "\n";
    std::cerr << "error: " << rep.failures
              << " trial(s) failed; first failing case written to " << path
              << "\n";
    return kExitOracle;
  }
  return 0;
}

int cmd_gen(const std::string& family, double p, double gamma, double phi,
            int d, int rank, std::uint64_t seed, const std::string& out_path) {
  std::optional<nasq::DensityMatrix> rho;
  try {
    if (family == "werner") {
      rho = nasq::werner({p, gamma, phi});
    } else if (family == "mes") {
      rho = nasq::DensityMatrix::pure(nasq::max_entangled(d));
    } else if (family == "mixed") {
      rho = nasq::DensityMatrix::maximally_mixed({2, d});
    } else if (family == "random") {
      rho = nasq::random_density({2, d}, rank, seed);
    } else {
      std::cerr << "error: unknown family '" << family << "'\n";
      return kExitParse;
    }
    nasq::save_state(out_path, *rho);
  } catch (const nasq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrite;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-absolute separability toolkit"};
  app.require_subcommand(1);

  std::string input, out_path = "sweep.csv", measure = "relent",
              mode = "full", suite, family = "werner";
  double tol = 1e-9, gamma = std::numbers::pi / 4.0, phi = 0.0, p = 0.5;
  std::string grid_text = "0:1:101";
  std::uint64_t seed = 0;
  int trials = 100, d = 2, rank = 4;

  auto* classify = app.add_subcommand("classify",
                                      "AS / non-AS / entangled verdict");
  classify->add_option("--input", input, "state JSON path")->required();
  classify->add_option("--tol", tol, "criterion tolerance");

  auto* meas = app.add_subcommand("measure", "compute one NAS measure");
  meas->add_option("--input", input, "state JSON path")->required();
  meas->add_option("--measure", measure, "relent|bures|trace|hs|witness");
  meas->add_option("--mode", mode, "closed|aligned|full");
  meas->add_option("--tol", tol, "tolerance echoed in the report");
  meas->add_option("--seed", seed, "optimizer seed");

  auto* sweep = app.add_subcommand("sweep-werner",
                                   "Werner-family sweep to CSV");
  sweep->add_option("--gamma", gamma, "state angle gamma");
  sweep->add_option("--phi", phi, "state phase phi");
  sweep->add_option("--grid", grid_text, "p grid start:stop:steps");
  sweep->add_option("--out", out_path, "CSV output path")->required();

  auto* oracle = app.add_subcommand("oracle", "cross-validation suites");
  oracle->add_option("--suite", suite,
                     "monotonicity|convexity|conjecture|witness-identity|"
                     "segment")
      ->required();
  oracle->add_option("--seed", seed, "corpus seed");
  oracle->add_option("--trials", trials, "number of trials");

  auto* gen = app.add_subcommand("gen", "write a state JSON file");
  gen->add_option("--family", family, "werner|mes|mixed|random");
  gen->add_option("--p", p, "werner noise weight");
  gen->add_option("--gamma", gamma, "werner angle");
  gen->add_option("--phi", phi, "werner phase");
  gen->add_option("--d", d, "qudit dimension");
  gen->add_option("--rank", rank, "rank for random states");
  gen->add_option("--seed", seed, "sampler seed");
  gen->add_option("--out", out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(input, tol);
    if (meas->parsed()) return cmd_measure(input, measure, mode, tol, seed);
    if (sweep->parsed()) {
      return cmd_sweep_werner(gamma, phi, parse_grid(grid_text), out_path);
    }
    if (oracle->parsed()) return cmd_oracle(suite, seed, trials);
    if (gen->parsed()) {
      return cmd_gen(family, p, gamma, phi, d, rank, seed, out_path);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nasq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
