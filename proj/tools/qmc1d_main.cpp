#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmc1d/errors.hpp"
#include "qmc1d/experiment.hpp"
#include "qmc1d/observables.hpp"
#include "qmc1d/oracle.hpp"

using namespace qmc1d;

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string format = "csv,json";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
  auto* opt = cmd->add_option("--config", f.config_path, "experiment config file");
  if (config_required) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", f.seed, "RNG seed (overrides config)");
  cmd->add_option("--workers", f.workers, "worker threads (overrides config)");
  cmd->add_option("--format", f.format, "table formats, comma list of csv,json");
}

EmitFormats parse_formats(const std::string& spec) {
  EmitFormats out{false, false};
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok =
        spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok == "csv")
      out.csv = true;
    else if (tok == "json")
      out.json = true;
    else
      throw ValidationError("unknown format '" + tok + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ExperimentConfig load_config(const CommonFlags& f) {
  std::ifstream in(f.config_path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config " + f.config_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = parse_config(ss.str());
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (!f.out_dir.empty()) c.out_dir = f.out_dir;
  validate_config(c);
  return c;
}

int run_and_emit(const ExperimentConfig& c, const CommonFlags& f) {
  const EmitFormats formats = parse_formats(f.format);
  std::filesystem::create_directories(c.out_dir);
  const ResultRecord rec = run_experiment(c);
  for (const EnergyRow& row : rec.rows) {
    std::cout << "g=" << (row.g.infinite ? "inf" : fmt12(row.g.value));
    if (row.e_vmc)
      std::cout << "  E_vmc=" << fmt12(row.e_vmc->mean) << " +- "
                << fmt12(row.e_vmc->std_err);
    if (row.e_dmc)
      std::cout << "  E_dmc=" << fmt12(row.e_dmc->mean) << " +- "
                << fmt12(row.e_dmc->std_err);
    if (row.e_over_etg) std::cout << "  E/E_TG=" << fmt12(*row.e_over_etg);
    std::cout << "\n";
  }
  for (const std::string& path : emit_outputs(rec, formats, c.out_dir))
    std::cout << path << "\n";
  return 0;
}

// Closed-form and deterministic references for the configured system, so
// sampler output can be judged without a test framework.
int run_oracle(const ExperimentConfig& c, const CommonFlags& f) {
  const EmitFormats formats = parse_formats(f.format);
  std::string csv = "quantity,g,value\n";
  if (c.trap.kind == TrapKind::Harmonic) {
    csv += "e_tg,," + fmt12(model::e_tg(c.n_particles)) + "\n";
    csv += "noninteracting,," + fmt12(0.5 * c.n_particles) + "\n";
    if (c.n_particles == 2)
      for (const Coupling& g : c.g_values)
        csv += "busch_two_body," + std::string(g.infinite ? "inf" : fmt12(g.value)) +
               "," + fmt12(oracle::busch_energy_two_body(g)) + "\n";
  }
  if (c.n_particles == 1) {
    const oracle::GridSpec grid =
        c.trap.kind == TrapKind::Harmonic
            ? oracle::GridSpec{-8.0, 8.0, 2000}
            : oracle::GridSpec{-c.trap.half_width, c.trap.half_width, 2000};
    csv += "fd_ground,," + fmt12(oracle::fd_ground_energy(c.trap, grid)) + "\n";
  }
  std::cout << csv;
  if (formats.csv) {
    std::filesystem::create_directories(c.out_dir);
    const std::string path = c.out_dir + "/" + config_hash(c) + "_oracle.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << csv;
    std::cout << path << "\n";
  }
  return 0;
}

// Fast always-on invariants: exact limits, estimator identities, histogram
// symmetry, and the sampled distribution itself.
int run_selftest(std::uint64_t seed) {
  int failures = 0;
  const auto check = [&](bool ok, const char* name) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };
  const TrapSpec ho = TrapSpec::harmonic();

  try {
    {
      VmcParams p;
      p.n_particles = 3;
      p.n_walkers = 8;
      p.n_equil_steps = 50;
      p.n_steps = 200;
      p.n_blocks = 4;
      p.seed = seed;
      const TrialSpec t = build_trial(TrialFamily::CpwfHarmonic, ho,
                                      Coupling::finite(0.0));
      const VmcResult r = run_vmc(t, ho, p);
      check(std::abs(r.energy.mean - 1.5) < 1e-9 && r.e_variance < 1e-16,
            "vmc exact at zero coupling (E = N/2, zero variance)");
    }
    {
      VmcParams p;
      p.n_particles = 4;
      p.n_walkers = 8;
      p.n_equil_steps = 50;
      p.n_steps = 200;
      p.n_blocks = 4;
      p.seed = seed;
      const TrialSpec t =
          build_trial(TrialFamily::CpwfHarmonic, ho, Coupling::tonks());
      const VmcResult r = run_vmc(t, ho, p);
      check(std::abs(r.energy.mean - 8.0) < 1e-7,
            "vmc exact in the hard-core limit (E = N^2/2)");
    }
    {
      const Coupling g = Coupling::finite(2.0920992401062033);
      const TrialSpec t = build_trial(TrialFamily::CpwfHarmonic, ho, g);
      const double eq = oracle::quad_energy_cpwf(t, ho, 2, {-6.0, 6.0, 100});
      check(std::abs(eq - oracle::busch_energy_two_body(g)) < 1e-6,
            "two-body quadrature matches the closed form");
    }
    {
      DmcParams p;
      p.n_particles = 2;
      p.target_population = 100;
      p.n_equil_blocks = 2;
      p.n_blocks = 3;
      p.steps_per_block = 20;
      p.seed = seed;
      const TrialSpec t = build_trial(TrialFamily::CpwfHarmonic, ho,
                                      Coupling::finite(0.0));
      const DmcResult r = run_dmc(t, ho, p);
      check(std::abs(r.energy.mean - 1.0) < 1e-9,
            "dmc fixed point on an exact trial state");
    }
    {
      PairAccumulator pa(-1.0, 1.0, 8);
      Rng rng(seed, 7);
      std::vector<double> x(3);
      for (int s = 0; s < 2000; ++s) {
        for (double& xi : x) xi = rng.uniform(-1.0, 1.0);
        pa.on_sample(x, 1.0 + rng.uniform());
      }
      bool symmetric = true;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          symmetric = symmetric && pa.hist().cell(i, j) == pa.hist().cell(j, i);
      Histogram2D h = pa.hist();
      h.normalize();
      double integral = 0.0;
      for (double v : h.values()) integral += v * h.bin_width() * h.bin_width();
      check(symmetric && std::abs(integral - 1.0) < 1e-9,
            "pair histogram: exact exchange symmetry, unit integral");
    }
    {
      VmcParams p;
      p.n_particles = 1;
      p.n_walkers = 4;
      p.n_equil_steps = 200;
      p.n_steps = 5000;
      p.n_blocks = 10;
      p.seed = seed;
      p.sample_stride = 2;
      const TrialSpec t = build_trial(TrialFamily::CpwfHarmonic, ho,
                                      Coupling::finite(0.0));
      DensityAccumulator da(-4.0, 4.0, 30);
      run_vmc(t, ho, p, &da);
      const Histogram1D& h = da.hist();
      std::vector<double> observed(h.values());
      std::vector<double> expected(observed.size());
      const double n_total = h.total_weight() + double(h.n_out_of_range());
      for (std::size_t b = 0; b < expected.size(); ++b) {
        const double a = h.lo() + double(b) * h.bin_width();
        expected[b] =
            0.5 * (std::erf(a + h.bin_width()) - std::erf(a)) * n_total;
      }
      const ChiSquaredResult r = chi_squared_test(observed, expected);
      check(r.p_value > 1e-4,
            "sampled single-particle density matches the exact gaussian");
    }
  } catch (const std::exception& e) {
    std::cout << "[FAIL] unexpected exception: " << e.what() << "\n";
    ++failures;
  }

  std::cout << (failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: FAILURES\n");
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational and diffusion Monte Carlo for bosons in 1D traps"};
  app.require_subcommand(1);

  CommonFlags f;
  CLI::App* cmd_vmc =
      app.add_subcommand("vmc", "variational sampler for every configured g");
  CLI::App* cmd_dmc =
      app.add_subcommand("dmc", "diffusion sampler for every configured g");
  CLI::App* cmd_scan =
      app.add_subcommand("scan", "run the samplers the config asks for");
  CLI::App* cmd_density = app.add_subcommand(
      "density", "both samplers plus density/pair histogram files");
  CLI::App* cmd_oracle = app.add_subcommand(
      "oracle", "deterministic reference energies for the configured system");
  CLI::App* cmd_selftest =
      app.add_subcommand("selftest", "fast internal invariant checks");
  for (CLI::App* cmd : {cmd_vmc, cmd_dmc, cmd_scan, cmd_density, cmd_oracle})
    add_common(cmd, f, true);
  add_common(cmd_selftest, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string diag_dir = ".";
  std::string diag_tag = "run";
  try {
    if (cmd_selftest->parsed()) return run_selftest(f.seed.value_or(1));

    ExperimentConfig c = load_config(f);
    diag_dir = c.out_dir;
    diag_tag = config_hash(c);
    if (cmd_oracle->parsed()) return run_oracle(c, f);
    if (cmd_vmc->parsed()) c.sampler = SamplerChoice::Vmc;
    if (cmd_dmc->parsed()) c.sampler = SamplerChoice::Dmc;
    if (cmd_density->parsed()) {
      c.sampler = SamplerChoice::Both;
      c.density = true;
      c.pair = c.n_particles >= 2;
    }
    (void)cmd_scan;  // scan runs the config as written
    return run_and_emit(c, f);
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime abort: " << e.what() << "\n";
    try {
      std::filesystem::create_directories(diag_dir);
      std::ofstream os(diag_dir + "/" + diag_tag + "_diagnostics.txt",
                       std::ios::binary);
      os << "aborted: " << e.what() << "\n";
    } catch (...) {
      // the diagnostics file is best effort
    }
    return 3;
  }
}
