#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmc1d/dmc.hpp"
#include "qmc1d/model.hpp"
#include "qmc1d/trial.hpp"
#include "qmc1d/vmc.hpp"

namespace qmc1d {

inline constexpr const char* kVersion = "1.0.0";

enum class SamplerChoice { Vmc, Dmc, Both };

// A batch run: one system, one trial family, a list of couplings, and the
// sampler/observable settings shared by every coupling.  Parsed from the
// sectioned key-value config format (see parse_config).
struct ExperimentConfig {
  TrapSpec trap;
  int n_particles = 0;
  std::vector<Coupling> g_values;
  TrialFamily family = TrialFamily::CpwfHarmonic;
  TrialOverrides overrides;

  SamplerChoice sampler = SamplerChoice::Both;
  VmcParams vmc;                 // n_particles/seed/workers filled at run time
  DmcParams dmc;
  std::vector<double> tau_list;  // >= 2 entries: run each, extrapolate to 0

  bool density = false;
  bool pair = false;
  int bins_1d = 200;
  int bins_2d = 100;
  int sample_stride = 10;

  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_dir = ".";
};

// Parses the flat sectioned `key = value` format:
//
//   [system]            # trap, n, g list, trial family, overrides
//   [sampler]           # which sampler(s) and their parameters
//   [observables]       # density / pair toggles, binning, stride
//   [run]               # seed, out
//
// '#' starts a comment; "inf" in the g list is the hard-core limit; lists are
// comma-separated.  Unknown sections or keys, duplicate keys, malformed
// values, and configs that fail module preconditions all throw
// ValidationError.
ExperimentConfig parse_config(const std::string& text);

// Re-checks every module precondition (also done by parse_config); lets
// programmatically built configs fail fast before any sampling starts.
void validate_config(const ExperimentConfig& c);

// Canonical one-line-per-field serialization of everything that affects
// results.  The output directory and worker count are excluded: workers do
// not change results by construction, and the directory is just a location.
std::string canonical_config(const ExperimentConfig& c);

// FNV-1a over canonical_config, as 16 hex digits.  Prefixes every output
// file name so each emitted number traces back to its configuration.
std::string config_hash(const ExperimentConfig& c);

struct EnergyRow {
  Coupling g;
  double inv_g = 0.0;  // +inf at g = 0, 0 in the hard-core limit
  std::optional<EnergyEstimate> e_vmc;
  std::optional<EnergyEstimate> e_dmc;
  std::optional<double> e_over_etg;  // DMC over N^2/2; harmonic runs only
  std::vector<std::string> histogram_files;
};

struct ResultRecord {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO 8601 UTC; the only non-reproducible field
  std::string version;
  int n_particles = 0;
  std::vector<EnergyRow> rows;
};

// Which table formats emit_outputs writes.
struct EmitFormats {
  bool csv = true;
  bool json = true;
};

// Runs the configured samplers for every coupling in order.  Histogram files
// are streamed to the output directory during the run and listed in the
// returned record; energy tables are left to emit_outputs.
ResultRecord run_experiment(const ExperimentConfig& c);

// Writes <hash>_energies.csv / <hash>_results.json under out_dir and returns
// the paths.  Deterministic: fixed key order, all floats at 12 significant
// digits; rewriting the same record reproduces the files byte for byte.
std::vector<std::string> emit_outputs(const ResultRecord& r,
                                      const EmitFormats& formats,
                                      const std::string& out_dir);

}  // namespace qmc1d
