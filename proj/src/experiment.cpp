#include "qmc1d/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qmc1d/errors.hpp"
#include "qmc1d/observables.hpp"

namespace qmc1d {

namespace {

std::string fmt_real(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt12(double v) { return fmt_real("%.12g", v); }
std::string fmt17(double v) { return fmt_real("%.17g", v); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok =
        trim(s.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (tok.empty()) throw ValidationError("empty list element in '" + s + "'");
    out.push_back(tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ValidationError("bad value '" + value + "' for key '" + key + "'");
}

double parse_real(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() ||
      !std::isfinite(v))
    bad_value(key, value);
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    bad_value(key, value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty() || value[0] == '-') bad_value(key, value);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size()) bad_value(key, value);
  return v;
}

bool parse_onoff(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  bad_value(key, value);
}

// section -> keys the parser accepts there
const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"system",
     {"trap", "v0", "phi", "half_width", "n", "g", "trial", "beta",
      "pair_range"}},
    {"sampler",
     {"run", "walkers", "equil_steps", "steps", "step_size", "blocks", "tau",
      "target_population", "dmc_equil_blocks", "dmc_blocks",
      "steps_per_block"}},
    {"observables", {"density", "pair", "bins", "bins2d", "stride"}},
    {"run", {"seed", "out"}},
};

struct RawConfig {
  // (section, key) -> value, duplicates rejected at insert
  std::map<std::pair<std::string, std::string>, std::string> kv;

  const std::string* find(const std::string& sec, const std::string& key) const {
    const auto it = kv.find({sec, key});
    return it == kv.end() ? nullptr : &it->second;
  }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("line " + std::to_string(line_no) +
                              ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (kKnownKeys.find(section) == kKnownKeys.end())
        throw ValidationError("unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ValidationError("key '" + key + "' appears before any section");
    if (key.empty() || value.empty())
      throw ValidationError("line " + std::to_string(line_no) +
                            ": empty key or value");
    if (kKnownKeys.at(section).count(key) == 0)
      throw ValidationError("unknown key '" + key + "' in [" + section + "]");
    if (!raw.kv.insert({{section, key}, value}).second)
      throw ValidationError("duplicate key '" + key + "' in [" + section +
                            "]");
  }
  return raw;
}

const char* family_token(TrialFamily f) {
  switch (f) {
    case TrialFamily::CpwfHarmonic: return "cpwf-harmonic";
    case TrialFamily::CosineJastrow: return "cosine";
    case TrialFamily::CpwfLattice: return "cpwf-lattice";
  }
  return "?";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const RawConfig raw = tokenize(text);
  ExperimentConfig c;

  // trap first; several defaults hang off its kind
  std::string trap_token = "harmonic";
  if (const auto* v = raw.find("system", "trap")) trap_token = *v;
  const bool custom_lattice = trap_token == "lattice";
  if (trap_token == "harmonic") {
    c.trap = TrapSpec::harmonic();
  } else if (trap_token == "double-well") {
    c.trap = TrapSpec::double_well();
  } else if (trap_token == "triple-well") {
    c.trap = TrapSpec::triple_well();
  } else if (custom_lattice) {
    const auto* v0 = raw.find("system", "v0");
    const auto* phi = raw.find("system", "phi");
    const auto* hw = raw.find("system", "half_width");
    if (!v0 || !phi || !hw)
      throw ValidationError("trap = lattice needs v0, phi and half_width");
    c.trap = TrapSpec::lattice(parse_real("v0", *v0), parse_real("phi", *phi),
                               parse_real("half_width", *hw));
  } else {
    bad_value("trap", trap_token);
  }
  if (!custom_lattice &&
      (raw.find("system", "v0") || raw.find("system", "phi") ||
       raw.find("system", "half_width")))
    throw ValidationError("v0/phi/half_width apply only to trap = lattice");

  const bool lattice = c.trap.kind == TrapKind::Lattice;
  c.family = lattice ? TrialFamily::CpwfLattice : TrialFamily::CpwfHarmonic;
  c.dmc.tau = lattice ? 0.001 : 0.005;

  if (const auto* v = raw.find("system", "n"))
    c.n_particles = static_cast<int>(parse_int("n", *v));
  if (const auto* v = raw.find("system", "g")) {
    for (const std::string& tok : split_list(*v))
      c.g_values.push_back(tok == "inf" ? Coupling::tonks()
                                        : Coupling::finite(parse_real("g", tok)));
  }
  if (const auto* v = raw.find("system", "trial")) {
    if (*v == "cpwf") {
      // per-trap default already set
    } else if (*v == "cosine") {
      c.family = TrialFamily::CosineJastrow;
    } else {
      bad_value("trial", *v);
    }
  }
  if (const auto* v = raw.find("system", "beta"))
    c.overrides.beta = parse_real("beta", *v);
  if (const auto* v = raw.find("system", "pair_range"))
    c.overrides.pair_range = parse_real("pair_range", *v);

  if (const auto* v = raw.find("sampler", "run")) {
    if (*v == "vmc")
      c.sampler = SamplerChoice::Vmc;
    else if (*v == "dmc")
      c.sampler = SamplerChoice::Dmc;
    else if (*v == "both")
      c.sampler = SamplerChoice::Both;
    else
      bad_value("run", *v);
  }
  if (const auto* v = raw.find("sampler", "walkers"))
    c.vmc.n_walkers = static_cast<int>(parse_int("walkers", *v));
  if (const auto* v = raw.find("sampler", "equil_steps"))
    c.vmc.n_equil_steps = static_cast<int>(parse_int("equil_steps", *v));
  if (const auto* v = raw.find("sampler", "steps"))
    c.vmc.n_steps = static_cast<int>(parse_int("steps", *v));
  if (const auto* v = raw.find("sampler", "step_size"))
    c.vmc.step_size = parse_real("step_size", *v);
  if (const auto* v = raw.find("sampler", "blocks"))
    c.vmc.n_blocks = static_cast<int>(parse_int("blocks", *v));
  if (const auto* v = raw.find("sampler", "tau")) {
    std::vector<double> taus;
    for (const std::string& tok : split_list(*v))
      taus.push_back(parse_real("tau", tok));
    if (taus.size() == 1) {
      c.dmc.tau = taus[0];
    } else {
      c.tau_list = taus;
      c.dmc.tau = taus[0];
    }
  }
  if (const auto* v = raw.find("sampler", "target_population"))
    c.dmc.target_population = static_cast<int>(parse_int("target_population", *v));
  if (const auto* v = raw.find("sampler", "dmc_equil_blocks"))
    c.dmc.n_equil_blocks = static_cast<int>(parse_int("dmc_equil_blocks", *v));
  if (const auto* v = raw.find("sampler", "dmc_blocks"))
    c.dmc.n_blocks = static_cast<int>(parse_int("dmc_blocks", *v));
  if (const auto* v = raw.find("sampler", "steps_per_block"))
    c.dmc.steps_per_block = static_cast<int>(parse_int("steps_per_block", *v));

  if (const auto* v = raw.find("observables", "density"))
    c.density = parse_onoff("density", *v);
  if (const auto* v = raw.find("observables", "pair"))
    c.pair = parse_onoff("pair", *v);
  if (const auto* v = raw.find("observables", "bins"))
    c.bins_1d = static_cast<int>(parse_int("bins", *v));
  if (const auto* v = raw.find("observables", "bins2d"))
    c.bins_2d = static_cast<int>(parse_int("bins2d", *v));
  if (const auto* v = raw.find("observables", "stride"))
    c.sample_stride = static_cast<int>(parse_int("stride", *v));

  if (const auto* v = raw.find("run", "seed")) c.seed = parse_u64("seed", *v);
  if (const auto* v = raw.find("run", "out")) c.out_dir = *v;

  validate_config(c);
  return c;
}

void validate_config(const ExperimentConfig& c) {
  const auto fail = [](const std::string& m) { throw ValidationError(m); };
  if (c.n_particles < 1) fail("n must be >= 1");
  if (c.g_values.empty()) fail("g list must not be empty");
  if (c.family == TrialFamily::CosineJastrow && c.trap.kind != TrapKind::Harmonic)
    fail("the cosine trial fits only the harmonic trap");
  if (c.family == TrialFamily::CpwfLattice && c.trap.kind != TrapKind::Lattice)
    fail("the lattice trial needs a lattice trap");
  if (c.family == TrialFamily::CpwfHarmonic && c.trap.kind != TrapKind::Harmonic)
    fail("the harmonic trial needs a harmonic trap");
  if (c.overrides.beta && !(*c.overrides.beta > 0.0)) fail("beta must be > 0");
  if (c.overrides.pair_range && !(*c.overrides.pair_range > 0.0))
    fail("pair_range must be > 0");

  if (c.vmc.n_walkers < 1) fail("walkers must be >= 1");
  if (c.vmc.n_equil_steps < 0) fail("equil_steps must be >= 0");
  if (c.vmc.n_steps < 1) fail("steps must be >= 1");
  if (!(c.vmc.step_size > 0.0)) fail("step_size must be > 0");
  if (c.vmc.n_blocks < 2) fail("blocks must be >= 2");
  if (c.vmc.n_steps % c.vmc.n_blocks != 0)
    fail("steps must divide evenly into blocks");

  if (!(c.dmc.tau > 0.0)) fail("tau must be > 0");
  for (double t : c.tau_list)
    if (!(t > 0.0)) fail("every tau must be > 0");
  if (c.tau_list.size() == 1) fail("tau extrapolation needs >= 2 values");
  {
    std::vector<double> sorted = c.tau_list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("tau values must be distinct");
  }
  if (c.dmc.target_population < 100) fail("target_population must be >= 100");
  if (c.dmc.n_equil_blocks < 0) fail("dmc_equil_blocks must be >= 0");
  if (c.dmc.n_blocks < 2) fail("dmc_blocks must be >= 2");
  if (c.dmc.steps_per_block < 1) fail("steps_per_block must be >= 1");

  if (c.bins_1d < 2 || c.bins_2d < 2) fail("histograms need >= 2 bins");
  if (c.sample_stride < 1) fail("stride must be >= 1");
  if (c.pair && c.n_particles < 2) fail("pair correlation needs n >= 2");
  if (c.workers < 1) fail("workers must be >= 1");
}

std::string canonical_config(const ExperimentConfig& c) {
  std::string s;
  s += "trap=";
  if (c.trap.kind == TrapKind::Harmonic) {
    s += "harmonic\n";
  } else {
    s += "lattice:" + fmt17(c.trap.v0) + ":" + fmt17(c.trap.phi) + ":" +
         fmt17(c.trap.half_width) + "\n";
  }
  s += "n=" + std::to_string(c.n_particles) + "\n";
  s += "g=";
  for (std::size_t i = 0; i < c.g_values.size(); ++i) {
    if (i) s += ",";
    s += c.g_values[i].infinite ? "inf" : fmt17(c.g_values[i].value);
  }
  s += "\n";
  s += std::string("family=") + family_token(c.family) + "\n";
  s += "beta=" + (c.overrides.beta ? fmt17(*c.overrides.beta)
                                   : std::string("default")) + "\n";
  s += "pair_range=" + (c.overrides.pair_range
                            ? fmt17(*c.overrides.pair_range)
                            : std::string("default")) + "\n";
  s += "sampler=";
  s += c.sampler == SamplerChoice::Vmc   ? "vmc"
       : c.sampler == SamplerChoice::Dmc ? "dmc"
                                         : "both";
  s += "\n";
  s += "vmc=" + std::to_string(c.vmc.n_walkers) + ":" +
       std::to_string(c.vmc.n_equil_steps) + ":" +
       std::to_string(c.vmc.n_steps) + ":" + fmt17(c.vmc.step_size) + ":" +
       std::to_string(c.vmc.n_blocks) + "\n";
  s += "dmc=";
  if (c.tau_list.empty()) {
    s += fmt17(c.dmc.tau);
  } else {
    for (std::size_t i = 0; i < c.tau_list.size(); ++i) {
      if (i) s += ",";
      s += fmt17(c.tau_list[i]);
    }
  }
  s += ":" + std::to_string(c.dmc.target_population) + ":" +
       std::to_string(c.dmc.n_equil_blocks) + ":" +
       std::to_string(c.dmc.n_blocks) + ":" +
       std::to_string(c.dmc.steps_per_block) + "\n";
  s += "obs=" + std::to_string(int(c.density)) + ":" +
       std::to_string(int(c.pair)) + ":" + std::to_string(c.bins_1d) + ":" +
       std::to_string(c.bins_2d) + ":" + std::to_string(c.sample_stride) +
       "\n";
  s += "seed=" + std::to_string(c.seed) + "\n";
  return s;
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_config(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

namespace {

std::string now_utc_iso8601() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct FanOutSink final : SampleSink {
  std::vector<SampleSink*> sinks;
  void on_sample(std::span<const double> x, double w) override {
    for (SampleSink* s : sinks) s->on_sample(x, w);
  }
};

std::string g_token(const Coupling& g) {
  return g.infinite ? "inf" : fmt12(g.value);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << body;
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path);
}

template <typename Hist>
std::string write_hist_csv(const std::string& out_dir, const std::string& name,
                           const Hist& accum_hist) {
  Hist h = accum_hist;
  h.normalize();
  std::ostringstream os;
  write_csv(h, os);
  write_file(out_dir + "/" + name, os.str());
  return name;
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& c) {
  validate_config(c);

  ResultRecord rec;
  rec.config_hash = config_hash(c);
  rec.seed = c.seed;
  rec.timestamp = now_utc_iso8601();
  rec.version = kVersion;
  rec.n_particles = c.n_particles;

  const bool want_vmc = c.sampler != SamplerChoice::Dmc;
  const bool want_dmc = c.sampler != SamplerChoice::Vmc;
  const bool want_hists = c.density || c.pair;
  const bool want_pair = c.pair && c.n_particles >= 2;
  const double lo =
      c.trap.kind == TrapKind::Harmonic ? -6.0 : -c.trap.half_width;
  const double hi = -lo;

  for (const Coupling& g : c.g_values) {
    const TrialSpec t = build_trial(c.family, c.trap, g, c.overrides);
    EnergyRow row;
    row.g = g;
    row.inv_g = g.infinite
                    ? 0.0
                    : (g.value == 0.0 ? HUGE_VAL : 1.0 / g.value);

    std::optional<DensityAccumulator> den_v, den_d;
    std::optional<PairAccumulator> pr_v, pr_d;

    if (want_vmc) {
      VmcParams p = c.vmc;
      p.n_particles = c.n_particles;
      p.seed = c.seed;
      p.workers = c.workers;
      FanOutSink fan;
      if (c.density) {
        den_v.emplace(lo, hi, c.bins_1d);
        fan.sinks.push_back(&*den_v);
      }
      if (want_pair) {
        pr_v.emplace(lo, hi, c.bins_2d);
        fan.sinks.push_back(&*pr_v);
      }
      p.sample_stride = fan.sinks.empty() ? 0 : c.sample_stride;
      const VmcResult r =
          run_vmc(t, c.trap, p, fan.sinks.empty() ? nullptr : &fan);
      row.e_vmc = r.energy;
    }

    if (want_dmc) {
      DmcParams p = c.dmc;
      p.n_particles = c.n_particles;
      // decorrelated from the VMC walker streams while still seed-determined
      p.seed = c.seed ^ 0x9e3779b97f4a7c15ULL;
      p.workers = c.workers;
      FanOutSink fan;
      if (c.density) {
        den_d.emplace(lo, hi, c.bins_1d);
        fan.sinks.push_back(&*den_d);
      }
      if (want_pair) {
        pr_d.emplace(lo, hi, c.bins_2d);
        fan.sinks.push_back(&*pr_d);
      }
      SampleSink* sink = fan.sinks.empty() ? nullptr : &fan;
      p.sample_stride = sink ? c.sample_stride : 0;

      if (c.tau_list.size() >= 2) {
        std::vector<double> taus = c.tau_list;
        std::sort(taus.rbegin(), taus.rend());
        std::vector<std::pair<double, EnergyEstimate>> points;
        for (std::size_t i = 0; i < taus.size(); ++i) {
          p.tau = taus[i];
          // histograms only from the least-biased (smallest tau) run
          const bool last = i + 1 == taus.size();
          const DmcResult r = run_dmc(t, c.trap, p, last ? sink : nullptr);
          points.emplace_back(taus[i], r.energy);
        }
        row.e_dmc = timestep_extrapolate(points);
      } else {
        const DmcResult r = run_dmc(t, c.trap, p, sink);
        row.e_dmc = r.energy;
      }
      if (c.trap.kind == TrapKind::Harmonic)
        row.e_over_etg = row.e_dmc->mean / model::e_tg(c.n_particles);
    }

    if (want_hists) {
      const std::string tag = rec.config_hash + "_g" + g_token(g);
      const auto emit_pair_of = [&](const char* what, const auto* v_acc,
                                    const auto* d_acc) {
        if (v_acc && v_acc->hist().total_weight() > 0.0)
          row.histogram_files.push_back(write_hist_csv(
              c.out_dir, tag + "_" + what + "_vmc.csv", v_acc->hist()));
        if (d_acc && d_acc->hist().total_weight() > 0.0)
          row.histogram_files.push_back(write_hist_csv(
              c.out_dir, tag + "_" + what + "_dmc.csv", d_acc->hist()));
        if (v_acc && d_acc && v_acc->hist().total_weight() > 0.0 &&
            d_acc->hist().total_weight() > 0.0) {
          auto mixed = d_acc->hist();
          auto variational = v_acc->hist();
          mixed.normalize();
          variational.normalize();
          const auto extrap = extrapolated_estimate(mixed, variational);
          std::ostringstream os;
          write_csv(extrap, os);
          const std::string name = tag + "_" + std::string(what) + "_extrap.csv";
          write_file(c.out_dir + "/" + name, os.str());
          row.histogram_files.push_back(name);
        }
      };
      if (c.density)
        emit_pair_of("density", den_v ? &*den_v : nullptr,
                     den_d ? &*den_d : nullptr);
      if (want_pair)
        emit_pair_of("pair", pr_v ? &*pr_v : nullptr, pr_d ? &*pr_d : nullptr);
    }

    rec.rows.push_back(std::move(row));
  }
  return rec;
}

namespace {

std::string estimate_json(const std::optional<EnergyEstimate>& e) {
  if (!e) return "null";
  return "{\"acceptance\": " + fmt12(e->acceptance) +
         ", \"mean\": " + fmt12(e->mean) +
         ", \"n_blocks\": " + std::to_string(e->n_blocks) +
         ", \"std_err\": " + fmt12(e->std_err) + "}";
}

}  // namespace

std::vector<std::string> emit_outputs(const ResultRecord& r,
                                      const EmitFormats& formats,
                                      const std::string& out_dir) {
  std::vector<std::string> paths;

  if (formats.csv) {
    std::string csv = "g,1/g,E_vmc,err,E_dmc,err,E/E_TG\n";
    for (const EnergyRow& row : r.rows) {
      csv += g_token(row.g) + "," + fmt12(row.inv_g) + ",";
      csv += row.e_vmc ? fmt12(row.e_vmc->mean) + "," + fmt12(row.e_vmc->std_err)
                       : std::string(",");
      csv += ",";
      csv += row.e_dmc ? fmt12(row.e_dmc->mean) + "," + fmt12(row.e_dmc->std_err)
                       : std::string(",");
      csv += ",";
      csv += row.e_over_etg ? fmt12(*row.e_over_etg) : std::string();
      csv += "\n";
    }
    const std::string path = out_dir + "/" + r.config_hash + "_energies.csv";
    write_file(path, csv);
    paths.push_back(path);
  }

  if (formats.json) {
    std::string js = "{\n";
    js += "  \"config_hash\": \"" + r.config_hash + "\",\n";
    js += "  \"n_particles\": " + std::to_string(r.n_particles) + ",\n";
    js += "  \"rows\": [\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const EnergyRow& row = r.rows[i];
      js += "    {\"e_dmc\": " + estimate_json(row.e_dmc);
      js += ", \"e_over_etg\": " +
            (row.e_over_etg ? fmt12(*row.e_over_etg) : std::string("null"));
      js += ", \"e_vmc\": " + estimate_json(row.e_vmc);
      js += ", \"g\": \"" + g_token(row.g) + "\"";
      js += ", \"histograms\": [";
      for (std::size_t k = 0; k < row.histogram_files.size(); ++k) {
        if (k) js += ", ";
        js += "\"" + row.histogram_files[k] + "\"";
      }
      js += "]";
      js += ", \"inv_g\": \"" + fmt12(row.inv_g) + "\"}";
      js += i + 1 < r.rows.size() ? ",\n" : "\n";
    }
    js += "  ],\n";
    js += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    js += "  \"timestamp\": \"" + r.timestamp + "\",\n";
    js += "  \"version\": \"" + std::string(r.version) + "\"\n";
    js += "}\n";
    const std::string path = out_dir + "/" + r.config_hash + "_results.json";
    write_file(path, js);
    paths.push_back(path);
  }

  return paths;
}

}  // namespace qmc1d
