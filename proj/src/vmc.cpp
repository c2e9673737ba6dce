#include "qmc1d/vmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qmc1d/errors.hpp"
#include "qmc1d/rng.hpp"

namespace qmc1d {

namespace {

struct WalkerStats {
  std::vector<double> block_sum;
  std::vector<double> block_cnt;
  RunningVariance var;
  std::uint64_t accepts = 0;
  std::uint64_t attempts = 0;
  std::uint64_t discards = 0;
  double step = 0.0;
};

void validate(const VmcParams& p) {
  if (p.n_particles < 1) throw ValidationError("n_particles must be >= 1");
  if (p.n_walkers < 1) throw ValidationError("n_walkers must be >= 1");
  if (p.n_equil_steps < 0) throw ValidationError("n_equil_steps must be >= 0");
  if (p.n_blocks < 2) throw ValidationError("n_blocks must be >= 2");
  if (p.n_steps < p.n_blocks || p.n_steps % p.n_blocks != 0)
    throw ValidationError("n_steps must be a positive multiple of n_blocks");
  if (!(p.step_size > 0.0)) throw ValidationError("step_size must be > 0");
  if (p.workers < 1) throw ValidationError("workers must be >= 1");
  if (p.sample_stride < 0) throw ValidationError("sample_stride must be >= 0");
}

double min_pair_gap(const std::vector<double>& x) {
  auto s = x;
  std::sort(s.begin(), s.end());
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < s.size(); ++i) gap = std::min(gap, s[i + 1] - s[i]);
  return gap;
}

void init_config(const TrialSpec& t, const TrapSpec& trap, Rng& rng,
                 std::vector<double>& x) {
  do {
    for (auto& v : x) {
      if (trap.kind == TrapKind::Lattice)
        v = rng.uniform(-0.95 * trap.half_width, 0.95 * trap.half_width);
      else
        v = rng.normal() / std::sqrt(t.beta);
    }
  } while (x.size() > 1 && min_pair_gap(x) < 1e-9);
}

// One walker's full chain: tuning sweeps with multiplicative step adaptation,
// then measurement sweeps with the step frozen.
void run_walker(const TrialSpec& t, const TrapSpec& trap, const VmcParams& p,
                int walker, WalkerStats& st, SampleSink* sink,
                std::mutex* sink_mu) {
  Rng rng(p.seed, static_cast<std::uint64_t>(walker));
  const int n = p.n_particles;
  std::vector<double> x(n);
  init_config(t, trap, rng, x);

  double step = p.step_size;
  const int steps_per_block = p.n_steps / p.n_blocks;

  auto sweep = [&](double width) {
    int acc = 0;
    for (int i = 0; i < n; ++i) {
      const double xi = x[i] + rng.uniform(-width, width);
      if (trap.kind == TrapKind::Lattice && std::abs(xi) >= trap.half_width)
        continue;  // hard wall: proposal rejected outright
      const double d = trial::log_psi_move_delta(t, x, i, xi);
      if (d >= 0.0 || rng.uniform() < std::exp(2.0 * d)) {
        x[i] = xi;
        ++acc;
      }
    }
    return acc;
  };

  for (int s = 0; s < p.n_equil_steps; ++s) {
    const double racc = static_cast<double>(sweep(step)) / n;
    step = std::clamp(step * std::exp(0.2 * (racc - 0.5)), 1e-3, 20.0);
  }
  st.step = step;

  for (int s = 0; s < p.n_steps; ++s) {
    st.accepts += static_cast<std::uint64_t>(sweep(step));
    st.attempts += static_cast<std::uint64_t>(n);
    double e;
    bool ok = true;
    try {
      e = trial::local_energy(t, trap, x);
      ok = std::isfinite(e);
    } catch (const NumericalError&) {
      ok = false;  // pair coincidence at the sample point
    }
    const int b = s / steps_per_block;
    if (ok) {
      st.block_sum[b] += e;
      st.block_cnt[b] += 1.0;
      st.var.add(e);
    } else {
      ++st.discards;
    }
    if (sink != nullptr && p.sample_stride > 0 &&
        (s + 1) % p.sample_stride == 0) {
      if (sink_mu != nullptr) {
        std::lock_guard<std::mutex> lk(*sink_mu);
        sink->on_sample(x, 1.0);
      } else {
        sink->on_sample(x, 1.0);
      }
    }
  }
}

}  // namespace

VmcResult run_vmc(const TrialSpec& t, const TrapSpec& trap,
                  const VmcParams& p, SampleSink* sink) {
  validate(p);
  if ((t.family == TrialFamily::CpwfLattice) !=
      (trap.kind == TrapKind::Lattice))
    throw ValidationError("trial family does not match the trap kind");

  std::vector<WalkerStats> stats(p.n_walkers);
  for (auto& st : stats) {
    st.block_sum.assign(p.n_blocks, 0.0);
    st.block_cnt.assign(p.n_blocks, 0.0);
  }

  const int workers = std::min(p.workers, p.n_walkers);
  std::mutex sink_mu;
  std::mutex* mu = (workers > 1) ? &sink_mu : nullptr;
  if (workers == 1) {
    for (int w = 0; w < p.n_walkers; ++w)
      run_walker(t, trap, p, w, stats[w], sink, mu);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int k = 0; k < workers; ++k) {
      const int w0 = static_cast<int>(
          static_cast<long long>(k) * p.n_walkers / workers);
      const int w1 = static_cast<int>(
          static_cast<long long>(k + 1) * p.n_walkers / workers);
      pool.emplace_back([&, k, w0, w1] {
        try {
          for (int w = w0; w < w1; ++w)
            run_walker(t, trap, p, w, stats[w], sink, mu);
        } catch (...) {
          errs[k] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  // Reduce in walker order so the result is identical for any partition.
  std::vector<double> block_means(p.n_blocks);
  for (int b = 0; b < p.n_blocks; ++b) {
    double sum = 0.0, cnt = 0.0;
    for (const auto& st : stats) {
      sum += st.block_sum[b];
      cnt += st.block_cnt[b];
    }
    if (cnt == 0.0)
      throw SamplerAbort("a block lost every sample to discards");
    block_means[b] = sum / cnt;
  }

  VmcResult r;
  std::uint64_t accepts = 0, attempts = 0;
  RunningVariance var;
  double step_sum = 0.0;
  for (const auto& st : stats) {
    accepts += st.accepts;
    attempts += st.attempts;
    r.n_discarded += st.discards;
    var.merge(st.var);
    step_sum += st.step;
  }
  r.energy = estimate_from_block_means(
      block_means, static_cast<double>(accepts) / attempts);
  r.step_used = step_sum / p.n_walkers;
  r.e_variance = var.variance();
  r.n_samples = static_cast<std::uint64_t>(p.n_walkers) * p.n_steps;
  if (static_cast<double>(r.n_discarded) >
      1e-6 * static_cast<double>(r.n_samples))
    throw SamplerAbort("discarded " + std::to_string(r.n_discarded) + " of " +
                       std::to_string(r.n_samples) +
                       " local-energy samples (limit 1e-6)");
  return r;
}

std::pair<double, EnergyEstimate> optimize_beta(
    TrialFamily family, const TrapSpec& trap, Coupling g,
    std::span<const double> beta_grid, const VmcParams& params) {
  if (beta_grid.empty()) throw ValidationError("beta grid must be non-empty");
  for (double b : beta_grid)
    if (!(b > 0.0)) throw ValidationError("beta grid values must be > 0");

  double best_beta = 0.0;
  EnergyEstimate best{};
  bool first = true;
  for (double b : beta_grid) {
    TrialOverrides ov;
    ov.beta = b;
    const auto t = build_trial(family, trap, g, ov);
    const auto res = run_vmc(t, trap, params);  // same seed: common randoms
    const bool better =
        first || res.energy.mean < best.mean ||
        (res.energy.mean == best.mean && b < best_beta);
    if (better) {
      best_beta = b;
      best = res.energy;
      first = false;
    }
  }
  return {best_beta, best};
}

}  // namespace qmc1d
