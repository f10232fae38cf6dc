#include "gapdiff/mc_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gapdiff/detail/parallel.hpp"
#include "gapdiff/error.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("mc_simulator", what); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform and exponential variates built directly on the 64-bit engine so
/// the stream does not depend on the standard library's distributions.
class Stream {
public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
  std::mt19937_64 engine_;
};

/// Core simulation loop; `on_enter(state, time)` sees every jump. Returns
/// the time at which the local-time budget is reached.
template <class OnEnter>
double run_path(const ChainSpec& chain, double budget, std::uint64_t seed, std::size_t max_events,
                OnEnter&& on_enter) {
  Stream rng(seed);
  double time = 0.0;
  double local = 0.0;
  std::size_t state = 0;
  const std::size_t top = chain.size();
  for (std::size_t events = 0;; ++events) {
    if (events >= max_events) fail("event cap of " + std::to_string(max_events) + " exceeded");
    const double hold = rng.exponential(chain.rates[state]);
    if (state == 0) {
      if (local + hold >= budget) {
        time += budget - local;
        return time;
      }
      local += hold;
      time += hold;
      state = 1;
    } else {
      time += hold;
      const bool right = state < top && rng.uniform() < chain.right_probs[state];
      state = right ? state + 1 : state - 1;
    }
    on_enter(state, time);
  }
}

void check_budget(double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget)) fail("local-time budget must be positive");
}

}  // namespace

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index + 0x632be59bd9b4e019ULL));
}

PathRecord sample_path(const ChainSpec& chain, double local_time_budget, std::uint64_t seed,
                       std::size_t max_events) {
  const ChainSpec c = validate_chain(chain);
  check_budget(local_time_budget);
  PathRecord path;
  path.events.push_back({0, 0.0});
  path.total_time = run_path(
      c, local_time_budget, seed, max_events,
      [&](std::size_t state, double time) { path.events.push_back({state, time}); });
  path.occupation_at_zero = local_time_budget;
  return path;
}

double inverse_local_time(const PathRecord& path, double t) {
  if (!(t > 0.0)) fail("local time must be positive");
  if (t > path.occupation_at_zero * (1.0 + 1e-15)) fail("local time exceeds the recorded budget");
  double local = 0.0;
  for (std::size_t i = 0; i < path.events.size(); ++i) {
    if (path.events[i].state != 0) continue;
    const double start = path.events[i].time;
    const double end = i + 1 < path.events.size() ? path.events[i + 1].time : path.total_time;
    if (local + (end - start) >= t) return start + (t - local);
    local += end - start;
  }
  return path.total_time;
}

EmpiricalSummary excursions(const PathRecord& path, std::span<const double> checkpoints) {
  EmpiricalSummary summary;
  if (checkpoints.empty())
    summary.checkpoints.push_back(path.occupation_at_zero);
  else
    summary.checkpoints.assign(checkpoints.begin(), checkpoints.end());

  std::vector<double> departure_levels;
  double local = 0.0;
  double left_at = -1.0;
  for (std::size_t i = 0; i < path.events.size(); ++i) {
    const auto& ev = path.events[i];
    if (ev.state == 0) {
      if (left_at >= 0.0) summary.excursion_durations.push_back(ev.time - left_at);
      left_at = -1.0;
      const double end = i + 1 < path.events.size() ? path.events[i + 1].time : path.total_time;
      local += end - ev.time;
    } else if (i > 0 && path.events[i - 1].state == 0) {
      left_at = ev.time;
      departure_levels.push_back(local);
    }
  }
  for (double c : summary.checkpoints) {
    summary.excursion_count_by_local_time.push_back(static_cast<std::uint64_t>(
        std::count_if(departure_levels.begin(), departure_levels.end(), [c](double l) { return l < c; })));
  }
  return summary;
}

LaplaceEstimate empirical_laplace(const ChainSpec& chain, double z, double t, std::size_t replicas,
                                  std::uint64_t seed, unsigned threads) {
  const ChainSpec c = validate_chain(chain);
  if (!(z > 0.0)) fail("z must be positive");
  check_budget(t);
  if (replicas < 100) fail("at least 100 replicas required");

  std::vector<double> values(replicas);
  detail::parallel_for(replicas, threads, [&](std::size_t i) {
    const double end = run_path(c, t, replica_seed(seed, i), 50'000'000, [](std::size_t, double) {});
    values[i] = std::exp(-z * end);
  });

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(replicas);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(replicas - 1);
  return {mean, std::sqrt(var / static_cast<double>(replicas))};
}

EmpiricalSummary simulate_replicas(const ChainSpec& chain, double local_time_budget, std::size_t replicas,
                                   std::uint64_t seed, unsigned threads) {
  const ChainSpec c = validate_chain(chain);
  check_budget(local_time_budget);
  if (replicas == 0) fail("at least one replica required");

  std::vector<EmpiricalSummary> parts(replicas);
  detail::parallel_for(replicas, threads, [&](std::size_t i) {
    parts[i] = excursions(sample_path(c, local_time_budget, replica_seed(seed, i)));
  });

  EmpiricalSummary merged;
  merged.seed = seed;
  merged.checkpoints.push_back(local_time_budget);
  for (auto& p : parts) {
    merged.excursion_durations.insert(merged.excursion_durations.end(), p.excursion_durations.begin(),
                                      p.excursion_durations.end());
    merged.excursion_count_by_local_time.push_back(p.excursion_count_by_local_time.front());
  }
  return merged;
}

}  // namespace gapdiff
