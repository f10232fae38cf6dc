#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gapdiff/chain_model.hpp"

namespace gapdiff {

struct PathEvent {
  std::size_t state;
  double time;  ///< entry time

  bool operator==(const PathEvent&) const = default;
};

/// Trajectory of the chain started at state 0 at time 0.
struct PathRecord {
  std::vector<PathEvent> events;
  double total_time = 0.0;
  double occupation_at_zero = 0.0;  ///< local time at 0, chain units
};

struct EmpiricalSummary {
  std::vector<double> excursion_durations;  ///< completed excursions only
  std::vector<double> checkpoints;          ///< local-time levels for the counts below
  std::vector<std::uint64_t> excursion_count_by_local_time;
  std::uint64_t seed = 0;
};

/// Seed of replica `index` derived from `master` by a splitmix64 hash.
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index);

/// Simulates until the occupation time at 0 reaches `local_time_budget`; the
/// path ends in state 0 at that instant. Deterministic in (chain, budget, seed).
PathRecord sample_path(const ChainSpec& chain, double local_time_budget, std::uint64_t seed,
                       std::size_t max_events = 50'000'000);

/// First time u at which the occupation at 0 reaches t.
double inverse_local_time(const PathRecord& path, double t);

/// Excursion lengths and, for each checkpoint c, the number of departures
/// from 0 before local time c. Without checkpoints the path's full local
/// time is used.
EmpiricalSummary excursions(const PathRecord& path, std::span<const double> checkpoints = {});

struct LaplaceEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo mean of exp(-z tau^{-1}(t)). Replica i uses
/// replica_seed(seed, i); results are identical for any thread count.
LaplaceEstimate empirical_laplace(const ChainSpec& chain, double z, double t, std::size_t replicas,
                                  std::uint64_t seed, unsigned threads = 1);

/// Runs `replicas` independent paths with budget `local_time_budget` and
/// pools their excursion durations; counts hold one entry per replica
/// (excursions completed within the budget).
EmpiricalSummary simulate_replicas(const ChainSpec& chain, double local_time_budget, std::size_t replicas,
                                   std::uint64_t seed, unsigned threads = 1);

}  // namespace gapdiff
