#include "mshaz/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "mshaz/errors.hpp"
#include "mshaz/parallel.hpp"
#include "mshaz/rng.hpp"

namespace mshaz {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("MSHAZ_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
  const int64_t min_chunk = 16384;
  const int workers =
      std::min<int64_t>(worker_count(), std::max<int64_t>(1, n / min_chunk));
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = w * chunk;
    const int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

namespace {

double invert_monotone(const std::function<double(double)>& g, double target) {
  double hi = 1.0;
  for (int i = 0; i < 400 && g(hi) < target; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

struct RaceOutcome {
  double time;
  std::vector<int> order;
};

RaceOutcome sample_cascade_race(const CascadeSpec& spec, SplitMix64& rng) {
  const int m = spec.size();
  const uint32_t full = (1u << m) - 1u;
  RaceOutcome out{0.0, {}};
  out.order.reserve(static_cast<size_t>(m));
  uint32_t failed = 0;
  while (failed != full) {
    double best = 0.0;
    int winner = -1;
    for (int j = 0; j < m; ++j) {
      if (failed & (1u << j)) continue;
      const double w = spec.law_for(failed, j).sample_one(rng);
      if (winner < 0 || w < best) {
        best = w;
        winner = j;
      }
    }
    out.time += best;
    out.order.push_back(winner);
    failed |= 1u << winner;
  }
  return out;
}

// Lexicographic rank of a permutation of 0..m-1 (factorial number system).
int permutation_rank(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  int rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j) {
      if (perm[static_cast<size_t>(j)] < perm[static_cast<size_t>(i)]) ++smaller;
    }
    int fact = 1;
    for (int k = 2; k <= m - 1 - i; ++k) fact *= k;
    rank += smaller * fact;
  }
  return rank;
}

double sample_route(const RouteSpec& route, SplitMix64& rng) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SequentialRoute>) {
          double sum = 0.0;
          for (const auto& s : r.steps) sum += s.sample_one(rng);
          return sum;
        } else if constexpr (std::is_same_v<T, UnorderedRoute>) {
          double mx = 0.0;
          for (const auto& s : r.steps) mx = std::max(mx, s.sample_one(rng));
          return mx;
        } else if constexpr (std::is_same_v<T, PowerLawRoute>) {
          const double target = -std::log(rng.uniform_pos());
          return invert_monotone(
              [&](double t) {
                double H = 0.0;
                for (const auto& [a, p] : r.terms) H += a * std::pow(t, p);
                return H;
              },
              target);
        } else {
          return sample_cascade_race(r.cascade, rng).time;
        }
      },
      route);
}

void validate_spec_for_sampling(const SystemSpec& spec) {
  if (spec.routes.empty()) throw InvalidParameterError("simulate_system: need at least one route");
  if (spec.multiplicity < 1) {
    throw InvalidParameterError("simulate_system: multiplicity must be >= 1");
  }
  for (const auto& route : spec.routes) {
    std::visit(
        [](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, SequentialRoute> || std::is_same_v<T, UnorderedRoute>) {
            for (const auto& s : r.steps) {
              if (s.improper()) {
                throw UnsupportedOperationError("simulate_system: improper step " + s.describe());
              }
            }
          } else if constexpr (std::is_same_v<T, CascadeRoute>) {
            r.cascade.validate();
          }
        },
        route);
  }
}

}  // namespace

SampleSet simulate_system(const SystemSpec& spec, int64_t count, uint64_t seed) {
  if (count < 1) throw InvalidParameterError("simulate_system: count must be >= 1");
  validate_spec_for_sampling(spec);
  SampleSet out;
  out.seed = seed;
  out.model_hash = fnv1a(describe_system(spec));
  out.times.resize(static_cast<size_t>(count));
  parallel_for(count, [&](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) {
      SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(i));
      double best = std::numeric_limits<double>::infinity();
      for (int64_t rep = 0; rep < spec.multiplicity; ++rep) {
        for (const auto& route : spec.routes) {
          best = std::min(best, sample_route(route, rng));
        }
      }
      out.times[static_cast<size_t>(i)] = best;
    }
  });
  return out;
}

CascadeSamples simulate_cascade_race(const CascadeSpec& spec, int64_t count, uint64_t seed) {
  if (count < 1) throw InvalidParameterError("simulate_cascade_race: count must be >= 1");
  spec.validate();
  CascadeSamples out;
  out.seed = seed;
  out.model_hash = fnv1a(describe_system(SystemSpec{{CascadeRoute{spec}}, 1}));
  out.times.resize(static_cast<size_t>(count));
  out.route_index.resize(static_cast<size_t>(count));
  parallel_for(count, [&](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) {
      SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(i));
      const RaceOutcome outcome = sample_cascade_race(spec, rng);
      out.times[static_cast<size_t>(i)] = outcome.time;
      out.route_index[static_cast<size_t>(i)] = permutation_rank(outcome.order);
    }
  });
  return out;
}

SampleSet simulate_cascade_routeproduct(const CascadeSpec& spec, int64_t count, uint64_t seed) {
  if (count < 1) {
    throw InvalidParameterError("simulate_cascade_routeproduct: count must be >= 1");
  }
  spec.validate();
  const std::vector<std::vector<int>> orderings = enumerate_orderings(spec);
  SampleSet out;
  out.seed = seed;
  out.model_hash = fnv1a(describe_system(SystemSpec{{CascadeRoute{spec}}, 1}));
  out.times.resize(static_cast<size_t>(count));
  parallel_for(count, [&](int64_t begin, int64_t end) {
    for (int64_t i = begin; i < end; ++i) {
      SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(i));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& ordering : orderings) {
        double sum = 0.0;
        uint32_t failed = 0;
        for (int next : ordering) {
          sum += spec.law_for(failed, next).sample_one(rng);
          failed |= 1u << next;
        }
        best = std::min(best, sum);
      }
      out.times[static_cast<size_t>(i)] = best;
    }
  });
  return out;
}

double ks_statistic(const std::vector<double>& samples, const CurveSet& cdf) {
  return ks_statistic_fn(samples,
                         [&](double t) { return interp_linear(cdf.grid, cdf.F, t); });
}

double ks_statistic_fn(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgumentError("ks_statistic: empty sample set");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double model = cdf(samples[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(model - lo, hi - model));
  }
  return d;
}

double ks_critical_99(int64_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

uint64_t fnv1a(const std::string& text) {
  uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace mshaz
