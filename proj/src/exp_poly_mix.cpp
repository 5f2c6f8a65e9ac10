#include "mshaz/exp_poly_mix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mshaz/errors.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

namespace {

constexpr int kMaxPower = 60;  // keeps factorials representable and residues sane

void validate_term(const ExpPolyTerm& t) {
  if (!std::isfinite(t.coeff) || !std::isfinite(t.rate)) {
    throw InvalidParameterError("ExpPolyMix: non-finite term");
  }
  if (t.power < 0 || t.power > kMaxPower) {
    throw InvalidParameterError("ExpPolyMix: power must be in [0, " + std::to_string(kMaxPower) +
                                "]");
  }
  if (t.rate < 0.0) {
    throw InvalidParameterError("ExpPolyMix: rate must be >= 0");
  }
}

/// Map every rate to the smallest rate of its cluster; clusters are maximal
/// runs with gaps <= tol * max rate.
std::vector<double> cluster_rates(std::vector<double> rates, double tol) {
  std::sort(rates.begin(), rates.end());
  rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
  if (rates.empty()) return rates;
  const double abs_tol = tol * rates.back();
  std::vector<double> reps;
  reps.reserve(rates.size());
  double cluster_head = rates.front();
  double prev = rates.front();
  for (double r : rates) {
    if (r - prev > abs_tol) cluster_head = r;
    reps.push_back(cluster_head);
    prev = r;
  }
  return reps;  // parallel to sorted unique rates
}

double rep_for(const std::vector<double>& sorted_rates, const std::vector<double>& reps,
               double rate) {
  const auto it = std::lower_bound(sorted_rates.begin(), sorted_rates.end(), rate);
  return reps[static_cast<size_t>(it - sorted_rates.begin())];
}

std::vector<ExpPolyTerm> canonicalize(std::vector<ExpPolyTerm> terms, double tol) {
  for (const auto& t : terms) validate_term(t);
  std::vector<double> rates;
  rates.reserve(terms.size());
  for (const auto& t : terms) rates.push_back(t.rate);
  std::sort(rates.begin(), rates.end());
  rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
  const std::vector<double> reps = cluster_rates(rates, tol);
  std::map<std::pair<int, double>, double> merged;
  for (const auto& t : terms) {
    merged[{t.power, rep_for(rates, reps, t.rate)}] += t.coeff;
  }
  std::vector<ExpPolyTerm> out;
  out.reserve(merged.size());
  for (const auto& [key, coeff] : merged) {
    if (coeff == 0.0) continue;
    out.push_back({coeff, key.first, key.second});
  }
  // Sort by (rate, power) for deterministic term order.
  std::sort(out.begin(), out.end(), [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
    return a.rate != b.rate ? a.rate < b.rate : a.power < b.power;
  });
  return out;
}

}  // namespace

ExpPolyMix::ExpPolyMix(std::vector<ExpPolyTerm> terms, double rate_merge_tol)
    : terms_(canonicalize(std::move(terms), rate_merge_tol)) {}

ExpPolyMix ExpPolyMix::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidParameterError("ExpPolyMix::exponential: rate must be finite and > 0");
  }
  return ExpPolyMix({{rate, 0, rate}});
}

ExpPolyMix ExpPolyMix::gamma_integer(int shape, double rate) {
  if (shape < 1) throw InvalidParameterError("ExpPolyMix::gamma_integer: shape must be >= 1");
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidParameterError("ExpPolyMix::gamma_integer: rate must be finite and > 0");
  }
  const double coeff = std::pow(rate, shape) / sf::factorial(shape - 1);
  return ExpPolyMix({{coeff, shape - 1, rate}});
}

double ExpPolyMix::density(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("ExpPolyMix::density: t must be >= 0");
  if (terms_.empty()) return 0.0;
  const double lo = min_rate();
  const double hi = max_rate();
  const double spread = hi - lo;
  if (terms_.size() > 1 && spread * t <= 0.5) {
    // Centered evaluation: f = exp(-c t) * sum_q A_q t^q with
    // A_q = sum_i coeff_i (c - mu_i)^{q-k_i} / (q-k_i)!. The A_q of low order
    // vanish analytically for densities of sums, so the cancellation is
    // confined to coefficients whose contribution is suppressed by t^q.
    const double center = 0.5 * (lo + hi);
    int max_power = 0;
    for (const auto& term : terms_) max_power = std::max(max_power, term.power);
    const int q_max = max_power + 60;
    double acc = 0.0;
    double tq = 1.0;  // t^q
    for (int q = 0; q <= q_max; ++q) {
      double aq = 0.0;
      for (const auto& term : terms_) {
        const int j = q - term.power;
        if (j < 0) continue;
        aq += term.coeff * std::pow(center - term.rate, j) / sf::factorial(j);
      }
      const double contrib = aq * tq;
      acc += contrib;
      if (q > max_power && std::fabs(contrib) < 1e-18 * std::fabs(acc)) break;
      tq *= t;
    }
    return acc * std::exp(-center * t);
  }
  // Direct sum with Neumaier compensation.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& term : terms_) {
    const double v = term.coeff * std::pow(t, term.power) * std::exp(-term.rate * t);
    const double s = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - s) + v;
    } else {
      comp += (v - s) + sum;
    }
    sum = s;
  }
  return sum + comp;
}

double ExpPolyMix::survival(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("ExpPolyMix::survival: t must be >= 0");
  // Integral of c tau^k e^{-mu tau} over (t, inf) = c k!/mu^{k+1} * Q(k+1, mu t)
  // with Q the (finite) regularized upper incomplete gamma of integer shape.
  double sum = 0.0;
  for (const auto& term : terms_) {
    if (term.rate == 0.0) {
      throw UnsupportedOperationError("ExpPolyMix::survival: zero-rate term has no tail integral");
    }
    const double x = term.rate * t;
    double poisson = std::exp(-x);  // e^{-x} x^j / j!
    double q = poisson;
    for (int j = 1; j <= term.power; ++j) {
      poisson *= x / j;
      q += poisson;
    }
    sum += term.coeff * sf::factorial(term.power) / std::pow(term.rate, term.power + 1) * q;
  }
  return sum;
}

double ExpPolyMix::cdf(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("ExpPolyMix::cdf: t must be >= 0");
  double sum = 0.0;
  for (const auto& term : terms_) {
    if (term.rate == 0.0) {
      sum += term.coeff * std::pow(t, term.power + 1) / (term.power + 1);
      continue;
    }
    const double mass = term.coeff * sf::factorial(term.power) / std::pow(term.rate, term.power + 1);
    sum += mass * sf::gamma_p(term.power + 1, term.rate * t);
  }
  return sum;
}

double ExpPolyMix::total_mass() const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    if (term.rate == 0.0) return std::numeric_limits<double>::infinity();
    sum += term.coeff * sf::factorial(term.power) / std::pow(term.rate, term.power + 1);
  }
  return sum;
}

bool ExpPolyMix::is_proper(double tol) const {
  if (terms_.empty()) return false;
  for (const auto& term : terms_) {
    if (term.rate <= 0.0) return false;
  }
  return std::fabs(total_mass() - 1.0) <= tol;
}

double ExpPolyMix::min_rate() const {
  if (terms_.empty()) throw InvalidArgumentError("ExpPolyMix::min_rate: empty mixture");
  return terms_.front().rate;  // terms sorted by rate
}

double ExpPolyMix::max_rate() const {
  if (terms_.empty()) throw InvalidArgumentError("ExpPolyMix::max_rate: empty mixture");
  return terms_.back().rate;
}

ExpPolyMix ExpPolyMix::convolve(const ExpPolyMix& other) const {
  // Cluster the union of rates first so that cross terms from the two
  // operands with near-equal rates take the equal-rate (Beta function)
  // branch instead of blowing up the unequal-rate residues.
  std::vector<double> rates;
  for (const auto& t : terms_) rates.push_back(t.rate);
  for (const auto& t : other.terms_) rates.push_back(t.rate);
  std::sort(rates.begin(), rates.end());
  rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
  const std::vector<double> reps = cluster_rates(rates, kRateMergeTol);
  auto remap = [&](const std::vector<ExpPolyTerm>& in) {
    std::vector<ExpPolyTerm> out = in;
    for (auto& t : out) t.rate = rep_for(rates, reps, t.rate);
    return out;
  };
  const std::vector<ExpPolyTerm> a = remap(terms_);
  const std::vector<ExpPolyTerm> b = remap(other.terms_);

  std::vector<ExpPolyTerm> result;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      const int k1 = ta.power;
      const int k2 = tb.power;
      if (k1 + k2 + 1 > kMaxPower) {
        throw UnsupportedOperationError("ExpPolyMix::convolve: polynomial order exceeds cap");
      }
      const double c = ta.coeff * tb.coeff;
      if (ta.rate == tb.rate) {
        // int_0^t tau^k1 (t-tau)^k2 dtau = B(k1+1, k2+1) t^{k1+k2+1}
        const double beta =
            sf::factorial(k1) * sf::factorial(k2) / sf::factorial(k1 + k2 + 1);
        result.push_back({c * beta, k1 + k2 + 1, ta.rate});
        continue;
      }
      // Partial fractions of k1! k2! / ((s+alpha)^{k1+1} (s+beta)^{k2+1}).
      const double alpha = ta.rate;
      const double beta = tb.rate;
      const int p = k1 + 1;
      const int q = k2 + 1;
      const double base = c * sf::factorial(k1) * sf::factorial(k2);
      double sign = 1.0;
      for (int i = 0; i < p; ++i) {
        const double res = sign * sf::binomial(q - 1 + i, i) / std::pow(beta - alpha, q + i);
        const int j = p - i;  // pole order of this piece
        result.push_back({base * res / sf::factorial(j - 1), j - 1, alpha});
        sign = -sign;
      }
      sign = 1.0;
      for (int i = 0; i < q; ++i) {
        const double res = sign * sf::binomial(p - 1 + i, i) / std::pow(alpha - beta, p + i);
        const int j = q - i;
        result.push_back({base * res / sf::factorial(j - 1), j - 1, beta});
        sign = -sign;
      }
    }
  }
  return ExpPolyMix(std::move(result));
}

ExpPolyMix ExpPolyMix::scaled(double factor) const {
  std::vector<ExpPolyTerm> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return ExpPolyMix(std::move(out));
}

ExpPolyMix convolve_exact(const ExpPolyMix& f1, const ExpPolyMix& f2) { return f1.convolve(f2); }

}  // namespace mshaz
