#include "tvpsvm/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "tvpsvm/errors.hpp"

namespace tvpsvm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Piecewise bound used by the Devroye rejection sampler, below which the
// alternating series for the J*(1,z) density is evaluated.
constexpr double kTruncPoint = 0.64;

std::uint64_t splitmix64_u(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // 53-bit mantissa, shifted into the open interval (0,1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double RngStream::exponential(double rate) {
  return -std::log(uniform()) / rate;
}

std::uint64_t derive_stream_id(std::uint64_t base, std::uint64_t label) {
  std::uint64_t x = base ^ (label * 0xD1B54A32D192ED03ULL);
  return splitmix64_u(x);
}

std::uint64_t hash_stream_label(const std::string& label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double sample_gaussian(double mean, double variance, RngStream& rng) {
  if (!(variance >= 0.0)) {
    throw std::domain_error("sample_gaussian: variance must be nonnegative");
  }
  if (variance == 0.0) return mean;
  return mean + std::sqrt(variance) * rng.normal();
}

double sample_gamma(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("sample_gamma: shape and rate must be positive");
  }
  if (shape < 1.0) {
    // Boost to shape+1 and scale back (Marsaglia-Tsang augmentation).
    double u = rng.uniform();
    return sample_gamma(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

double sample_inverse_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::domain_error(
        "sample_inverse_gamma: shape and scale must be positive");
  }
  return 1.0 / sample_gamma(shape, scale, rng);
}

double sample_beta(double alpha, double beta, RngStream& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("sample_beta: parameters must be positive");
  }
  for (;;) {
    double ga = sample_gamma(alpha, 1.0, rng);
    double gb = sample_gamma(beta, 1.0, rng);
    if (ga + gb > 0.0) return ga / (ga + gb);
  }
}

namespace {

// Coefficients a_n(x) of the alternating series for the J*(1,z) density,
// with the piecewise form switching at the truncation point.
double pg_series_coef(int n, double x) {
  const double np = n + 0.5;
  if (x > kTruncPoint) {
    return kPi * np * std::exp(-np * np * kPi * kPi * x / 2.0);
  }
  return kPi * np * std::pow(2.0 / (kPi * x), 1.5) *
         std::exp(-2.0 * np * np / x);
}

// Probability that the proposal falls in the truncated-exponential branch.
double pg_texpon_mass(double z) {
  const double t = kTruncPoint;
  const double fz = kPi * kPi / 8.0 + z * z / 2.0;
  const double b = std::sqrt(1.0 / t) * (t * z - 1.0);
  const double a = -std::sqrt(1.0 / t) * (t * z + 1.0);
  const double x0 = std::log(fz) + fz * t;
  const double xb = x0 - z + std::log(norm_cdf(b));
  const double xa = x0 + z + std::log(norm_cdf(a));
  const double qdivp = 4.0 / kPi * (std::exp(xb) + std::exp(xa));
  return 1.0 / (1.0 + qdivp);
}

// Inverse-Gaussian(1/z, 1) truncated to (0, kTruncPoint).
double pg_trunc_inv_gauss(double z, RngStream& rng) {
  const double t = kTruncPoint;
  double x = t + 1.0;
  if (1.0 / t > z) {
    // Small tilt: rejection from a scaled chi-like proposal.
    double alpha = 0.0;
    while (rng.uniform() > alpha) {
      double e1 = rng.exponential();
      double e2 = rng.exponential();
      while (e1 * e1 > 2.0 * e2 / t) {
        e1 = rng.exponential();
        e2 = rng.exponential();
      }
      x = t / ((1.0 + t * e1) * (1.0 + t * e1));
      alpha = std::exp(-0.5 * z * z * x);
    }
  } else {
    const double mu = 1.0 / z;
    while (x > t) {
      double y = rng.normal();
      y *= y;
      const double half_mu = 0.5 * mu;
      const double mu_y = mu * y;
      x = mu + half_mu * mu_y - half_mu * std::sqrt(4.0 * mu_y + mu_y * mu_y);
      if (rng.uniform() > mu / (mu + x)) x = mu * mu / x;
    }
  }
  return x;
}

// Exact PG(1, c) draw: Devroye-type rejection on J*(1, |c|/2)/4.
double pg_devroye_1(double c, RngStream& rng) {
  const double z = std::fabs(c) * 0.5;
  const double fz = kPi * kPi / 8.0 + z * z / 2.0;
  const double texpon = pg_texpon_mass(z);
  for (;;) {
    double x;
    if (rng.uniform() < texpon) {
      x = kTruncPoint + rng.exponential() / fz;
    } else {
      x = pg_trunc_inv_gauss(z, rng);
    }
    double s = pg_series_coef(0, x);
    double y = rng.uniform() * s;
    int n = 0;
    for (;;) {
      ++n;
      if (n % 2 == 1) {
        s -= pg_series_coef(n, x);
        if (y <= s) return 0.25 * x;
      } else {
        s += pg_series_coef(n, x);
        if (y > s) break;
      }
    }
  }
}

// PG(b, c) for fractional b in (0,1) via the truncated sum-of-gammas
// representation; the tail beyond kPgTerms is replaced by a gamma variate
// matching its mean and variance.
constexpr int kPgTerms = 200;
constexpr int kPgTailTerms = 2000;

double pg_gamma_sum(double b, double c, RngStream& rng) {
  const double t = c / (2.0 * kPi);
  const double t2 = t * t;
  double draw = 0.0;
  double head_w = 0.0;
  for (int k = 1; k <= kPgTerms; ++k) {
    const double km = k - 0.5;
    const double w = 1.0 / (2.0 * kPi * kPi * (km * km + t2));
    head_w += w;
    draw += w * sample_gamma(b, 1.0, rng);
  }
  // Closed form for the full weight sum: sum_k 1/((k-1/2)^2 + t^2)
  // = (pi/(2t)) tanh(pi t), with limit pi^2/2 at t = 0.
  double full_sum;
  if (std::fabs(t) < 1e-8) {
    full_sum = kPi * kPi / 2.0;
  } else {
    full_sum = kPi / (2.0 * std::fabs(t)) * std::tanh(kPi * std::fabs(t));
  }
  const double tail_w = full_sum / (2.0 * kPi * kPi) - head_w;
  if (tail_w <= 0.0) return draw;
  double tail_w2 = 0.0;
  for (int k = kPgTerms + 1; k <= kPgTerms + kPgTailTerms; ++k) {
    const double km = k - 0.5;
    const double w = 1.0 / (2.0 * kPi * kPi * (km * km + t2));
    tail_w2 += w * w;
  }
  const double tail_mean = b * tail_w;
  const double tail_var = b * tail_w2;
  if (tail_var <= 0.0) return draw + tail_mean;
  const double rate = tail_mean / tail_var;
  const double shape = tail_mean * rate;
  return draw + sample_gamma(shape, rate, rng);
}

}  // namespace

double sample_polya_gamma(double b, double c, RngStream& rng) {
  if (!(b > 0.0)) {
    throw std::domain_error("sample_polya_gamma: b must be positive");
  }
  double total = 0.0;
  double n_int;
  const double frac = std::modf(b, &n_int);
  for (int i = 0; i < static_cast<int>(n_int); ++i) {
    total += pg_devroye_1(c, rng);
  }
  if (frac > 0.0) {
    total += pg_gamma_sum(frac, c, rng);
  }
  return total;
}

ZInnovation sample_z_innovation(double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("sample_z_innovation: a and b must be positive");
  }
  const double xi = sample_polya_gamma(a + b, 0.0, rng);
  const double value = sample_gaussian((a - b) / (2.0 * xi), 1.0 / xi, rng);
  return {value, xi};
}

}  // namespace tvpsvm
