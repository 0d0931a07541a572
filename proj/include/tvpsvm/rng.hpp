#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace tvpsvm {

// Seeded random stream. A (seed, stream_id) pair reproduces the exact draw
// sequence; distinct stream ids give statistically independent substreams.
// Single-owner: transfer between threads, never share concurrently.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0,1), both endpoints excluded.
  double uniform();
  // Standard normal via Box-Muller; consumes exactly two uniforms per call
  // so the draw sequence does not depend on hidden cache state.
  double normal();
  // Exponential with the given rate.
  double exponential(double rate = 1.0);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Derive a child stream id from a parent id and a label (job keying).
std::uint64_t derive_stream_id(std::uint64_t base, std::uint64_t label);
std::uint64_t hash_stream_label(const std::string& label);

struct ZInnovation {
  double value;  // Z(a,b,0,1) draw
  double aux;    // its Polya-gamma mixing variable, > 0
};

// N(mean, variance); variance 0 returns the mean exactly.
double sample_gaussian(double mean, double variance, RngStream& rng);

// Gamma(shape, rate), density x^{shape-1} e^{-rate x}.
double sample_gamma(double shape, double rate, RngStream& rng);

// Inverse gamma with density proportional to x^{-shape-1} e^{-scale/x}.
double sample_inverse_gamma(double shape, double scale, RngStream& rng);

// Beta(alpha, beta) on (0,1).
double sample_beta(double alpha, double beta, RngStream& rng);

// Polya-gamma PG(b, c), b > 0. Exact Devroye rejection for b = 1 and integer
// b by convolution; a fractional remainder uses the truncated sum-of-gammas
// representation (200 terms) with a moment-matched gamma tail, whose first
// two moments are exact and whose neglected per-term weights are below
// 1/(2 pi^2 (K+1/2)^2) ~ 1.3e-6.
double sample_polya_gamma(double b, double c, RngStream& rng);

// Z(a,b,0,1) via its PG mixture: aux ~ PG(a+b, 0), value | aux ~
// N((a-b)/(2 aux), 1/aux). Symmetric about 0 when a = b.
ZInnovation sample_z_innovation(double a, double b, RngStream& rng);

}  // namespace tvpsvm
