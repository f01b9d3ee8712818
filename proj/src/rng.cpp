#include "jfl/rng.hpp"

#include <cmath>

namespace jfl::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ mix64(stream + 0x632BE59BD9B4E019ull));
  k = mix64(k ^ mix64(substream + 0x9E6C63D0876A9A62ull));
  return k;
}

Philox::Philox(std::uint64_t key) {
  key_[0] = static_cast<std::uint32_t>(key);
  key_[1] = static_cast<std::uint32_t>(key >> 32);
}

Philox::Philox(const RngSpec& spec, std::uint64_t substream)
    : Philox(derive_key(spec.seed, spec.stream, substream)) {}

void Philox::refill() {
  std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
  std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
  std::uint32_t c2 = 0;
  std::uint32_t c3 = 0;
  std::uint32_t k0 = key_[0];
  std::uint32_t k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  block_[0] = c0;
  block_[1] = c1;
  block_[2] = c2;
  block_[3] = c3;
  pos_ = 0;
  ++counter_;
}

std::uint32_t Philox::next_u32() {
  if (pos_ >= 4) refill();
  return block_[pos_++];
}

std::uint64_t Philox::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double Philox::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Philox::next_unit_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double Philox::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
  const double theta = 2.0 * M_PI * next_unit();
  cached_gaussian_ = r * std::sin(theta);
  has_cached_gaussian_ = true;
  return r * std::cos(theta);
}

double Philox::next_exponential() { return -std::log(next_unit_open()); }

long long Philox::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw ConfigError("Poisson mean must be nonnegative");
  long long total = 0;
  // split large means into exact independent chunks to keep exp(-m) in range
  while (mean > 25.0) {
    mean -= 25.0;
    const double limit = std::exp(-25.0);
    double p = next_unit();
    long long k = 0;
    while (p > limit) {
      p *= next_unit();
      ++k;
    }
    total += k;
  }
  const double limit = std::exp(-mean);
  double p = next_unit();
  long long k = 0;
  while (p > limit) {
    p *= next_unit();
    ++k;
  }
  return total + k;
}

double Philox::next_gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw ConfigError("gamma shape and scale must be positive");
  if (shape < 1.0) {
    // boost to shape + 1, then scale back by a uniform power
    return next_gamma(shape + 1.0, scale) * std::pow(next_unit_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace jfl::rng
