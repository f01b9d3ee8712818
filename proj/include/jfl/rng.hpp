#ifndef JFL_RNG_HPP
#define JFL_RNG_HPP

#include <cstdint>

#include "jfl/errors.hpp"

namespace jfl::rng {

// Seed plus stream id fully determine every draw; distinct stream ids give
// independent streams from one seed.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// splitmix64 finalizer (Steele-Lea-Flood); used to spread (seed, stream,
// substream) triples into well-separated Philox keys.
std::uint64_t mix64(std::uint64_t z);
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream);

// Philox4x32-10 counter-based generator. The output block is a pure function
// of (key, counter), so any draw can be reproduced from seed and stream.
class Philox {
 public:
  explicit Philox(std::uint64_t key);
  Philox(const RngSpec& spec, std::uint64_t substream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();       // uniform on [0,1), 53 bits
  double next_unit_open();  // uniform on (0,1), safe under log
  double next_gaussian();   // standard normal, Box-Muller with a cached mate
  double next_exponential();
  long long next_poisson(double mean);
  double next_gamma(double shape, double scale);  // Marsaglia-Tsang

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint64_t counter_ = 0;
  std::uint32_t block_[4] = {0, 0, 0, 0};
  int pos_ = 4;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace jfl::rng

#endif  // JFL_RNG_HPP
