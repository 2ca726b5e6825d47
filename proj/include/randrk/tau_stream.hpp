#pragma once

#include <cstdint>
#include <random>

namespace randrk {

// Reproducible i.i.d. U[0,1) draws for one Monte Carlo path.
//
// Each (seed, path) pair keys its own Mersenne Twister through a seed
// sequence built from the 32-bit halves of both values, so streams for
// different paths are decorrelated and a stream never depends on how other
// streams were consumed.
class TauStream {
 public:
  TauStream(std::uint64_t seed, std::uint64_t path);

  double next();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t path() const { return path_; }
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t path_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

TauStream tau_stream(std::uint64_t seed, std::uint64_t path);

}  // namespace randrk
