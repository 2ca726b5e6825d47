#include "randrk/tau_stream.hpp"

namespace randrk {

namespace {

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
                    0x7261u /* stream tag */};
  return std::mt19937_64(seq);
}

}  // namespace

TauStream::TauStream(std::uint64_t seed, std::uint64_t path)
    : seed_(seed), path_(path), engine_(keyed_engine(seed, path)) {}

double TauStream::next() {
  ++position_;
  // Top 53 bits -> [0, 1); never returns 1.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

TauStream tau_stream(std::uint64_t seed, std::uint64_t path) { return TauStream(seed, path); }

}  // namespace randrk
