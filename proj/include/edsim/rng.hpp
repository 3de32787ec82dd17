#ifndef EDSIM_RNG_HPP
#define EDSIM_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace edsim {

// Named, independently seeded random stream (xoshiro256** state seeded
// through splitmix64 over the (seed, name, keys) tuple). Same inputs give
// the same sequence; distinct names give unrelated sequences. Purpose-keyed
// substreams are what makes common-random-number comparisons exact: a draw
// consumed for one patient never shifts another patient's draws.
class RngStream {
 public:
  RngStream() : RngStream(0, "default") {}
  RngStream(uint64_t seed, std::string_view name,
            uint64_t k0 = 0, uint64_t k1 = 0, uint64_t k2 = 0);

  uint64_t next_u64();
  // Uniform in [0, 1).
  double next_double();

 private:
  std::array<uint64_t, 4> state_;
};

inline RngStream fork_stream(uint64_t seed, std::string_view name) {
  return RngStream(seed, name);
}

}  // namespace edsim

#endif
