#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace ck {

// Counter-based random streams. Every (purpose, replica, project, group)
// coordinate tuple is hashed together with the master seed into an
// independent splitmix64 sequence, so draws depend only on the coordinates
// and never on execution order or thread count.
//
// Mixing function: starting from the master seed, each coordinate c is
// folded in as  key <- finalize(key ^ (c + 0x9e3779b97f4a7c15))  where
// finalize is the splitmix64 output permutation.

inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_key(std::uint64_t master_seed,
                                       std::initializer_list<std::uint64_t> coords) {
  std::uint64_t key = splitmix64_finalize(master_seed + 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t c : coords) {
    key = splitmix64_finalize(key ^ (c + 0x9e3779b97f4a7c15ULL));
  }
  return key;
}

// One independent stream; generation is a splitmix64 walk from the key.
class stream_rng {
 public:
  explicit stream_rng(std::uint64_t key) : state_(key) {}

  stream_rng(std::uint64_t master_seed, std::initializer_list<std::uint64_t> coords)
      : state_(derive_stream_key(master_seed, coords)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_finalize(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in the half-open interval [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

  // Standard normal draw via Box-Muller; consumes exactly two uniforms.
  double next_normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

// Stream purposes keep draws for different roles statistically disjoint.
enum class stream_purpose : std::uint64_t {
  evaluation = 1,    // one draw per (replica, project, group) cell
  project_type = 2,  // one draw per (replica, project)
  info_error = 3,    // delegation / min-variance degradation coins
  sweep_cell = 4,    // derives per-cell master seeds in sweeps
};

inline std::uint64_t purpose_tag(stream_purpose p) { return static_cast<std::uint64_t>(p); }

struct random_source {
  std::uint64_t master_seed = 1;
};

}  // namespace ck
