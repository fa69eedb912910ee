#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cfslice {

// splitmix64 finalizer, used to derive independent stream seeds from one
// master seed so that enabling or disabling one randomization does not
// perturb the draws of another.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag) {
  return splitmix64(master ^ splitmix64(stream_tag));
}

// Stream tags for the per-scenario random streams.
enum : std::uint64_t {
  kStreamPlacement = 0x11,
  kStreamShadowing = 0x22,
  kStreamTraffic = 0x33,
  kStreamPilots = 0x44,
  kStreamAssocOrder = 0x55,
};

// mt19937_64 with hand-rolled double/normal conversions so that draws are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(eng_()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  // standard normal via Box-Muller
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0,1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cfslice
