#include "capcover/random.hpp"

#include <bit>
#include <cmath>

namespace capcover {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(Seed seed, std::uint64_t substream) {
  std::uint64_t key = splitmix64(seed.master);
  key = splitmix64(key ^ seed.stream);
  key = splitmix64(key ^ substream);
  for (auto& word : state_) {
    key += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(key);
  }
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

UnitVector sample_uniform_sphere(Rng& rng) {
  for (;;) {
    const Vec3 v{rng.standard_normal(), rng.standard_normal(), rng.standard_normal()};
    if (norm(v) >= 1e-12) return UnitVector::normalized(v);
  }
}

}  // namespace capcover
