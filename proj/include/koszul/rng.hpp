// Seeded deterministic random source (splitmix64). All randomized suites
// draw through this so identical seeds give identical runs on any host.
#pragma once

#include <cstdint>

#include "koszul/rational.hpp"

namespace koszul {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Small exact rational with numerator in [-max_num, max_num] and
    // denominator in [1, max_den].
    Rational rational(int max_num = 9, int max_den = 4) {
        Rational r(range(-max_num, max_num), range(1, max_den));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int max_num = 9, int max_den = 4) {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (!is_zero(r)) return r;
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace koszul
