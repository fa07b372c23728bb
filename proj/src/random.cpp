#include "floqsim/random.hpp"

#include <algorithm>

namespace floqsim {

long sample_binomial(Rng& rng, long shots, double p) {
  p = std::clamp(p, 0.0, 1.0);
  if (p == 0.0) return 0;
  if (p == 1.0) return shots;
  std::binomial_distribution<long> dist(shots, p);
  return dist(rng);
}

}  // namespace floqsim
