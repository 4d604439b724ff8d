// Orbits of X_t(m, n) with rank, dimension and the matching prime of A_t.
#include "exteria/exteria.hpp"

#include <cstdio>
#include <cstdlib>

using namespace exteria;

int main(int argc, char** argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 4;
  const int n = argc > 2 ? std::atoi(argv[2]) : 4;
  const int t = argc > 3 ? std::atoi(argv[3]) : 2;
  if (t < 1 || t > m || m > n) {
    std::fprintf(stderr, "usage: orbit_census [m n t] with 1 <= t <= m <= n\n");
    return 2;
  }
  std::printf("X_%d(%d, %d)\n  u  k  rank  dim  sr  prime\n", t, m, n);
  for (const auto& o : admissible_orbits(m, n, t)) {
    ExteriorPoint d = normal_form(o, m, n, t);
    std::printf("%3d %2d %5zu %4ld %3d  %s\n", o.u, o.k, d.rank(), orbit_dimension(o, m, n, t),
                small_rank(d, SmallRankStrategy::Certificate), orbit_to_prime(o, m, n, t).label().c_str());
  }
}
