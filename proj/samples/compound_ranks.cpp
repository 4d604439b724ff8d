// Rank of Lambda_t(B) for random B of every rank: always C(rank B, t).
#include "exteria/exteria.hpp"

#include <cstdio>

using namespace exteria;

int main() {
  const int m = 4, n = 5;
  std::printf("rank B | t=1 t=2 t=3 t=4\n");
  for (int r = 0; r <= m; ++r) {
    QMatrix b = random_matrix(m, n, r, 7 + r);
    std::printf("%6d |", r);
    for (int t = 1; t <= m; ++t) std::printf(" %3zu", compound(b, t).rank());
    std::printf("\n");
  }
}
