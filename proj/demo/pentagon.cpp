// The regular pentagon as a two-distance set: the 5-cycle is spherical with
// distance ratio equal to the golden ratio and lives in the plane.

#include <cstdio>

#include "twodist/twodist.hpp"

int main() {
  using namespace twodist;

  const Graph c5 = cycle_graph(5);
  const SphericalReport r = test_spherical(c5);
  std::printf("C5 spherical: %s  k = %.12f  min dimension = %d\n", r.spherical ? "yes" : "no", *r.ratio_k,
              *r.min_dimension);

  // edges of C5 are the long distance, so the long pairs are the pentagon's diagonals
  const Embedding e = realize(c5);
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    std::printf("  p%zu = (%+.6f, %+.6f)\n", i, e.points[i][0], e.points[i][1]);
  }
  if (e.circumradius) std::printf("circumradius %.12f\n", *e.circumradius);

  const Graph k1_k3 = complete_graph(3).with_vertex(0);
  std::printf("K1+K3 spherical: %s\n", test_spherical(k1_k3).spherical ? "yes" : "no");
  return 0;
}
