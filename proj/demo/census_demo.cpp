// Shortest closed geodesics of the Bolza surface and a few log-zeta values.

#include <complex>
#include <iomanip>
#include <iostream>

#include "ruelle/orbit_enum.hpp"
#include "ruelle/zeta_engine.hpp"

int main() {
  using namespace ruelle;
  const GroupModel bolza = models::bolza();
  CensusOptions opts;
  opts.T_max = 6.0;
  opts.require_complete = false;
  const Census c = census(bolza, opts);

  std::cout << "Bolza census to T = 6: " << c.orbits.size() << " orbits\n";
  for (std::size_t i = 0; i < c.orbits.size() && i < 5; ++i) {
    const auto& o = c.orbits[i];
    std::cout << "  " << std::setw(8) << bolza.alphabet().format(o.word.letters()) << "  T = " << o.T << '\n';
  }

  const WeightedCensus wc = weigh(c, bolza.entropy);
  for (double im : {3.0, 5.0, 10.0}) {
    const std::complex<double> lambda(0.0, im);
    const TruncatedValue v = log_zeta_R(wc, lambda);
    std::cout << "log zeta_R(" << im << "i) = " << v.value.real() << "  (tail <= " << v.tail_estimate
              << ", factorization residual " << factorization_residual(wc, lambda) << ")\n";
  }
}
