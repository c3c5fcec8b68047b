// Prints r1, r2 and the exact 4-adic complexity for a few pairs.

#include <iostream>

#include "twoprime/twoprime.hpp"

int main() {
  using namespace twoprime;
  for (auto [p, q] : {std::pair<Int, Int>{41, 5}, {617, 5}, {233, 29}, {5, 89}, {5, 1117}}) {
    const ComplexityReport rep = analyze(TwoPrimeParams::make(p, q));
    std::cout << "p=" << p << " q=" << q << " r1=" << rep.r1 << " r2=" << rep.r2
              << " phi=pq-" << p * q - *rep.phi_exact << "\n";
  }
}
