// The 12-term relation among 2-minors of a 4 x 4 matrix, checked three ways.
#include "exteria/exteria.hpp"

#include <iostream>

using namespace exteria;

int main() {
  RelationExpr r = twelve_term_relation();
  std::cout << r.str() << "\n\n";
  std::cout << "expanded terms:     " << expand(r, 4, 4).size() << "\n";
  std::cout << "random evaluations: " << (is_zero(r, ZeroTestMode::Probabilistic, 3).zero ? "all zero" : "nonzero")
            << "\n";

  // It is also a generalized Plücker relation, up to sign.
  std::cout << "equals -genplu2(0, 2): " << std::boolalpha << (r == genplu2_relation(0, 2) * Rational(-1)) << "\n";

  // Doubling one term breaks it, and the exact test names a surviving monomial.
  RelationExpr broken = r + parse_relation("[12|12][34|34]");
  std::cout << "perturbed: " << is_zero(broken).witness << "\n";
}
