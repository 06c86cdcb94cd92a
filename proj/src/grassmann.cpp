#include "pg/grassmann.hpp"

namespace pg {

int canonicalize_monomial(Monomial& gens) {
  int sign = 1;
  // insertion sort; monomials have at most a few dozen generators
  for (std::size_t i = 1; i < gens.size(); ++i) {
    for (std::size_t j = i; j > 0 && gens[j] < gens[j - 1]; --j) {
      std::swap(gens[j], gens[j - 1]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(gens.begin(), gens.end()) != gens.end()) return 0;
  return sign;
}

std::string monomial_str(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += '^';
    s += m[i].str();
  }
  return s;
}

}  // namespace pg
