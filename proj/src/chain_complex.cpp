#include "pg/chain_complex.hpp"

namespace pg {

std::string space_name(Space s) {
  switch (s) {
    case Space::V0: return "V0";
    case Space::V2: return "V2";
    case Space::V3: return "V3";
    case Space::V4: return "V4";
    case Space::V0Star: return "V0*";
    case Space::W2: return "W2";
    case Space::W3: return "W3";
    case Space::W4: return "W4";
    case Space::GVertex: return "gV";
    case Space::GTet: return "gT";
    case Space::GMid: return "gU";
    case Space::GEdge: return "gE";
    case Space::GVertexE: return "gE*";
    case Space::GVertexF: return "gF*";
  }
  return "?";
}

std::string BasisLabel::str() const {
  std::string s = space_name(space) + ":(" + face.str();
  if (vertex != 0) s += "," + std::to_string(vertex);
  return s + ")";
}

}  // namespace pg
