#include "pg/simplex.hpp"

#include "pg/error.hpp"

namespace pg {

Simplex::Simplex(std::initializer_list<int> vertices)
    : Simplex(std::span<const int>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const int> vertices) {
  if (vertices.size() > kMaxSize)
    throw Error(ErrorCode::InvalidTriangulation, "simplex with more than 6 vertices");
  n_ = static_cast<int>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  std::sort(v_.data(), v_.data() + n_);
  if (std::adjacent_find(begin(), end()) != end())
    throw Error(ErrorCode::InvalidTriangulation, "repeated vertex in simplex");
}

int Simplex::position(int vertex) const {
  auto it = std::lower_bound(begin(), end(), vertex);
  return (it != end() && *it == vertex) ? static_cast<int>(it - begin()) : -1;
}

Simplex Simplex::without_position(int k) const {
  Simplex r;
  for (int i = 0; i < n_; ++i)
    if (i != k) r.v_[static_cast<std::size_t>(r.n_++)] = v_[static_cast<std::size_t>(i)];
  return r;
}

int Simplex::opposite_vertex(const Simplex& facet) const {
  if (facet.size() + 1 != n_ || !contains(facet))
    throw Error(ErrorCode::NotAFacet, facet.str() + " is not a facet of " + str());
  for (int v : *this)
    if (!facet.contains(v)) return v;
  return -1;
}

std::string Simplex::str() const {
  const bool short_ids = std::all_of(begin(), end(), [](int v) { return v >= 0 && v < 10; });
  std::string s;
  for (int i = 0; i < n_; ++i) {
    if (i > 0 && !short_ids) s += ',';
    s += std::to_string(v_[static_cast<std::size_t>(i)]);
  }
  return s;
}

int permutation_sign(std::span<const int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) sign = -sign;
  return sign;
}

}  // namespace pg
