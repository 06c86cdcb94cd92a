#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace pg {

/// A simplex of dimension <= 5 stored as a strictly increasing list of 1-based vertex ids.
class Simplex {
 public:
  static constexpr int kMaxSize = 6;

  Simplex() = default;
  Simplex(std::initializer_list<int> vertices);
  explicit Simplex(std::span<const int> vertices);

  int size() const { return n_; }
  int operator[](int k) const { return v_[static_cast<std::size_t>(k)]; }
  const int* begin() const { return v_.data(); }
  const int* end() const { return v_.data() + n_; }

  bool contains(int vertex) const { return std::binary_search(begin(), end(), vertex); }
  bool contains(const Simplex& face) const { return std::includes(begin(), end(), face.begin(), face.end()); }
  /// 0-based position of vertex, or -1.
  int position(int vertex) const;

  /// This simplex with the vertex at position k removed.
  Simplex without_position(int k) const;
  Simplex without(int vertex) const { return without_position(position(vertex)); }
  /// The single vertex of this simplex not in face; face must be a facet.
  int opposite_vertex(const Simplex& facet) const;

  /// "1234" when every id is a single digit, "10,11,12" otherwise.
  std::string str() const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<int, kMaxSize> v_{};
  int n_ = 0;
};

/// Sign (+1 / -1) of the permutation taking `sorted` to `seq`; both list the same distinct ids.
int permutation_sign(std::span<const int> seq);

}  // namespace pg
