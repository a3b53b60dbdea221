#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace isv::detail {

/// Union-find where every element carries a sign relative to its root.
/// Uniting two elements already in one class with an incompatible relative
/// sign marks the class as conflicted.
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), sign_(n, 1), rank_(n, 0), conflict_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  /// Root and the sign of `x` relative to it.
  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 1};
    const auto [root, s] = find(parent_[x]);
    parent_[x] = root;
    sign_[x] *= s;
    return {root, sign_[x]};
  }

  /// Records sign(b) = rel * sign(a).
  void unite(std::size_t a, std::size_t b, int rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa * rel != sb) conflict_[ra] = true;
      return;
    }
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(sa, sb);
    }
    parent_[rb] = ra;
    sign_[rb] = sa * rel * sb;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    conflict_[ra] = conflict_[ra] || conflict_[rb];
  }

  [[nodiscard]] bool conflicted(std::size_t root) const { return conflict_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<int> rank_;
  std::vector<bool> conflict_;
};

}  // namespace isv::detail
