#ifndef AMPSIM_RECOMMENDER_HPP
#define AMPSIM_RECOMMENDER_HPP

// User-based collaborative filtering over a binary consumption matrix:
// cosine similarity between consumption rows, the w most similar users as
// neighbours, and similarity-weighted scores for unconsumed items.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ampsim/random.hpp"

namespace ampsim {

using Index = Eigen::Index;
using BinaryRow = Eigen::Matrix<std::uint8_t, 1, Eigen::Dynamic>;

/// Read-only view of one user's consumption history. `mask` has one 0/1
/// entry per catalog item; `items` lists the ones, in consumption order.
struct RowQuery {
  Index user;
  std::span<const Index> items;
  std::span<const std::uint8_t> mask;
};

class ConsumptionMatrix {
 public:
  using Dense = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  ConsumptionMatrix(Index num_users, Index num_items);

  Index num_users() const { return bits_.rows(); }
  Index num_items() const { return bits_.cols(); }

  bool consumed(Index user, Index item) const { return bits_(user, item) != 0; }
  Index consumed_count(Index user) const { return static_cast<Index>(user_items_[idx(user)].size()); }
  Index total_consumed() const;

  /// Items consumed by `user`, in the order they were marked.
  std::span<const Index> row_items(Index user) const { return user_items_[idx(user)]; }
  /// Users who consumed `item`.
  std::span<const Index> item_users(Index item) const { return item_users_[idx(item)]; }

  RowQuery query(Index user) const;

  void mark_consumed(Index user, Index item);
  /// Zeroes the user's row and returns its previous contents.
  BinaryRow erase_row(Index user);
  void restore_row(Index user, const BinaryRow& saved);

  const Dense& dense() const { return bits_; }

  /// FNV-1a over the dense bits, row-major.
  std::uint64_t checksum() const;

 private:
  static std::size_t idx(Index i) { return static_cast<std::size_t>(i); }

  Dense bits_;
  std::vector<std::vector<Index>> user_items_;
  std::vector<std::vector<Index>> item_users_;
};

/// Private copy of one user's row layered over a shared, frozen matrix.
/// Starts empty, as if the user's row had been erased.
class RowOverlay {
 public:
  RowOverlay(Index user, Index num_items) : user_(user), mask_(static_cast<std::size_t>(num_items), 0) {}

  Index user() const { return user_; }
  bool consumed(Index item) const { return mask_[static_cast<std::size_t>(item)] != 0; }
  std::span<const Index> items() const { return items_; }

  void mark_consumed(Index item);
  RowQuery query() const { return {user_, items_, mask_}; }

 private:
  Index user_;
  std::vector<Index> items_;
  std::vector<std::uint8_t> mask_;
};

struct Neighbor {
  Index user;
  double similarity;
};

struct Slate {
  std::vector<Index> items;
  std::vector<double> scores;

  std::size_t size() const { return items.size(); }
};

/// dot(a, b) / (|a| |b|) for 0/1 vectors; 0 when either vector is all zero.
double cosine_similarity(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Cosine from an overlap count and the two row counts. Every similarity in
/// this library goes through here so that independent routes agree bitwise.
inline double cosine_from_counts(Index overlap, Index count_a, Index count_b) {
  if (count_a == 0 || count_b == 0) return 0.0;
  return static_cast<double>(overlap) /
         std::sqrt(static_cast<double>(count_a) * static_cast<double>(count_b));
}

/// Cosine similarity of the query row against every row of `s`. The entry
/// for the query user itself is left at 0.
Eigen::VectorXd similarities(const ConsumptionMatrix& s, const RowQuery& query);

/// The `w` other users most similar to the query row, most similar first.
/// Users are shuffled with `rng` before ranking so ties resolve uniformly.
/// Returns every other user when fewer than `w` exist.
std::vector<Neighbor> nearest_neighbors(const ConsumptionMatrix& s, const RowQuery& query, Index w, Rng& rng);

/// Similarity-weighted share of neighbours that consumed `item`; 0 when the
/// neighbours' similarities sum to 0.
double score(const ConsumptionMatrix& s, Index item, std::span<const Neighbor> neighbors);

/// Top min(v, #unconsumed) unconsumed items by score, ties broken uniformly
/// at random. An all-zero score vector yields a uniform random draw.
/// Throws std::invalid_argument when nothing is left to recommend.
Slate recommend(const ConsumptionMatrix& s, const RowQuery& query, Index v, Index w, Rng& rng);

inline Slate recommend(const ConsumptionMatrix& s, Index user, Index v, Index w, Rng& rng) {
  return recommend(s, s.query(user), v, w, rng);
}

}  // namespace ampsim

#endif  // AMPSIM_RECOMMENDER_HPP
