#include "ampsim/recommender.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace ampsim {

namespace {

struct Ranked {
  double key;
  std::size_t position;
  Index id;
};

// Shuffles `ids`, then keeps the `keep` entries with the largest keys.
// Equal keys keep their shuffled order, which makes tie-breaking uniform.
template <typename KeyFn>
std::vector<Ranked> shuffled_top(std::vector<Index> ids, std::size_t keep, KeyFn key, Rng& rng) {
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Ranked> ranked(ids.size());
  for (std::size_t p = 0; p < ids.size(); ++p) ranked[p] = {key(ids[p]), p, ids[p]};
  keep = std::min(keep, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const Ranked& a, const Ranked& b) {
                      if (a.key != b.key) return a.key > b.key;
                      return a.position < b.position;
                    });
  ranked.resize(keep);
  return ranked;
}

}  // namespace

ConsumptionMatrix::ConsumptionMatrix(Index num_users, Index num_items)
    : bits_(Dense::Zero(num_users, num_items)),
      user_items_(static_cast<std::size_t>(num_users)),
      item_users_(static_cast<std::size_t>(num_items)) {
  if (num_users < 1 || num_items < 1) throw std::invalid_argument("ConsumptionMatrix: empty dimensions");
}

Index ConsumptionMatrix::total_consumed() const {
  Index total = 0;
  for (const auto& row : user_items_) total += static_cast<Index>(row.size());
  return total;
}

RowQuery ConsumptionMatrix::query(Index user) const {
  return {user, row_items(user),
          std::span<const std::uint8_t>(bits_.row(user).data(), static_cast<std::size_t>(num_items()))};
}

void ConsumptionMatrix::mark_consumed(Index user, Index item) {
  assert(!consumed(user, item) && "item consumed twice");
  if (consumed(user, item)) return;
  bits_(user, item) = 1;
  user_items_[idx(user)].push_back(item);
  item_users_[idx(item)].push_back(user);
}

BinaryRow ConsumptionMatrix::erase_row(Index user) {
  BinaryRow saved = bits_.row(user);
  for (Index item : user_items_[idx(user)]) {
    auto& users = item_users_[idx(item)];
    users.erase(std::find(users.begin(), users.end(), user));
  }
  user_items_[idx(user)].clear();
  bits_.row(user).setZero();
  return saved;
}

void ConsumptionMatrix::restore_row(Index user, const BinaryRow& saved) {
  if (saved.size() != num_items()) throw std::invalid_argument("restore_row: length mismatch");
  erase_row(user);
  for (Index j = 0; j < saved.size(); ++j)
    if (saved(j) != 0) mark_consumed(user, j);
}

std::uint64_t ConsumptionMatrix::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::uint8_t* p = bits_.data();
  for (Index n = 0; n < bits_.size(); ++n) {
    h ^= p[n];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void RowOverlay::mark_consumed(Index item) {
  auto& bit = mask_[static_cast<std::size_t>(item)];
  assert(bit == 0 && "item consumed twice");
  if (bit != 0) return;
  bit = 1;
  items_.push_back(item);
}

double cosine_similarity(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  assert(a.size() == b.size());
  Index overlap = 0, na = 0, nb = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    na += a[j] != 0;
    nb += b[j] != 0;
    overlap += (a[j] != 0) && (b[j] != 0);
  }
  return cosine_from_counts(overlap, na, nb);
}

Eigen::VectorXd similarities(const ConsumptionMatrix& s, const RowQuery& query) {
  Eigen::VectorXi overlap = Eigen::VectorXi::Zero(s.num_users());
  for (Index item : query.items)
    for (Index k : s.item_users(item)) ++overlap(k);
  const auto count = static_cast<Index>(query.items.size());
  Eigen::VectorXd sim(s.num_users());
  for (Index k = 0; k < s.num_users(); ++k)
    sim(k) = k == query.user ? 0.0 : cosine_from_counts(overlap(k), count, s.consumed_count(k));
  return sim;
}

std::vector<Neighbor> nearest_neighbors(const ConsumptionMatrix& s, const RowQuery& query, Index w, Rng& rng) {
  if (w < 1) throw std::invalid_argument("nearest_neighbors: w must be >= 1");
  const Eigen::VectorXd sim = similarities(s, query);
  std::vector<Index> others;
  others.reserve(static_cast<std::size_t>(s.num_users()));
  for (Index k = 0; k < s.num_users(); ++k)
    if (k != query.user) others.push_back(k);
  const auto top = shuffled_top(std::move(others), static_cast<std::size_t>(w),
                                [&](Index k) { return sim(k); }, rng);
  std::vector<Neighbor> out;
  out.reserve(top.size());
  for (const Ranked& r : top) out.push_back({r.id, r.key});
  return out;
}

double score(const ConsumptionMatrix& s, Index item, std::span<const Neighbor> neighbors) {
  double num = 0.0, den = 0.0;
  for (const Neighbor& n : neighbors) {
    den += n.similarity;
    if (s.consumed(n.user, item)) num += n.similarity;
  }
  return den > 0.0 ? num / den : 0.0;
}

Slate recommend(const ConsumptionMatrix& s, const RowQuery& query, Index v, Index w, Rng& rng) {
  if (v < 1) throw std::invalid_argument("recommend: v must be >= 1");
  std::vector<Index> unconsumed;
  unconsumed.reserve(static_cast<std::size_t>(s.num_items()));
  for (Index j = 0; j < s.num_items(); ++j)
    if (query.mask[static_cast<std::size_t>(j)] == 0) unconsumed.push_back(j);
  if (unconsumed.empty()) throw std::invalid_argument("recommend: user has consumed the entire catalog");

  const std::vector<Neighbor> neighbors = nearest_neighbors(s, query, w, rng);

  // Only items some neighbour consumed can score above zero. Accumulating in
  // neighbour order gives the same sums as scoring every item with score().
  double den = 0.0;
  for (const Neighbor& n : neighbors) den += n.similarity;
  Eigen::VectorXd numer = Eigen::VectorXd::Zero(s.num_items());
  if (den > 0.0)
    for (const Neighbor& n : neighbors)
      for (Index j : s.row_items(n.user)) numer(j) += n.similarity;

  const auto top = shuffled_top(std::move(unconsumed), static_cast<std::size_t>(v),
                                [&](Index j) { return den > 0.0 ? numer(j) / den : 0.0; }, rng);
  Slate slate;
  slate.items.reserve(top.size());
  slate.scores.reserve(top.size());
  for (const Ranked& r : top) {
    slate.items.push_back(r.id);
    slate.scores.push_back(r.key);
  }
  return slate;
}

}  // namespace ampsim
