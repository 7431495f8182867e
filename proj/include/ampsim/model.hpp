#ifndef AMPSIM_MODEL_HPP
#define AMPSIM_MODEL_HPP

// User-preference model: beta-binomial utility curves per topic, the dense
// user x item utility matrix built from them, and relative utility (the
// share of organic, recommender-free consumption each topic would receive).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ampsim/topic.hpp"

namespace ampsim {

using Index = Eigen::Index;

struct TopicSpec {
  Topic label;
  double alpha;
  double beta;
  double gamma;
  Index item_count;
};

/// Topics laid out as contiguous item blocks, in the order given.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<TopicSpec> topics);

  const std::vector<TopicSpec>& topics() const { return topics_; }
  std::size_t topic_count() const { return topics_.size(); }
  Index num_items() const { return offsets_.empty() ? 0 : offsets_.back(); }

  /// First item index of the block at catalog position `pos`.
  Index block_begin(std::size_t pos) const { return offsets_[pos]; }
  Index block_size(std::size_t pos) const { return topics_[pos].item_count; }

  /// Catalog position of the block that holds `item`.
  std::size_t position_of_item(Index item) const;
  Topic topic_of_item(Index item) const { return topics_[position_of_item(item)].label; }

  bool contains(Topic t) const;
  /// Catalog position of topic `t`; throws std::out_of_range when absent.
  std::size_t position_of(Topic t) const;

 private:
  std::vector<TopicSpec> topics_;
  std::vector<Index> offsets_;  // size topics_ + 1
  std::vector<std::size_t> item_block_;
};

inline Catalog::Catalog(std::vector<TopicSpec> topics) : topics_(std::move(topics)) {
  if (topics_.empty()) throw std::invalid_argument("catalog: no topics");
  offsets_.reserve(topics_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t q = 0; q < topics_.size(); ++q) {
    const TopicSpec& t = topics_[q];
    const std::string where = "catalog: topic " + std::string(to_string(t.label));
    if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) throw std::invalid_argument(where + ": alpha must be > 0");
    if (!(t.beta > 0.0) || !std::isfinite(t.beta)) throw std::invalid_argument(where + ": beta must be > 0");
    if (!(t.gamma > 0.0) || !std::isfinite(t.gamma)) throw std::invalid_argument(where + ": gamma must be > 0");
    if (t.item_count < 1) throw std::invalid_argument(where + ": item_count must be >= 1");
    for (std::size_t p = 0; p < q; ++p)
      if (topics_[p].label == t.label) throw std::invalid_argument(where + ": duplicate label");
    offsets_.push_back(offsets_.back() + t.item_count);
  }
  item_block_.resize(static_cast<std::size_t>(offsets_.back()));
  for (std::size_t q = 0; q < topics_.size(); ++q)
    for (Index j = offsets_[q]; j < offsets_[q + 1]; ++j) item_block_[static_cast<std::size_t>(j)] = q;
}

inline std::size_t Catalog::position_of_item(Index item) const {
  if (item < 0 || item >= num_items()) throw std::out_of_range("catalog: item index out of range");
  return item_block_[static_cast<std::size_t>(item)];
}

inline bool Catalog::contains(Topic t) const {
  for (const TopicSpec& s : topics_)
    if (s.label == t) return true;
  return false;
}

inline std::size_t Catalog::position_of(Topic t) const {
  for (std::size_t q = 0; q < topics_.size(); ++q)
    if (topics_[q].label == t) return q;
  throw std::out_of_range("catalog: topic " + std::string(to_string(t)) + " not present");
}

template <typename Scalar>
using UtilityMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using TopicShares = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Beta-binomial probability of `i` successes out of `n`, evaluated as
/// exp(log C(n,i) + log B(i+alpha, n-i+beta) - log B(alpha, beta)).
/// Throws std::domain_error outside alpha, beta > 0 and 0 <= i <= n.
template <typename Scalar = double>
Scalar beta_binomial_pmf(Index i, Index n, Scalar alpha, Scalar beta) {
  using std::exp;
  using std::lgamma;
  if (!(alpha > Scalar(0)) || !(beta > Scalar(0)))
    throw std::domain_error("beta_binomial_pmf: alpha and beta must be positive");
  if (n < 0 || i < 0 || i > n) throw std::domain_error("beta_binomial_pmf: i outside [0, n]");
  const Scalar si = static_cast<Scalar>(i);
  const Scalar sn = static_cast<Scalar>(n);
  const Scalar log_choose = lgamma(sn + 1) - lgamma(si + 1) - lgamma(sn - si + 1);
  const Scalar log_beta_num = lgamma(si + alpha) + lgamma(sn - si + beta) - lgamma(sn + alpha + beta);
  const Scalar log_beta_den = lgamma(alpha) + lgamma(beta) - lgamma(alpha + beta);
  return exp(log_choose + log_beta_num - log_beta_den);
}

/// Utility of each topic's items for every user, one entry per catalog
/// position: gamma_q * pmf(i; num_users - 1, alpha_q, beta_q).
template <typename Scalar = double>
UtilityMatrix<Scalar> topic_utilities(Index num_users, const Catalog& catalog) {
  if (num_users < 1) throw std::invalid_argument("topic_utilities: num_users must be >= 1");
  UtilityMatrix<Scalar> out(num_users, static_cast<Index>(catalog.topic_count()));
  for (std::size_t q = 0; q < catalog.topic_count(); ++q) {
    const TopicSpec& t = catalog.topics()[q];
    for (Index i = 0; i < num_users; ++i)
      out(i, static_cast<Index>(q)) = static_cast<Scalar>(t.gamma) *
          beta_binomial_pmf<Scalar>(i, num_users - 1, static_cast<Scalar>(t.alpha), static_cast<Scalar>(t.beta));
  }
  return out;
}

/// Dense |U| x |C| utility matrix. Items of one topic share a column.
template <typename Scalar = double>
UtilityMatrix<Scalar> build_utility_matrix(Index num_users, const Catalog& catalog) {
  const UtilityMatrix<Scalar> per_topic = topic_utilities<Scalar>(num_users, catalog);
  UtilityMatrix<Scalar> m(num_users, catalog.num_items());
  for (std::size_t q = 0; q < catalog.topic_count(); ++q)
    m.middleCols(catalog.block_begin(q), catalog.block_size(q)) =
        per_topic.col(static_cast<Index>(q)).replicate(1, catalog.block_size(q));
  return m;
}

/// Relative utility of every catalog topic for `user`, by summing the user's
/// row over each topic block. Entries follow catalog order and sum to one.
template <typename Derived>
TopicShares<typename Derived::Scalar> relative_utility(const Eigen::MatrixBase<Derived>& matrix,
                                                       const Catalog& catalog, Index user) {
  using Scalar = typename Derived::Scalar;
  if (user < 0 || user >= matrix.rows()) throw std::out_of_range("relative_utility: user index out of range");
  if (matrix.cols() != catalog.num_items()) throw std::invalid_argument("relative_utility: matrix/catalog mismatch");
  TopicShares<Scalar> r(static_cast<Index>(catalog.topic_count()));
  for (std::size_t q = 0; q < catalog.topic_count(); ++q)
    r(static_cast<Index>(q)) = matrix.row(user).segment(catalog.block_begin(q), catalog.block_size(q)).sum();
  return r / matrix.row(user).sum();
}

/// Catalog position of the topic with the highest relative utility for
/// `user`; ties resolve to the earliest position.
template <typename Derived>
std::size_t highest_utility_topic(const Eigen::MatrixBase<Derived>& matrix, const Catalog& catalog, Index user) {
  const auto r = relative_utility(matrix, catalog, user);
  Index best = 0;
  for (Index q = 1; q < r.size(); ++q)
    if (r(q) > r(best)) best = q;
  return static_cast<std::size_t>(best);
}

/// Table 1 catalog of the reference experiment.
inline Catalog default_catalog() {
  return Catalog({
      {Topic::FarLeft, 1.0, 16.0, 1.0, 75},
      {Topic::Left, 1.0, 5.0, 1.2, 125},
      {Topic::Center, 1.3, 1.3, 1.5, 200},
      {Topic::Right, 5.0, 1.0, 1.2, 125},
      {Topic::FarRight, 16.0, 1.0, 1.0, 75},
  });
}

}  // namespace ampsim

#endif  // AMPSIM_MODEL_HPP
