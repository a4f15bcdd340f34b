#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace steinem {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Point = Vector;

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMajorMap = Eigen::Map<RowMajorMatrix>;
using ConstRowMajorMap = Eigen::Map<const RowMajorMatrix>;

/// log(sum(exp(v))) with max-shift; entries may be -inf. Throws on empty input.
double logsumexp(std::span<const double> values);
double logsumexp(const Vector& values);

/// Middle order statistic; even length returns the mean of the two central
/// elements. Takes its argument by value as scratch. Throws on empty input.
double median(std::vector<double> values);

/// A set of m points in R^d (rows are points). m >= 1 and d >= 1.
class ParticleBatch {
 public:
  explicit ParticleBatch(Matrix points);

  Eigen::Index count() const { return points_.rows(); }
  Eigen::Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  Point point(Eigen::Index i) const { return points_.row(i); }

  /// Gather the given rows into a new batch (minibatching).
  ParticleBatch select(std::span<const Eigen::Index> rows) const;

 private:
  Matrix points_;
};

/// (i,j) = ||x_i - x_j||^2; symmetric with zero diagonal.
Matrix pairwise_sq_dists(const ParticleBatch& batch);

struct ParamBlock {
  std::string name;
  Eigen::Index offset = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 1;

  Eigen::Index size() const { return rows * cols; }
};

/// Maps named parameter blocks onto contiguous index ranges of a flat vector.
/// Blocks cover the vector exactly once, in insertion order.
class ParamLayout {
 public:
  ParamLayout& add(std::string name, Eigen::Index rows, Eigen::Index cols = 1);

  Eigen::Index size() const { return total_; }
  const ParamBlock& block(std::string_view name) const;
  const std::vector<ParamBlock>& blocks() const { return blocks_; }

  bool operator==(const ParamLayout& other) const;

 private:
  std::vector<ParamBlock> blocks_;
  Eigen::Index total_ = 0;
};

/// Flat parameter vector plus the layout describing its named blocks.
/// Matrix blocks are stored row-major.
class ParamVector {
 public:
  ParamVector() : layout_(empty_layout()) {}
  explicit ParamVector(std::shared_ptr<const ParamLayout> layout);
  ParamVector(std::shared_ptr<const ParamLayout> layout, Vector values);

  const std::shared_ptr<const ParamLayout>& layout() const { return layout_; }
  Eigen::Index size() const { return values_.size(); }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  /// Named block as a flat segment.
  Eigen::VectorBlock<Vector> segment(std::string_view name);
  Eigen::VectorBlock<const Vector> segment(std::string_view name) const;
  /// Named block viewed as its rows x cols matrix (row-major storage).
  RowMajorMap matrix(std::string_view name);
  ConstRowMajorMap matrix(std::string_view name) const;

  ParamVector zeros_like() const { return ParamVector(layout_); }

 private:
  static const std::shared_ptr<const ParamLayout>& empty_layout();

  std::shared_ptr<const ParamLayout> layout_;
  Vector values_;
};

/// Deterministic random stream: xoshiro256** seeded through splitmix64.
/// A given seed yields the same sequence on every platform. Normal draws use
/// Box-Muller and always consume exactly two words, so streams can be
/// reproduced from the draw count alone.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithmId =
      "xoshiro256ss-splitmix64-boxmuller-v1";

  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Unbiased integer in [0, n); n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);
  /// [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  double normal();

  Vector normal_vector(Eigen::Index n);
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);
  Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo,
                        double hi);

  /// Independent substream; derived from (parent seed, index), so it does not
  /// depend on how far the parent has advanced.
  RngStream child(std::uint64_t index) const;

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_below(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

}  // namespace steinem
