#ifndef GENBIAS_CLASSIFIER_HPP
#define GENBIAS_CLASSIFIER_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace genbias {

/// Hyperparameters for the logistic-regression trainer. The defaults are
/// the documented settings used by the INLP transform and the
/// recoverability metric.
struct ClassifierConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  std::uint64_t seed = 42;
};

/// Linear classifier trained with full-batch gradient descent on the
/// logistic loss. Deterministic for a fixed config.
struct LinearClassifier {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double train_accuracy = 0.0;

  /// y holds 0/1 labels, one per row of X.
  static LinearClassifier train(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                const ClassifierConfig& cfg = {});

  int predict(const Eigen::VectorXd& x) const;
  double accuracy(const Eigen::MatrixXd& X, const std::vector<int>& y) const;
};

}  // namespace genbias

#endif  // GENBIAS_CLASSIFIER_HPP
