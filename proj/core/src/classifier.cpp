#include "genbias/classifier.hpp"

#include "genbias/errors.hpp"

#include <cmath>
#include <random>

namespace genbias {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

LinearClassifier LinearClassifier::train(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                         const ClassifierConfig& cfg) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n == 0 || static_cast<std::size_t>(n) != y.size()) {
    throw InputError("classifier: label count does not match sample count");
  }

  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) target[i] = y[static_cast<std::size_t>(i)] ? 1.0 : 0.0;

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd w(d);
  const double init_scale = 0.01 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < d; ++j) w[j] = gauss(rng) * init_scale;
  double b = 0.0;

  const double inv_n = 1.0 / static_cast<double>(n);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Eigen::VectorXd z = X * w;
    z.array() += b;
    Eigen::VectorXd p = z.unaryExpr([](double v) { return sigmoid(v); });
    const Eigen::VectorXd err = p - target;
    w -= cfg.learning_rate * inv_n * (X.transpose() * err);
    b -= cfg.learning_rate * inv_n * err.sum();
  }

  LinearClassifier clf;
  clf.weights = std::move(w);
  clf.intercept = b;
  clf.train_accuracy = clf.accuracy(X, y);
  return clf;
}

int LinearClassifier::predict(const Eigen::VectorXd& x) const {
  return x.dot(weights) + intercept > 0.0 ? 1 : 0;
}

double LinearClassifier::accuracy(const Eigen::MatrixXd& X, const std::vector<int>& y) const {
  if (X.rows() == 0) return 0.0;
  Eigen::VectorXd z = X * weights;
  z.array() += intercept;
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int pred = z[i] > 0.0 ? 1 : 0;
    if (pred == (y[static_cast<std::size_t>(i)] ? 1 : 0)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(X.rows());
}

}  // namespace genbias
