#include "genbias/kmeans.hpp"

#include "genbias/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace genbias {

namespace {

// Squared distances from every point to one center.
Eigen::VectorXd sq_dist_to(const Eigen::MatrixXd& pts, const Eigen::RowVectorXd& c) {
  return (pts.rowwise() - c).rowwise().squaredNorm();
}

struct Run {
  std::vector<int> assign;
  Eigen::MatrixXd centers;
  double inertia;
  int iterations;
};

Run lloyd(const Eigen::MatrixXd& pts, int k, Eigen::Index first_center, int max_iterations) {
  const Eigen::Index n = pts.rows();
  Eigen::MatrixXd centers(k, pts.cols());
  centers.row(0) = pts.row(first_center);

  // Farthest-point placement for the remaining centers.
  Eigen::VectorXd min_d = sq_dist_to(pts, centers.row(0));
  for (int c = 1; c < k; ++c) {
    Eigen::Index far = 0;
    min_d.maxCoeff(&far);
    centers.row(c) = pts.row(far);
    min_d = min_d.cwiseMin(sq_dist_to(pts, centers.row(c)));
  }

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  Eigen::MatrixXd dists(n, k);
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    for (int c = 0; c < k; ++c) dists.col(c) = sq_dist_to(pts, centers.row(c));

    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double bestd = dists(i, 0);
      for (int c = 1; c < k; ++c) {
        if (dists(i, c) < bestd) {
          bestd = dists(i, c);
          best = c;
        }
      }
      if (assign[static_cast<std::size_t>(i)] != best) {
        assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, pts.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = assign[static_cast<std::size_t>(i)];
      sums.row(c) += pts.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        // Re-seed an empty cluster with the point farthest from its center.
        Eigen::Index worst = 0;
        double worstd = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const int a = assign[static_cast<std::size_t>(i)];
          const double d = dists(i, a);
          if (d > worstd) {
            worstd = d;
            worst = i;
          }
        }
        centers.row(c) = pts.row(worst);
      } else {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
  }

  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    inertia += (pts.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return {std::move(assign), std::move(centers), inertia, iter};
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts,
                    int max_iterations) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw InputError("kmeans: k must be positive");
  if (n < k) throw InputError("kmeans: fewer points than clusters");

  bool distinct = false;
  for (Eigen::Index i = 1; i < n && !distinct; ++i) {
    distinct = (points.row(i) - points.row(0)).squaredNorm() > 0.0;
  }
  if (k > 1 && !distinct) throw InputError("kmeans: fewer than 2 distinct points");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);

  KMeansResult best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Run run = lloyd(points, k, pick(rng), max_iterations);
    if (!have_best || run.inertia < best.inertia) {
      best.assignments = std::move(run.assign);
      best.centers = std::move(run.centers);
      best.inertia = run.inertia;
      best.iterations = run.iterations;
      have_best = true;
    }
  }
  return best;
}

VMeasure v_measure(const std::vector<int>& classes, const std::vector<int>& clusters) {
  if (classes.size() != clusters.size() || classes.empty()) {
    throw InputError("v_measure: label vectors must be nonempty and equal length");
  }
  const double n = static_cast<double>(classes.size());

  std::map<int, double> class_count, cluster_count;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    class_count[classes[i]] += 1.0;
    cluster_count[clusters[i]] += 1.0;
    joint[{classes[i], clusters[i]}] += 1.0;
  }

  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [_, c] : counts) {
      const double p = c / n;
      if (p > 0.0) h -= p * std::log(p);
    }
    return h;
  };
  const double h_class = entropy(class_count);
  const double h_cluster = entropy(cluster_count);

  double h_class_given_cluster = 0.0;
  double h_cluster_given_class = 0.0;
  for (const auto& [key, c] : joint) {
    const double p = c / n;
    h_class_given_cluster -= p * std::log(c / cluster_count[key.second]);
    h_cluster_given_class -= p * std::log(c / class_count[key.first]);
  }

  VMeasure vm;
  vm.homogeneity = h_class == 0.0 ? 1.0 : 1.0 - h_class_given_cluster / h_class;
  vm.completeness = h_cluster == 0.0 ? 1.0 : 1.0 - h_cluster_given_class / h_cluster;
  const double sum = vm.homogeneity + vm.completeness;
  vm.v = sum == 0.0 ? 0.0 : 2.0 * vm.homogeneity * vm.completeness / sum;
  return vm;
}

}  // namespace genbias
