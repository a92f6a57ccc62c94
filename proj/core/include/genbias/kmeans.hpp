#ifndef GENBIAS_KMEANS_HPP
#define GENBIAS_KMEANS_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace genbias {

struct KMeansResult {
  std::vector<int> assignments;  // cluster index per row of the input
  Eigen::MatrixXd centers;       // k x d
  double inertia = 0.0;          // sum of squared distances to assigned centers
  int iterations = 0;
};

/// Lloyd's algorithm with farthest-point seeding. The first center of each
/// restart is drawn with the seeded generator, the remaining ones maximize
/// the distance to the chosen set; the best restart is selected by
/// (inertia, restart index), so results are deterministic.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                    int restarts = 10, int max_iterations = 300);

struct VMeasure {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v = 0.0;
};

/// Rosenberg-Hirschberg v-measure from class and cluster assignments,
/// entropies in natural log. Degenerate conventions: homogeneity is 1 when
/// the class entropy is 0, completeness is 1 when the cluster entropy is 0,
/// and v is 0 when homogeneity + completeness is 0.
VMeasure v_measure(const std::vector<int>& classes, const std::vector<int>& clusters);

}  // namespace genbias

#endif  // GENBIAS_KMEANS_HPP
