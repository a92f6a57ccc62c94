#include "genbias/debias.hpp"

#include "genbias/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace genbias {

namespace {

constexpr double kCollinearEps = 1e-12;

}  // namespace

std::vector<std::string> default_neutral_set(const EmbeddingSet& e, const GenderGeometry& gg) {
  const auto pair_tokens = gg.pair_tokens();
  std::unordered_set<std::string_view> excluded(pair_tokens.begin(), pair_tokens.end());
  std::vector<std::string> neutral;
  neutral.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!excluded.count(e.token(i))) neutral.push_back(e.token(i));
  }
  return neutral;
}

std::pair<EmbeddingSet, DebiasReport> hard_debias(const EmbeddingSet& e,
                                                  const GenderGeometry& gg,
                                                  const std::vector<std::string>& neutral,
                                                  const std::vector<TokenPair>& equalize_pairs) {
  if (!e.normalized()) throw InputError("hard_debias requires a normalized embedding set");

  std::unordered_set<std::size_t> equalize_rows;
  for (const auto& [a, b] : equalize_pairs) {
    equalize_rows.insert(e.require(a, "equalize pairs"));
    equalize_rows.insert(e.require(b, "equalize pairs"));
  }

  DebiasReport report;
  report.method = "hard";
  const Eigen::VectorXd& g = gg.direction;
  Eigen::MatrixXd m = e.vectors();

  std::vector<std::string> neutralized;
  neutralized.reserve(neutral.size());
  for (const auto& token : neutral) {
    const std::size_t r = e.require(token, "neutral set");
    if (equalize_rows.count(r)) {
      throw InputError("neutral set must not contain equalize token '" + token + "'");
    }
    Eigen::VectorXd w = m.row(static_cast<Eigen::Index>(r));
    Eigen::VectorXd residual = w - w.dot(g) * g;
    const double len = residual.norm();
    if (len < kCollinearEps) {
      report.skipped_tokens.push_back(token);  // collinear with g, left unmodified
      continue;
    }
    m.row(static_cast<Eigen::Index>(r)) = residual / len;
    neutralized.push_back(token);
    ++report.tokens_neutralized;
  }

  for (const auto& [a, b] : equalize_pairs) {
    const auto ra = static_cast<Eigen::Index>(e.require(a));
    const auto rb = static_cast<Eigen::Index>(e.require(b));
    const Eigen::VectorXd va = m.row(ra);
    const Eigen::VectorXd vb = m.row(rb);
    const Eigen::VectorXd mu = 0.5 * (va + vb);
    Eigen::VectorXd nu = mu - mu.dot(g) * g;  // shared orthogonal component
    const double nu_len = nu.norm();
    const double span = std::sqrt(std::max(0.0, 1.0 - nu_len * nu_len));
    const double side = (va - vb).dot(g);
    if (std::abs(side) < kCollinearEps) {
      // Both members project identically onto g; give them zero projection.
      if (nu_len < kCollinearEps) {
        report.skipped_tokens.push_back(a);
        report.skipped_tokens.push_back(b);
        continue;
      }
      m.row(ra) = nu / nu_len;
      m.row(rb) = nu / nu_len;
    } else {
      const double sign = side > 0 ? 1.0 : -1.0;
      m.row(ra) = nu + sign * span * g;
      m.row(rb) = nu - sign * span * g;
    }
    report.tokens_equalized += 2;
  }

  EmbeddingSet out(e.vocab(), std::move(m), /*normalized=*/true);
  if (!neutralized.empty()) {
    report.residual_direct_bias = direct_bias(out, gg, neutralized);
  }
  return {std::move(out), std::move(report)};
}

std::pair<EmbeddingSet, DebiasReport> inlp(const EmbeddingSet& e,
                                           const std::vector<LabeledToken>& labeled,
                                           int iterations, const ClassifierConfig& cfg) {
  if (iterations < 0) throw InputError("inlp: iterations must be >= 0");

  std::vector<std::size_t> rows;
  std::vector<int> labels;
  rows.reserve(labeled.size());
  bool has_f = false, has_m = false;
  for (const auto& lt : labeled) {
    rows.push_back(e.require(lt.token, "inlp labeled set"));
    const int y = lt.label == GenderLabel::female ? 1 : 0;
    labels.push_back(y);
    (y ? has_f : has_m) = true;
  }
  if (iterations > 0 && (!has_f || !has_m)) {
    throw InputError("inlp: labeled set must contain both genders");
  }

  DebiasReport report;
  report.method = "inlp";
  Eigen::MatrixXd m = e.vectors();

  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
      X.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));

    const LinearClassifier clf = LinearClassifier::train(X, labels, cfg);
    const double wlen = clf.weights.norm();
    if (wlen < 1e-12) {
      report.terminated_early = true;
      break;
    }
    report.iteration_accuracies.push_back(clf.train_accuracy);

    const Eigen::VectorXd u = clf.weights / wlen;
    m -= (m * u) * u.transpose();  // project every row onto the nullspace of u
    report.removed_directions.push_back(u);
    ++report.iterations;
  }

  return {EmbeddingSet(e.vocab(), std::move(m), /*normalized=*/false), std::move(report)};
}

EmbeddingSet drop_last_component(const EmbeddingSet& e) {
  if (e.dim() < 2) throw InputError("drop_last_component requires dimension >= 2");
  Eigen::MatrixXd m = e.vectors().leftCols(e.dim() - 1);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n == 0.0) {
      throw InputError("drop_last_component: token '" + e.token(static_cast<std::size_t>(i)) +
                       "' lies entirely in the dropped component");
    }
    m.row(i) /= n;
  }
  return EmbeddingSet(e.vocab(), std::move(m), /*normalized=*/true);
}

}  // namespace genbias
