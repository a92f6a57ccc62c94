#include "genbias/geometry.hpp"

#include "genbias/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace genbias {

namespace {

constexpr double kPowerIterTol = 1e-10;
constexpr int kPowerIterMax = 10000;
constexpr std::uint64_t kPowerIterSeed = 0x9e3779b97f4a7c15ULL;

// Dominant eigenvector of a symmetric PSD matrix by power iteration.
Eigen::VectorXd dominant_eigenvector(const Eigen::MatrixXd& cov) {
  std::mt19937_64 rng(kPowerIterSeed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(cov.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  v.normalize();

  for (int it = 0; it < kPowerIterMax; ++it) {
    Eigen::VectorXd next = cov * v;
    const double len = next.norm();
    if (len == 0.0) return Eigen::VectorXd();  // zero matrix
    next /= len;
    const double delta = std::min((next - v).norm(), (next + v).norm());
    v = next;
    if (delta <= kPowerIterTol) break;
  }
  return v;
}

double mean_female_cos(const EmbeddingSet& e, const std::vector<std::size_t>& female_rows,
                       const Eigen::VectorXd& g) {
  double sum = 0.0;
  for (std::size_t r : female_rows) {
    const Eigen::VectorXd w = e.row(r);
    const double n = w.norm();
    sum += n == 0.0 ? 0.0 : w.dot(g) / n;
  }
  return sum / static_cast<double>(female_rows.size());
}

}  // namespace

std::vector<std::string> GenderGeometry::pair_tokens() const {
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& t) {
    if (seen.insert(t).second) tokens.push_back(t);
  };
  for (const auto& [f, m] : definitional_pairs) {
    add(f);
    add(m);
  }
  for (const auto& [a, b] : equalize_pairs) {
    add(a);
    add(b);
  }
  return tokens;
}

GenderGeometry gender_direction(const EmbeddingSet& e, const std::vector<TokenPair>& pairs,
                                std::vector<TokenPair> equalize_pairs) {
  if (pairs.empty()) throw InputError("gender_direction: need at least one definitional pair");

  std::vector<std::size_t> female_rows;
  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(pairs.size()), e.dim());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t fr = e.require(pairs[i].first, "definitional pairs");
    const std::size_t mr = e.require(pairs[i].second, "definitional pairs");
    female_rows.push_back(fr);
    diffs.row(static_cast<Eigen::Index>(i)) = e.row(fr) - e.row(mr);
  }
  if (diffs.rowwise().norm().maxCoeff() == 0.0) {
    throw InputError("gender_direction: all pair differences are zero vectors");
  }

  GenderGeometry gg;
  gg.definitional_pairs = pairs;
  gg.equalize_pairs = equalize_pairs.empty() ? pairs : std::move(equalize_pairs);

  Eigen::VectorXd g;
  if (pairs.size() == 1) {
    g = diffs.row(0).normalized();
    gg.construction = "single_pair_difference";
  } else {
    const Eigen::RowVectorXd mean = diffs.colwise().mean();
    const Eigen::MatrixXd centered = diffs.rowwise() - mean;
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(pairs.size());
    g = dominant_eigenvector(cov);
    if (g.size() == 0) {
      // All differences identical: the centered cloud is a point. Fall back
      // to the shared difference direction.
      g = mean.transpose().normalized();
      gg.construction = "mean_difference_fallback";
    } else {
      gg.construction = "pca_pair_differences";
    }
  }

  double orient = mean_female_cos(e, female_rows, g);
  if (orient < 0) {
    g = -g;
    orient = -orient;
  }
  gg.direction = g;
  gg.orientation_mean_cos = orient;
  return gg;
}

double direct_bias(const EmbeddingSet& e, const GenderGeometry& gg,
                   std::span<const std::string> words, double c) {
  if (words.empty()) throw InputError("direct_bias: empty word set");
  const Eigen::VectorXd& g = gg.direction;
  double sum = 0.0;
  for (const auto& token : words) {
    const std::size_t r = e.require(token, "direct_bias set");
    const Eigen::VectorXd w = e.row(r);
    const double n = w.norm();
    const double cosv = n == 0.0 ? 0.0 : w.dot(g) / n;
    sum += std::pow(std::abs(cosv), c);
  }
  return sum / static_cast<double>(words.size());
}

std::optional<double> indirect_beta_rows(const EmbeddingSet& e, const GenderGeometry& gg,
                                         std::size_t w_row, std::size_t v_row, double eps) {
  if (!e.normalized()) throw InputError("indirect_beta requires a normalized embedding set");
  const Eigen::VectorXd& g = gg.direction;
  const Eigen::VectorXd w = e.row(w_row);
  const Eigen::VectorXd v = e.row(v_row);

  const double wv = w.dot(v);
  if (std::abs(wv) < eps) return std::nullopt;  // undefined-similarity outcome

  const Eigen::VectorXd w_perp = w - (w.dot(g)) * g;
  const Eigen::VectorXd v_perp = v - (v.dot(g)) * g;
  const double wn = w_perp.norm();
  const double vn = v_perp.norm();
  if (wn < eps || vn < eps) return 0.0;  // word lies entirely along g

  const double residual_cos = w_perp.dot(v_perp) / (wn * vn);
  return (wv - residual_cos) / wv;
}

std::optional<double> indirect_beta(const EmbeddingSet& e, const GenderGeometry& gg,
                                    std::string_view w, std::string_view v, double eps) {
  return indirect_beta_rows(e, gg, e.require(w), e.require(v), eps);
}

std::vector<LabeledToken> top_biased_words(const EmbeddingSet& e, const GenderGeometry& gg,
                                           std::size_t n,
                                           std::span<const std::string> exclude) {
  if (n == 0 || n % 2 != 0) {
    throw InputError("top_biased_words: n must be even and positive, got " +
                     std::to_string(n));
  }
  std::unordered_set<std::string_view> excluded(exclude.begin(), exclude.end());

  struct Proj {
    double cos;
    std::size_t row;
  };
  std::vector<Proj> projs;
  projs.reserve(e.size());
  const Eigen::VectorXd& g = gg.direction;
  const Eigen::VectorXd dots = e.vectors() * g;
  for (std::size_t r = 0; r < e.size(); ++r) {
    if (excluded.count(e.token(r))) continue;
    const double nrm = e.norms()[static_cast<Eigen::Index>(r)];
    projs.push_back({nrm == 0.0 ? 0.0 : dots[static_cast<Eigen::Index>(r)] / nrm, r});
  }
  if (projs.size() < n) {
    throw InputError("top_biased_words: vocabulary too small after exclusions (" +
                     std::to_string(projs.size()) + " < " + std::to_string(n) + ")");
  }

  std::sort(projs.begin(), projs.end(), [](const Proj& a, const Proj& b) {
    if (a.cos != b.cos) return a.cos > b.cos;
    return a.row < b.row;
  });

  const std::size_t half = n / 2;
  std::vector<LabeledToken> out;
  out.reserve(n);
  for (std::size_t i = 0; i < half; ++i)
    out.push_back({e.token(projs[i].row), GenderLabel::female});
  for (std::size_t i = projs.size() - half; i < projs.size(); ++i)
    out.push_back({e.token(projs[i].row), GenderLabel::male});
  return out;
}

}  // namespace genbias
