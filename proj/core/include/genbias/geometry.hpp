#ifndef GENBIAS_GEOMETRY_HPP
#define GENBIAS_GEOMETRY_HPP

#include "genbias/embedding_set.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace genbias {

using TokenPair = std::pair<std::string, std::string>;  // (female, male)

/// Unit gender direction plus the pair lists that produced it. Orientation
/// convention: the mean cosine of the female-side tokens with g is >= 0.
struct GenderGeometry {
  Eigen::VectorXd direction;  // unit vector g
  std::vector<TokenPair> definitional_pairs;
  std::vector<TokenPair> equalize_pairs;
  std::string construction;        // how g was obtained, echoed in reports
  double orientation_mean_cos = 0; // mean cos(female token, g), after sign fix

  /// All tokens appearing in the definitional or equalize pairs.
  std::vector<std::string> pair_tokens() const;
};

/// Builds g from (female, male) definitional pairs: the first principal
/// component of the centered pair differences {f_i - m_i}, computed by
/// power iteration (relative tolerance 1e-10, fixed seed), sign-flipped so
/// the female side projects positively. With a single pair g is the
/// normalized difference; if the centered differences vanish but the mean
/// difference does not, the normalized mean difference is used.
GenderGeometry gender_direction(const EmbeddingSet& e, const std::vector<TokenPair>& pairs,
                                std::vector<TokenPair> equalize_pairs = {});

/// Mean |cos(w, g)|^c over the word set. c defaults to 1.
double direct_bias(const EmbeddingSet& e, const GenderGeometry& gg,
                   std::span<const std::string> words, double c = 1.0);

/// Relative change in similarity of w and v once their g-components are
/// removed. Requires a normalized set. Returns nullopt (the
/// undefined-similarity outcome) when |w.v| < eps, and 0 when either
/// residual is shorter than eps (word lies entirely along g).
std::optional<double> indirect_beta(const EmbeddingSet& e, const GenderGeometry& gg,
                                    std::string_view w, std::string_view v,
                                    double eps = 1e-8);

/// Row-level variant used by the neighbor metrics.
std::optional<double> indirect_beta_rows(const EmbeddingSet& e, const GenderGeometry& gg,
                                         std::size_t w_row, std::size_t v_row,
                                         double eps = 1e-8);

enum class GenderLabel { female, male };

struct LabeledToken {
  std::string token;
  GenderLabel label;
};

/// The n/2 tokens with the largest positive projection onto g (labeled
/// female) and the n/2 with the most negative (labeled male), excluding the
/// given tokens. n must be even; ties break toward the lower vocabulary
/// index. Exclusion conventionally covers all definitional and equalize
/// tokens (see GenderGeometry::pair_tokens).
std::vector<LabeledToken> top_biased_words(const EmbeddingSet& e, const GenderGeometry& gg,
                                           std::size_t n,
                                           std::span<const std::string> exclude);

}  // namespace genbias

#endif  // GENBIAS_GEOMETRY_HPP
