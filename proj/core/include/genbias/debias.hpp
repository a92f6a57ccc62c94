#ifndef GENBIAS_DEBIAS_HPP
#define GENBIAS_DEBIAS_HPP

#include "genbias/classifier.hpp"
#include "genbias/embedding_set.hpp"
#include "genbias/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace genbias {

/// Summary of a debiasing run.
struct DebiasReport {
  std::string method;
  int iterations = 0;
  std::size_t tokens_neutralized = 0;
  std::size_t tokens_equalized = 0;
  double residual_direct_bias = 0.0;
  /// INLP only: pre-projection training accuracy per iteration.
  std::vector<double> iteration_accuracies;
  /// INLP only: the unit directions projected away, in iteration order.
  std::vector<Eigen::VectorXd> removed_directions;
  /// Tokens left unmodified because they could not be processed (for hard
  /// debias: neutral words collinear with g).
  std::vector<std::string> skipped_tokens;
  bool terminated_early = false;
};

/// Vocabulary minus all definitional and equalize tokens — the default
/// neutral set for hard_debias.
std::vector<std::string> default_neutral_set(const EmbeddingSet& e, const GenderGeometry& gg);

/// Projects every neutral word into the nullspace of g (renormalized) and
/// re-centers each equalize pair so both members are unit vectors with a
/// shared g-orthogonal component and opposite, equal-magnitude projections
/// onto g. Requires a normalized set; the neutral set must not contain
/// equalize tokens. Neutral words collinear with g are reported and left
/// unmodified.
std::pair<EmbeddingSet, DebiasReport> hard_debias(const EmbeddingSet& e,
                                                  const GenderGeometry& gg,
                                                  const std::vector<std::string>& neutral,
                                                  const std::vector<TokenPair>& equalize_pairs);

/// Iterative nullspace projection: per iteration, fit a linear classifier
/// predicting the gender label from the current vectors of the labeled
/// tokens, then project all vectors onto the nullspace of the learned
/// weight direction. Labels are frozen by the caller (conventionally
/// top_biased_words on the original space). A degenerate zero-weight
/// classifier terminates the loop early. iterations == 0 is the identity.
std::pair<EmbeddingSet, DebiasReport> inlp(const EmbeddingSet& e,
                                           const std::vector<LabeledToken>& labeled,
                                           int iterations,
                                           const ClassifierConfig& cfg = {});

/// Drops the final component (the convention for embeddings that sequester
/// the gender attribute there) and renormalizes the remaining rows.
EmbeddingSet drop_last_component(const EmbeddingSet& e);

}  // namespace genbias

#endif  // GENBIAS_DEBIAS_HPP
