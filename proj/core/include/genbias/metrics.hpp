#ifndef GENBIAS_METRICS_HPP
#define GENBIAS_METRICS_HPP

#include "genbias/classifier.hpp"
#include "genbias/embedding_set.hpp"
#include "genbias/geometry.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace genbias {

/// Single-attribute association strength with optional partition-test
/// significance.
struct WeatResult {
  double S = 0.0;
  double p_value = -1.0;  // -1 until a significance test runs
  std::size_t partitions_evaluated = 0;
  bool exhaustive = false;
  bool degenerate = false;  // every partition produced the observed S
  std::string target_name, attr1_name, attr2_name;
  std::vector<std::string> target_tokens;
  std::vector<double> per_word_s;  // aligned with target_tokens
  std::uint64_t seed = 0;
  std::size_t max_samples = 0;
};

/// S(T, A1, A2): mean over T of (mean cos to A1 - mean cos to A2).
/// Attribute sets must be the same nonempty size.
WeatResult weat_single(const EmbeddingSet& e, std::span<const std::string> targets,
                       std::span<const std::string> attr1,
                       std::span<const std::string> attr2);

/// weat_single plus a partition test: all equal-size re-partitions of
/// A1's union with A2 are enumerated when their count is at most
/// max_samples, otherwise max_samples are sampled with the seed. p is the
/// proportion of partitions with S* strictly greater than S.
WeatResult weat_significance(const EmbeddingSet& e, std::span<const std::string> targets,
                             std::span<const std::string> attr1,
                             std::span<const std::string> attr2,
                             std::size_t max_samples = 100000, std::uint64_t seed = 1);

/// Proportion of the N nearest candidate neighbors of w whose indirect
/// bias with w exceeds theta. Neighbors with an undefined beta leave both
/// the numerator and the denominator. Requires a normalized set.
double eta(const EmbeddingSet& e, const GenderGeometry& gg, std::string_view w,
           std::size_t n_neighbors, double theta,
           const std::vector<std::size_t>* candidate_rows = nullptr);

enum class GipeWeighting { uniform, neighbor_count };

struct GipeParams {
  std::size_t n_neighbors = 100;
  double theta = 0.05;
  GipeWeighting weighting = GipeWeighting::uniform;
  unsigned threads = 1;
};

struct GipeReport {
  std::vector<std::string> words;
  std::vector<double> eta_values;  // aligned with words
  double gipe = 0.0;
  std::size_t n_neighbors = 0;
  double theta = 0.0;
  std::string weighting;       // "uniform" or "neighbor-count"
  std::string candidate_name;  // which candidate vocabulary was searched
};

/// Aggregates eta over a vocabulary subset. Uniform weighting is the plain
/// mean; neighbor-count weighting weights each word by its number of
/// above-threshold neighbors, normalized.
GipeReport gipe(const EmbeddingSet& e, const GenderGeometry& gg,
                std::span<const std::string> vocab_subset, const GipeParams& params,
                const std::vector<std::size_t>* candidate_rows = nullptr,
                std::string candidate_name = "full-vocab");

struct ClusterEval {
  double accuracy = 0.0;  // max over the two cluster-to-label mappings
  double v_measure = 0.0;
  double homogeneity = 0.0;
  double completeness = 0.0;
  std::size_t n_words = 0;
  std::uint64_t seed = 0;
};

/// k-means (k = 2, 10 restarts) on the current vectors of tokens labeled in
/// the original space, scored against those labels.
ClusterEval cluster_eval(const EmbeddingSet& e, const std::vector<LabeledToken>& labeled,
                         std::uint64_t seed);

/// Held-out accuracy of a linear classifier on a deterministic 50/50
/// label-stratified split of the labeled tokens (shuffled by split_seed).
double recoverability(const EmbeddingSet& e, const std::vector<LabeledToken>& labeled,
                      std::uint64_t split_seed, const ClassifierConfig& cfg = {});

}  // namespace genbias

#endif  // GENBIAS_METRICS_HPP
