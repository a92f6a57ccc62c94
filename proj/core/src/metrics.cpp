#include "genbias/metrics.hpp"

#include "genbias/errors.hpp"
#include "genbias/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace genbias {

namespace {

// Deterministic bounded draw (avoids the implementation-defined
// uniform_int_distribution so sampled partitions reproduce everywhere).
inline std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

std::vector<std::size_t> resolve_rows(const EmbeddingSet& e,
                                      std::span<const std::string> tokens,
                                      std::string_view set_name) {
  std::vector<std::size_t> rows;
  rows.reserve(tokens.size());
  for (const auto& t : tokens) rows.push_back(e.require(t, set_name));
  return rows;
}

// Binomial coefficient, saturating at 2^63.
unsigned long long choose_saturating(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr unsigned long long kCap = 1ULL << 63;
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const double estimate = static_cast<double>(c) * static_cast<double>(n - k + i);
    if (estimate >= static_cast<double>(kCap)) return kCap;
    c = c * (n - k + i) / i;
  }
  return c;
}

}  // namespace

WeatResult weat_single(const EmbeddingSet& e, std::span<const std::string> targets,
                       std::span<const std::string> attr1,
                       std::span<const std::string> attr2) {
  if (attr1.empty() || attr1.size() != attr2.size()) {
    throw InputError("weat: attribute sets must be the same nonempty size (got " +
                     std::to_string(attr1.size()) + " and " + std::to_string(attr2.size()) +
                     ")");
  }
  if (targets.empty()) throw InputError("weat: empty target set");

  const auto t_rows = resolve_rows(e, targets, "target");
  const auto a1_rows = resolve_rows(e, attr1, "attribute 1");
  const auto a2_rows = resolve_rows(e, attr2, "attribute 2");

  WeatResult res;
  res.target_tokens.assign(targets.begin(), targets.end());
  res.per_word_s.reserve(targets.size());
  double total = 0.0;
  for (const std::size_t t : t_rows) {
    double m1 = 0.0, m2 = 0.0;
    for (const std::size_t a : a1_rows) m1 += e.cosine(t, a);
    for (const std::size_t a : a2_rows) m2 += e.cosine(t, a);
    const double s =
        m1 / static_cast<double>(a1_rows.size()) - m2 / static_cast<double>(a2_rows.size());
    res.per_word_s.push_back(s);
    total += s;
  }
  res.S = total / static_cast<double>(t_rows.size());
  return res;
}

WeatResult weat_significance(const EmbeddingSet& e, std::span<const std::string> targets,
                             std::span<const std::string> attr1,
                             std::span<const std::string> attr2, std::size_t max_samples,
                             std::uint64_t seed) {
  WeatResult res = weat_single(e, targets, attr1, attr2);
  res.max_samples = max_samples;
  res.seed = seed;
  if (max_samples == 0) throw InputError("weat_significance: max_samples must be positive");

  const auto t_rows = resolve_rows(e, targets, "target");
  auto union_rows = resolve_rows(e, attr1, "attribute 1");
  {
    const auto a2_rows = resolve_rows(e, attr2, "attribute 2");
    union_rows.insert(union_rows.end(), a2_rows.begin(), a2_rows.end());
  }
  const std::size_t u = union_rows.size();
  const std::size_t k = attr1.size();

  // Mean-over-targets cosine to each union member; S* for a chosen half I
  // is then (2 * sum_I colsum - total) / k.
  std::vector<double> colsum(u, 0.0);
  for (std::size_t a = 0; a < u; ++a) {
    double s = 0.0;
    for (const std::size_t t : t_rows) s += e.cosine(t, union_rows[a]);
    colsum[a] = s / static_cast<double>(t_rows.size());
  }
  const double total = std::accumulate(colsum.begin(), colsum.end(), 0.0);
  auto half_to_s = [&](double half_sum) {
    return (2.0 * half_sum - total) / static_cast<double>(k);
  };

  // Observed S recomputed through the same accumulation path, so the
  // original partition compares as an exact tie.
  double observed_half = 0.0;
  for (std::size_t a = 0; a < k; ++a) observed_half += colsum[a];
  const double observed = half_to_s(observed_half);

  std::size_t exceed = 0, evaluated = 0;
  double max_dev = 0.0;
  auto tally = [&](double half_sum) {
    const double s_star = half_to_s(half_sum);
    if (s_star > observed) ++exceed;
    max_dev = std::max(max_dev, std::abs(s_star - observed));
    ++evaluated;
  };

  const unsigned long long combos = choose_saturating(u, k);
  if (combos <= max_samples) {
    res.exhaustive = true;
    // Lexicographic enumeration of all k-subsets of {0..u-1}.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      double half = 0.0;
      for (const std::size_t i : idx) half += colsum[i];
      tally(half);

      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == u - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  } else {
    res.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(u);
    for (std::size_t i = 0; i < u; ++i) idx[i] = i;
    for (std::size_t s = 0; s < max_samples; ++s) {
      // Partial Fisher-Yates: the first k entries become the sampled half.
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + draw_below(rng, u - i);
        std::swap(idx[i], idx[j]);
      }
      double half = 0.0;
      for (std::size_t i = 0; i < k; ++i) half += colsum[idx[i]];
      tally(half);
    }
  }

  res.partitions_evaluated = evaluated;
  res.p_value = static_cast<double>(exceed) / static_cast<double>(evaluated);
  res.degenerate = max_dev <= 1e-12;
  return res;
}

double eta(const EmbeddingSet& e, const GenderGeometry& gg, std::string_view w,
           std::size_t n_neighbors, double theta,
           const std::vector<std::size_t>* candidate_rows) {
  if (!e.normalized()) throw InputError("eta requires a normalized embedding set");
  const std::size_t w_row = e.require(w);
  const NeighborList nl = nearest_neighbors(e, w, n_neighbors, candidate_rows);

  std::size_t defined = 0, above = 0;
  for (const auto& nb : nl.neighbors) {
    const std::size_t n_row = *e.index_of(nb.token);
    const auto beta = indirect_beta_rows(e, gg, n_row, w_row);
    if (!beta) continue;  // undefined similarity: out of both counts
    ++defined;
    if (*beta > theta) ++above;
  }
  if (defined == 0) return 0.0;
  return static_cast<double>(above) / static_cast<double>(defined);
}

GipeReport gipe(const EmbeddingSet& e, const GenderGeometry& gg,
                std::span<const std::string> vocab_subset, const GipeParams& params,
                const std::vector<std::size_t>* candidate_rows, std::string candidate_name) {
  if (vocab_subset.empty()) throw InputError("gipe: empty vocabulary subset");
  if (!e.normalized()) throw InputError("gipe requires a normalized embedding set");

  GipeReport report;
  report.words.assign(vocab_subset.begin(), vocab_subset.end());
  report.eta_values.assign(vocab_subset.size(), 0.0);
  report.n_neighbors = params.n_neighbors;
  report.theta = params.theta;
  report.weighting =
      params.weighting == GipeWeighting::uniform ? "uniform" : "neighbor-count";
  report.candidate_name = std::move(candidate_name);

  // Resolve up front so missing tokens fail before any work happens.
  std::vector<std::size_t> rows = resolve_rows(e, vocab_subset, "gipe subset");

  std::vector<std::size_t> above_counts(vocab_subset.size(), 0);
  auto process = [&](std::size_t i) {
    const NeighborList nl =
        nearest_neighbors(e, report.words[i], params.n_neighbors, candidate_rows);
    std::size_t defined = 0, above = 0;
    for (const auto& nb : nl.neighbors) {
      const auto beta = indirect_beta_rows(e, gg, *e.index_of(nb.token), rows[i]);
      if (!beta) continue;
      ++defined;
      if (*beta > params.theta) ++above;
    }
    above_counts[i] = above;
    report.eta_values[i] =
        defined == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(defined);
  };

  const unsigned workers =
      std::max(1u, std::min(params.threads, static_cast<unsigned>(vocab_subset.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < vocab_subset.size(); ++i) process(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&, wkr]() {
        for (std::size_t i = wkr; i < vocab_subset.size(); i += workers) process(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (params.weighting == GipeWeighting::uniform) {
    double sum = 0.0;
    for (const double v : report.eta_values) sum += v;
    report.gipe = sum / static_cast<double>(report.eta_values.size());
  } else {
    double weight_total = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < report.eta_values.size(); ++i) {
      weight_total += static_cast<double>(above_counts[i]);
      acc += static_cast<double>(above_counts[i]) * report.eta_values[i];
    }
    report.gipe = weight_total == 0.0 ? 0.0 : acc / weight_total;
  }
  return report;
}

ClusterEval cluster_eval(const EmbeddingSet& e, const std::vector<LabeledToken>& labeled,
                         std::uint64_t seed) {
  if (labeled.size() < 2) throw InputError("cluster_eval: need at least 2 labeled tokens");
  bool has_f = false, has_m = false;
  Eigen::MatrixXd X(static_cast<Eigen::Index>(labeled.size()), e.dim());
  std::vector<int> labels(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    X.row(static_cast<Eigen::Index>(i)) = e.row(e.require(labeled[i].token, "cluster set"));
    labels[i] = labeled[i].label == GenderLabel::female ? 1 : 0;
    (labels[i] ? has_f : has_m) = true;
  }
  if (!has_f || !has_m) throw InputError("cluster_eval: both labels must be present");

  const KMeansResult km = kmeans(X, 2, seed, /*restarts=*/10);

  std::size_t agree = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (km.assignments[i] == labels[i]) ++agree;
  }
  const double direct = static_cast<double>(agree) / static_cast<double>(labels.size());
  const VMeasure vm = v_measure(labels, km.assignments);

  ClusterEval out;
  out.accuracy = std::max(direct, 1.0 - direct);
  out.v_measure = vm.v;
  out.homogeneity = vm.homogeneity;
  out.completeness = vm.completeness;
  out.n_words = labeled.size();
  out.seed = seed;
  return out;
}

double recoverability(const EmbeddingSet& e, const std::vector<LabeledToken>& labeled,
                      std::uint64_t split_seed, const ClassifierConfig& cfg) {
  if (labeled.size() < 10) throw InputError("recoverability: need at least 10 labeled tokens");

  std::vector<std::size_t> female, male;
  std::vector<std::size_t> rows(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    rows[i] = e.require(labeled[i].token, "recoverability set");
    (labeled[i].label == GenderLabel::female ? female : male).push_back(i);
  }
  if (female.empty() || male.empty()) {
    throw InputError("recoverability: both labels must be present");
  }

  std::mt19937_64 rng(split_seed);
  auto shuffle_indices = [&rng](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[draw_below(rng, i)]);
    }
  };
  shuffle_indices(female);
  shuffle_indices(male);

  std::vector<std::size_t> train, test;
  auto split_half = [&](const std::vector<std::size_t>& group) {
    const std::size_t cut = (group.size() + 1) / 2;  // odd leftover goes to train
    train.insert(train.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(cut));
    test.insert(test.end(), group.begin() + static_cast<std::ptrdiff_t>(cut), group.end());
  };
  split_half(female);
  split_half(male);
  if (test.empty()) throw InputError("recoverability: test split is empty");

  auto gather = [&](const std::vector<std::size_t>& items, Eigen::MatrixXd& X,
                    std::vector<int>& y) {
    X.resize(static_cast<Eigen::Index>(items.size()), e.dim());
    y.resize(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      X.row(static_cast<Eigen::Index>(i)) = e.row(rows[items[i]]);
      y[i] = labeled[items[i]].label == GenderLabel::female ? 1 : 0;
    }
  };
  Eigen::MatrixXd Xtr, Xte;
  std::vector<int> ytr, yte;
  gather(train, Xtr, ytr);
  gather(test, Xte, yte);

  const LinearClassifier clf = LinearClassifier::train(Xtr, ytr, cfg);
  return clf.accuracy(Xte, yte);
}

}  // namespace genbias
