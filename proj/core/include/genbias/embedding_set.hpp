#ifndef GENBIAS_EMBEDDING_SET_HPP
#define GENBIAS_EMBEDDING_SET_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace genbias {

/// Dense word-vector table. Immutable after construction; all queries are
/// pure, so one instance may be shared freely across threads.
class EmbeddingSet {
 public:
  /// Takes ownership of the vocabulary and the |V| x d matrix (one row per
  /// token). Throws InputError on duplicate tokens, dimension 0, a row
  /// count mismatch, or non-finite components.
  EmbeddingSet(std::vector<std::string> vocab, Eigen::MatrixXd vectors,
               bool normalized = false);

  std::size_t size() const { return vocab_.size(); }
  Eigen::Index dim() const { return vectors_.cols(); }
  bool normalized() const { return normalized_; }

  const std::vector<std::string>& vocab() const { return vocab_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  const std::string& token(std::size_t row) const { return vocab_[row]; }
  Eigen::MatrixXd::ConstRowXpr row(std::size_t i) const { return vectors_.row(i); }

  bool contains(std::string_view token) const { return index_of(token).has_value(); }

  /// Row index of a token. With lowercase_fallback, a case-sensitive miss
  /// retries the ASCII-lowercased form.
  std::optional<std::size_t> index_of(std::string_view token,
                                      bool lowercase_fallback = false) const;

  /// index_of that throws InputError naming the token (and the word set it
  /// came from, when given).
  std::size_t require(std::string_view token, std::string_view set_name = {},
                      bool lowercase_fallback = false) const;

  /// Cosine similarity between two rows; 0 when either row has zero norm.
  double cosine(std::size_t i, std::size_t j) const;

  /// Cached Euclidean row norms.
  const Eigen::VectorXd& norms() const { return norms_; }

 private:
  std::vector<std::string> vocab_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd norms_;
  bool normalized_ = false;

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
};

/// Side information from load_embeddings.
struct LoadStats {
  std::size_t lines_read = 0;
  std::size_t duplicates_dropped = 0;
  bool header_skipped = false;
};

/// Reads a GloVe-style text file: one token followed by d space-separated
/// decimal floats per line. A word2vec-style count header (two integers
/// alone on line 1) is auto-detected and skipped. On duplicate tokens the
/// first occurrence wins; the rest are counted in stats. max_vocab > 0
/// stops after that many kept tokens (GloVe files are frequency-ordered).
EmbeddingSet load_embeddings(const std::string& path,
                             std::optional<Eigen::Index> expected_dim = std::nullopt,
                             LoadStats* stats = nullptr,
                             std::size_t max_vocab = 0);

/// Writes the set in the same text format. Round-trips vocabulary exactly
/// and components within 1e-6.
void save_embeddings(const EmbeddingSet& e, const std::string& path);

/// Returns a copy with every row scaled to unit Euclidean norm. Throws
/// InputError naming the token of any zero-norm row.
EmbeddingSet normalize(const EmbeddingSet& e);

struct Neighbor {
  std::string token;
  double score;  // cosine to the query
};

struct NeighborList {
  std::string query;
  std::vector<Neighbor> neighbors;  // descending score, query excluded
};

/// Exact brute-force top-N by cosine over the candidate rows (default: the
/// whole vocabulary). The query itself is excluded; ties break toward the
/// lower vocabulary index.
NeighborList nearest_neighbors(const EmbeddingSet& e, std::string_view query,
                               std::size_t n,
                               const std::vector<std::size_t>* candidate_rows = nullptr);

/// nearest_neighbors for many queries. With threads > 1 the queries are
/// processed in parallel; output order always equals the sequential order.
std::vector<NeighborList> nearest_neighbors_batch(
    const EmbeddingSet& e, const std::vector<std::string>& queries, std::size_t n,
    const std::vector<std::size_t>* candidate_rows = nullptr, unsigned threads = 1);

/// ASCII lowercase helper used for the optional fallback lookups.
std::string ascii_lower(std::string_view s);

}  // namespace genbias

#endif  // GENBIAS_EMBEDDING_SET_HPP
