#include "genbias/embedding_set.hpp"

#include "genbias/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <thread>

namespace genbias {

namespace {

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_unsigned_integer(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

EmbeddingSet::EmbeddingSet(std::vector<std::string> vocab, Eigen::MatrixXd vectors,
                           bool normalized)
    : vocab_(std::move(vocab)), vectors_(std::move(vectors)), normalized_(normalized) {
  if (static_cast<Eigen::Index>(vocab_.size()) != vectors_.rows()) {
    throw InputError("embedding set: vocabulary size (" + std::to_string(vocab_.size()) +
                     ") does not match matrix rows (" + std::to_string(vectors_.rows()) + ")");
  }
  if (!vocab_.empty() && vectors_.cols() < 1) {
    throw InputError("embedding set: dimension must be positive");
  }
  if (!vectors_.allFinite()) {
    throw InputError("embedding set: non-finite vector component");
  }
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    auto [it, inserted] = index_.emplace(vocab_[i], i);
    if (!inserted) throw InputError("embedding set: duplicate token '" + vocab_[i] + "'");
  }
  norms_ = vectors_.rowwise().norm();
  if (normalized_) {
    for (Eigen::Index i = 0; i < norms_.size(); ++i) {
      if (std::abs(norms_[i] - 1.0) > 1e-6) {
        throw InputError("embedding set marked normalized but row for '" +
                         vocab_[static_cast<std::size_t>(i)] + "' has norm " +
                         std::to_string(norms_[i]));
      }
    }
  }
}

std::optional<std::size_t> EmbeddingSet::index_of(std::string_view token,
                                                  bool lowercase_fallback) const {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  if (lowercase_fallback) {
    auto lower = ascii_lower(token);
    it = index_.find(std::string_view(lower));
    if (it != index_.end()) return it->second;
  }
  return std::nullopt;
}

std::size_t EmbeddingSet::require(std::string_view token, std::string_view set_name,
                                  bool lowercase_fallback) const {
  if (auto idx = index_of(token, lowercase_fallback)) return *idx;
  std::string msg = "token '" + std::string(token) + "'";
  if (!set_name.empty()) msg += " (set '" + std::string(set_name) + "')";
  msg += " not in vocabulary";
  throw InputError(msg);
}

double EmbeddingSet::cosine(std::size_t i, std::size_t j) const {
  const double ni = norms_[static_cast<Eigen::Index>(i)];
  const double nj = norms_[static_cast<Eigen::Index>(j)];
  if (ni == 0.0 || nj == 0.0) return 0.0;
  return vectors_.row(static_cast<Eigen::Index>(i))
             .dot(vectors_.row(static_cast<Eigen::Index>(j))) /
         (ni * nj);
}

EmbeddingSet load_embeddings(const std::string& path,
                             std::optional<Eigen::Index> expected_dim, LoadStats* stats,
                             std::size_t max_vocab) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embedding file: " + path);

  LoadStats local;
  std::vector<std::string> vocab;
  std::vector<double> data;
  std::unordered_map<std::string, std::size_t> seen;
  Eigen::Index dim = -1;

  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      if (fields.size() == 2 && is_unsigned_integer(fields[0]) &&
          is_unsigned_integer(fields[1])) {
        local.header_skipped = true;
        continue;  // word2vec-style count header
      }
    }

    ++local.lines_read;
    if (fields.size() < 2) {
      throw InputError("malformed embedding line " + std::to_string(line_no) + " in " +
                       path + ": token with no vector components");
    }
    const Eigen::Index line_dim = static_cast<Eigen::Index>(fields.size()) - 1;
    if (dim < 0) {
      dim = line_dim;
      if (expected_dim && dim != *expected_dim) {
        throw InputError("embedding file " + path + " has dimension " +
                         std::to_string(dim) + ", expected " + std::to_string(*expected_dim));
      }
    } else if (line_dim != dim) {
      throw InputError("dimension mismatch at line " + std::to_string(line_no) + " in " +
                       path + ": expected " + std::to_string(dim) + " components, got " +
                       std::to_string(line_dim));
    }

    std::string token(fields[0]);
    if (seen.count(token)) {
      ++local.duplicates_dropped;
      continue;
    }
    if (max_vocab > 0 && vocab.size() >= max_vocab) break;

    for (Eigen::Index k = 0; k < dim; ++k) {
      double v = 0.0;
      const std::string_view field = fields[static_cast<std::size_t>(k) + 1];
      if (!parse_double(field, v)) {
        throw InputError("cannot parse number '" + std::string(field) + "' at line " +
                         std::to_string(line_no) + " in " + path);
      }
      if (!std::isfinite(v)) {
        throw InputError("non-finite value at line " + std::to_string(line_no) + " in " +
                         path);
      }
      data.push_back(v);
    }
    seen.emplace(token, vocab.size());
    vocab.push_back(std::move(token));
  }

  if (vocab.empty()) throw InputError("embedding file is empty: " + path);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(vocab.size()), dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      m(i, j) = data[static_cast<std::size_t>(i * dim + j)];

  if (stats) *stats = local;
  return EmbeddingSet(std::move(vocab), std::move(m), /*normalized=*/false);
}

void save_embeddings(const EmbeddingSet& e, const std::string& path) {
  if (e.size() == 0) throw InputError("refusing to save an empty embedding set");
  std::ofstream out(path);
  if (!out) throw InputError("cannot open file for writing: " + path);
  char buf[64];
  for (std::size_t i = 0; i < e.size(); ++i) {
    out << e.token(i);
    for (Eigen::Index j = 0; j < e.dim(); ++j) {
      // fixed precision keeps the absolute round-trip error below 1e-6
      std::snprintf(buf, sizeof(buf), " %.7f", e.vectors()(static_cast<Eigen::Index>(i), j));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + path);
}

EmbeddingSet normalize(const EmbeddingSet& e) {
  Eigen::MatrixXd m = e.vectors();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n == 0.0) {
      throw InputError("cannot normalize zero vector for token '" +
                       e.token(static_cast<std::size_t>(i)) + "'");
    }
    m.row(i) /= n;
  }
  return EmbeddingSet(e.vocab(), std::move(m), /*normalized=*/true);
}

namespace {

NeighborList knn_one(const EmbeddingSet& e, std::size_t query_row, std::size_t n,
                     const std::vector<std::size_t>* candidate_rows) {
  const Eigen::MatrixXd& m = e.vectors();
  const Eigen::VectorXd q = m.row(static_cast<Eigen::Index>(query_row));
  const double qn = e.norms()[static_cast<Eigen::Index>(query_row)];
  const Eigen::VectorXd dots = m * q;  // column-major matvec, one pass

  struct Scored {
    double score;
    std::size_t row;
  };
  auto score_of = [&](std::size_t r) {
    const double rn = e.norms()[static_cast<Eigen::Index>(r)];
    return (qn == 0.0 || rn == 0.0) ? 0.0 : dots[static_cast<Eigen::Index>(r)] / (qn * rn);
  };

  std::vector<Scored> scored;
  if (candidate_rows) {
    scored.reserve(candidate_rows->size());
    for (std::size_t r : *candidate_rows) {
      if (r == query_row) continue;
      scored.push_back({score_of(r), r});
    }
  } else {
    scored.reserve(e.size());
    for (std::size_t r = 0; r < e.size(); ++r) {
      if (r == query_row) continue;
      scored.push_back({score_of(r), r});
    }
  }

  auto better = [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.row < b.row;  // deterministic tie-break
  };
  const std::size_t keep = std::min(n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  scored.resize(keep);

  NeighborList out;
  out.query = e.token(query_row);
  out.neighbors.reserve(keep);
  for (const auto& s : scored) out.neighbors.push_back({e.token(s.row), s.score});
  return out;
}

}  // namespace

NeighborList nearest_neighbors(const EmbeddingSet& e, std::string_view query, std::size_t n,
                               const std::vector<std::size_t>* candidate_rows) {
  if (n == 0) throw InputError("nearest_neighbors: N must be positive");
  const std::size_t row = e.require(query);
  return knn_one(e, row, n, candidate_rows);
}

std::vector<NeighborList> nearest_neighbors_batch(const EmbeddingSet& e,
                                                  const std::vector<std::string>& queries,
                                                  std::size_t n,
                                                  const std::vector<std::size_t>* candidate_rows,
                                                  unsigned threads) {
  if (n == 0) throw InputError("nearest_neighbors: N must be positive");
  std::vector<std::size_t> rows(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) rows[i] = e.require(queries[i]);

  std::vector<NeighborList> out(queries.size());
  if (threads <= 1 || queries.size() <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i)
      out[i] = knn_one(e, rows[i], n, candidate_rows);
    return out;
  }

  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(queries.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < queries.size(); i += workers)
        out[i] = knn_one(e, rows[i], n, candidate_rows);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace genbias
