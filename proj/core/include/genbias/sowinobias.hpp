#ifndef GENBIAS_SOWINOBIAS_HPP
#define GENBIAS_SOWINOBIAS_HPP

#include "genbias/lexicon.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace genbias {

enum class Polarity { positive, negative };
enum class CaseLabel { pro, anti };

const char* to_string(Polarity p);
const char* to_string(CaseLabel l);

/// One generated test sentence. "they" always refers to occ2; the verb is
/// "liked" exactly when the adjective polarity is positive; the label is
/// pro when occ2 is a female-stereotyped occupation and anti when occ2 is
/// male-stereotyped.
struct SoWinoBiasCase {
  std::string id;
  std::string occ1;
  std::string occ2;
  std::string adjective;
  Polarity polarity = Polarity::positive;
  std::string verb;
  CaseLabel label = CaseLabel::pro;
  std::string sentence;
  std::string gold_antecedent;  // always occ2

  std::array<std::string, 2> candidate_mentions() const { return {occ1, occ2}; }

  bool operator==(const SoWinoBiasCase&) const = default;
};

enum class GenerationMode { full, per_polarity, sampled };

struct GeneratedCases {
  std::vector<SoWinoBiasCase> pro;
  std::vector<SoWinoBiasCase> anti;
};

/// Builds the challenge set from the lexicon's occupation and adjective
/// sets. Full mode emits every (occ1, occ2, adjective) combination per
/// label; per_polarity keeps the same cases (callers split them by
/// polarity when emitting); sampled mode draws a seeded uniform subsample
/// of sample_size per label. Output order is deterministic: lexicographic
/// by (occ1, occ2, adjective) lexicon index.
GeneratedCases generate_sowinobias(const BiasLexicon& lexicon, GenerationMode mode,
                                   std::size_t sample_size = 0, std::uint64_t seed = 0);

enum class CaseFormat { jsonl, plaintext };

/// Writes cases to a file: jsonl emits one 9-field object per case
/// (candidate mentions are implied by occ1/occ2 and reconstructed by the
/// reader); plaintext emits one sentence per line.
void emit_cases(const std::vector<SoWinoBiasCase>& cases, CaseFormat format,
                const std::string& path);

/// Reads back a jsonl case file written by emit_cases.
std::vector<SoWinoBiasCase> read_cases_jsonl(const std::string& path);

}  // namespace genbias

#endif  // GENBIAS_SOWINOBIAS_HPP
