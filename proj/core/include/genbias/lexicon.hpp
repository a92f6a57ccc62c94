#ifndef GENBIAS_LEXICON_HPP
#define GENBIAS_LEXICON_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace genbias {

/// Named word sets used by the bias metrics: the built-in occupation,
/// adjective, and definitional sets plus arbitrary user-defined sets.
/// Sets are duplicate-free; lookup by name throws InputError on a miss.
class BiasLexicon {
 public:
  /// The built-in lexicon: F_occ, M_occ, F_adj_pos, F_adj_neg (16 tokens
  /// each), F_def, M_def (8 each, aligned pairwise), and the derived
  /// unions F_adj (pos+neg) and V_So (F_occ + M_occ + F_adj).
  static BiasLexicon builtin();

  /// Loads a JSON object mapping set names to token arrays. Accepts either
  /// a flat {"name": [...]} object or {"version": ..., "sets": {...}}.
  /// With merge_builtin, built-in sets are kept unless redefined.
  static BiasLexicon from_json_file(const std::string& path, bool merge_builtin = true);

  bool has(const std::string& name) const { return sets_.count(name) > 0; }
  const std::vector<std::string>& set(const std::string& name) const;
  void define(const std::string& name, std::vector<std::string> tokens);

  const std::map<std::string, std::vector<std::string>>& sets() const { return sets_; }
  const std::string& version() const { return version_; }

  /// (female, male) pairs derived by zipping F_def with M_def.
  std::vector<std::pair<std::string, std::string>> definitional_pairs() const;

 private:
  std::map<std::string, std::vector<std::string>> sets_;
  std::string version_ = "0";
};

/// Reads a JSON array of [a, b] pairs, e.g. for equalize lists.
std::vector<std::pair<std::string, std::string>> load_pair_list(const std::string& path);

}  // namespace genbias

#endif  // GENBIAS_LEXICON_HPP
