#include "genbias/lexicon.hpp"

#include "genbias/errors.hpp"
#include "genbias/resources.hpp"

#include "json.hpp"

#include <fstream>
#include <unordered_set>

namespace genbias {

namespace {

using nlohmann::json;

void check_no_duplicates(const std::string& name, const std::vector<std::string>& tokens) {
  std::unordered_set<std::string> seen;
  for (const auto& t : tokens) {
    if (!seen.insert(t).second) {
      throw InputError("lexicon set '" + name + "' contains duplicate token '" + t + "'");
    }
  }
}

void apply_json_sets(BiasLexicon& lex, const json& obj, std::string* version) {
  const json* sets = &obj;
  if (obj.contains("sets") && obj["sets"].is_object()) {
    sets = &obj["sets"];
    if (obj.contains("version")) {
      *version = obj["version"].is_string() ? obj["version"].get<std::string>()
                                            : obj["version"].dump();
    }
  }
  for (auto it = sets->begin(); it != sets->end(); ++it) {
    if (it.key() == "version" && !it.value().is_array()) continue;
    if (!it.value().is_array()) {
      throw InputError("lexicon set '" + it.key() + "' is not an array of tokens");
    }
    std::vector<std::string> tokens;
    tokens.reserve(it.value().size());
    for (const auto& v : it.value()) {
      if (!v.is_string()) {
        throw InputError("lexicon set '" + it.key() + "' contains a non-string entry");
      }
      tokens.push_back(v.get<std::string>());
    }
    lex.define(it.key(), std::move(tokens));
  }
}

}  // namespace

BiasLexicon BiasLexicon::builtin() {
  BiasLexicon lex;
  json obj = json::parse(resources::builtin_lexicon_json());
  apply_json_sets(lex, obj, &lex.version_);

  // Derived unions used throughout the metrics.
  std::vector<std::string> f_adj = lex.set("F_adj_pos");
  const auto& neg = lex.set("F_adj_neg");
  f_adj.insert(f_adj.end(), neg.begin(), neg.end());
  lex.define("F_adj", std::move(f_adj));

  std::vector<std::string> v_so = lex.set("F_occ");
  const auto& mo = lex.set("M_occ");
  v_so.insert(v_so.end(), mo.begin(), mo.end());
  const auto& fa = lex.set("F_adj");
  v_so.insert(v_so.end(), fa.begin(), fa.end());
  lex.define("V_So", std::move(v_so));
  return lex;
}

BiasLexicon BiasLexicon::from_json_file(const std::string& path, bool merge_builtin) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon file: " + path);
  json obj;
  try {
    in >> obj;
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in lexicon file " + path + ": " + e.what());
  }
  if (!obj.is_object()) throw InputError("lexicon file must hold a JSON object: " + path);

  BiasLexicon lex = merge_builtin ? builtin() : BiasLexicon{};
  apply_json_sets(lex, obj, &lex.version_);
  return lex;
}

const std::vector<std::string>& BiasLexicon::set(const std::string& name) const {
  auto it = sets_.find(name);
  if (it == sets_.end()) throw InputError("unknown lexicon set '" + name + "'");
  return it->second;
}

void BiasLexicon::define(const std::string& name, std::vector<std::string> tokens) {
  check_no_duplicates(name, tokens);
  sets_[name] = std::move(tokens);
}

std::vector<std::pair<std::string, std::string>> BiasLexicon::definitional_pairs() const {
  const auto& f = set("F_def");
  const auto& m = set("M_def");
  if (f.size() != m.size()) {
    throw InputError("F_def and M_def must have equal length to form definitional pairs");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) pairs.emplace_back(f[i], m[i]);
  return pairs;
}

std::vector<std::pair<std::string, std::string>> load_pair_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open pair list file: " + path);
  json arr;
  try {
    in >> arr;
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in pair list " + path + ": " + e.what());
  }
  if (!arr.is_array()) throw InputError("pair list must be a JSON array: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw InputError("pair list entries must be [string, string]: " + path);
    }
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return pairs;
}

}  // namespace genbias
