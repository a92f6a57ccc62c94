#include "genbias/sowinobias.hpp"

#include "genbias/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

namespace genbias {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string make_sentence(const std::string& occ1, const std::string& verb,
                          const std::string& occ2, const std::string& adjective) {
  return "The " + occ1 + " " + verb + " the " + occ2 + " because they were " + adjective +
         ".";
}

SoWinoBiasCase make_case(CaseLabel label, std::size_t seq, const std::string& occ1,
                         const std::string& occ2, const std::string& adjective,
                         Polarity polarity) {
  SoWinoBiasCase c;
  char idbuf[32];
  std::snprintf(idbuf, sizeof(idbuf), "%s-%05zu", to_string(label), seq);
  c.id = idbuf;
  c.occ1 = occ1;
  c.occ2 = occ2;
  c.adjective = adjective;
  c.polarity = polarity;
  c.verb = polarity == Polarity::positive ? "liked" : "disliked";
  c.label = label;
  c.sentence = make_sentence(occ1, c.verb, occ2, adjective);
  c.gold_antecedent = occ2;
  return c;
}

std::vector<SoWinoBiasCase> full_product(CaseLabel label,
                                         const std::vector<std::string>& occ1_set,
                                         const std::vector<std::string>& occ2_set,
                                         const std::vector<std::string>& adj_pos,
                                         const std::vector<std::string>& adj_neg) {
  std::vector<SoWinoBiasCase> cases;
  cases.reserve(occ1_set.size() * occ2_set.size() * (adj_pos.size() + adj_neg.size()));
  std::size_t seq = 0;
  for (const auto& occ1 : occ1_set) {
    for (const auto& occ2 : occ2_set) {
      for (const auto& adj : adj_pos) {
        cases.push_back(make_case(label, seq++, occ1, occ2, adj, Polarity::positive));
      }
      for (const auto& adj : adj_neg) {
        cases.push_back(make_case(label, seq++, occ1, occ2, adj, Polarity::negative));
      }
    }
  }
  return cases;
}

std::vector<SoWinoBiasCase> sample_cases(std::vector<SoWinoBiasCase> all,
                                         std::size_t sample_size, std::mt19937_64& rng) {
  if (sample_size > all.size()) {
    throw InputError("sample size " + std::to_string(sample_size) + " exceeds the full count " +
                     std::to_string(all.size()));
  }
  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(sample_size);
  std::sort(idx.begin(), idx.end());  // keep the deterministic generation order
  std::vector<SoWinoBiasCase> out;
  out.reserve(sample_size);
  for (const std::size_t i : idx) out.push_back(std::move(all[i]));
  return out;
}

Polarity polarity_from_string(const std::string& s) {
  if (s == "positive") return Polarity::positive;
  if (s == "negative") return Polarity::negative;
  throw InputError("unknown polarity '" + s + "'");
}

CaseLabel label_from_string(const std::string& s) {
  if (s == "pro") return CaseLabel::pro;
  if (s == "anti") return CaseLabel::anti;
  throw InputError("unknown case label '" + s + "'");
}

}  // namespace

const char* to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

const char* to_string(CaseLabel l) { return l == CaseLabel::pro ? "pro" : "anti"; }

GeneratedCases generate_sowinobias(const BiasLexicon& lexicon, GenerationMode mode,
                                   std::size_t sample_size, std::uint64_t seed) {
  const auto& f_occ = lexicon.set("F_occ");
  const auto& m_occ = lexicon.set("M_occ");
  const auto& adj_pos = lexicon.set("F_adj_pos");
  const auto& adj_neg = lexicon.set("F_adj_neg");
  if (f_occ.empty() || m_occ.empty() || (adj_pos.empty() && adj_neg.empty())) {
    throw InputError("generate_sowinobias: occupation and adjective sets must be nonempty");
  }

  GeneratedCases out;
  // pro: occ2 drawn from F_occ; anti: occ2 drawn from M_occ.
  out.pro = full_product(CaseLabel::pro, m_occ, f_occ, adj_pos, adj_neg);
  out.anti = full_product(CaseLabel::anti, f_occ, m_occ, adj_pos, adj_neg);

  if (mode == GenerationMode::sampled) {
    std::mt19937_64 rng(seed);
    out.pro = sample_cases(std::move(out.pro), sample_size, rng);
    out.anti = sample_cases(std::move(out.anti), sample_size, rng);
  }
  return out;
}

void emit_cases(const std::vector<SoWinoBiasCase>& cases, CaseFormat format,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open file for writing: " + path);

  if (format == CaseFormat::plaintext) {
    for (const auto& c : cases) out << c.sentence << '\n';
  } else {
    for (const auto& c : cases) {
      ordered_json obj;
      obj["id"] = c.id;
      obj["occ1"] = c.occ1;
      obj["occ2"] = c.occ2;
      obj["adjective"] = c.adjective;
      obj["polarity"] = to_string(c.polarity);
      obj["verb"] = c.verb;
      obj["label"] = to_string(c.label);
      obj["sentence"] = c.sentence;
      obj["gold_antecedent"] = c.gold_antecedent;
      out << obj.dump() << '\n';
    }
  }
  if (!out) throw InputError("write failed: " + path);
}

std::vector<SoWinoBiasCase> read_cases_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open case file: " + path);

  std::vector<SoWinoBiasCase> cases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError("invalid JSON at line " + std::to_string(line_no) + " of " + path +
                       ": " + e.what());
    }
    SoWinoBiasCase c;
    try {
      c.id = obj.at("id").get<std::string>();
      c.occ1 = obj.at("occ1").get<std::string>();
      c.occ2 = obj.at("occ2").get<std::string>();
      c.adjective = obj.at("adjective").get<std::string>();
      c.polarity = polarity_from_string(obj.at("polarity").get<std::string>());
      c.verb = obj.at("verb").get<std::string>();
      c.label = label_from_string(obj.at("label").get<std::string>());
      c.sentence = obj.at("sentence").get<std::string>();
      c.gold_antecedent = obj.at("gold_antecedent").get<std::string>();
    } catch (const json::exception& e) {
      throw InputError("missing case field at line " + std::to_string(line_no) + " of " +
                       path + ": " + e.what());
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace genbias
