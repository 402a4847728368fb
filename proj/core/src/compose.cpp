#include "lamogen/compose.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace lamogen {

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

std::map<std::string, int> term_counts(const std::string& text) {
  std::map<std::string, int> counts;
  for (auto& t : tokenize(text)) ++counts[t];
  return counts;
}

} // namespace

TfIdfScorer::TfIdfScorer(const std::vector<std::string>& captions) {
  doc_count_ = static_cast<int>(captions.size());
  std::map<std::string, int> df;
  for (const auto& caption : captions) {
    auto counts = term_counts(caption);
    for (auto& [token, n] : counts) ++df[token];
  }
  df_.assign(df.begin(), df.end());
}

double TfIdfScorer::idf(const std::string& token) const {
  int df = 0;
  auto it = std::lower_bound(df_.begin(), df_.end(), token,
                             [](const auto& p, const std::string& t) { return p.first < t; });
  if (it != df_.end() && it->first == token) df = it->second;
  return std::log((1.0 + doc_count_) / (1.0 + df)) + 1.0;
}

double TfIdfScorer::operator()(const std::string& query, const std::string& caption) const {
  auto qc = term_counts(query);
  auto cc = term_counts(caption);
  double dot = 0.0, qn = 0.0, cn = 0.0;
  for (auto& [token, n] : qc) {
    double w = n * idf(token);
    qn += w * w;
    auto it = cc.find(token);
    if (it != cc.end()) dot += w * (it->second * idf(token));
  }
  for (auto& [token, n] : cc) {
    double w = n * idf(token);
    cn += w * w;
  }
  if (qn <= 0.0 || cn <= 0.0) return 0.0;
  return dot / (std::sqrt(qn) * std::sqrt(cn));
}

Database db_build(std::vector<CDRecord> records, const DbConfig& cfg) {
  for (const auto& rec : records) {
    if (rec.caption.empty()) fail(Errc::parse_error, "database record with empty caption");
    if (cfg.reject_eval && rec.eval_split)
      fail(Errc::eval_split_record, "eval-split record rejected at build: '" + rec.caption + "'");
    if (rec.script.empty())
      fail(Errc::empty_script, "database record with empty script: '" + rec.caption + "'");
    for (const auto& move : rec.script.support)
      for (const auto& cd : move.sides) validate_cd(cd);
    for (const auto& cd : rec.script.left_hand) validate_cd(cd);
    for (const auto& cd : rec.script.right_hand) validate_cd(cd);
  }
  Database db;
  db.records_ = std::move(records);
  return db;
}

std::vector<CDRecord> db_query(const Database& db, const std::string& query,
                               const RetrievalConfig& cfg) {
  if (db.records().empty()) fail(Errc::empty_database, "query against an empty database");
  if (cfg.k < 1) fail(Errc::out_of_range, "k must be at least 1");

  SimilarityScorer scorer = cfg.scorer;
  std::optional<TfIdfScorer> default_scorer;
  if (!scorer) {
    std::vector<std::string> captions;
    for (const auto& r : db.records()) captions.push_back(r.caption);
    default_scorer.emplace(captions);
    scorer = [&](const std::string& q, const std::string& c) { return (*default_scorer)(q, c); };
  }

  std::vector<size_t> order(db.records().size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> scores(order.size());
  for (size_t i = 0; i < order.size(); ++i) scores[i] = scorer(query, db.records()[i].caption);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  std::vector<CDRecord> out;
  for (size_t i = 0; i < order.size() && static_cast<int>(i) < cfg.k; ++i)
    out.push_back(db.records()[order[i]]);
  return out;
}

std::string serialize_script(const ConceptScript& script, bool with_caption) {
  std::ostringstream os;
  if (with_caption) os << "[Caption] " << script.caption << " ";
  os << "[Support] ";
  for (size_t i = 0; i < script.support.size(); ++i) {
    if (i) os << ", ";
    const auto& move = script.support[i];
    for (size_t s = 0; s < move.sides.size(); ++s) {
      if (s) os << " while ";
      os << format_tuple(move.sides[s]);
    }
  }
  os << " [Left hand] ";
  for (size_t i = 0; i < script.left_hand.size(); ++i) {
    if (i) os << ", ";
    os << format_tuple(script.left_hand[i]);
  }
  os << " [Right hand] ";
  for (size_t i = 0; i < script.right_hand.size(); ++i) {
    if (i) os << ", ";
    os << format_tuple(script.right_hand[i]);
  }
  return os.str();
}

namespace {

struct Section {
  bool present = false;
  std::string text;
};

Section section_of(const std::string& reply, const std::string& tag) {
  static const char* kTags[] = {"[Caption]", "[Support]", "[Left hand]", "[Right hand]"};
  size_t at = reply.find(tag);
  Section out;
  if (at == std::string::npos) return out;
  out.present = true;
  size_t begin = at + tag.size();
  size_t end = reply.size();
  for (const char* other : kTags) {
    if (tag == other) continue;
    size_t p = reply.find(other, begin);
    if (p != std::string::npos) end = std::min(end, p);
  }
  out.text = reply.substr(begin, end - begin);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits "(..), (..) while (..), ..." into tuples with a while-link flag per
// tuple (true when joined to the previous one).
struct RawTuple {
  std::string text;
  bool while_linked;
};

std::vector<RawTuple> split_tuples(const std::string& text) {
  std::vector<RawTuple> out;
  size_t pos = 0;
  size_t last_end = 0;
  while (true) {
    size_t open = text.find('(', pos);
    if (open == std::string::npos) break;
    size_t close = text.find(')', open);
    if (close == std::string::npos)
      fail(Errc::tuple_error, "item " + std::to_string(out.size() + 1) + ": unbalanced parenthesis");
    std::string between = text.substr(last_end, open - last_end);
    bool linked = !out.empty() && between.find("while") != std::string::npos;
    out.push_back(RawTuple{text.substr(open, close - open + 1), linked});
    last_end = close + 1;
    pos = close + 1;
  }
  return out;
}

} // namespace

ConceptScript parse_reply(const std::string& text) {
  Section caption = section_of(text, "[Caption]");
  Section support = section_of(text, "[Support]");
  Section left = section_of(text, "[Left hand]");
  Section right = section_of(text, "[Right hand]");
  if (!support.present) fail(Errc::missing_section, "reply is missing the [Support] section");
  if (!left.present) fail(Errc::missing_section, "reply is missing the [Left hand] section");
  if (!right.present) fail(Errc::missing_section, "reply is missing the [Right hand] section");

  ConceptScript script;
  script.caption = trim(caption.text);

  auto parse_items = [](const std::string& body, std::optional<Group> context,
                        const char* where) {
    std::vector<std::pair<ConceptualDescription, bool>> items;
    auto raw = split_tuples(body);
    for (size_t i = 0; i < raw.size(); ++i) {
      try {
        items.emplace_back(parse_tuple(raw[i].text, context), raw[i].while_linked);
      } catch (const Error& e) {
        if (e.code() == Errc::index_out_of_table) throw;
        fail(Errc::tuple_error, std::string(where) + " item " + std::to_string(i + 1) + ": " +
                                    e.what());
      }
    }
    return items;
  };

  for (auto& [cd, linked] : parse_items(support.text, std::nullopt, "[Support]")) {
    if (linked && !script.support.empty() && script.support.back().sides.size() < 2)
      script.support.back().sides.push_back(cd);
    else
      script.support.push_back(SupportMove{{cd}});
  }
  for (auto& [cd, linked] : parse_items(left.text, Group::UpperL, "[Left hand]"))
    script.left_hand.push_back(cd);
  for (auto& [cd, linked] : parse_items(right.text, Group::UpperR, "[Right hand]"))
    script.right_hand.push_back(cd);
  return script;
}

std::string save_db(const std::vector<CDRecord>& records) {
  std::ostringstream os;
  for (const auto& rec : records) {
    os << rec.caption << '\t' << serialize_script(rec.script, false);
    if (rec.eval_split) os << "\teval";
    os << '\n';
  }
  return os.str();
}

std::vector<CDRecord> load_db_records(const std::string& text) {
  std::vector<CDRecord> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      fail(Errc::parse_error, "db line " + std::to_string(lineno) + ": expected caption<TAB>script");
    size_t tab2 = line.find('\t', tab1 + 1);
    CDRecord rec;
    rec.caption = line.substr(0, tab1);
    std::string blob =
        line.substr(tab1 + 1, tab2 == std::string::npos ? std::string::npos : tab2 - tab1 - 1);
    if (tab2 != std::string::npos) {
      std::string split = trim(line.substr(tab2 + 1));
      if (split == "eval") rec.eval_split = true;
      else if (split != "train" && !split.empty())
        fail(Errc::parse_error, "db line " + std::to_string(lineno) + ": unknown split: " + split);
    }
    try {
      rec.script = parse_reply(blob);
    } catch (const Error& e) {
      fail(Errc::parse_error,
           "db line " + std::to_string(lineno) + ": bad script blob: " + e.what());
    }
    rec.script.caption = rec.caption;
    out.push_back(std::move(rec));
  }
  return out;
}

std::string build_prompt(const std::string& query, const std::vector<CDRecord>& refs) {
  if (refs.empty()) fail(Errc::no_references, "prompt needs at least one reference");
  std::ostringstream os;
  os << "There are " << refs.size()
     << " digit collections describing movements, where each line consists of: [number] "
        "[Caption] - a general description of the motion sequence. [Support] - detailed "
        "descriptions of the movements of the supporting body parts, specifically the left and "
        "right feet, using a series of triplets. [Left hand] - detailed descriptions of the "
        "movements of the left hand, using a series of tuples. [Right hand] - detailed "
        "descriptions of the movements of the right hand, using a series of tuples. In the "
        "detailed descriptions, we specify the movement details for each body part and their "
        "duration in seconds. For the support movements, the details must be selected from "
        "these 54 categories: [";
  const auto& sup = support_semantics();
  for (size_t i = 0; i < sup.size(); ++i) {
    if (i) os << ", ";
    os << (i + 1) << ": " << sup[i];
  }
  os << "]. For the hand movements, the details must be selected from these 81 categories: [";
  const auto& arm = arm_semantics();
  for (size_t i = 0; i < arm.size(); ++i) {
    if (i) os << ", ";
    os << (i + 1) << ": " << arm[i];
  }
  os << "]. For example, for the [Support] line, the triplet list would be like: (left, 1, "
        "0.25), (right, 2, 0.25), (left, 1, 0.25) while (right, 2, 0.25). This means that the "
        "first movement is \"left foot steps to rest position in 0.25 seconds\". The second "
        "movement is \"right foot steps forward in 0.25 seconds\". The third movement is \"left "
        "foot steps to rest position in 0.25 seconds while right foot steps forward in 0.25 "
        "seconds\". For the [Left hand] line, the tuple list would be like: (1, 0.5), (2, 0.2). "
        "This means that the first movement is \"left hand moves close to shoulder in 0.5 "
        "seconds\" and the second movement is \"left hand moves forward in 0.2 seconds\". For "
        "the [Right hand] line, the structure and definition are similar to [Left hand] lines. "
        "Below is the main body of the digit collection describing the movements. You should "
        "strictly imitate the following content and create only one digit collection of "
     << query << ". Reply without explanation.\n\n";
  for (size_t i = 0; i < refs.size(); ++i)
    os << "[" << (i + 1) << "] " << serialize_script(refs[i].script, true) << "\n";
  return os.str();
}

ComposeResult compose(const std::string& query, const Database& db, const ComposeConfig& cfg,
                      const LlmFn& llm) {
  auto refs = db_query(db, query, cfg.retrieval);
  ComposeResult result;
  if (cfg.offline) {
    result.script = refs.front().script;
    result.attempts = 0;
    return result;
  }
  if (!llm) fail(Errc::llm_unavailable, "no LLM callable configured");

  std::string prompt = build_prompt(query, refs);
  std::string feedback;
  std::string last_error;
  for (int attempt = 1; attempt <= cfg.retries; ++attempt) {
    std::string reply;
    try {
      reply = llm(prompt + feedback);
    } catch (const std::exception& e) {
      fail(Errc::llm_unavailable, std::string("LLM call failed: ") + e.what());
    }
    result.attempts = attempt;
    try {
      result.script = parse_reply(reply);
      return result;
    } catch (const Error& e) {
      last_error = e.what();
      feedback = "\n\nThe previous reply was invalid: " + last_error +
                 ". Reply again, strictly following the required format.";
    }
  }
  fail(Errc::compose_failed,
       "no valid reply after " + std::to_string(cfg.retries) + " attempts; last error: " + last_error);
}

} // namespace lamogen
