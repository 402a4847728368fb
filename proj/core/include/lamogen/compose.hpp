#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lamogen/concept.hpp"

namespace lamogen {

struct CDRecord {
  std::string caption; // primary key
  ConceptScript script;
  bool eval_split = false;
};

struct DbConfig {
  bool reject_eval = true;
};

// Pluggable caption similarity; higher is more similar.
using SimilarityScorer = std::function<double(const std::string& query, const std::string& caption)>;

// Token TF-IDF cosine over lowercased captions; idf is fit on the database.
class TfIdfScorer {
public:
  explicit TfIdfScorer(const std::vector<std::string>& captions);
  double operator()(const std::string& query, const std::string& caption) const;

private:
  std::vector<std::pair<std::string, int>> df_;
  int doc_count_ = 0;
  double idf(const std::string& token) const;
};

struct RetrievalConfig {
  int k = 3;
  SimilarityScorer scorer; // empty -> TF-IDF cosine
};

class Database {
public:
  const std::vector<CDRecord>& records() const { return records_; }
  friend Database db_build(std::vector<CDRecord> records, const DbConfig& cfg);

private:
  std::vector<CDRecord> records_;
};

// Validates records; eval-split records are rejected outright.
Database db_build(std::vector<CDRecord> records, const DbConfig& cfg = {});

// Top-k records by scorer, ties by insertion order.
std::vector<CDRecord> db_query(const Database& db, const std::string& query,
                               const RetrievalConfig& cfg = {});

// One record per line: caption<TAB>script-blob[<TAB>split]
std::string save_db(const std::vector<CDRecord>& records);
std::vector<CDRecord> load_db_records(const std::string& text);

// Script blob in the prompt's section form, single line:
//   [Caption] ... [Support] (left, 1, 0.25), ... [Left hand] ... [Right hand] ...
std::string serialize_script(const ConceptScript& script, bool with_caption = true);

// Tolerant reply parser; locates the sections, validates every tuple against
// the semantic tables. Errors are distinguishable for re-prompting.
ConceptScript parse_reply(const std::string& text);

// Deterministic retrieval-augmented prompt with the query at the input slot.
std::string build_prompt(const std::string& query, const std::vector<CDRecord>& refs);

using LlmFn = std::function<std::string(const std::string& prompt)>;

struct ComposeConfig {
  RetrievalConfig retrieval;
  int retries = 3;
  bool offline = false; // no LLM: top-1 retrieved script verbatim
};

struct ComposeResult {
  ConceptScript script;
  int attempts = 1; // LLM calls made (0 when offline)
};

ComposeResult compose(const std::string& query, const Database& db, const ComposeConfig& cfg,
                      const LlmFn& llm);

} // namespace lamogen
