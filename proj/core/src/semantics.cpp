#include "lamogen/semantics.hpp"

#include <sstream>

#include "lamogen/error.hpp"

namespace lamogen {

const std::vector<std::string>& support_semantics() {
  static const std::vector<std::string> table = {
      "steps to rest position",
      "steps forward",
      "steps backward",
      "steps to right",
      "steps to left",
      "steps forward diagonally to right",
      "steps forward diagonally to left",
      "steps backward diagonally to right",
      "steps backward diagonally to left",
      "rises",
      "rises to forward",
      "rises to backward",
      "rises to right",
      "rises to left",
      "rises forward diagonally to right",
      "rises forward diagonally to left",
      "rises backward diagonally to right",
      "rises backward diagonally to left",
      "knee flex",
      "knee flex forward",
      "knee flex backward",
      "knee flex right",
      "knee flex left",
      "knee flex forward diagonally to right",
      "knee flex forward diagonally to left",
      "knee flex backward diagonally to right",
      "knee flex backward diagonally to left",
      "holds in rest position",
      "holds in forward position",
      "holds in backward position",
      "holds in right position",
      "holds in left position",
      "holds in forward diagonally to right position",
      "holds in forward diagonally to left position",
      "holds in backward diagonally to right position",
      "holds in backward diagonally to left position",
      "holds in the raised position",
      "holds in the raised forward position",
      "holds in the raised backward position",
      "holds in the raised right position",
      "holds in the raised left position",
      "holds in the raised forward diagonally to right position",
      "holds in the raised forward diagonally to left position",
      "holds in the raised backward diagonally to right position",
      "holds in the raised backward diagonally to left position",
      "holds in knee-flexed position",
      "holds in knee-flexed forward position",
      "holds in knee-flexed backward position",
      "holds in knee-flexed right position",
      "holds in knee-flexed left position",
      "holds in knee-flexed forward diagonally to right position",
      "holds in knee-flexed forward diagonally to left position",
      "holds in knee-flexed backward diagonally to right position",
      "holds in knee-flexed backward diagonally to left position",
  };
  return table;
}

const std::vector<std::string>& arm_semantics() {
  static const std::vector<std::string> table = {
      "moves close to shoulder",
      "moves forward",
      "moves backward",
      "moves to right",
      "moves to left",
      "moves forward diagonally to right",
      "moves forward diagonally to left",
      "moves backward diagonally to right",
      "moves backward diagonally to left",
      "rises up",
      "rises to up forward",
      "rises to up backward",
      "rises to up right",
      "rises to up left",
      "rises up forward diagonally to right",
      "rises up forward diagonally to left",
      "rises up backward diagonally to right",
      "rises up backward diagonally to left",
      "lowers down",
      "lowers to down forward",
      "lowers to down backward",
      "lowers to down right",
      "lowers to down left",
      "lowers down forward diagonally to right",
      "lowers down forward diagonally to left",
      "lowers down backward diagonally to right",
      "lowers down backward diagonally to left",
      "holds close to shoulder position",
      "holds forward position",
      "holds backward position",
      "holds right position",
      "holds left position",
      "holds forward diagonally to right position",
      "holds forward diagonally to left position",
      "holds backward diagonally to right position",
      "holds backward diagonally to left position",
      "holds up position",
      "holds up forward position",
      "holds up backward position",
      "holds up right position",
      "holds up left position",
      "holds up forward diagonally to right position",
      "holds up forward diagonally to left position",
      "holds up backward diagonally to right position",
      "holds up backward diagonally to left position",
      "holds low position",
      "holds low forward position",
      "holds low backward position",
      "holds low right position",
      "holds low left position",
      "holds low forward diagonally to right position",
      "holds low forward diagonally to left position",
      "holds low backward diagonally to right position",
      "holds low backward diagonally to left position",
      "moves relatively to previous position",
      "moves relatively forward",
      "moves relatively backward",
      "moves to relatively right",
      "moves to relatively left",
      "moves relatively forward diagonally to right",
      "moves relatively forward diagonally to left",
      "moves relatively backward diagonally to right",
      "moves relatively backward diagonally to left",
      "moves relatively up",
      "moves relatively up forward",
      "moves relatively up backward",
      "moves relatively up right",
      "moves relatively up left",
      "moves relatively up forward diagonally to right",
      "moves relatively up forward diagonally to left",
      "moves relatively up backward diagonally to right",
      "moves relatively up backward diagonally to left",
      "moves relatively low",
      "moves relatively low forward",
      "moves relatively low backward",
      "moves relatively low right",
      "moves relatively low left",
      "moves relatively low forward diagonally to right",
      "moves relatively low forward diagonally to left",
      "moves relatively low backward diagonally to right",
      "moves relatively low backward diagonally to left",
  };
  return table;
}

const std::string& support_phrase(int index) {
  if (index < 1 || index > kSupportSemanticCount)
    fail(Errc::index_out_of_table,
         "support semantic index out of table (1..54): " + std::to_string(index));
  return support_semantics()[index - 1];
}

const std::string& arm_phrase(int index) {
  if (index < 1 || index > kArmSemanticCount)
    fail(Errc::index_out_of_table,
         "arm semantic index out of table (1..81): " + std::to_string(index));
  return arm_semantics()[index - 1];
}

int support_index(const std::string& phrase) {
  const auto& t = support_semantics();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] == phrase) return static_cast<int>(i) + 1;
  fail(Errc::unknown_semantic, "unknown support semantic: '" + phrase + "'");
}

int arm_index(const std::string& phrase) {
  const auto& t = arm_semantics();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] == phrase) return static_cast<int>(i) + 1;
  fail(Errc::unknown_semantic, "unknown arm semantic: '" + phrase + "'");
}

SemanticSymbols decompose_phrase(const std::string& phrase) {
  SemanticSymbols out;
  if (phrase == "moves relatively to previous position") {
    out.carry_previous = true;
    return out;
  }
  std::vector<std::string> tokens;
  {
    std::string tok;
    for (char c : phrase) {
      if (c == ' ' || c == '-') {
        if (!tok.empty()) tokens.push_back(tok);
        tok.clear();
      } else {
        tok += c;
      }
    }
    if (!tok.empty()) tokens.push_back(tok);
  }
  bool has = false;
  auto contains = [&](const char* word) {
    for (const auto& t : tokens)
      if (t == word) return true;
    return false;
  };
  has = contains("holds");
  out.hold = has ? HoldState::Hold : HoldState::Dynamic;

  if (contains("rises") || contains("raised") || contains("up"))
    out.cell.level = Level::Hi;
  else if (contains("knee") || contains("lowers") || contains("down") || contains("low"))
    out.cell.level = Level::Lo;
  else
    out.cell.level = Level::Mi;

  out.cell.lmr = contains("right") ? DirLMR::R : (contains("left") ? DirLMR::L : DirLMR::M);
  out.cell.bmf = contains("forward") ? DirBMF::F : (contains("backward") ? DirBMF::B : DirBMF::M);
  return out;
}

namespace {

// direction cells in table order: rest, forward, backward, right, left, and
// the four diagonals
constexpr ConceptTuple kDirOrder[9] = {
    {DirLMR::M, DirBMF::M, Level::Mi}, {DirLMR::M, DirBMF::F, Level::Mi},
    {DirLMR::M, DirBMF::B, Level::Mi}, {DirLMR::R, DirBMF::M, Level::Mi},
    {DirLMR::L, DirBMF::M, Level::Mi}, {DirLMR::R, DirBMF::F, Level::Mi},
    {DirLMR::L, DirBMF::F, Level::Mi}, {DirLMR::R, DirBMF::B, Level::Mi},
    {DirLMR::L, DirBMF::B, Level::Mi},
};
constexpr Level kLevelOrder[3] = {Level::Mi, Level::Hi, Level::Lo};

SemanticSymbols structural_symbols(int index_in_block) {
  // index_in_block is 0-based within a 27-entry block
  SemanticSymbols out;
  out.cell = kDirOrder[index_in_block % 9];
  out.cell.level = kLevelOrder[index_in_block / 9];
  return out;
}

int structural_index_of(const ConceptTuple& cell) {
  int dir = 0;
  for (int i = 0; i < 9; ++i) {
    if (kDirOrder[i].lmr == cell.lmr && kDirOrder[i].bmf == cell.bmf) {
      dir = i;
      break;
    }
  }
  int level = cell.level == Level::Mi ? 0 : (cell.level == Level::Hi ? 1 : 2);
  return level * 9 + dir; // 0-based within a 27-entry block
}

} // namespace

SemanticSymbols support_semantic_symbols(int index) {
  support_phrase(index); // range check
  SemanticSymbols out = structural_symbols((index - 1) % 27);
  out.hold = index > 27 ? HoldState::Hold : HoldState::Dynamic;
  return out;
}

SemanticSymbols arm_semantic_symbols(int index) {
  arm_phrase(index); // range check
  if (index == 55) {
    SemanticSymbols out;
    out.carry_previous = true;
    return out;
  }
  int base = index > 54 ? index - 54 : index; // relative block aliases the moves
  SemanticSymbols out = structural_symbols((base - 1) % 27);
  out.hold = (index > 27 && index <= 54) ? HoldState::Hold : HoldState::Dynamic;
  return out;
}

int support_index_of(const ConceptTuple& cell, HoldState hold) {
  return structural_index_of(cell) + 1 + (hold == HoldState::Hold ? 27 : 0);
}

int arm_index_of(const ConceptTuple& cell, HoldState hold) {
  return structural_index_of(cell) + 1 + (hold == HoldState::Hold ? 27 : 0);
}

} // namespace lamogen
