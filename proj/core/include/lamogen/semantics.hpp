#pragma once

#include <string>
#include <vector>

#include "lamogen/symbols.hpp"

namespace lamogen {

inline constexpr int kSupportSemanticCount = 54;
inline constexpr int kArmSemanticCount = 81;

// Moving-semantic lookup tables; 1-based dense indices.
const std::vector<std::string>& support_semantics();
const std::vector<std::string>& arm_semantics();

// phrase text for a table index; throws index_out_of_table
const std::string& support_phrase(int index);
const std::string& arm_phrase(int index);

// exact-match lookup; throws unknown_semantic
int support_index(const std::string& phrase);
int arm_index(const std::string& phrase);

// Decomposition of one moving-semantic phrase into conceptual symbols.
// carry_previous marks the arm phrase that re-uses the previous position.
struct SemanticSymbols {
  ConceptTuple cell;
  HoldState hold = HoldState::Dynamic;
  bool carry_previous = false;
};

// Keyword decomposition of a phrase (the primary route).
SemanticSymbols decompose_phrase(const std::string& phrase);

// Structural route: both tables enumerate 9 directions x 3 levels, first as
// moves then as holds (arms add a third "relatively" block). Used as the
// cross-check oracle for decompose_phrase and as the inverse mapping.
SemanticSymbols support_semantic_symbols(int index);
SemanticSymbols arm_semantic_symbols(int index);

// Best-match table index for a conceptual state.
int support_index_of(const ConceptTuple& cell, HoldState hold);
int arm_index_of(const ConceptTuple& cell, HoldState hold);

} // namespace lamogen
