#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamogen/instances.hpp"
#include "lamogen/semantics.hpp"

namespace lamogen {

// "<body-part group> <moving semantic> in <time> seconds"
struct ConceptualDescription {
  Group group; // SupportL, SupportR, UpperL, UpperR
  int semantic_index;
  double duration_s;

  bool operator==(const ConceptualDescription&) const = default;
};

void validate_cd(const ConceptualDescription& cd);

// textual form, e.g. "Support Right steps to right in 2 seconds"
ConceptualDescription parse_cd_text(const std::string& line);
std::string format_cd(const ConceptualDescription& cd);

// tuple form: support "(left, 1, 0.25)", hand "(1, 0.5)" with group context
ConceptualDescription parse_tuple(const std::string& text, std::optional<Group> context = {});
std::string format_tuple(const ConceptualDescription& cd);

// moving semantic resolved to conceptual symbols plus a frame count
struct TimedSymbols {
  SemanticSymbols symbols;
  int frames;
};
TimedSymbols cd_to_symbols(const ConceptualDescription& cd, int fps);

// best-match inverse over the group's table
ConceptualDescription symbols_to_cd(Group group, const ConceptTuple& cell, HoldState hold,
                                    double duration_s);

// One support movement; two entries form a concurrent `while` pair.
struct SupportMove {
  std::vector<ConceptualDescription> sides; // size 1 or 2

  bool operator==(const SupportMove&) const = default;
};

struct ConceptScript {
  std::string caption;
  std::vector<SupportMove> support;
  std::vector<ConceptualDescription> left_hand;
  std::vector<ConceptualDescription> right_hand;

  bool empty() const { return support.empty() && left_hand.empty() && right_hand.empty(); }
  bool operator==(const ConceptScript&) const = default;
};

// Total duration of each part in frames at the given fps.
int support_total_frames(const ConceptScript& script, int fps);
int hand_total_frames(const std::vector<ConceptualDescription>& hand, int fps);

// Dense conceptual instance sequence; detail attributes take rest defaults.
// Part totals must agree within one frame; T is the longest part.
InstanceSequence script_to_instances(const ConceptScript& script, int fps);

} // namespace lamogen
