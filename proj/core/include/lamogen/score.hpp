#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamogen/instances.hpp"

namespace lamogen {

// Combined Direction+Level glyph; the four main columns also carry the hold
// flag, the elbow direction columns do not.
struct DirLevelSym {
  DirLMR lmr;
  DirBMF bmf;
  Level level;
  std::optional<HoldState> hold;

  bool operator==(const DirLevelSym&) const = default;
};

// One detail value (bend / orientation / effort).
struct DetailSym {
  AttrKind kind;
  uint8_t value;

  bool operator==(const DetailSym&) const = default;
};

using EventValue = std::variant<DirLevelSym, DetailSym>;

struct ScoreEvent {
  std::string column;
  EventValue value;
  int start;    // frame
  int duration; // frames, >= 1

  int end() const { return start + duration; }
  bool operator==(const ScoreEvent&) const = default;
};

// Event-wise score. Columns are the staff columns of the codebook; staff
// columns that carry several attribute fields are split into one sub-column
// per field ("Left arm.elbow_bend" etc.), so events within a column never
// overlap. Events are stored in column-major order, ascending start frame.
struct LabanScore {
  int fps = 20;
  int frames = 0;
  std::vector<std::string> columns;
  std::vector<ScoreEvent> events;

  std::vector<const ScoreEvent*> column_events(const std::string& column) const;
};

const std::vector<std::string>& score_columns();

// Run-length encodes the dense sequence into events and applies the score
// omission rules: repeated symbols are suppressed by construction, and a
// support-column hold that freezes in place while the other support moves is
// left blank.
LabanScore instances_to_score(const InstanceSequence& seq);

// Re-densifies a score. Gaps carry the previous symbol forward with the group
// held; columns that never speak fill with the rest defaults.
InstanceSequence score_to_instances(const LabanScore& score, int frames, int fps);

// Fixed-width textual staff, time flowing bottom to top.
std::string render_score_text(const LabanScore& score);

std::string event_glyph(const ScoreEvent& event, const ScoreEvent* prev_in_column);

} // namespace lamogen
