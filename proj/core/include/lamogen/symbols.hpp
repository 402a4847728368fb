#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "lamogen/error.hpp"

namespace lamogen {

// Lateral direction axis. Stored positionally as L, M, R.
enum class DirLMR : uint8_t { L = 0, M = 1, R = 2 };
// Sagittal direction axis. Stored positionally as B, M, F.
enum class DirBMF : uint8_t { B = 0, M = 1, F = 2 };
// Vertical level. Stored positionally as Lo, Mi, Hi.
enum class Level : uint8_t { Lo = 0, Mi = 1, Hi = 2 };

// Hold state of a body-part group for one frame. A group is either
// stationary (hold) or moving (dynamic); there is no empty state.
enum class HoldState : uint8_t { Hold = 0, Dynamic = 1 };

// Orientation carries 8 values (45 degree bins), Bend 6 (30 degree bins),
// MovingEffort 5 speed labels (0 very slow .. 4 very fast).

enum class Group : uint8_t { SupportL = 0, SupportR, SupportBoth, UpperL, UpperR, Torso };
inline constexpr int kGroupCount = 6;

enum class AttrKind : uint8_t { DirLMR, DirBMF, Level, Bend, Hold, Orient, Effort };

inline constexpr int attr_cardinality(AttrKind k) {
  switch (k) {
    case AttrKind::DirLMR:
    case AttrKind::DirBMF:
    case AttrKind::Level: return 3;
    case AttrKind::Bend: return 6;
    case AttrKind::Hold: return 2;
    case AttrKind::Orient: return 8;
    case AttrKind::Effort: return 5;
  }
  return 0;
}

// One attribute field of one body-part group. The 37 fields below follow the
// codebook row order; `conceptual` marks Direction/Level/Hold fields of the
// four main groups.
struct AttrField {
  Group group;
  uint8_t index_in_group; // i within the group's field list
  AttrKind kind;
  const char* name;       // stable id used in the instances text format
  const char* joint;      // joint the detector reads for this field
  const char* staff_column;
  bool conceptual;
};

inline constexpr int kAttrCount = 37;

// Global attribute table. Indexed by AttrId in [0, 37).
const std::array<AttrField, kAttrCount>& attr_fields();

using AttrId = int;

// Attribute ids grouped by owner. attr_ids_of(g) returns the global ids of
// group g's fields in field order.
int group_attr_count(Group g);
AttrId attr_id(Group g, int index_in_group);

const char* group_name(Group g);
Group parse_group_name(std::string_view s);

// Value <-> text for one attribute kind ("M", "Hi", "hold", "3", ...).
std::string attr_value_to_string(AttrKind kind, uint8_t value);
uint8_t attr_value_from_string(AttrKind kind, std::string_view text);

// Conceptual position tuple of one of the four main parts.
struct ConceptTuple {
  DirLMR lmr = DirLMR::M;
  DirBMF bmf = DirBMF::M;
  Level level = Level::Mi;

  bool operator==(const ConceptTuple&) const = default;
};

inline const char* lmr_name(DirLMR v) { return v == DirLMR::L ? "L" : (v == DirLMR::M ? "M" : "R"); }
inline const char* bmf_name(DirBMF v) { return v == DirBMF::B ? "B" : (v == DirBMF::M ? "M" : "F"); }
inline const char* level_name(Level v) { return v == Level::Lo ? "Lo" : (v == Level::Mi ? "Mi" : "Hi"); }

} // namespace lamogen
