#include "lamogen/codebook.hpp"

#include <algorithm>

namespace lamogen {

namespace {

// Codebook row order. The four main groups carry Direction/Level first, then
// their bend fields and Hold; Support-Both and Torso carry orientation and
// effort detail; the elbow direction fields close the table.
constexpr std::array<AttrField, kAttrCount> kFields = {{
    // Support-L (codes 1..23)
    {Group::SupportL, 0, AttrKind::DirLMR, "dir_lmr", "l_foot", "Left support", true},
    {Group::SupportL, 1, AttrKind::DirBMF, "dir_bmf", "l_foot", "Left support", true},
    {Group::SupportL, 2, AttrKind::Level, "level", "l_foot", "Left support", true},
    {Group::SupportL, 3, AttrKind::Bend, "knee_bend", "l_knee", "Left leg gesture", false},
    {Group::SupportL, 4, AttrKind::Bend, "hip_bend", "l_hip", "Left leg gesture", false},
    {Group::SupportL, 5, AttrKind::Hold, "hold", "l_foot", "Left support", true},
    // Support-R (codes 24..46)
    {Group::SupportR, 0, AttrKind::DirLMR, "dir_lmr", "r_foot", "Right support", true},
    {Group::SupportR, 1, AttrKind::DirBMF, "dir_bmf", "r_foot", "Right support", true},
    {Group::SupportR, 2, AttrKind::Level, "level", "r_foot", "Right support", true},
    {Group::SupportR, 3, AttrKind::Bend, "knee_bend", "r_knee", "Right leg gesture", false},
    {Group::SupportR, 4, AttrKind::Bend, "hip_bend", "r_hip", "Right leg gesture", false},
    {Group::SupportR, 5, AttrKind::Hold, "hold", "r_foot", "Right support", true},
    // Support-Both (codes 47..72)
    {Group::SupportBoth, 0, AttrKind::Orient, "orient_h", "pelvis", "Body (Whole)", false},
    {Group::SupportBoth, 1, AttrKind::Orient, "orient_v", "pelvis", "Body (Whole)", false},
    {Group::SupportBoth, 2, AttrKind::Effort, "effort_h", "pelvis", "Body (Whole)", false},
    {Group::SupportBoth, 3, AttrKind::Effort, "effort_v", "pelvis", "Body (Whole)", false},
    // Upper-L (codes 73..95)
    {Group::UpperL, 0, AttrKind::DirLMR, "dir_lmr", "l_hand", "Left hand", true},
    {Group::UpperL, 1, AttrKind::DirBMF, "dir_bmf", "l_hand", "Left hand", true},
    {Group::UpperL, 2, AttrKind::Level, "level", "l_hand", "Left hand", true},
    {Group::UpperL, 3, AttrKind::Bend, "elbow_bend", "l_elbow", "Left arm", false},
    {Group::UpperL, 4, AttrKind::Bend, "shoulder_bend", "l_shoulder", "Left arm", false},
    {Group::UpperL, 5, AttrKind::Hold, "hold", "l_hand", "Left hand", true},
    // Upper-R (codes 96..118)
    {Group::UpperR, 0, AttrKind::DirLMR, "dir_lmr", "r_hand", "Right hand", true},
    {Group::UpperR, 1, AttrKind::DirBMF, "dir_bmf", "r_hand", "Right hand", true},
    {Group::UpperR, 2, AttrKind::Level, "level", "r_hand", "Right hand", true},
    {Group::UpperR, 3, AttrKind::Bend, "elbow_bend", "r_elbow", "Right arm", false},
    {Group::UpperR, 4, AttrKind::Bend, "shoulder_bend", "r_shoulder", "Right arm", false},
    {Group::UpperR, 5, AttrKind::Hold, "hold", "r_hand", "Right hand", true},
    // Torso (codes 119..140)
    {Group::Torso, 0, AttrKind::Orient, "head_orient_h", "head", "Head", false},
    {Group::Torso, 1, AttrKind::Orient, "head_orient_v", "head", "Head", false},
    {Group::Torso, 2, AttrKind::Bend, "spine_bend", "spine2", "Body (Whole)", false},
    // Upper-L elbow direction (codes 141..149)
    {Group::UpperL, 6, AttrKind::DirLMR, "elbow_dir_lmr", "l_elbow", "Left arm", false},
    {Group::UpperL, 7, AttrKind::DirBMF, "elbow_dir_bmf", "l_elbow", "Left arm", false},
    {Group::UpperL, 8, AttrKind::Level, "elbow_level", "l_elbow", "Left arm", false},
    // Upper-R elbow direction (codes 150..158)
    {Group::UpperR, 6, AttrKind::DirLMR, "elbow_dir_lmr", "r_elbow", "Right arm", false},
    {Group::UpperR, 7, AttrKind::DirBMF, "elbow_dir_bmf", "r_elbow", "Right arm", false},
    {Group::UpperR, 8, AttrKind::Level, "elbow_level", "r_elbow", "Right arm", false},
}};

constexpr const char* kGroupNames[kGroupCount] = {"SupportL", "SupportR", "SupportBoth",
                                                  "UpperL", "UpperR", "Torso"};

const char* hold_joint_for(Group g) {
  switch (g) {
    case Group::SupportL: return "Left foot & knee & hip";
    case Group::SupportR: return "Right foot & knee & hip";
    case Group::UpperL: return "Left hand & elbow & shoulder";
    case Group::UpperR: return "Right hand & elbow & shoulder";
    default: return "";
  }
}

std::string display_joint(const AttrField& f) {
  if (f.kind == AttrKind::Hold) return hold_joint_for(f.group);
  static const struct { const char* id; const char* label; } kJointLabels[] = {
      {"l_foot", "Left foot"},   {"r_foot", "Right foot"},   {"l_knee", "Left knee"},
      {"r_knee", "Right knee"},  {"l_hip", "Left hip"},      {"r_hip", "Right hip"},
      {"l_hand", "Left hand"},   {"r_hand", "Right hand"},   {"l_elbow", "Left elbow"},
      {"r_elbow", "Right elbow"},{"l_shoulder", "Left shoulder"},
      {"r_shoulder", "Right shoulder"}, {"pelvis", "Pelvis"}, {"head", "Head"},
      {"spine2", "Spine2"},
  };
  for (const auto& j : kJointLabels)
    if (std::string_view(j.id) == f.joint) return j.label;
  return f.joint;
}

} // namespace

const std::array<AttrField, kAttrCount>& attr_fields() {
  static const std::array<AttrField, kAttrCount> fields = kFields;
  return fields;
}

int group_attr_count(Group g) {
  switch (g) {
    case Group::SupportL:
    case Group::SupportR: return 6;
    case Group::SupportBoth: return 4;
    case Group::UpperL:
    case Group::UpperR: return 9;
    case Group::Torso: return 3;
  }
  return 0;
}

AttrId attr_id(Group g, int index_in_group) {
  if (index_in_group < 0 || index_in_group >= group_attr_count(g))
    fail(Errc::out_of_range, "attribute index out of range for group " +
                                 std::string(group_name(g)) + ": " + std::to_string(index_in_group));
  const auto& fields = attr_fields();
  for (int i = 0; i < kAttrCount; ++i)
    if (fields[i].group == g && fields[i].index_in_group == index_in_group) return i;
  fail(Errc::out_of_range, "attribute lookup failed");
}

const char* group_name(Group g) { return kGroupNames[static_cast<int>(g)]; }

Group parse_group_name(std::string_view s) {
  for (int i = 0; i < kGroupCount; ++i)
    if (s == kGroupNames[i]) return static_cast<Group>(i);
  fail(Errc::unknown_group, "unknown body-part group: " + std::string(s));
}

std::string attr_value_to_string(AttrKind kind, uint8_t value) {
  switch (kind) {
    case AttrKind::DirLMR: return lmr_name(static_cast<DirLMR>(value));
    case AttrKind::DirBMF: return bmf_name(static_cast<DirBMF>(value));
    case AttrKind::Level: return level_name(static_cast<Level>(value));
    case AttrKind::Hold: return value == 0 ? "hold" : "dynamic";
    default: return std::to_string(static_cast<int>(value));
  }
}

uint8_t attr_value_from_string(AttrKind kind, std::string_view text) {
  int card = attr_cardinality(kind);
  for (int v = 0; v < card; ++v)
    if (attr_value_to_string(kind, static_cast<uint8_t>(v)) == text) return static_cast<uint8_t>(v);
  fail(Errc::unmapped_value, "no such value for attribute: " + std::string(text));
}

Codebook::Codebook() {
  const auto& fields = attr_fields();
  int next = 1;
  entries_.reserve(kCodebookSize);
  for (int a = 0; a < kAttrCount; ++a) {
    range_start_[a] = next;
    const AttrField& f = fields[a];
    int width = attr_cardinality(f.kind);
    for (int v = 0; v < width; ++v) {
      entries_.push_back(CodebookEntry{next, f.group, display_joint(f), f.kind,
                                       static_cast<uint8_t>(v), f.conceptual, f.staff_column, a});
      ++next;
    }
  }
}

const Codebook& Codebook::instance() {
  static const Codebook cb;
  return cb;
}

const CodebookEntry& Codebook::entry(int index) const {
  if (index < 1 || index > kCodebookSize)
    fail(Errc::out_of_range, "codebook index out of range: " + std::to_string(index));
  return entries_[index - 1];
}

int Codebook::code_of(AttrId attr, uint8_t value) const {
  if (value >= attr_cardinality(attr_fields()[attr].kind))
    fail(Errc::unmapped_value, "value has no codebook entry");
  return range_start_[attr] + value;
}

} // namespace lamogen
