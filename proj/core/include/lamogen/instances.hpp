#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamogen/codebook.hpp"
#include "lamogen/symbols.hpp"

namespace lamogen {

// One symbol value bound to (frame, group, attribute field).
struct LabanInstance {
  int frame;
  Group group;
  int attribute; // index within the group's field list
  uint8_t value;
};

// Dense frame-wise annotation: every attribute of every group has a value at
// every frame.
class InstanceSequence {
public:
  InstanceSequence() = default;
  InstanceSequence(int frames, int fps);

  int frames() const { return frames_; }
  int fps() const { return fps_; }

  uint8_t get(int t, AttrId attr) const { return cells_[static_cast<size_t>(t) * kAttrCount + attr]; }
  void set(int t, AttrId attr, uint8_t value);

  uint8_t get(int t, Group g, int index_in_group) const { return get(t, attr_id(g, index_in_group)); }
  void set(int t, Group g, int index_in_group, uint8_t value) { set(t, attr_id(g, index_in_group), value); }

  // Conceptual position of one of the four main groups at frame t.
  ConceptTuple concept_tuple(int t, Group g) const;
  HoldState hold_state(int t, Group g) const;

  bool operator==(const InstanceSequence&) const = default;

  // Rest defaults: direction M/M, level Mi, hold; detail attributes 0.
  static InstanceSequence rest(int frames, int fps);

private:
  int frames_ = 0;
  int fps_ = 20;
  std::vector<uint8_t> cells_;
};

// Frame-wise indicator encoding over the codebook; invertible.
std::vector<IndicatorVector> instances_to_indicators(const InstanceSequence& seq);
InstanceSequence indicators_to_instances(const std::vector<IndicatorVector>& vs, int fps);

// Line-oriented text format, one frame per line:
//   #labanlite-instances v1 fps=<n> frames=<T>
//   <t>|<Group>.<attr>=<value>;...
std::string save_instances(const InstanceSequence& seq);
InstanceSequence load_instances(const std::string& text);

} // namespace lamogen
