#pragma once

#include <array>
#include <bitset>
#include <string>
#include <vector>

#include "lamogen/symbols.hpp"

namespace lamogen {

inline constexpr int kCodebookSize = 158;

struct CodebookEntry {
  int index; // 1..158
  Group group;
  std::string joint;
  AttrKind kind;
  uint8_t value; // positional value within the attribute's range
  bool conceptual;
  std::string staff_column;
  AttrId attr; // owning attribute field
};

// The canonical 158-code table. Codes are laid out as 37 contiguous ranges,
// one per attribute field, in codebook row order; within a range the value
// order is positional (L/M/R, B/M/F, Lo/Mi/Hi, hold/dynamic, 0..n).
class Codebook {
public:
  static const Codebook& instance();

  const CodebookEntry& entry(int index) const; // 1-based, throws out_of_range
  int size() const { return kCodebookSize; }

  // First code index (1-based) of an attribute's range.
  int range_start(AttrId attr) const { return range_start_[attr]; }
  int range_width(AttrId attr) const { return attr_cardinality(attr_fields()[attr].kind); }

  int code_of(AttrId attr, uint8_t value) const;
  const std::vector<CodebookEntry>& entries() const { return entries_; }

private:
  Codebook();
  std::vector<CodebookEntry> entries_;
  std::array<int, kAttrCount> range_start_{};
};

inline const Codebook& build_codebook() { return Codebook::instance(); }

// Per-frame binary activation over the 158 codes; bit k holds code k+1.
using IndicatorVector = std::bitset<kCodebookSize>;

} // namespace lamogen
