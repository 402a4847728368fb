#include "lamogen/concept.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace lamogen {

namespace {

bool is_support(Group g) { return g == Group::SupportL || g == Group::SupportR; }
bool is_hand(Group g) { return g == Group::UpperL || g == Group::UpperR; }

std::string lowercased(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", s);
  return buf;
}

struct GroupAlias {
  const char* text;
  Group group;
};

// canonical names first; the foot/support spellings from the prompt examples
// are accepted as aliases
constexpr GroupAlias kGroupAliases[] = {
    {"support left", Group::SupportL},  {"support right", Group::SupportR},
    {"left hand", Group::UpperL},       {"right hand", Group::UpperR},
    {"left foot", Group::SupportL},     {"right foot", Group::SupportR},
    {"left support", Group::SupportL},  {"right support", Group::SupportR},
    {"upper left", Group::UpperL},      {"upper right", Group::UpperR},
};

int table_size(Group g) { return is_support(g) ? kSupportSemanticCount : kArmSemanticCount; }

const std::string& phrase_of(Group g, int index) {
  return is_support(g) ? support_phrase(index) : arm_phrase(index);
}

double parse_seconds(const std::string& text) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v > 0.0))
    fail(Errc::grammar, "bad duration: '" + text + "'");
  return v;
}

} // namespace

void validate_cd(const ConceptualDescription& cd) {
  if (!is_support(cd.group) && !is_hand(cd.group))
    fail(Errc::unknown_group, "conceptual descriptions cover supports and hands only");
  if (cd.semantic_index < 1 || cd.semantic_index > table_size(cd.group))
    fail(Errc::index_out_of_table,
         "semantic index " + std::to_string(cd.semantic_index) + " out of table (1.." +
             std::to_string(table_size(cd.group)) + ")");
  if (!(cd.duration_s > 0.0)) fail(Errc::grammar, "duration must be positive");
}

ConceptualDescription parse_cd_text(const std::string& line) {
  std::string text = trimmed(line);
  std::string lower = lowercased(text);

  Group group{};
  size_t group_len = 0;
  for (const auto& alias : kGroupAliases) {
    size_t len = std::string(alias.text).size();
    if (lower.size() > len && lower.compare(0, len, alias.text) == 0 && lower[len] == ' ') {
      group = alias.group;
      group_len = len;
      break;
    }
  }
  if (group_len == 0) fail(Errc::unknown_group, "no body-part group in: '" + line + "'");

  size_t in_pos = lower.rfind(" in ");
  if (in_pos == std::string::npos || in_pos <= group_len)
    fail(Errc::grammar, "expected '<group> <semantic> in <time> seconds': '" + line + "'");
  std::string tail = lower.substr(in_pos + 4);
  size_t sec_pos = tail.rfind(" second");
  if (sec_pos == std::string::npos)
    fail(Errc::grammar, "expected trailing 'in <time> seconds': '" + line + "'");
  std::string after = trimmed(tail.substr(sec_pos + 7));
  if (!(after.empty() || after == "s" || after == "s." || after == "."))
    fail(Errc::grammar, "expected trailing 'in <time> seconds': '" + line + "'");
  double seconds = parse_seconds(trimmed(tail.substr(0, sec_pos)));

  std::string phrase = trimmed(lower.substr(group_len + 1, in_pos - group_len - 1));
  int index = is_support(group) ? support_index(phrase) : arm_index(phrase);
  return ConceptualDescription{group, index, seconds};
}

std::string format_cd(const ConceptualDescription& cd) {
  validate_cd(cd);
  std::string group_text;
  switch (cd.group) {
    case Group::SupportL: group_text = "Support Left"; break;
    case Group::SupportR: group_text = "Support Right"; break;
    case Group::UpperL: group_text = "Left hand"; break;
    default: group_text = "Right hand"; break;
  }
  return group_text + " " + phrase_of(cd.group, cd.semantic_index) + " in " +
         format_seconds(cd.duration_s) + " seconds";
}

ConceptualDescription parse_tuple(const std::string& text, std::optional<Group> context) {
  std::string t = trimmed(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    fail(Errc::grammar, "tuple must be parenthesized: '" + text + "'");
  std::vector<std::string> fields;
  std::string body = t.substr(1, t.size() - 2);
  size_t pos = 0;
  while (true) {
    size_t comma = body.find(',', pos);
    fields.push_back(trimmed(body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (fields.size() == 3) {
    std::string side = lowercased(fields[0]);
    Group group;
    if (side == "left") group = Group::SupportL;
    else if (side == "right") group = Group::SupportR;
    else fail(Errc::grammar, "support tuple side must be left or right: '" + text + "'");
    char* end = nullptr;
    long idx = std::strtol(fields[1].c_str(), &end, 10);
    if (end == fields[1].c_str() || *end != '\0')
      fail(Errc::grammar, "bad semantic index in tuple: '" + text + "'");
    ConceptualDescription cd{group, static_cast<int>(idx), parse_seconds(fields[2])};
    validate_cd(cd);
    return cd;
  }
  if (fields.size() == 2) {
    if (!context || !is_hand(*context))
      fail(Errc::grammar, "two-field tuple needs a hand group context: '" + text + "'");
    char* end = nullptr;
    long idx = std::strtol(fields[0].c_str(), &end, 10);
    if (end == fields[0].c_str() || *end != '\0')
      fail(Errc::grammar, "bad semantic index in tuple: '" + text + "'");
    ConceptualDescription cd{*context, static_cast<int>(idx), parse_seconds(fields[1])};
    validate_cd(cd);
    return cd;
  }
  fail(Errc::grammar, "tuple must have 2 or 3 fields: '" + text + "'");
}

std::string format_tuple(const ConceptualDescription& cd) {
  validate_cd(cd);
  if (is_support(cd.group)) {
    const char* side = cd.group == Group::SupportL ? "left" : "right";
    return std::string("(") + side + ", " + std::to_string(cd.semantic_index) + ", " +
           format_seconds(cd.duration_s) + ")";
  }
  return "(" + std::to_string(cd.semantic_index) + ", " + format_seconds(cd.duration_s) + ")";
}

TimedSymbols cd_to_symbols(const ConceptualDescription& cd, int fps) {
  validate_cd(cd);
  TimedSymbols out;
  out.symbols = is_support(cd.group) ? support_semantic_symbols(cd.semantic_index)
                                     : arm_semantic_symbols(cd.semantic_index);
  out.frames = std::max(1L, std::lround(cd.duration_s * fps));
  return out;
}

ConceptualDescription symbols_to_cd(Group group, const ConceptTuple& cell, HoldState hold,
                                    double duration_s) {
  int index = is_support(group) ? support_index_of(cell, hold) : arm_index_of(cell, hold);
  return ConceptualDescription{group, index, duration_s};
}

int hand_total_frames(const std::vector<ConceptualDescription>& hand, int fps) {
  int total = 0;
  for (const auto& cd : hand) total += cd_to_symbols(cd, fps).frames;
  return total;
}

int support_total_frames(const ConceptScript& script, int fps) {
  int total = 0;
  for (const auto& move : script.support) {
    int longest = 0;
    for (const auto& cd : move.sides) longest = std::max(longest, cd_to_symbols(cd, fps).frames);
    total += longest;
  }
  return total;
}

namespace {

struct PartTrack {
  std::vector<ConceptTuple> cells;
  std::vector<HoldState> holds;

  void fill(int from, int to, const ConceptTuple& cell, HoldState hold) {
    for (int t = from; t < to; ++t) {
      cells[t] = cell;
      holds[t] = hold;
    }
  }
};

} // namespace

InstanceSequence script_to_instances(const ConceptScript& script, int fps) {
  if (script.empty()) fail(Errc::empty_script, "script has no movements");
  if (fps <= 0) fail(Errc::out_of_range, "fps must be positive");

  int support_total = support_total_frames(script, fps);
  int lh_total = hand_total_frames(script.left_hand, fps);
  int rh_total = hand_total_frames(script.right_hand, fps);
  int total = std::max({support_total, lh_total, rh_total});
  auto check_part = [&](const char* part, int part_total, bool present) {
    if (present && std::abs(total - part_total) > 1)
      fail(Errc::duration_mismatch, std::string(part) + " runs " + std::to_string(part_total) +
                                        " frames against a " + std::to_string(total) +
                                        "-frame script (tolerance 1)");
  };
  check_part("support", support_total, !script.support.empty());
  check_part("left hand", lh_total, !script.left_hand.empty());
  check_part("right hand", rh_total, !script.right_hand.empty());

  const ConceptTuple rest{};
  std::array<PartTrack, 4> tracks; // SupportL, SupportR, UpperL, UpperR
  for (auto& tr : tracks) {
    tr.cells.assign(total, rest);
    tr.holds.assign(total, HoldState::Hold);
  }
  std::array<ConceptTuple, 4> current{rest, rest, rest, rest};

  auto track_of = [&](Group g) -> PartTrack& {
    switch (g) {
      case Group::SupportL: return tracks[0];
      case Group::SupportR: return tracks[1];
      case Group::UpperL: return tracks[2];
      default: return tracks[3];
    }
  };
  auto current_of = [&](Group g) -> ConceptTuple& {
    switch (g) {
      case Group::SupportL: return current[0];
      case Group::SupportR: return current[1];
      case Group::UpperL: return current[2];
      default: return current[3];
    }
  };

  auto place_block = [&](const ConceptualDescription& cd, int at) -> int {
    TimedSymbols ts = cd_to_symbols(cd, fps);
    int end = std::min(at + ts.frames, total);
    ConceptTuple cell = ts.symbols.carry_previous ? current_of(cd.group) : ts.symbols.cell;
    track_of(cd.group).fill(at, end, cell, ts.symbols.hold);
    current_of(cd.group) = cell;
    return ts.frames;
  };

  // supports share one clock; the silent side holds its position
  int clock = 0;
  for (const auto& move : script.support) {
    if (move.sides.empty() || move.sides.size() > 2)
      fail(Errc::grammar, "a support movement pairs at most two sides");
    int longest = 0;
    bool used[2] = {false, false};
    for (const auto& cd : move.sides) {
      if (!is_support(cd.group))
        fail(Errc::unknown_group, "support movement names a non-support group");
      int side = cd.group == Group::SupportL ? 0 : 1;
      if (used[side]) fail(Errc::grammar, "a while pair uses each side once");
      used[side] = true;
      int n = place_block(cd, clock);
      longest = std::max(longest, n);
    }
    int end = std::min(clock + longest, total);
    for (int side = 0; side < 2; ++side) {
      Group g = side == 0 ? Group::SupportL : Group::SupportR;
      // pad the silent side and any shorter while-entry with a hold
      int filled = clock;
      if (used[side]) {
        int n = 0;
        for (const auto& cd : move.sides)
          if (cd.group == g) n = cd_to_symbols(cd, fps).frames;
        filled = std::min(clock + n, total);
      }
      track_of(g).fill(filled, end, current_of(g), HoldState::Hold);
    }
    clock = end;
  }
  for (int side = 0; side < 2; ++side) {
    Group g = side == 0 ? Group::SupportL : Group::SupportR;
    track_of(g).fill(clock, total, current_of(g), HoldState::Hold);
  }

  for (const auto* hand : {&script.left_hand, &script.right_hand}) {
    int at = 0;
    Group g = hand == &script.left_hand ? Group::UpperL : Group::UpperR;
    for (const auto& cd : *hand) {
      if (cd.group != g)
        fail(Errc::unknown_group, "hand movement listed under the wrong hand");
      at = std::min(at + place_block(cd, at), total);
    }
    track_of(g).fill(at, total, current_of(g), HoldState::Hold);
  }

  InstanceSequence out = InstanceSequence::rest(total, fps);
  const Group part_groups[4] = {Group::SupportL, Group::SupportR, Group::UpperL, Group::UpperR};
  for (int p = 0; p < 4; ++p) {
    Group g = part_groups[p];
    for (int t = 0; t < total; ++t) {
      out.set(t, g, 0, static_cast<uint8_t>(tracks[p].cells[t].lmr));
      out.set(t, g, 1, static_cast<uint8_t>(tracks[p].cells[t].bmf));
      out.set(t, g, 2, static_cast<uint8_t>(tracks[p].cells[t].level));
      out.set(t, g, 5, static_cast<uint8_t>(tracks[p].holds[t]));
    }
  }
  return out;
}

} // namespace lamogen
