#include "lamogen/instances.hpp"

#include <charconv>
#include <sstream>

namespace lamogen {

InstanceSequence::InstanceSequence(int frames, int fps) : frames_(frames), fps_(fps) {
  if (frames < 0) fail(Errc::out_of_range, "negative frame count");
  if (fps <= 0) fail(Errc::out_of_range, "fps must be positive");
  cells_.assign(static_cast<size_t>(frames) * kAttrCount, 0);
}

void InstanceSequence::set(int t, AttrId attr, uint8_t value) {
  if (value >= attr_cardinality(attr_fields()[attr].kind))
    fail(Errc::out_of_range, "attribute value out of range");
  cells_[static_cast<size_t>(t) * kAttrCount + attr] = value;
}

ConceptTuple InstanceSequence::concept_tuple(int t, Group g) const {
  return ConceptTuple{static_cast<DirLMR>(get(t, g, 0)), static_cast<DirBMF>(get(t, g, 1)),
                      static_cast<Level>(get(t, g, 2))};
}

HoldState InstanceSequence::hold_state(int t, Group g) const {
  return static_cast<HoldState>(get(t, g, 5));
}

InstanceSequence InstanceSequence::rest(int frames, int fps) {
  InstanceSequence seq(frames, fps);
  const auto& fields = attr_fields();
  for (int t = 0; t < frames; ++t) {
    for (int a = 0; a < kAttrCount; ++a) {
      uint8_t v = 0;
      switch (fields[a].kind) {
        case AttrKind::DirLMR: v = static_cast<uint8_t>(DirLMR::M); break;
        case AttrKind::DirBMF: v = static_cast<uint8_t>(DirBMF::M); break;
        case AttrKind::Level: v = static_cast<uint8_t>(Level::Mi); break;
        case AttrKind::Hold: v = static_cast<uint8_t>(HoldState::Hold); break;
        default: v = 0; break;
      }
      seq.set(t, a, v);
    }
  }
  return seq;
}

std::vector<IndicatorVector> instances_to_indicators(const InstanceSequence& seq) {
  const Codebook& cb = Codebook::instance();
  std::vector<IndicatorVector> out(seq.frames());
  for (int t = 0; t < seq.frames(); ++t)
    for (AttrId a = 0; a < kAttrCount; ++a)
      out[t].set(cb.code_of(a, seq.get(t, a)) - 1);
  return out;
}

InstanceSequence indicators_to_instances(const std::vector<IndicatorVector>& vs, int fps) {
  const Codebook& cb = Codebook::instance();
  InstanceSequence seq(static_cast<int>(vs.size()), fps);
  for (size_t t = 0; t < vs.size(); ++t) {
    for (AttrId a = 0; a < kAttrCount; ++a) {
      int start = cb.range_start(a) - 1;
      int width = cb.range_width(a);
      int found = -1;
      for (int v = 0; v < width; ++v) {
        if (vs[t].test(start + v)) {
          if (found >= 0)
            fail(Errc::ambiguous_activation,
                 "frame " + std::to_string(t) + ": two codes active in range of " +
                     std::string(group_name(attr_fields()[a].group)) + "." + attr_fields()[a].name);
          found = v;
        }
      }
      if (found < 0)
        fail(Errc::missing_attribute,
             "frame " + std::to_string(t) + ": no code active in range of " +
                 std::string(group_name(attr_fields()[a].group)) + "." + attr_fields()[a].name);
      seq.set(static_cast<int>(t), a, static_cast<uint8_t>(found));
    }
  }
  return seq;
}

std::string save_instances(const InstanceSequence& seq) {
  std::ostringstream os;
  os << "#labanlite-instances v1 fps=" << seq.fps() << " frames=" << seq.frames() << "\n";
  const auto& fields = attr_fields();
  for (int t = 0; t < seq.frames(); ++t) {
    os << t << '|';
    for (AttrId a = 0; a < kAttrCount; ++a) {
      if (a) os << ';';
      os << group_name(fields[a].group) << '.' << fields[a].name << '='
         << attr_value_to_string(fields[a].kind, seq.get(t, a));
    }
    os << '\n';
  }
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(Errc::parse_error, "instances line " + std::to_string(line) + ": " + what);
}

long parse_long(std::string_view s, int line, const char* what) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    parse_fail(line, std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

} // namespace

InstanceSequence load_instances(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 1;
  if (!std::getline(is, line)) fail(Errc::parse_error, "empty instances file");
  int fps = 0, frames = -1;
  {
    std::istringstream hs(line);
    std::string tag, version, kv;
    hs >> tag >> version;
    if (tag != "#labanlite-instances" || version != "v1")
      parse_fail(lineno, "bad header, expected '#labanlite-instances v1'");
    while (hs >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) parse_fail(lineno, "bad header field: " + kv);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "fps") fps = static_cast<int>(parse_long(val, lineno, "fps"));
      else if (key == "frames") frames = static_cast<int>(parse_long(val, lineno, "frames"));
      else parse_fail(lineno, "unknown header field: " + key);
    }
  }
  if (fps <= 0) parse_fail(1, "missing or invalid fps");
  if (frames < 0) parse_fail(1, "missing frames");

  InstanceSequence seq(frames, fps);
  const auto& fields = attr_fields();
  int t = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (t >= frames) parse_fail(lineno, "more frame lines than declared");
    auto bar = line.find('|');
    if (bar == std::string::npos) parse_fail(lineno, "missing '|'");
    if (parse_long(std::string_view(line).substr(0, bar), lineno, "frame index") != t)
      parse_fail(lineno, "frame index out of order");
    std::string_view rest = std::string_view(line).substr(bar + 1);
    int cell = 0;
    size_t pos = 0;
    while (pos <= rest.size() && cell < kAttrCount) {
      size_t sep = rest.find(';', pos);
      std::string_view field = rest.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
      auto dot = field.find('.');
      auto eq = field.find('=');
      if (dot == std::string_view::npos || eq == std::string_view::npos || dot > eq)
        parse_fail(lineno, "bad cell: '" + std::string(field) + "'");
      const AttrField& expect = fields[cell];
      if (field.substr(0, dot) != group_name(expect.group) ||
          field.substr(dot + 1, eq - dot - 1) != expect.name)
        parse_fail(lineno, "cell " + std::to_string(cell) + " out of order: '" + std::string(field) + "'");
      uint8_t v;
      try {
        v = attr_value_from_string(expect.kind, field.substr(eq + 1));
      } catch (const Error&) {
        parse_fail(lineno, "bad value in '" + std::string(field) + "'");
      }
      seq.set(t, cell, v);
      ++cell;
      if (sep == std::string_view::npos) break;
      pos = sep + 1;
    }
    if (cell != kAttrCount) parse_fail(lineno, "expected 37 cells, got " + std::to_string(cell));
    ++t;
  }
  if (t != frames)
    fail(Errc::parse_error, "instances file declares " + std::to_string(frames) + " frames but has " +
                                std::to_string(t));
  return seq;
}

} // namespace lamogen
