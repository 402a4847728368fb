#include "lamogen/score.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lamogen {

namespace {

enum class ColKind { Conceptual, ElbowDir, Detail };

struct ColumnSpec {
  const char* name;
  ColKind kind;
  Group group;
  int attr_in_group; // for Detail columns
};

const std::vector<ColumnSpec>& column_specs() {
  static const std::vector<ColumnSpec> cols = {
      {"Left hand", ColKind::Conceptual, Group::UpperL, -1},
      {"Left arm.elbow_dir", ColKind::ElbowDir, Group::UpperL, -1},
      {"Left arm.elbow_bend", ColKind::Detail, Group::UpperL, 3},
      {"Left arm.shoulder_bend", ColKind::Detail, Group::UpperL, 4},
      {"Left leg gesture.knee_bend", ColKind::Detail, Group::SupportL, 3},
      {"Left leg gesture.hip_bend", ColKind::Detail, Group::SupportL, 4},
      {"Left support", ColKind::Conceptual, Group::SupportL, -1},
      {"Right support", ColKind::Conceptual, Group::SupportR, -1},
      {"Right leg gesture.knee_bend", ColKind::Detail, Group::SupportR, 3},
      {"Right leg gesture.hip_bend", ColKind::Detail, Group::SupportR, 4},
      {"Right arm.elbow_bend", ColKind::Detail, Group::UpperR, 3},
      {"Right arm.shoulder_bend", ColKind::Detail, Group::UpperR, 4},
      {"Right arm.elbow_dir", ColKind::ElbowDir, Group::UpperR, -1},
      {"Right hand", ColKind::Conceptual, Group::UpperR, -1},
      {"Body (Whole).orient_h", ColKind::Detail, Group::SupportBoth, 0},
      {"Body (Whole).orient_v", ColKind::Detail, Group::SupportBoth, 1},
      {"Body (Whole).effort_h", ColKind::Detail, Group::SupportBoth, 2},
      {"Body (Whole).effort_v", ColKind::Detail, Group::SupportBoth, 3},
      {"Body (Whole).spine_bend", ColKind::Detail, Group::Torso, 2},
      {"Head.orient_h", ColKind::Detail, Group::Torso, 0},
      {"Head.orient_v", ColKind::Detail, Group::Torso, 1},
  };
  return cols;
}

const ColumnSpec& find_column(const std::string& name) {
  for (const auto& c : column_specs())
    if (name == c.name) return c;
  fail(Errc::unknown_column, "unknown score column: " + name);
}

DirLevelSym conceptual_at(const InstanceSequence& seq, int t, Group g, bool with_hold) {
  ConceptTuple c = seq.concept_tuple(t, g);
  DirLevelSym sym{c.lmr, c.bmf, c.level, std::nullopt};
  if (with_hold) sym.hold = seq.hold_state(t, g);
  return sym;
}

DirLevelSym elbow_at(const InstanceSequence& seq, int t, Group g) {
  return DirLevelSym{static_cast<DirLMR>(seq.get(t, g, 6)), static_cast<DirBMF>(seq.get(t, g, 7)),
                     static_cast<Level>(seq.get(t, g, 8)), std::nullopt};
}

template <typename ValueAt>
void rle_column(const char* column, int frames, ValueAt value_at, std::vector<ScoreEvent>& out) {
  int start = 0;
  for (int t = 1; t <= frames; ++t) {
    if (t == frames || !(value_at(t) == value_at(start))) {
      out.push_back(ScoreEvent{column, value_at(start), start, t - start});
      start = t;
    }
  }
}

bool is_dynamic(const ScoreEvent& e) {
  const auto* sym = std::get_if<DirLevelSym>(&e.value);
  return sym && sym->hold && *sym->hold == HoldState::Dynamic;
}

std::string dir_level_text(const DirLevelSym& s) {
  std::string g = std::string(lmr_name(s.lmr)) + bmf_name(s.bmf) + "." + level_name(s.level);
  return g;
}

} // namespace

const std::vector<std::string>& score_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : column_specs()) v.push_back(c.name);
    return v;
  }();
  return names;
}

std::vector<const ScoreEvent*> LabanScore::column_events(const std::string& column) const {
  std::vector<const ScoreEvent*> out;
  for (const auto& e : events)
    if (e.column == column) out.push_back(&e);
  std::sort(out.begin(), out.end(),
            [](const ScoreEvent* a, const ScoreEvent* b) { return a->start < b->start; });
  return out;
}

LabanScore instances_to_score(const InstanceSequence& seq) {
  LabanScore score;
  score.fps = seq.fps();
  score.frames = seq.frames();
  score.columns = score_columns();
  if (seq.frames() == 0) return score;

  std::map<std::string, std::vector<ScoreEvent>> per_column;
  for (const auto& col : column_specs()) {
    auto& events = per_column[col.name];
    switch (col.kind) {
      case ColKind::Conceptual:
        rle_column(col.name, seq.frames(),
                   [&](int t) { return EventValue(conceptual_at(seq, t, col.group, true)); }, events);
        break;
      case ColKind::ElbowDir:
        rle_column(col.name, seq.frames(),
                   [&](int t) { return EventValue(elbow_at(seq, t, col.group)); }, events);
        break;
      case ColKind::Detail:
        rle_column(col.name, seq.frames(),
                   [&](int t) {
                     AttrId a = attr_id(col.group, col.attr_in_group);
                     return EventValue(DetailSym{attr_fields()[a].kind, seq.get(t, a)});
                   },
                   events);
        break;
    }
  }

  // Support exclusivity: while one support column is dynamic, a freeze-in-place
  // hold on the other side stays blank. Only events whose position equals the
  // preceding event's are suppressed, which keeps re-densification exact. Both
  // sides are decided against the pre-suppression event lists.
  auto suppress = [](const std::vector<ScoreEvent>& side, const std::vector<ScoreEvent>& other) {
    std::vector<ScoreEvent> kept;
    for (size_t i = 0; i < side.size(); ++i) {
      const auto& e = side[i];
      bool drop = false;
      if (i > 0 && !is_dynamic(e)) {
        const auto& prev = std::get<DirLevelSym>(side[i - 1].value);
        const auto& cur = std::get<DirLevelSym>(e.value);
        if (prev.lmr == cur.lmr && prev.bmf == cur.bmf && prev.level == cur.level) {
          for (const auto& o : other) {
            if (is_dynamic(o) && o.start < e.end() && e.start < o.end()) {
              drop = true;
              break;
            }
          }
        }
      }
      if (!drop) kept.push_back(e);
    }
    return kept;
  };
  auto left_before = per_column["Left support"];
  auto right_before = per_column["Right support"];
  per_column["Left support"] = suppress(left_before, right_before);
  per_column["Right support"] = suppress(right_before, left_before);

  for (const auto& col : column_specs())
    for (auto& e : per_column[col.name]) score.events.push_back(std::move(e));
  return score;
}

InstanceSequence score_to_instances(const LabanScore& score, int frames, int fps) {
  for (const auto& name : score.columns) find_column(name);
  InstanceSequence out = InstanceSequence::rest(frames, fps);

  for (const auto& col_name : score.columns) {
    const ColumnSpec& col = find_column(col_name);
    auto events = score.column_events(col_name);
    int prev_end = 0;
    const ScoreEvent* prev = nullptr;
    for (const ScoreEvent* e : events) {
      if (e->duration < 1) fail(Errc::overlap, "event with non-positive duration in " + col_name);
      if (e->start < 0 || e->end() > frames)
        fail(Errc::out_of_range, "event past frame " + std::to_string(frames) + " in " + col_name);
      if (e->start < prev_end)
        fail(Errc::overlap, "overlapping events in column " + col_name);
      prev_end = e->end();
      prev = e;
    }
    (void)prev;

    auto write_span = [&](int from, int to, const EventValue& value, bool gap_hold) {
      for (int t = from; t < to; ++t) {
        if (col.kind == ColKind::Conceptual) {
          const auto& sym = std::get<DirLevelSym>(value);
          out.set(t, col.group, 0, static_cast<uint8_t>(sym.lmr));
          out.set(t, col.group, 1, static_cast<uint8_t>(sym.bmf));
          out.set(t, col.group, 2, static_cast<uint8_t>(sym.level));
          HoldState h = gap_hold ? HoldState::Hold : sym.hold.value_or(HoldState::Hold);
          out.set(t, col.group, 5, static_cast<uint8_t>(h));
        } else if (col.kind == ColKind::ElbowDir) {
          const auto& sym = std::get<DirLevelSym>(value);
          out.set(t, col.group, 6, static_cast<uint8_t>(sym.lmr));
          out.set(t, col.group, 7, static_cast<uint8_t>(sym.bmf));
          out.set(t, col.group, 8, static_cast<uint8_t>(sym.level));
        } else {
          const auto& sym = std::get<DetailSym>(value);
          out.set(t, col.group, col.attr_in_group, sym.value);
        }
      }
    };

    int cursor = 0;
    const EventValue* carry = nullptr;
    for (const ScoreEvent* e : events) {
      if (std::holds_alternative<DirLevelSym>(e->value) != (col.kind != ColKind::Detail))
        fail(Errc::unknown_column, "event value does not match column kind in " + col_name);
      if (e->start > cursor && carry) write_span(cursor, e->start, *carry, true);
      // leading gaps keep the rest defaults
      write_span(e->start, e->end(), e->value, false);
      cursor = e->end();
      carry = &e->value;
    }
    if (carry && cursor < frames) write_span(cursor, frames, *carry, true);
  }
  return out;
}

std::string event_glyph(const ScoreEvent& event, const ScoreEvent* prev_in_column) {
  if (const auto* d = std::get_if<DetailSym>(&event.value)) {
    char tag = d->kind == AttrKind::Bend ? 'B' : (d->kind == AttrKind::Orient ? 'O' : 'E');
    int shown = d->value;
    if (d->kind == AttrKind::Effort && shown > 3) shown = 3; // the very-fast glyph
    return std::string(1, tag) + std::to_string(shown);
  }
  const auto& sym = std::get<DirLevelSym>(event.value);
  if (sym.hold && *sym.hold == HoldState::Hold) {
    if (prev_in_column) {
      const auto* p = std::get_if<DirLevelSym>(&prev_in_column->value);
      if (p && p->lmr == sym.lmr && p->bmf == sym.bmf && p->level == sym.level) return "HOLD";
    }
    return dir_level_text(sym) + "*";
  }
  return dir_level_text(sym);
}

std::string render_score_text(const LabanScore& score) {
  constexpr int kCellWidth = 8;
  std::ostringstream os;
  os << "#labanscore v1 fps=" << score.fps << " frames=" << score.frames << "\n";
  os << "# columns:";
  for (size_t i = 0; i < score.columns.size(); ++i)
    os << " c" << (i + 1) << "=" << score.columns[i];
  os << "\n";

  struct Cell {
    const ScoreEvent* event = nullptr;
    bool starts_here = false;
  };
  std::vector<std::vector<Cell>> grid(score.columns.size());
  std::vector<std::vector<const ScoreEvent*>> ordered(score.columns.size());
  for (size_t c = 0; c < score.columns.size(); ++c) {
    grid[c].resize(score.frames);
    ordered[c] = score.column_events(score.columns[c]);
    for (const ScoreEvent* e : ordered[c])
      for (int t = e->start; t < e->end() && t < score.frames; ++t)
        grid[c][t] = Cell{e, t == e->start};
  }

  char buf[32];
  for (int t = score.frames - 1; t >= 0; --t) {
    std::snprintf(buf, sizeof buf, "%4d ", t);
    os << buf;
    for (size_t c = 0; c < score.columns.size(); ++c) {
      std::string cell = ".";
      const Cell& g = grid[c][t];
      if (g.event) {
        if (g.starts_here) {
          const ScoreEvent* prev = nullptr;
          for (const ScoreEvent* e : ordered[c]) {
            if (e == g.event) break;
            prev = e;
          }
          cell = event_glyph(*g.event, prev);
        } else {
          cell = "|";
        }
      }
      std::snprintf(buf, sizeof buf, " %-*s", kCellWidth - 1, cell.c_str());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

} // namespace lamogen
