// Acceptance gate: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lamogen/compose.hpp"
#include "lamogen/detect.hpp"
#include "lamogen/metrics.hpp"
#include "lamogen/score.hpp"
#include "lamogen/synth.hpp"
#include "test_util.hpp"
#include "threshold_cases.hpp"

using namespace lamogen;
namespace fs = std::filesystem;

#ifndef LAMOGEN_GOLDEN_DIR
#define LAMOGEN_GOLDEN_DIR "tests/golden"
#endif

namespace {

std::string g_cli_path; // path to the lamogen binary, from argv[1]

struct Criterion {
  const char* name;
  std::function<void(std::string&)> run; // throws or appends to the detail string on failure
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void expect(bool ok, std::string& detail, const std::string& what) {
  if (!ok) detail += (detail.empty() ? "" : "; ") + what;
}

// ---- 1: LCS oracle equivalence ---------------------------------------------

void criterion_lcs(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  long mismatches = 0;

  // exhaustive: all pairs with |a| + |b| <= 8 over a 4-symbol alphabet
  std::vector<std::vector<int>> by_len[9];
  by_len[0].push_back({});
  for (int len = 1; len <= 8; ++len)
    for (const auto& shorter : by_len[len - 1])
      for (int s = 0; s < 4; ++s) {
        auto v = shorter;
        v.push_back(s);
        by_len[len].push_back(v);
      }
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n + m <= 8; ++n)
      for (const auto& a : by_len[m])
        for (const auto& b : by_len[n])
          if (lcs_length(a, b) != testutil::lcs_brute(a, b)) ++mismatches;

  // exhaustive: all pairs with lengths <= 5 over the 4-symbol alphabet
  std::vector<std::vector<int>> small;
  for (int len = 0; len <= 5; ++len)
    for (const auto& v : by_len[len]) small.push_back(v);
  for (const auto& a : small)
    for (const auto& b : small)
      if (lcs_length(a, b) != testutil::lcs_brute(a, b)) ++mismatches;

  // exhaustive: all pairs with lengths <= 8 over a 2-symbol alphabet
  std::vector<std::vector<int>> binary;
  binary.push_back({});
  for (size_t i = 0; i < binary.size() && binary[i].size() < 8; ++i)
    for (int s = 0; s < 2; ++s) {
      auto v = binary[i];
      v.push_back(s);
      binary.push_back(v);
    }
  for (const auto& a : binary)
    for (const auto& b : binary)
      if (lcs_length(a, b) != testutil::lcs_brute(a, b)) ++mismatches;

  // 1000 random pairs of length <= 60 against memoized recursion
  std::mt19937_64 rng(101);
  for (int it = 0; it < 1000; ++it) {
    auto random_seq = [&]() {
      int len = std::uniform_int_distribution<int>(0, 60)(rng);
      std::vector<int> v(len);
      for (int& x : v) x = std::uniform_int_distribution<int>(0, 3)(rng);
      return v;
    };
    auto a = random_seq(), b = random_seq();
    if (lcs_length(a, b) != testutil::lcs_memo(a, b)) ++mismatches;
  }

  double elapsed = seconds_since(t0);
  expect(mismatches == 0, detail, std::to_string(mismatches) + " oracle mismatches");
  expect(elapsed < 10.0, detail, "took " + std::to_string(elapsed) + " s (budget 10)");
}

// ---- 2: metric axioms -------------------------------------------------------

void criterion_metric_axioms(std::string& detail) {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 200; ++it) {
    InstanceSequence a = testutil::random_runs_sequence(
        rng, std::uniform_int_distribution<int>(2, 40)(rng));
    InstanceSequence b = testutil::random_runs_sequence(
        rng, std::uniform_int_distribution<int>(2, 40)(rng));
    MetricReport self = evaluate(a, a);
    MetricReport ab = evaluate(a, b);
    MetricReport ba = evaluate(b, a);
    for (int p = 0; p < kPartCount; ++p) {
      expect(self.smt[p] == 1.0 && self.tmp[p] == 1.0, detail, "self-identity violated");
      expect(ab.smt[p] == ba.smt[p] && ab.tmp[p] == ba.tmp[p], detail, "symmetry violated");
      expect(ab.smt[p] >= 0.0 && ab.smt[p] <= 1.0 && ab.tmp[p] >= 0.0 && ab.tmp[p] <= 1.0,
             detail, "bounds violated");
    }
    for (int q = 0; q < kPartPairCount; ++q) {
      expect(self.hmn[q] == 1.0, detail, "hmn self-identity violated");
      expect(ab.hmn[q] == ba.hmn[q], detail, "hmn symmetry violated");
      expect(ab.hmn[q] >= 0.0 && ab.hmn[q] <= 1.0, detail, "hmn bounds violated");
    }
    if (!detail.empty()) return;
  }
  // stretch invariance, exact
  for (int it = 0; it < 20; ++it) {
    InstanceSequence a = testutil::random_runs_sequence(rng, 15);
    InstanceSequence wide(a.frames() * 2, a.fps());
    for (int t = 0; t < a.frames(); ++t)
      for (AttrId at = 0; at < kAttrCount; ++at) {
        wide.set(2 * t, at, a.get(t, at));
        wide.set(2 * t + 1, at, a.get(t, at));
      }
    for (int p = 0; p < kPartCount; ++p) {
      expect(smt(a, wide, static_cast<Part>(p)) == 1.0, detail, "SMT not stretch-invariant");
      expect(tmp(a, wide, static_cast<Part>(p)) == 0.5, detail, "TMP of 2x stretch is not 0.5");
    }
  }
}

// ---- 3: threshold conformance ------------------------------------------------

void criterion_thresholds(std::string& detail) {
  expect(testutil::threshold_case_count() >= 40, detail, "fewer than 40 boundary cases");
  int bad = testutil::run_threshold_cases();
  expect(bad == 0, detail, std::to_string(bad) + " boundary cases misclassified");
}

// ---- 4: round-trip theorem ----------------------------------------------------

void criterion_round_trip(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  Skeleton skel = Skeleton::standard();
  ThresholdConfig cfg;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    InstanceSequence inst = script_to_instances(random_script(seed), 20);
    InstanceSequence det = detect(decode(inst, skel).motion, cfg);
    MetricReport r = evaluate(inst, det);
    for (int p = 0; p < kPartCount; ++p) {
      expect(r.smt[p] == 1.0, detail,
             "seed " + std::to_string(seed) + " SMT[" + part_name(static_cast<Part>(p)) +
                 "]=" + std::to_string(r.smt[p]));
      expect(r.tmp[p] >= 0.9, detail,
             "seed " + std::to_string(seed) + " TMP[" + part_name(static_cast<Part>(p)) +
                 "]=" + std::to_string(r.tmp[p]));
    }
    if (!detail.empty()) return;
  }
  double elapsed = seconds_since(t0);
  expect(elapsed < 5.0, detail, "took " + std::to_string(elapsed) + " s (budget 5)");
}

// ---- 5: codebook integrity ------------------------------------------------------

void criterion_codebook(std::string& detail) {
  const Codebook& cb = build_codebook();
  expect(cb.size() == 158, detail, "size != 158");
  struct Row { int start, width; bool conceptual; };
  const Row rows[] = {
      {1, 3, true},    {4, 3, true},    {7, 3, true},    {10, 6, false},  {16, 6, false},
      {22, 2, true},   {24, 3, true},   {27, 3, true},   {30, 3, true},   {33, 6, false},
      {39, 6, false},  {45, 2, true},   {47, 8, false},  {55, 8, false},  {63, 5, false},
      {68, 5, false},  {73, 3, true},   {76, 3, true},   {79, 3, true},   {82, 6, false},
      {88, 6, false},  {94, 2, true},   {96, 3, true},   {99, 3, true},   {102, 3, true},
      {105, 6, false}, {111, 6, false}, {117, 2, true},  {119, 8, false}, {127, 8, false},
      {135, 6, false}, {141, 3, false}, {144, 3, false}, {147, 3, false}, {150, 3, false},
      {153, 3, false}, {156, 3, false},
  };
  int widths = 0;
  for (int a = 0; a < kAttrCount; ++a) {
    expect(cb.range_start(a) == rows[a].start, detail, "range start mismatch at row " +
                                                           std::to_string(a + 1));
    expect(cb.range_width(a) == rows[a].width, detail, "range width mismatch at row " +
                                                           std::to_string(a + 1));
    expect(attr_fields()[a].conceptual == rows[a].conceptual, detail,
           "conceptual flag mismatch at row " + std::to_string(a + 1));
    widths += rows[a].width;
  }
  expect(widths == 158, detail, "widths sum to " + std::to_string(widths));

  std::mt19937_64 rng(107);
  for (int it = 0; it < 100; ++it) {
    InstanceSequence seq = testutil::random_dense_sequence(
        rng, std::uniform_int_distribution<int>(1, 25)(rng));
    InstanceSequence back = indicators_to_instances(instances_to_indicators(seq), seq.fps());
    expect(back == seq, detail, "indicator bijection failed");
    if (!detail.empty()) return;
  }
}

// ---- 6: CD grammar bijection ------------------------------------------------------

void criterion_grammar(std::string& detail) {
  int checked = 0;
  for (Group g : {Group::SupportL, Group::SupportR, Group::UpperL, Group::UpperR}) {
    int table = (g == Group::SupportL || g == Group::SupportR) ? 54 : 81;
    for (int i = 1; i <= table; ++i) {
      ConceptualDescription cd{g, i, 0.25};
      expect(parse_cd_text(format_cd(cd)) == cd, detail,
             "text round trip failed at index " + std::to_string(i));
      auto context = (table == 81) ? std::optional<Group>(g) : std::nullopt;
      expect(parse_tuple(format_tuple(cd), context) == cd, detail,
             "tuple round trip failed at index " + std::to_string(i));
      ++checked;
    }
  }
  expect(checked == 270, detail, "expected 270 combinations, saw " + std::to_string(checked));

  ConceptScript script = parse_reply(
      "[Caption] walk forward "
      "[Support] (left, 1, 0.25), (right, 2, 0.25), (left, 1, 0.25) while (right, 2, 0.25) "
      "[Left hand] (1, 0.5), (2, 0.2) [Right hand] (1, 0.5), (3, 0.2)");
  expect(script.support.size() == 3, detail, "worked reply: wrong movement count");
  expect(script.support.size() == 3 && script.support[2].sides.size() == 2, detail,
         "worked reply: missing while pair");
  script_to_instances(script, 20); // must instantiate without error
}

// ---- 7: score conversion ------------------------------------------------------------

void criterion_score(std::string& detail) {
  std::mt19937_64 rng(109);
  for (int it = 0; it < 100; ++it) {
    int frames = std::uniform_int_distribution<int>(1, 40)(rng);
    InstanceSequence seq = testutil::random_runs_sequence(rng, frames);
    InstanceSequence back = score_to_instances(instances_to_score(seq), frames, seq.fps());
    for (Group g : {Group::SupportL, Group::SupportR, Group::UpperL, Group::UpperR})
      for (int t = 0; t < frames; ++t)
        expect(back.concept_tuple(t, g) == seq.concept_tuple(t, g) &&
                   back.hold_state(t, g) == seq.hold_state(t, g),
               detail, "conceptual identity failed");
    if (!detail.empty()) return;
  }
  InstanceSequence walk = script_to_instances(walk_script(3, Side::L, 0.5), 20);
  std::ifstream in(std::string(LAMOGEN_GOLDEN_DIR) + "/forward_walk.laban.txt", std::ios::binary);
  std::ostringstream golden;
  golden << in.rdbuf();
  expect(in.good() && render_score_text(instances_to_score(walk)) == golden.str(), detail,
         "forward-walk render differs from the golden file");
}

// ---- 8: compose pipeline -------------------------------------------------------------

void criterion_compose(std::string& detail) {
  std::vector<CDRecord> records;
  auto rec = [&](const char* cap, ConceptScript s, bool eval = false) {
    CDRecord r;
    r.caption = cap;
    r.script = std::move(s);
    r.script.caption = cap;
    r.eval_split = eval;
    records.push_back(r);
  };
  rec("walk forward", walk_script(3, Side::L, 0.5));
  rec("turn", random_script(1001));
  rec("wave right hand", arm_wave_script(Side::R, 2));

  Database db = db_build(records);
  auto hits = db_query(db, "walk forward", RetrievalConfig{3, {}});
  expect(!hits.empty() && hits[0].caption == "walk forward", detail,
         "exact caption not ranked first");

  int calls = 0;
  LlmFn flaky = [&](const std::string&) -> std::string {
    ++calls;
    if (calls <= 2) return "not a script";
    return serialize_script(walk_script(2, Side::R, 0.5));
  };
  ComposeResult result = compose("walk forward", db, ComposeConfig{}, flaky);
  expect(result.attempts == 3 && calls == 3, detail, "retry budget not honored");

  auto bad = records;
  rec("held out", walk_script(1, Side::L, 0.5), true);
  bool rejected = false;
  try {
    db_build(records);
  } catch (const Error& e) {
    rejected = e.code() == Errc::eval_split_record;
  }
  expect(rejected, detail, "eval-split record not rejected at build");
  (void)bad;
}

// ---- 9: teaser structure --------------------------------------------------------------

void criterion_teaser(std::string& detail) {
  ConceptScript fwd = walk_script(5, Side::L, 0.5);
  ConceptScript back = walk_script(3, Side::R, 0.5, WalkDirection::Backward, 0.0);
  fwd.support.insert(fwd.support.end(), back.support.begin(), back.support.end());
  fwd.left_hand.insert(fwd.left_hand.end(), back.left_hand.begin(), back.left_hand.end());
  fwd.right_hand.insert(fwd.right_hand.end(), back.right_hand.begin(), back.right_hand.end());

  InstanceSequence inst = script_to_instances(fwd, 20);
  InstanceSequence det = detect(decode(inst, Skeleton::standard()).motion, ThresholdConfig{});
  struct Run { int start; DirBMF bmf; };
  std::vector<Run> runs;
  for (Part p : {Part::SupL, Part::SupR})
    for (const auto& run : compress_part(det, p))
      if (run.value.bmf != DirBMF::M) runs.push_back({run.start, run.value.bmf});
  std::sort(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.start < b.start; });
  expect(runs.size() == 8, detail,
         "expected 8 directed support runs, got " + std::to_string(runs.size()));
  if (runs.size() == 8) {
    for (int i = 0; i < 5; ++i)
      expect(runs[i].bmf == DirBMF::F, detail, "run " + std::to_string(i) + " not forward");
    for (int i = 5; i < 8; ++i)
      expect(runs[i].bmf == DirBMF::B, detail, "run " + std::to_string(i) + " not backward");
  }
}

// ---- 10: performance --------------------------------------------------------------------

void criterion_performance(std::string& detail) {
  MotionSequence m = synth_walk(16, Side::L, 0.6, 20); // exactly 200 frames
  expect(m.frame_count() == 200, detail, "fixture is not 200 frames");
  ThresholdConfig cfg;

  auto t0 = std::chrono::steady_clock::now();
  InstanceSequence det = detect(m, cfg);
  double detect_ms = seconds_since(t0) * 1000.0;
  expect(detect_ms < 50.0, detail, "detect took " + std::to_string(detect_ms) + " ms (budget 50)");

  InstanceSequence other = detect(synth_walk(16, Side::R, 0.6, 20), cfg);
  t0 = std::chrono::steady_clock::now();
  MetricReport r = evaluate(det, other);
  double report_ms = seconds_since(t0) * 1000.0;
  expect(report_ms < 10.0, detail,
         "metric report took " + std::to_string(report_ms) + " ms (budget 10)");
  expect(r.avg_smt() > 0.0, detail, "degenerate report");

  if (g_cli_path.empty()) {
    expect(false, detail, "CLI path not provided to the acceptance binary");
    return;
  }
  fs::path dir = fs::temp_directory_path() / "lamogen_acceptance";
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  std::string q = "\"" + g_cli_path + "\"";
  std::string pipeline =
      q + " synth walk --steps 3 --first L --out " + path("a.mo.txt") + " && " +
      q + " detect --in " + path("a.mo.txt") + " --out " + path("a.inst.txt") + " && " +
      q + " render --in " + path("a.inst.txt") + " --out " + path("a.laban.txt") + " && " +
      q + " decode --in " + path("a.inst.txt") + " --out " + path("b.mo.txt") + " && " +
      q + " detect --in " + path("b.mo.txt") + " --out " + path("b.inst.txt") + " && " +
      q + " metrics --gt " + path("a.inst.txt") + " --gen " + path("b.inst.txt") + " --out " +
      path("report.txt");
  t0 = std::chrono::steady_clock::now();
  int rc = std::system(pipeline.c_str());
  double pipeline_s = seconds_since(t0);
  expect(rc == 0, detail, "CLI pipeline failed");
  expect(pipeline_s < 2.0, detail,
         "CLI pipeline took " + std::to_string(pipeline_s) + " s (budget 2)");
  std::ifstream report(path("report.txt"));
  std::ostringstream ss;
  ss << report.rdbuf();
  expect(ss.str().find("avg.smt=1.000000") != std::string::npos, detail,
         "pipeline SMT is not 1.0");
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const Criterion criteria[] = {
      {"LCS oracle equivalence (exhaustive small alphabets + 1000 random, <10 s)", criterion_lcs},
      {"metric axioms: self-identity, symmetry, bounds, stretch invariance, TMP 2x = 0.5",
       criterion_metric_axioms},
      {"threshold conformance golden table (>= 40 boundary inputs, bit-exact)",
       criterion_thresholds},
      {"round-trip theorem: detect(decode(script)), SMT = 1.0 and TMP >= 0.9 on 50 scripts (<5 s)",
       criterion_round_trip},
      {"codebook integrity: 158 codes, range widths and flags, indicator bijection",
       criterion_codebook},
      {"CD grammar bijection over 270 combinations + worked reply with while pair",
       criterion_grammar},
      {"score conversion identity on 100 random sequences + forward-walk golden render",
       criterion_score},
      {"compose pipeline with scripted mock LLM: retrieval, retries, eval-split rejection",
       criterion_compose},
      {"teaser structure: 5 forward runs then 3 backward runs", criterion_teaser},
      {"performance: detect < 50 ms, report < 10 ms, CLI pipeline < 2 s", criterion_performance},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    std::string detail;
    try {
      c.run(detail);
    } catch (const std::exception& e) {
      detail += (detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("[PASS] %2d. %s\n", index, c.name);
    } else {
      std::printf("[FAIL] %2d. %s -- %s\n", index, c.name, detail.c_str());
      ++failures;
    }
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
