// lamogen: batch toolchain for symbolic motion annotation, decoding, and
// benchmark metrics.
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lamogen/compose.hpp"
#include "lamogen/concept.hpp"
#include "lamogen/detect.hpp"
#include "lamogen/metrics.hpp"
#include "lamogen/score.hpp"
#include "lamogen/synth.hpp"

namespace {

using namespace lamogen;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + out_path);
  out << content;
}

ThresholdConfig thresholds_from(const std::string& path) {
  if (path.empty()) return ThresholdConfig::defaults();
  return load_thresholds(read_file(path));
}

Side parse_side(const std::string& s) {
  if (s == "L" || s == "l" || s == "left") return Side::L;
  if (s == "R" || s == "r" || s == "right") return Side::R;
  fail(Errc::grammar, "side must be L or R: " + s);
}

// Runs `sh -c cmd` with the prompt on stdin, collecting stdout. Enforces the
// LAMOGEN_LLM_TIMEOUT_S wall clock (default 60 s).
std::string run_llm_command(const std::string& cmd, const std::string& input) {
  double timeout_s = 60.0;
  if (const char* env = std::getenv("LAMOGEN_LLM_TIMEOUT_S")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) timeout_s = v;
  }

  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    fail(Errc::llm_unavailable, "pipe() failed");
  pid_t pid = fork();
  if (pid < 0) fail(Errc::llm_unavailable, "fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // the child may exit without reading; take EPIPE over a fatal SIGPIPE
  signal(SIGPIPE, SIG_IGN);
  size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<size_t>(n);
  }
  close(in_pipe[1]);

  std::string output;
  char buf[4096];
  double waited_ms = 0.0;
  const double budget_ms = timeout_s * 1000.0;
  bool timed_out = false;
  for (;;) {
    struct pollfd pfd{out_pipe[0], POLLIN, 0};
    int rc = poll(&pfd, 1, 100);
    if (rc > 0) {
      ssize_t n = read(out_pipe[0], buf, sizeof buf);
      if (n <= 0) break;
      output.append(buf, static_cast<size_t>(n));
    } else if (rc == 0) {
      waited_ms += 100.0;
      if (waited_ms > budget_ms) {
        timed_out = true;
        break;
      }
    } else {
      break;
    }
  }
  close(out_pipe[0]);
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    fail(Errc::llm_unavailable, "LLM command timed out after " + std::to_string(timeout_s) + " s");
  }
  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    fail(Errc::llm_unavailable, "LLM command exited with failure");
  return output;
}

int run(int argc, char** argv) {
  CLI::App app{"symbolic motion annotation toolchain"};
  app.require_subcommand(1);

  // ---- detect ----
  auto* cmd_detect = app.add_subcommand("detect", "motion file -> instances (and optional score)");
  std::string detect_in, detect_out, detect_score_out, detect_thresholds;
  cmd_detect->add_option("--in", detect_in, "motion file")->required();
  cmd_detect->add_option("--out", detect_out, "instances output (default stdout)");
  cmd_detect->add_option("--score-out", detect_score_out, "also write the rendered score");
  cmd_detect->add_option("--thresholds", detect_thresholds, "threshold config overrides");

  // ---- render ----
  auto* cmd_render = app.add_subcommand("render", "instances -> textual score");
  std::string render_in, render_out;
  cmd_render->add_option("--in", render_in, "instances file")->required();
  cmd_render->add_option("--out", render_out, "score output (default stdout)");

  // ---- decode ----
  auto* cmd_decode = app.add_subcommand("decode", "instances or script -> motion");
  std::string decode_in, decode_script, decode_out;
  int decode_fps = 20;
  cmd_decode->add_option("--in", decode_in, "instances file");
  cmd_decode->add_option("--script", decode_script, "concept script file");
  cmd_decode->add_option("--out", decode_out, "motion output (default stdout)");
  cmd_decode->add_option("--fps", decode_fps, "frames per second for --script input");

  // ---- synth ----
  auto* cmd_synth = app.add_subcommand("synth", "parametric fixtures");
  cmd_synth->require_subcommand(1);
  auto* synth_walk_cmd = cmd_synth->add_subcommand("walk", "alternating-step walk");
  int walk_steps = 3, walk_then_back = 0, walk_fps = 20;
  std::string walk_first = "L", walk_out;
  double walk_step_seconds = 0.5;
  bool walk_backward = false;
  synth_walk_cmd->add_option("--steps", walk_steps, "number of steps")->required();
  synth_walk_cmd->add_option("--first", walk_first, "starting side, L or R");
  synth_walk_cmd->add_option("--step-seconds", walk_step_seconds, "seconds per step");
  synth_walk_cmd->add_option("--fps", walk_fps, "frames per second");
  synth_walk_cmd->add_flag("--backward", walk_backward, "walk backward");
  synth_walk_cmd->add_option("--then-back", walk_then_back, "append N backward steps");
  synth_walk_cmd->add_option("--out", walk_out, "motion output (default stdout)");

  auto* synth_wave_cmd = cmd_synth->add_subcommand("wave", "hand wave between levels");
  int wave_cycles = 2, wave_fps = 20;
  std::string wave_hand = "R", wave_out;
  synth_wave_cmd->add_option("--hand", wave_hand, "waving hand, L or R");
  synth_wave_cmd->add_option("--cycles", wave_cycles, "wave cycles")->required();
  synth_wave_cmd->add_option("--fps", wave_fps, "frames per second");
  synth_wave_cmd->add_option("--out", wave_out, "motion output (default stdout)");

  auto* synth_script_cmd = cmd_synth->add_subcommand("script", "random coherent concept script");
  uint64_t script_seed = 0;
  std::string script_out;
  synth_script_cmd->add_option("--seed", script_seed, "random seed")->required();
  synth_script_cmd->add_option("--out", script_out, "script output (default stdout)");

  // ---- metrics ----
  auto* cmd_metrics = app.add_subcommand("metrics", "alignment report between two instance files");
  std::string metrics_gt, metrics_gen, metrics_batch, metrics_out;
  cmd_metrics->add_option("--gt", metrics_gt, "ground-truth instances");
  cmd_metrics->add_option("--gen", metrics_gen, "generated instances");
  cmd_metrics->add_option("--batch", metrics_batch, "file of '<gt> <gen>' pairs, one per line");
  cmd_metrics->add_option("--out", metrics_out, "report output (default stdout)");

  // ---- db ----
  auto* cmd_db = app.add_subcommand("db", "conceptual description database");
  cmd_db->require_subcommand(1);
  auto* db_build_cmd = cmd_db->add_subcommand("build", "validate records into a database file");
  std::string db_build_in, db_build_out;
  bool db_keep_eval = false;
  db_build_cmd->add_option("--in", db_build_in, "raw records file")->required();
  db_build_cmd->add_option("--out", db_build_out, "database output (default stdout)");
  db_build_cmd->add_flag("--keep-eval", db_keep_eval, "admit eval-split records");

  auto* db_query_cmd = cmd_db->add_subcommand("query", "top-k retrieval by caption similarity");
  std::string db_query_db, db_query_text;
  int db_query_k = 3;
  db_query_cmd->add_option("--db", db_query_db, "database file")->required();
  db_query_cmd->add_option("--query", db_query_text, "query text")->required();
  db_query_cmd->add_option("--k", db_query_k, "matches to return");

  // ---- compose ----
  auto* cmd_compose = app.add_subcommand("compose", "retrieval-augmented script composition");
  std::string compose_db, compose_query, compose_llm_cmd, compose_out, compose_instances_out;
  int compose_k = 3, compose_retries = 3, compose_fps = 20;
  cmd_compose->add_option("--db", compose_db, "database file")->required();
  cmd_compose->add_option("--query", compose_query, "target description")->required();
  cmd_compose->add_option("--llm-cmd", compose_llm_cmd,
                          "external command: prompt on stdin, reply on stdout");
  cmd_compose->add_option("--k", compose_k, "retrieved references");
  cmd_compose->add_option("--retries", compose_retries, "re-prompt budget");
  cmd_compose->add_option("--out", compose_out, "script output (default stdout)");
  cmd_compose->add_option("--instances-out", compose_instances_out,
                          "also instantiate the script to a dense instance file");
  cmd_compose->add_option("--fps", compose_fps, "fps for --instances-out");

  // ---- cd ----
  auto* cmd_cd = app.add_subcommand("cd", "conceptual description grammar");
  cmd_cd->require_subcommand(1);
  auto* cd_parse_cmd = cmd_cd->add_subcommand("parse", "parse a textual description");
  std::string cd_parse_text;
  cd_parse_cmd->add_option("text", cd_parse_text, "e.g. 'Support Right steps to right in 2 seconds'")
      ->required();
  auto* cd_format_cmd = cmd_cd->add_subcommand("format", "format a description from fields");
  std::string cd_format_group;
  int cd_format_index = 1;
  double cd_format_seconds = 1.0;
  bool cd_format_tuple = false;
  cd_format_cmd->add_option("--group", cd_format_group, "SupportL|SupportR|UpperL|UpperR")
      ->required();
  cd_format_cmd->add_option("--index", cd_format_index, "semantic table index")->required();
  cd_format_cmd->add_option("--seconds", cd_format_seconds, "duration in seconds")->required();
  cd_format_cmd->add_flag("--tuple", cd_format_tuple, "emit the tuple form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2; // usage errors exit 2, --help exits 0
  }

  if (cmd_detect->parsed()) {
    ThresholdConfig cfg = thresholds_from(detect_thresholds);
    MotionSequence motion = load_motion(read_file(detect_in));
    InstanceSequence seq = detect(motion, cfg);
    write_output(detect_out, save_instances(seq));
    if (!detect_score_out.empty())
      write_output(detect_score_out, render_score_text(instances_to_score(seq)));
    return 0;
  }
  if (cmd_render->parsed()) {
    InstanceSequence seq = load_instances(read_file(render_in));
    write_output(render_out, render_score_text(instances_to_score(seq)));
    return 0;
  }
  if (cmd_decode->parsed()) {
    if (decode_in.empty() == decode_script.empty())
      fail(Errc::io_error, "decode needs exactly one of --in or --script");
    InstanceSequence seq;
    if (!decode_in.empty()) {
      seq = load_instances(read_file(decode_in));
    } else {
      ConceptScript script = parse_reply(read_file(decode_script));
      seq = script_to_instances(script, decode_fps);
    }
    DecodeResult result = decode(seq, Skeleton::standard());
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    write_output(decode_out, save_motion(result.motion));
    return 0;
  }
  if (synth_walk_cmd->parsed()) {
    Side first = parse_side(walk_first);
    MotionSequence motion;
    if (walk_then_back > 0) {
      ConceptScript fwd = walk_script(walk_steps, first, walk_step_seconds,
                                      walk_backward ? WalkDirection::Backward
                                                    : WalkDirection::Forward);
      Side cont = (walk_steps % 2 == 0) ? first : (first == Side::L ? Side::R : Side::L);
      ConceptScript back =
          walk_script(walk_then_back, cont, walk_step_seconds, WalkDirection::Backward, 0.0);
      fwd.support.insert(fwd.support.end(), back.support.begin(), back.support.end());
      fwd.left_hand.insert(fwd.left_hand.end(), back.left_hand.begin(), back.left_hand.end());
      fwd.right_hand.insert(fwd.right_hand.end(), back.right_hand.begin(), back.right_hand.end());
      motion = decode(script_to_instances(fwd, walk_fps), Skeleton::standard()).motion;
    } else {
      motion = synth_walk(walk_steps, first, walk_step_seconds, walk_fps,
                          walk_backward ? WalkDirection::Backward : WalkDirection::Forward);
    }
    write_output(walk_out, save_motion(motion));
    return 0;
  }
  if (synth_wave_cmd->parsed()) {
    MotionSequence motion = synth_arm_wave(parse_side(wave_hand), wave_cycles, wave_fps);
    write_output(wave_out, save_motion(motion));
    return 0;
  }
  if (synth_script_cmd->parsed()) {
    ConceptScript script = random_script(script_seed);
    write_output(script_out, serialize_script(script) + "\n");
    return 0;
  }
  if (cmd_metrics->parsed()) {
    std::ostringstream report;
    if (!metrics_batch.empty()) {
      std::istringstream pairs(read_file(metrics_batch));
      std::string line;
      while (std::getline(pairs, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string gt_path, gen_path;
        if (!(ls >> gt_path >> gen_path))
          fail(Errc::parse_error, "batch line needs '<gt> <gen>': " + line);
        InstanceSequence gt = load_instances(read_file(gt_path));
        InstanceSequence gen = load_instances(read_file(gen_path));
        report << "# " << gt_path << " vs " << gen_path << "\n"
               << format_report(evaluate(gt, gen));
      }
    } else {
      if (metrics_gt.empty() || metrics_gen.empty())
        fail(Errc::io_error, "metrics needs --gt and --gen (or --batch)");
      InstanceSequence gt = load_instances(read_file(metrics_gt));
      InstanceSequence gen = load_instances(read_file(metrics_gen));
      report << format_report(evaluate(gt, gen));
    }
    write_output(metrics_out, report.str());
    return 0;
  }
  if (db_build_cmd->parsed()) {
    auto records = load_db_records(read_file(db_build_in));
    DbConfig cfg;
    cfg.reject_eval = !db_keep_eval;
    Database db = db_build(std::move(records), cfg);
    write_output(db_build_out, save_db(db.records()));
    return 0;
  }
  if (db_query_cmd->parsed()) {
    Database db = db_build(load_db_records(read_file(db_query_db)), DbConfig{false});
    RetrievalConfig cfg;
    cfg.k = db_query_k;
    std::ostringstream os;
    for (const auto& rec : db_query(db, db_query_text, cfg))
      os << rec.caption << '\t' << serialize_script(rec.script, false) << '\n';
    write_output("", os.str());
    return 0;
  }
  if (cmd_compose->parsed()) {
    Database db = db_build(load_db_records(read_file(compose_db)), DbConfig{false});
    ComposeConfig cfg;
    cfg.retrieval.k = compose_k;
    cfg.retries = compose_retries;
    cfg.offline = compose_llm_cmd.empty();
    LlmFn llm;
    if (!cfg.offline)
      llm = [&](const std::string& prompt) { return run_llm_command(compose_llm_cmd, prompt); };
    ComposeResult result = compose(compose_query, db, cfg, llm);
    if (result.attempts > 1)
      std::cerr << "compose: succeeded after " << result.attempts << " attempts\n";
    write_output(compose_out, serialize_script(result.script) + "\n");
    if (!compose_instances_out.empty())
      write_output(compose_instances_out,
                   save_instances(script_to_instances(result.script, compose_fps)));
    return 0;
  }
  if (cd_parse_cmd->parsed()) {
    ConceptualDescription cd = parse_cd_text(cd_parse_text);
    std::cout << format_cd(cd) << "\n" << format_tuple(cd) << "\n";
    return 0;
  }
  if (cd_format_cmd->parsed()) {
    ConceptualDescription cd{parse_group_name(cd_format_group), cd_format_index, cd_format_seconds};
    std::cout << (cd_format_tuple ? format_tuple(cd) : format_cd(cd)) << "\n";
    return 0;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lamogen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
