#pragma once

#include <stdexcept>
#include <string>

namespace lamogen {

enum class Errc {
  out_of_range,
  unmapped_value,
  ambiguous_activation,
  missing_attribute,
  degenerate_pose,
  parse_error,
  joint_count_mismatch,
  too_short,
  empty_interval,
  overlap,
  unknown_column,
  grammar,
  unknown_semantic,
  unknown_group,
  duration_mismatch,
  empty_script,
  missing_section,
  tuple_error,
  index_out_of_table,
  empty_database,
  no_references,
  llm_unavailable,
  compose_failed,
  shape_mismatch,
  eval_split_record,
  unreachable_target,
  io_error,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace lamogen
