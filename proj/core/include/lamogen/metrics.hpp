#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "lamogen/instances.hpp"
#include "lamogen/motion.hpp"

namespace lamogen {

// The four measured body parts.
enum class Part : uint8_t { SupL = 0, SupR, ArmL, ArmR };
inline constexpr int kPartCount = 4;

Group part_group(Part p);
const char* part_name(Part p);

// One duration-ignored run of a part's conceptual tuple.
struct ConceptRun {
  ConceptTuple value;
  int start;
  int length;

  bool operator==(const ConceptRun&) const = default;
};

// Adjacent runs differ in value; lengths sum to T.
std::vector<ConceptRun> compress_part(const InstanceSequence& seq, Part part);

// Standard LCS length by dynamic programming.
template <typename T>
int lcs_length(std::span<const T> a, std::span<const T> b) {
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t u = 1; u <= a.size(); ++u) {
    for (size_t v = 1; v <= b.size(); ++v) {
      if (a[u - 1] == b[v - 1])
        cur[v] = prev[v - 1] + 1;
      else
        cur[v] = std::max(prev[v], cur[v - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

int lcs_length(const std::vector<int>& a, const std::vector<int>& b);

// Duration-ignored alignment of one part, in [0, 1].
double smt(const InstanceSequence& gt, const InstanceSequence& gen, Part part);
// Frame-wise alignment of one part, in [0, 1].
double tmp(const InstanceSequence& gt, const InstanceSequence& gen, Part part);

enum class PartPair : uint8_t {
  ArmArm = 0, // [ArmL, ArmR]
  SupSup,     // [SupL, SupR]
  ArmLSupL,
  ArmLSupR,
  ArmRSupL,
  ArmRSupR,
};
inline constexpr int kPartPairCount = 6;
std::array<Part, 2> pair_parts(PartPair pair);
const char* pair_name(PartPair pair);

// Synchrony alignment: runs of the two parts pairing at interval IoU > 0.5
// form joint tuples, compared SMT-style.
double hmn(const InstanceSequence& gt, const InstanceSequence& gen, PartPair pair);

// L1 pose distance plus lambda-weighted L1 velocity distance.
double reconstruction_distance(const MotionSequence& a, const MotionSequence& b,
                               double lambda = 0.5);

struct MetricReport {
  std::array<double, kPartCount> smt;
  std::array<double, kPartCount> tmp;
  std::array<double, kPartPairCount> hmn;

  double avg_smt() const;
  double avg_tmp() const;
  double avg_hmn() const;     // mean of all six pairs
  double hmn_arm_sup() const; // mean of the four cross pairs
};

MetricReport evaluate(const InstanceSequence& gt, const InstanceSequence& gen);

// Human table plus machine-readable key=value lines.
std::string format_report(const MetricReport& report);

} // namespace lamogen
