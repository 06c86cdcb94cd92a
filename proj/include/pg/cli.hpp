#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pg/field.hpp"

namespace pg::cli {

enum Exit : int { kPass = 0, kViolation = 1, kInputError = 2 };

struct RunConfig {
  std::string command;  // verify | homology | export | explore24
  std::string target;   // what to verify, or f | g for homology
  FieldTag field = FieldTag::prime(1000003);
  bool field_given = false;
  std::uint64_t seed = 1;
  int trials = 10;
  std::optional<std::string> tri;
  std::optional<std::string> out;
  std::string deform = "none";
  bool timing = false;
  int threads = 1;
};

struct TrialResult {
  std::string line;
  bool pass = true;
};

/// Worker count from PG_THREADS (capped by the hardware), at least 1.
int worker_count();

/// Runs job(0..n-1) on up to `threads` workers and hands each result to sink
/// in index order, from the calling thread only.
void run_ordered(int n, int threads, const std::function<TrialResult(int)>& job,
                 const std::function<void(const TrialResult&)>& sink);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pg::cli
