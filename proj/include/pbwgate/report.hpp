#pragma once

// Command dispatch and report records for the pbwgate CLI.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbwgate/problem.hpp"

namespace pbwgate {

/// Bad command, missing module, or a problem that fails validation.
class InputError : public Error {
public:
  using Error::Error;
};

struct Record {
  std::string check;
  std::string anchor;
  std::string verdict;
  nlohmann::ordered_json witness;
  double millis = 0;
  /// The verdict matches what the theory predicts.
  bool consistent = true;
};

struct Report {
  std::string command;
  std::string problem;
  std::size_t max_degree = 0;
  std::vector<Record> records;
  bool consistent() const;
  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

struct RunOptions {
  std::optional<std::size_t> max_degree; // defaults to the problem's setting
  std::optional<std::string> module;
};

const std::vector<std::string> &command_names();

Report run_command(const std::string &command, const ProblemFile &problem, const RunOptions &opts = {});

} // namespace pbwgate
