#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "json_io.hpp"

namespace extri::cli {

using json = nlohmann::json;

struct Options {
  std::optional<std::uint64_t> seed;
  std::uint64_t prime = 2;
  std::optional<int> modulus;
  std::optional<std::string> bound;
  bool certificate = false;
  bool pi = false;
};

struct Outcome {
  int exit_code = 0;  // 0 ok, 1 domain error or failed check, 2 malformed input
  json output;
  json input;  // normalized input echoed in the output, for digests
};

// Each command takes the parsed document (if any) and returns its report.
// Reports carry the normalized input under "input"; a report fed back as
// input reproduces itself.
using Command = std::function<json(const std::optional<json>&, const Options&)>;

const std::map<std::string, Command>& commands();

// Runs one command and maps exceptions to exit codes.
Outcome run(const std::string& name, const std::optional<json>& input, const Options& opt);

}  // namespace extri::cli
