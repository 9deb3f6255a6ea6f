#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dunkl/verify.hpp"

namespace dunkl::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kEmpty = 3, kAcceptance = 4 };

enum class FieldType { Number, Integer, String, Bool, NumberList, StringList };

/// One configurable parameter. The JSON key doubles as the flag name with
/// '_' spelled '-'. A null default means "required" unless `optional`.
struct Field {
    std::string key;
    FieldType type;
    json default_value;
    std::string help;
    bool optional = false;
};

const std::vector<Field>& fields(const std::string& command);
std::vector<std::string> commands();

/// Merges a config document and flag values (flags win) into a fully typed
/// config. Unknown keys, type mismatches and missing required fields throw
/// Error(ConfigError).
json merge_config(const std::string& command, const json& file, const json& flags);

/// Converts a flag string to the field's JSON type.
json parse_flag(const Field& f, const std::string& text);

struct Outcome {
    json doc;
    int exit_code = kOk;
    std::string message;  // for stderr
};

/// Runs a command on a merged config. `log` receives human-readable lines
/// (verify prints one line per invariant there). Output files named in the
/// config are written here.
Outcome run(const std::string& command, const json& config, std::ostream& log);

/// Command-line invariants (determinism, output metadata).
std::vector<verify::Invariant> cli_invariants();

}  // namespace dunkl::cli
