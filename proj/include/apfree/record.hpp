#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace apfree {

using Json = nlohmann::ordered_json;

// Doubles in records are rounded to 12 significant digits before storage
// so serialized payloads are stable and diffable.
double round_for_record(double v);
Json json_real(double v);

// Write temp file then rename, so partial output never lands at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string iso8601_timestamp();

// Canonical run record envelope shared by all commands: command name and
// arguments echo, master seed, timestamp (the one field replays ignore),
// artifact version and a command-specific payload.
Json make_run_record(const std::string& command, Json arguments, std::uint64_t master_seed, Json payload);

inline constexpr const char* kArtifactVersion = "apfree 0.1.0";

}  // namespace apfree
