#pragma once

#include "landscape/io.hpp"

#include <string>
#include <vector>

namespace landscape::cli {

using io::Json;

/// Command names accepted by execute(). Volume and bounds commands are
/// spelled "volume <kind>" and "bounds <name>".
std::vector<std::string> command_names();

/// Runs one command from a flat config object and returns its record. The
/// record's config holds every setting actually used, defaults included,
/// so executing it again reproduces the outputs.
///
/// Throws Config for unknown keys or ill-typed values, and the library's
/// own errors from the underlying operation.
io::RunRecord execute(const std::string& command, const Json& config);

/// Reruns a record and reports whether tables and scalars match exactly.
bool replay_matches(const io::RunRecord& record);

/// Human-readable summary of a record's scalars (one "name = value" per line).
std::string summarize(const io::RunRecord& record);

/// Process exit status for an exception thrown by execute().
int exit_code_for(const std::exception& e);

}  // namespace landscape::cli
