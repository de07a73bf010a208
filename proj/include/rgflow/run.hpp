#pragma once

#include <iosfwd>

#include "rgflow/config.hpp"
#include "rgflow/error.hpp"

namespace rgflow {

/// 0 success, 1 usage or configuration error, 2 hypothesis violation, 3 numerical failure.
int exit_code(ErrorKind kind) noexcept;

/// Runs the configured scenario, writing manifest.json, schema.json and the
/// scenario artifacts into cfg.out. Errors are reported in the manifest and
/// mapped to an exit code; nothing is thrown.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace rgflow
