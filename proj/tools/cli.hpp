#pragma once

namespace pluriharm::cli {

/// Runs one subcommand: omega-disc, omega-grid, cross-envelope, extend, hartogs,
/// riemann-map or verify. Returns 0 on success, 1 for configuration and domain errors,
/// 2 when a numerical process does not converge (or a verify criterion fails).
int run(int argc, char** argv);

}  // namespace pluriharm::cli
