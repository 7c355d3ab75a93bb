// Command-line entry point: gen | curvature | defect | verify | spectrum.
#ifndef CURVGRAPH_CLI_HPP
#define CURVGRAPH_CLI_HPP

#include <iosfwd>

namespace curvgraph {

inline constexpr const char* kToolVersion = "0.1.0";

/// Results go to `out`, diagnostics to `err`. Returns 0 on success, 1 when a
/// verification fails, 2 on bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvgraph

#endif  // CURVGRAPH_CLI_HPP
