#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mtq/engram.hpp"

namespace mtq::cli {

/// Numerical-invariant violation (norm drift past tolerance); run_cli maps
/// it to exit code 3, keeping it distinct from configuration errors.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Global run parameters. Each field is one config-file key of the same
/// name and one command-line flag; flags win over the file.
struct RunConfig {
  int pf = 13;
  int rows = 1;
  int seam_shift = 3;
  double epsilon = kDefaultBias;
  double delta = kDefaultTunneling;
  double coupling = kDefaultCoupling;
  double tau_bare = 1e-13;
  double protection_factor = 1.0;
  double dyn_timescale = 1e-4;
  int num_flies = 55;
  double p_avoid_trained = 0.95;
  int max_domain_size = kDefaultMaxDomainSize;
  std::uint64_t seed = 0;
  std::string output;  // report path; empty writes to stdout
  std::string format;  // "json" or "csv"; empty picks the subcommand default
};

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 2 configuration error, 3 numerical-invariant violation,
/// 1 unexpected failure.
int run_cli(int argc, const char* const* argv);

}  // namespace mtq::cli
