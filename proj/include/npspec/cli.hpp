#pragma once

#include "npspec/conformal.hpp"

#include <string>

namespace npspec {

/// Entry point for the command-line tool. Exit codes: 0 success,
/// 2 validation error, 3 verification-suite failure, 4 numerical
/// non-convergence.
int run_cli(int argc, const char* const* argv);

/// "1", "-2.5", "0.3i", "1+2i", "1-2i", "i".
cplx parse_complex(const std::string& s);

/// Compact preset descriptor, e.g. "disk:c=1,R=1.21" or "joukowski:q=0.5,R=1.2".
ExteriorMap parse_preset_spec(const std::string& spec, int order);

/// Default truncation order: NPSPEC_DEFAULT_ORDER from the environment, else 256.
int default_order();

/// Table order large enough that the expansion terms for the given exterior
/// radius decay below the reporting threshold.
int oracle_table_order(double radius, int n_max);

} // namespace npspec
