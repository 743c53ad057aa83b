#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symslocc {

/// Subcommands: classify, equiv, symmetrize, apply, random, fuzz.
/// `args` excludes the program name. Exit codes: 0 success / equivalent /
/// in-class, 1 inequivalent / not-in-class / undecided / fuzz failure,
/// 2 usage, parse or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symslocc
