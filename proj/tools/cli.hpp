#pragma once

#include <ostream>

namespace rdest::cli {

/// Runs the rdest command line. Exit codes: 0 success, 1 usage/data errors,
/// 2 a successfully computed but infinite estimate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdest::cli
