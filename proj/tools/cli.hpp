#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unihecke::cli {

// Exit status: 0 success or isomorphic, 1 mismatch or failed validation, 2 usage error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace unihecke::cli
