#pragma once

#include <iostream>
#include <string>

namespace plsum {

// Line-oriented diagnostics on stderr. Results go to files or stdout,
// never here.
inline void log_info(const std::string& msg) { std::cerr << "[info] " << msg << "\n"; }
inline void log_warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }
inline void log_error(const std::string& msg) { std::cerr << "[error] " << msg << "\n"; }

}  // namespace plsum
