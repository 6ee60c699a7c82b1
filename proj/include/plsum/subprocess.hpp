#pragma once

#include <string>

namespace plsum {

struct SubprocessResult {
  int exit_code = -1;  // negative signal number when the child was killed
  std::string stdout_data;
  std::string stderr_data;
  long max_rss_kb = 0;  // child's peak resident set size
};

// Runs `command` through /bin/sh -c, feeding stdin_data to the child and
// capturing stdout and stderr completely. stdin writing and stderr draining
// run on their own threads, so a child that interleaves reads and writes in
// any order cannot deadlock the pipes.
SubprocessResult run_subprocess_lines(const std::string& command, const std::string& stdin_data);

}  // namespace plsum
