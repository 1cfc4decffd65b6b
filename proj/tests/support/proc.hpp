#pragma once

// Tiny subprocess runner for CLI tests: capture combined stdout and the exit
// status of a shell command.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace testproc {

struct ProcResult {
  int status = -1;   // exit status, or -1 if the child did not exit normally
  std::string out;   // captured stdout
};

inline ProcResult run_cmd(const std::string& cmd) {
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed: " + cmd);
  ProcResult r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = ::pclose(p);
  if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  return r;
}

}  // namespace testproc
