#pragma once

// Small helper for tests that drive the CLI binary.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace testutil {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs `command` through the shell, capturing stdout and stderr separately.
inline RunResult run(const std::string& command) {
  RunResult res;
  std::string err_path = "/tmp/specc_test_err_" + std::to_string(getpid());
  std::string full = command + " 2>" + err_path;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream err(err_path);
  std::ostringstream os;
  os << err.rdbuf();
  res.err = os.str();
  std::remove(err_path.c_str());
  return res;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

inline std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace testutil
