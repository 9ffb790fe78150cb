// Golden CLI cases: loading the case list and running the CLI binary.
#pragma once

#include <string>
#include <vector>

namespace golden {

// One line of cases.txt: `name|exit code|arg|arg|...`. An argument starting
// with `@/` names a file in the golden directory.
struct Case {
  std::string name;
  int exit_code = 0;
  std::vector<std::string> args;
};

std::vector<Case> load_cases(const std::string& dir);

struct Output {
  int exit_code = -1;
  std::string text;  // stdout followed by stderr
};

Output run(const std::string& exe, const std::vector<std::string>& args);

// Global flags go before the subcommand.
std::vector<std::string> with_threads(const std::vector<std::string>& args, unsigned threads);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct Verdict {
  bool ok = true;
  std::string message;
};

// Runs a case serially twice and with four threads; all three outputs must
// be identical, carry the expected exit code and match the stored file.
Verdict check_case(const std::string& exe, const std::string& dir, const Case& c);

}  // namespace golden
