#pragma once

// Line-oriented read-eval-print loop. Input is collected until it parses;
// while a statement is still open the prompt shows the line number.

#include "latpoly/shell/interpreter.hpp"

#include <istream>
#include <ostream>

namespace latpoly::shell {

// Returns the number of chunks that failed.
inline int run_repl(Interpreter& interp, std::istream& in, std::ostream& out, std::ostream& err,
                    bool show_prompts = true) {
  int failures = 0;
  std::string buffer;
  int buffered = 0;
  auto prompt = [&] {
    if (!show_prompts) return;
    if (buffered == 0) out << "polytope > ";
    else out << "polytope (" << buffered + 1 << ")> ";
    out.flush();
  };
  prompt();
  for (std::string line; std::getline(in, line);) {
    buffer += line + "\n";
    ++buffered;
    Program prog;
    try {
      prog = parse(buffer);
    } catch (const ParseError& e) {
      if (e.incomplete()) {
        prompt();
        continue;
      }
      err << "syntax error: " << e.what() << '\n';
      ++failures;
      buffer.clear();
      buffered = 0;
      prompt();
      continue;
    }
    buffer.clear();
    buffered = 0;
    try {
      interp.run(prog);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      ++failures;
    }
    prompt();
  }
  if (!buffer.empty()) {
    err << "error: input ended inside an unfinished statement\n";
    ++failures;
  }
  if (show_prompts) out << '\n';
  return failures;
}

}  // namespace latpoly::shell
