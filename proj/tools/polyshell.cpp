// polyshell: interactive shell and script runner for polytope computations.

#include "latpoly/shell/repl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace latpoly::shell;

static int run_source(Interpreter& interp, const std::string& src, const std::string& origin) {
  try {
    interp.run(src);
  } catch (const ParseError& e) {
    std::cerr << origin << ": syntax error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << origin << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int main(int argc, char** argv) {
  CLI::App app{"Shell for exact polytope computations"};
  std::string script;
  std::vector<std::string> evals;
  bool trace = false;
  bool no_prompt = false;
  app.add_option("-s,--script", script, "Run a script file ('-' reads stdin)");
  app.add_option("-e,--eval", evals, "Run a snippet (repeatable)");
  app.add_flag("--trace-rules", trace, "Print each rule as it runs");
  app.add_flag("--no-prompt", no_prompt, "Interactive mode without prompts");
  CLI11_PARSE(app, argc, argv);

  Interpreter interp(std::cout);
  interp.set_trace(trace);

  if (!script.empty() || !evals.empty()) {
    for (const auto& e : evals)
      if (int rc = run_source(interp, e, "--eval")) return rc;
    if (!script.empty()) {
      std::stringstream buf;
      if (script == "-") {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream f(script);
        if (!f) {
          std::cerr << "cannot read " << script << '\n';
          return 1;
        }
        buf << f.rdbuf();
      }
      if (int rc = run_source(interp, buf.str(), script)) return rc;
    }
    return 0;
  }

  bool prompts = !no_prompt && isatty(STDIN_FILENO);
  return run_repl(interp, std::cin, std::cout, std::cerr, prompts) == 0 ? 0 : 1;
}
