#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "galsum/error.hpp"

using namespace galsum;
using namespace galsum::cli;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Flat key=value file; every key names a long option of the chosen
// subcommand or a global option. Flags on the command line win.
void merge_config(std::vector<std::string>& args, CLI::App& app, const std::vector<Command>& cmds) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");

  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  for (int ln = 1; std::getline(in, line); ++ln) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(ln) + ": expected key=value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  CLI::App* sub = nullptr;
  for (auto& a : args)
    for (auto& c : cmds)
      if (!sub && a == c.app->get_name()) sub = c.app;
  for (auto& [k, v] : kv)
    if (k == "command" && !sub) {
      for (auto& c : cmds)
        if (c.app->get_name() == v) sub = c.app;
      if (!sub) throw ValidationError("config: unknown command '" + v + "'");
      args.insert(args.begin(), v);
    }

  for (auto& [k, v] : kv) {
    if (k == "command" || k == "config") continue;
    const std::string flag = "--" + k;
    if (given(args, flag)) continue;
    const CLI::Option* opt = sub ? sub->get_option_no_throw(flag) : nullptr;
    if (!opt) opt = app.get_option_no_throw(flag);
    if (!opt) throw ValidationError("config: unknown key '" + k + "'");
    if (opt->get_type_size() == 0) {
      if (v == "true" || v == "1" || v == "yes") args.push_back(flag);
      else if (!(v == "false" || v == "0" || v == "no")) throw ValidationError("config: '" + k + "' expects true or false");
    } else {
      args.push_back(flag);
      args.push_back(v);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gal-type GCD sums, extremal sets and resonance experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "csv, json or pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));
  app.add_option("--out", g.out, "write the artifact to this path");
  app.add_option("--tol", g.tol, "tolerance override");
  app.add_option("--seed", g.seed, "seed for randomized sweeps");
  app.add_option("--threads", g.threads, "worker threads for sweeps (0 = hardware)");
  app.add_option("--config", g.config, "flat key=value file; command-line flags take precedence");
  const auto cmds = register_commands(app);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    merge_config(args, app, cmds);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    for (auto& c : cmds) {
      if (!c.app->parsed()) continue;
      const auto doc = c.run(g);
      std::ostringstream os;
      render(doc, parse_format(g.format), os);
      if (g.out.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + g.out + "'");
        f << os.str();
      }
      return 0;
    }
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << " (estimate " << e.estimate() << ", bound " << e.bound() << ")\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (residual " << e.residual() << ")\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedAlgorithm& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: malformed number (" << e.what() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
