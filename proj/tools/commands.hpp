#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"

namespace galsum::cli {

struct Globals {
  std::string format = "pretty";
  std::string out;
  std::string config;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct Command {
  CLI::App* app;
  std::function<Json(const Globals&)> run;
};

std::vector<Command> register_commands(CLI::App& app);

// Helpers shared with main and the tests.
nt::IntegerSet parse_set(const std::string& spec);
std::vector<std::uint64_t> parse_range(const std::string& spec);

}  // namespace galsum::cli
