// Command-line driver for the experiment campaigns.
#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "leibenson/errors.hpp"
#include "leibenson/harness/campaign.hpp"
#include "leibenson/harness/config.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kAssertionFailure = 1;
constexpr int kConfigError = 2;

struct Arguments {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace leibenson;
  CLI::App app{"Doubly nonlinear reaction-diffusion experiments on model manifolds"};
  app.require_subcommand(1);
  Arguments args;
  for (const char* name : {"solve", "decay-fit", "fujita-scan", "ladder", "verify-inequality"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config, "YAML configuration file")->required();
    sub->add_option("--out", args.out, "output directory")->required();
    sub->add_option("--override", args.overrides, "single key patch, key=value (dotted keys for nested tables)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  const auto campaign = harness::parse_campaign(name);

  harness::ExperimentConfig config;
  try {
    config = harness::load_config(args.config, *campaign, args.overrides);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }

  try {
    const auto result = harness::run_campaign(config, args.out);
    for (const auto& a : result.assertions) {
      std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << ": " << a.detail << "\n";
    }
    std::cout << "wrote " << result.files.size() << " files to " << args.out << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertionFailure;
  }
}
