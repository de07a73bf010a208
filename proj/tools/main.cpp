#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgflow/config.hpp"
#include "rgflow/error.hpp"
#include "rgflow/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Renormalization-group asymptotics for nonlinear diffusion with time-dependent coefficients"};
  std::string config_path;
  std::string scenario;
  std::string out;
  std::vector<std::string> overrides;
  bool print_config = false;
  app.add_option("--config", config_path, "flat JSON config file");
  app.add_option("--scenario", scenario, "validate-kernel | run-linear | run-rg | run-direct | compare | constants");
  app.add_option("--out", out, "output directory");
  app.add_option("--override", overrides, "key=value, repeatable; applied after the file")->take_all();
  app.add_flag("--print-config", print_config, "print the canonical config and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    rgflow::RunConfig cfg = config_path.empty() ? rgflow::RunConfig{} : rgflow::parse_config_file(config_path);
    for (const std::string& o : overrides) rgflow::apply_override(cfg, o);
    if (!scenario.empty()) cfg.scenario = scenario;
    if (!out.empty()) cfg.out = out;
    rgflow::validate(cfg);
    if (print_config) {
      std::cout << rgflow::canonical_text(cfg);
      return 0;
    }
    return rgflow::run(cfg, std::cerr);
  } catch (const rgflow::Error& e) {
    std::cerr << e.what() << '\n';
    return rgflow::exit_code(e.kind());
  }
}
