// graphmass <mass|verify|penrose|decay> --config <path> --out <dir>
//           [--degree K] [--fd-step H] [--radii r1,r2,...]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "graphmass/commands.hpp"
#include "graphmass/errors.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw graphmass::ConfigError("config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw graphmass::ConfigError("config", "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADM mass of graphical asymptotically flat manifolds"};
  std::string command, config_path, out_dir;
  std::optional<int> degree;
  std::optional<double> fd_step;
  std::vector<double> radii;
  app.add_option("command", command, "mass, verify, penrose or decay")
      ->required()
      ->check(CLI::IsMember({"mass", "verify", "penrose", "decay"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--degree", degree, "sphere quadrature degree");
  app.add_option("--fd-step", fd_step, "finite-difference step");
  app.add_option("--radii", radii, "comma-separated radii")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return graphmass::kExitConfig;
  }

  try {
    nlohmann::json j = read_json(config_path);
    if (!j.is_object()) throw graphmass::ConfigError("config", "expected a JSON object");
    if (degree) j["quadrature"]["degree"] = *degree;
    if (fd_step) j["fd_step"] = *fd_step;
    if (!radii.empty()) j[command == "decay" ? "decay_radii" : "radii"] = radii;

    const graphmass::RunConfig config = graphmass::parse_config(j);
    const graphmass::CommandOutput output = graphmass::run_command(command, config);
    graphmass::write_outputs(output, out_dir);
    std::cout << (std::filesystem::path(out_dir) / (output.report_name + ".json")).string() << "\n";
    if (output.exit_code == graphmass::kExitNonConvergence)
      std::cerr << "warning: numerical non-convergence, see report flags\n";
    return output.exit_code;
  } catch (const graphmass::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return graphmass::kExitConfig;
  } catch (const graphmass::ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return graphmass::kExitNonConvergence;
  } catch (const graphmass::Error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return graphmass::kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return graphmass::kExitConfig;
  }
}
