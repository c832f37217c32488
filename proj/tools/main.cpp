#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nmzi/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested Mach-Zehnder interferometer simulator"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir = ".";
  double duration_override = 0.0;
  double rate_override = 0.0;
  bool quiet = false;

  CLI::App* run_cmd =
      app.add_subcommand("run", "simulate a scenario and write its outputs");
  CLI::App* coeffs_cmd = app.add_subcommand(
      "coeffs", "write the sensitivity coefficient table for a scenario");
  CLI::App* curves_cmd = app.add_subcommand(
      "beamcurves", "write beam amplitude curves over the spectral grid");
  for (CLI::App* cmd : {run_cmd, coeffs_cmd, curves_cmd}) {
    cmd->add_option("file", file, "scenario file")->required();
    cmd->add_option("--out-dir", out_dir, "directory for emitted CSVs");
    cmd->add_option("--duration", duration_override,
                    "override the scenario duration");
    cmd->add_option("--rate", rate_override,
                    "override the scenario sample rate");
    cmd->add_flag("--quiet", quiet, "suppress the run report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  CLI::App* active = app.get_subcommands().front();

  try {
    nmzi::Scenario scenario = nmzi::parse_scenario(read_file(file));
    if (active->count("--duration") > 0) scenario.duration = duration_override;
    if (active->count("--rate") > 0) scenario.rate = rate_override;
    if (active == coeffs_cmd) scenario.outputs = {nmzi::OutputKind::Coeffs};
    if (active == curves_cmd) {
      scenario.outputs = {nmzi::OutputKind::Beamcurves};
    }
    nmzi::validate_scenario(scenario);

    const std::string stem = std::filesystem::path(file).stem().string();
    const nmzi::RunReport report =
        nmzi::run_scenario(scenario, out_dir, stem);
    if (!quiet) std::cout << nmzi::render_report(scenario, report);
    return 0;
  } catch (const nmzi::QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
