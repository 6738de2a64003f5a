#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "slantmap/errors.hpp"
#include "slantmap/gallery.hpp"

using namespace slantmap;

namespace {

constexpr int kExitInputError = 2;

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::InvalidInput || k == ErrorKind::IoFailure || k == ErrorKind::FixtureMissing ||
         k == ErrorKind::DimensionMismatch || k == ErrorKind::SingularMetric ||
         k == ErrorKind::PreconditionUnverified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for bi-slant Riemannian maps into Kenmotsu manifolds"};
  RunConfig config;
  std::string format = "text";
  app.add_option("--cmd", config.command, "Command")->check(CLI::IsMember(known_commands()));
  app.add_option("--input", config.inputs, "Descriptor files");
  app.add_option("--seed", config.seed, "Random seed");
  auto* tol = app.add_option("--tol", config.tol, "Inequality and identity tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--n", config.n, "Sweep size");
  app.add_option("--fixture", config.fixture, "Built-in fixture id");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }
  config.tol_set = tol->count() > 0;
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (const char* env = std::getenv("SLANTMAP_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "SLANTMAP_SEED is not an unsigned integer: " << env << "\n";
      return kExitInputError;
    }
  }

  try {
    const RunReport report = run_command(config);
    emit_report(report, config.format, std::cout);
    return report.exit_code();
  } catch (const GeometryError& e) {
    std::cerr << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInputError : 1;
  }
}
