#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "isocap/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "isocap: isocapacitary well-posedness criteria, a-priori bounds and "
      "the weighted 1D Neumann oracle"};
  std::string config_path;
  std::string out_dir;
  std::string format;
  int threads = 0;
  app.add_option("--config", config_path, "JSON run configuration")
      ->required();
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--format", format, "json|csv|table (overrides config)");
  app.add_option("--threads", threads, "worker threads for sweeps");
  CLI11_PARSE(app, argc, argv);

  try {
    isocap::cli::RunConfig cfg = isocap::cli::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!format.empty()) cfg.format = format;
    if (threads > 0) cfg.threads = threads;
    return isocap::cli::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "configuration/precondition error: " << e.what() << "\n";
    return 2;
  }
}
