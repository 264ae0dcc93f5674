#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "roadaudit/pipeline.hpp"

namespace {

int run_command(const std::string& manifest_path, const std::string& output_path,
                const std::string& debug_dir, int jobs, bool validate_only) {
  const auto problems = roadaudit::validate_manifest(manifest_path);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "manifest: " << p << "\n";
    return 1;
  }
  if (validate_only) {
    std::cout << "manifest ok\n";
    return 0;
  }

  try {
    const roadaudit::SceneManifest manifest =
        roadaudit::parse_manifest(manifest_path);
    roadaudit::RunOptions options;
    options.output_path = output_path;
    options.debug_dir = debug_dir;
    options.jobs = jobs;
    const roadaudit::RunSummary summary =
        roadaudit::run_scene(manifest, options);
    std::cout << summary.to_text();
    std::cout << "report written to " << output_path << "\n";
    return 0;
  } catch (const roadaudit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == roadaudit::Errc::manifest_invalid ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int validate_command(const std::string& manifest_path) {
  const auto problems = roadaudit::validate_manifest(manifest_path);
  for (const auto& p : problems) std::cout << p << "\n";
  if (problems.empty()) {
    std::cout << "manifest ok\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Road maintenance inspection post-processing pipeline"};
  app.require_subcommand(1);

  std::string manifest_path, output_path = "report.geojson", debug_dir;
  int jobs = 1;
  bool validate_only = false;

  CLI::App* run = app.add_subcommand(
      "run", "Analyze a scene and write a GeoJSON damage map");
  run->add_option("--manifest", manifest_path, "Scene manifest JSON")
      ->required();
  run->add_option("--output", output_path, "Output GeoJSON path");
  run->add_option("--debug-dir", debug_dir,
                  "Directory for per-frame intermediate masks");
  run->add_option("--jobs", jobs, "Parallel frame workers")
      ->check(CLI::PositiveNumber);
  run->add_flag("--validate-only", validate_only,
                "Validate the manifest and exit");

  CLI::App* validate =
      app.add_subcommand("validate", "Check a scene manifest and its files");
  validate->add_option("--manifest", manifest_path, "Scene manifest JSON")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return run_command(manifest_path, output_path, debug_dir, jobs, validate_only);
  return validate_command(manifest_path);
}
