// analyze: run the corpus pipeline described by a config file.
//
//   analyze --config corpus.cfg [--out DIR] [--only profile,fits] [--basis types|tokens]
//           [--threshold N]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lexstat/config.hpp"
#include "lexstat/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Corpus statistics, length distributions and linguistic-law fits"};
  app.set_version_flag("--version", std::string("analyze ") + LEXSTAT_VERSION);

  std::string config_path;
  std::string out_dir;
  std::string only;
  std::string basis;
  long long threshold = 0;
  app.add_option("--config", config_path, "Run configuration file")->required();
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--only", only, "Comma-separated stages: profile,distributions,fits,topk");
  app.add_option("--basis", basis, "Length distribution basis")->check(CLI::IsMember({"types", "tokens"}));
  app.add_option("--threshold", threshold, "Frequency threshold for concentration indices")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lexstat::exit_code::usage;
  }

  lexstat::RunConfig cfg;
  try {
    cfg = lexstat::load_run_config(config_path);
  } catch (const lexstat::IoError& e) {
    std::cerr << "analyze: stage 'config': " << e.what() << '\n';
    return lexstat::exit_code::missing_input;
  } catch (const lexstat::Error& e) {
    std::cerr << "analyze: stage 'config': " << e.what() << '\n';
    return lexstat::exit_code::malformed_input;
  }

  try {
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!only.empty()) cfg.stages = lexstat::parse_stages(only);
    if (!basis.empty()) cfg.basis = lexstat::parse_basis(basis);
    if (threshold > 0) cfg.profile.threshold = threshold;
  } catch (const lexstat::Error& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return lexstat::exit_code::usage;
  }

  try {
    const auto bundle = lexstat::run_analysis(cfg);
    for (const auto& n : bundle.notices) std::cerr << "notice: " << n << '\n';
    lexstat::write_bundle(bundle, cfg.output_dir);
    std::cerr << "analyze: wrote " << bundle.files.size() << " files to " << cfg.output_dir.string()
              << '\n';
  } catch (const lexstat::StageError& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return e.exit_code();
  }
  return lexstat::exit_code::ok;
}
