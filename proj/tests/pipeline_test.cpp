#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "lexstat/pipeline.hpp"
#include "lexstat/report.hpp"
#include "oracles.hpp"

using namespace lexstat;

namespace {

RunConfig fixture_config(const std::string& extra = "") {
  std::istringstream in(oracle::slurp(oracle::fixture_dir() / "fixture.cfg") + extra);
  return parse_run_config(in, "fixture.cfg", oracle::fixture_dir());
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lexstat_pipeline_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

int stage_exit_code(const RunConfig& cfg, std::string* message = nullptr) {
  try {
    run_analysis(cfg);
  } catch (const StageError& e) {
    if (message) *message = e.what();
    return e.exit_code();
  }
  return 0;
}

}  // namespace

TEST(Pipeline, FixtureBundleHasEveryOutput) {
  const auto bundle = run_analysis(fixture_config());
  for (const char* name : {"profile.tsv", "profile.json", "lengths_letters.dat", "lengths_phonemes.dat",
                           "lengths_syllables.dat", "rank_freq.dat", "coverage.dat", "mean_syllable.dat",
                           "fits.tsv", "fits.json", "topk.tsv"}) {
    EXPECT_EQ(bundle.files.count(name), 1u) << name;
  }
  const auto V = static_cast<std::size_t>(oracle::fixture_lemma_counts().size());
  EXPECT_EQ(lines(bundle.files.at("coverage.dat")), V);
  EXPECT_EQ(lines(bundle.files.at("rank_freq.dat")), V);
  const auto fits = Json::parse(bundle.files.at("fits.json"));
  EXPECT_EQ(fits.size(), fitlab::all_models().size());
}

TEST(Pipeline, TopRowIsTheMostFrequentLemma) {
  const auto bundle = run_analysis(fixture_config());
  const auto truth = oracle::fixture_lemma_counts();
  std::string best;
  std::int64_t best_count = -1;
  for (const auto& [lemma, c] : truth) {
    if (c > best_count) {
      best = lemma;
      best_count = c;
    }
  }
  std::istringstream in(bundle.files.at("topk.tsv"));
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(first, "1\t" + best + "\t" + std::to_string(best_count) + "\t" +
                       format_percent(100.0 * static_cast<double>(best_count) / 1000.0));
  EXPECT_EQ(lines(bundle.files.at("topk.tsv")), 21u);
}

TEST(Pipeline, ProfileReportMatchesRecount) {
  const auto bundle = run_analysis(fixture_config());
  const auto j = Json::parse(bundle.files.at("profile.json"));
  const auto r = oracle::recount_profile(oracle::fixture_tokens(), oracle::fixture_lemma_counts(), 10);
  EXPECT_EQ(j["N"], r.N);
  EXPECT_EQ(j["V"], r.V);
  EXPECT_EQ(j["hapax_V1"], r.V1);
  EXPECT_EQ(j["N_at_threshold"], r.N_t);
  EXPECT_EQ(j["mean_word_len_letters"].get<double>(), std::stod(format_report_number(r.mean_word)));
}

TEST(Pipeline, TextOnlyDegradesGracefully) {
  const auto dir = scratch("degraded");
  std::filesystem::copy_file(oracle::fixture_dir() / "corpus.txt", dir / "corpus.txt");
  std::istringstream in("[input]\ntext = corpus.txt\n[fits]\nzipf_intervals = 0-20,20-60,60-end\n"
                        "coverage_intervals = 0-20,20-60,60-end\n");
  const auto bundle = run_analysis(parse_run_config(in, "min.cfg", dir));
  const auto profile = bundle.files.at("profile.tsv");
  EXPECT_NE(profile.find("V\tNA\n"), std::string::npos);
  EXPECT_NE(profile.find("hapax_V1\tNA\n"), std::string::npos);
  EXPECT_NE(profile.find("N\t1000\n"), std::string::npos);
  bool lemma_notice = false, forms_notice = false;
  for (const auto& n : bundle.notices) {
    lemma_notice = lemma_notice || n.find("lemma statistics unavailable") != std::string::npos;
    forms_notice = forms_notice || n.find("word-forms") != std::string::npos;
  }
  EXPECT_TRUE(lemma_notice);
  EXPECT_TRUE(forms_notice);
  EXPECT_EQ(bundle.files.count("rank_freq.dat"), 1u);
}

TEST(Pipeline, MissingOptionalResourceIsANotice) {
  auto cfg = fixture_config();
  cfg.lemma_map = oracle::fixture_dir() / "does_not_exist.tsv";
  Bundle bundle;
  ASSERT_NO_THROW(bundle = run_analysis(cfg));
  EXPECT_NE(bundle.files.at("profile.tsv").find("V\tNA\n"), std::string::npos);
}

TEST(Pipeline, ModelSelection) {
  const auto bundle = run_analysis(fixture_config("models = zipf_mandelbrot\n"));
  const auto fits = Json::parse(bundle.files.at("fits.json"));
  ASSERT_EQ(fits.size(), 1u);
  EXPECT_EQ(fits[0]["model"], "zipf_mandelbrot");
  EXPECT_EQ(bundle.files.count("fit_zipf_mandelbrot.dat"), 1u);
  EXPECT_EQ(bundle.files.count("fit_phoneme_gamma.dat"), 0u);
}

TEST(Pipeline, StageFilter) {
  auto cfg = fixture_config();
  cfg.stages = {"profile"};
  const auto bundle = run_analysis(cfg);
  EXPECT_EQ(bundle.files.size(), 2u);
  EXPECT_EQ(bundle.files.count("profile.json"), 1u);
}

TEST(Pipeline, NonConvergenceIsReportedNotThrown) {
  const auto bundle = run_analysis(fixture_config("max_iterations = 1\n"));
  const auto fits = Json::parse(bundle.files.at("fits.json"));
  bool any_unconverged = false;
  for (const auto& f : fits) {
    if (f.contains("converged") && !f["converged"].get<bool>()) any_unconverged = true;
  }
  EXPECT_TRUE(any_unconverged);
}

TEST(Pipeline, FailuresNameStageAndExitCode) {
  auto missing = fixture_config();
  missing.text = "/nonexistent/corpus.txt";
  EXPECT_EQ(stage_exit_code(missing), exit_code::missing_input);

  const auto dir = scratch("malformed");
  {
    std::ofstream(dir / "bad.tsv") << "# header\nform\tlemma\nbroken-row\n";
  }
  auto malformed = fixture_config();
  malformed.lemma_map = dir / "bad.tsv";
  std::string message;
  EXPECT_EQ(stage_exit_code(malformed, &message), exit_code::malformed_input);
  EXPECT_NE(message.find("resources"), std::string::npos) << message;
  EXPECT_NE(message.find("bad.tsv:3"), std::string::npos) << message;

  {
    std::ofstream(dir / "bad.txt", std::ios::binary) << "ok \xFF\xFE";
  }
  auto undecodable = fixture_config();
  undecodable.text = dir / "bad.txt";
  EXPECT_EQ(stage_exit_code(undecodable, &message), exit_code::malformed_input);
  EXPECT_NE(message.find("byte offset 3"), std::string::npos) << message;

  {
    std::ofstream(dir / "empty.txt") << " ... — ";
  }
  auto empty = fixture_config();
  empty.text = dir / "empty.txt";
  EXPECT_EQ(stage_exit_code(empty), exit_code::stage_failure);
}

TEST(Pipeline, UnwritableOutputIsAnOutputFailure) {
  const auto bundle = run_analysis(fixture_config());
  const auto dir = scratch("blocked");
  {
    std::ofstream(dir / "file") << "x";
  }
  try {
    write_bundle(bundle, dir / "file" / "sub");
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.exit_code(), exit_code::output_failure);
    EXPECT_EQ(e.stage(), "output");
  }
}

TEST(Pipeline, ByteIdenticalAcrossRuns) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  write_bundle(run_analysis(fixture_config()), a);
  write_bundle(run_analysis(fixture_config()), b);
  const auto fa = oracle::read_dir(a), fb = oracle::read_dir(b);
  EXPECT_FALSE(fa.empty());
  EXPECT_EQ(fa, fb);
}
