#pragma once

// Independent reference implementations used by the tests and the
// acceptance suite. Nothing here calls into the code under test except for
// plain data types.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// ∫₀^∞ f(t) dt by adaptive Gauss-Kronrod on a semi-infinite range (GSL qagiu).
double integrate_0_inf(const std::function<double(double)>& f, double rel_tol = 1e-12);

// Γ(x) from GSL's special-function library.
double gsl_gamma(double x);

// Γ(x) = ∫₀^∞ t^(x-1) e^(-t) dt by quadrature.
double gamma_by_quadrature(double x);

std::filesystem::path fixture_dir();
std::filesystem::path data_dir();
std::filesystem::path analyze_path();

std::string slurp(const std::filesystem::path& p);
// Tab-separated rows of a file, header line skipped.
std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& p);

struct TruthToken {
  std::string surface;
  std::string folded;
  int letters = 0;
  int sentence = 0;
};

std::vector<TruthToken> fixture_tokens();
std::map<std::string, std::int64_t> fixture_lemma_counts();

// Brute-force recount of every profile field from the truth files.
struct ProfileRecount {
  std::int64_t N = 0, F = 0, V = 0, V1 = 0, N_t = 0, V_t = 0, sentences = 0, letters = 0;
  double variety = 0, density = 0, excl_vocab = 0, excl_text = 0, conc_text = 0, conc_vocab = 0;
  double mean_word = 0, mean_sentence = 0;
};

ProfileRecount recount_profile(const std::vector<TruthToken>& tokens,
                               const std::map<std::string, std::int64_t>& lemma_counts,
                               std::int64_t threshold);

// A random lowercase word over the given alphabet, 1..max_len codepoints.
std::u32string random_word(std::mt19937_64& rng, const std::u32string& alphabet, int max_len);
std::string utf8(const std::u32string& s);

// Every file in a directory, name -> content.
std::map<std::string, std::string> read_dir(const std::filesystem::path& dir);

// Runs a shell command, returns its exit status.
int run(const std::string& command);

}  // namespace oracle
