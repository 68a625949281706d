#include "lexstat/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>

#include "lexstat/distributions.hpp"
#include "lexstat/indices.hpp"
#include "lexstat/lexicon.hpp"
#include "lexstat/report.hpp"
#include "lexstat/resources.hpp"
#include "lexstat/text_ingest.hpp"

namespace lexstat {

namespace {

// Runs `f`, translating library errors into a StageError for `stage`.
template <typename F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const ResourceError& e) {
    throw StageError(name, exit_code::malformed_input, e.what());
  } catch (const DecodeError& e) {
    throw StageError(name, exit_code::malformed_input, e.what());
  } catch (const IoError& e) {
    throw StageError(name, exit_code::missing_input, e.what());
  } catch (const std::exception& e) {
    throw StageError(name, exit_code::stage_failure, e.what());
  }
}

template <typename T, typename Load>
std::optional<T> optional_resource(const std::optional<std::filesystem::path>& path, const char* what,
                                   Load&& load, Bundle& bundle) {
  if (!path) {
    bundle.notices.push_back(std::string("no ") + what + " configured");
    return std::nullopt;
  }
  if (!std::filesystem::exists(*path)) {
    bundle.notices.push_back(std::string(what) + " " + path->string() + " not found; skipped");
    return std::nullopt;
  }
  return stage("resources", [&] { return load(*path); });
}

std::vector<fitlab::DataPoint> to_data(const std::vector<PlotPoint>& pts) {
  std::vector<fitlab::DataPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.x, p.y, 1.0});
  return out;
}

struct Datasets {
  std::vector<PlotPoint> phonemes, syllables, mean_syllable, rank_freq;
  RankFrequencyList rf;
  CoverageCurve coverage;
};

FitEntry run_lm(fitlab::ModelId id, const std::string& dataset, const std::vector<PlotPoint>& pts,
                const RunConfig& cfg, std::map<std::string, std::string>& files) {
  FitEntry entry{std::string(fitlab::to_string(id)), dataset, pts.size(), std::nullopt, {}, {}, {}};
  try {
    const auto data = to_data(pts);
    const auto& model = fitlab::Model::get(id);
    auto init = fitlab::default_initial_params(id, data);
    if (const auto it = cfg.init_overrides.find(id); it != cfg.init_overrides.end()) {
      for (const auto& [name, value] : it->second) init[*model.param_index(name)] = value;
    }
    auto opts = cfg.fit_options;
    if (id == fitlab::ModelId::ZipfMandelbrot) opts.space = cfg.zipf_mandelbrot_space;
    entry.lm = fitlab::lm_fit(model, data, init, opts);

    const auto params = entry.lm->values();
    std::vector<PlotPoint> curve;
    for (const auto& p : pts) {
      if (model.x_in_domain(params, p.x)) curve.push_back({p.x, model.eval_raw(params, p.x)});
    }
    if (!curve.empty()) files["fit_" + entry.model + ".dat"] = plot_data(curve, std::nullopt);
  } catch (const std::exception& e) {
    entry.errors.emplace_back("fit", e.what());
  }
  return entry;
}

}  // namespace

Bundle run_analysis(const RunConfig& cfg) {
  Bundle bundle;

  if (!std::filesystem::exists(cfg.text)) {
    throw StageError("input", exit_code::missing_input, "text file " + cfg.text.string() + " not found");
  }
  const std::string raw = stage("input", [&] { return read_file(cfg.text); });
  const IngestedText text = stage("ingest", [&] { return ingest(raw, cfg.tokenizer); });
  if (text.tokens.empty()) throw StageError("ingest", exit_code::stage_failure, "text contains no tokens");

  const auto lemma_map = optional_resource<LemmaMap>(cfg.lemma_map, "lemma map",
                                                    [](const auto& p) { return load_lemma_map(p); }, bundle);
  const auto merge_rules = optional_resource<std::vector<MergeRule>>(
      cfg.merge_rules, "merge rules", [](const auto& p) { return load_merge_rules(p); }, bundle);
  const auto overrides = optional_resource<std::vector<LemmaOverride>>(
      cfg.overrides, "overrides", [](const auto& p) { return load_overrides(p); }, bundle);
  std::optional<G2PRules> g2p = optional_resource<G2PRules>(
      cfg.g2p_rules, "G2P rules", [](const auto& p) { return load_g2p_rules(p); }, bundle);
  if (!g2p) {
    g2p = G2PRules::ukrainian();
    bundle.notices.push_back("using built-in Ukrainian G2P rules");
  }

  const FormLexicon forms = stage("lexicon", [&] {
    FormLexicon lex = build_form_spectrum(text.tokens);
    return merge_rules ? apply_merge_rules(lex, *merge_rules) : lex;
  });
  std::optional<LemmaLexicon> lemmas;
  if (lemma_map) {
    lemmas = stage("lexicon", [&] {
      return lemmatize(forms, *lemma_map, overrides.value_or(std::vector<LemmaOverride>{}));
    });
    if (lemmas->unmapped_tokens > 0) {
      bundle.notices.push_back(std::to_string(lemmas->unmapped_tokens) + " tokens (" +
                               std::to_string(lemmas->unmapped.size()) +
                               " forms) are not in the lemma map and are excluded from V");
    }
  } else {
    bundle.notices.push_back("lemma statistics unavailable without a lemma map");
    if (overrides) bundle.notices.push_back("overrides ignored without a lemma map");
  }

  const CorpusProfile profile = stage("profile", [&] {
    return corpus_profile(text.tokens, text.sentences, forms, lemmas ? &*lemmas : nullptr, cfg.profile);
  });

  bool items_are_forms = true;
  const auto header = [&](const char* x, const char* y) -> std::optional<PlotHeader> {
    if (!cfg.plot_header) return std::nullopt;
    return PlotHeader{x, y};
  };

  Datasets ds = stage("distributions", [&] {
    Datasets d;
    const auto letters = length_distribution(forms, LengthUnit::Letters, count_letters, cfg.basis);
    const auto phonemes = length_distribution(
        forms, LengthUnit::Phonemes, [&](std::string_view f) { return count_phonemes(f, *g2p); }, cfg.basis);
    const auto syllables = length_distribution(
        forms, LengthUnit::Syllables, [&](std::string_view f) { return count_syllables(f, cfg.vowels); },
        cfg.basis);
    const auto mean_syll = mean_syllable_series(forms, cfg.vowels);

    bundle.files["lengths_letters.dat"] = plot_data(to_plot(letters), header("letters", "fraction"));
    bundle.files["lengths_phonemes.dat"] = plot_data(to_plot(phonemes), header("phonemes", "fraction"));
    bundle.files["lengths_syllables.dat"] = plot_data(to_plot(syllables), header("syllables", "fraction"));
    d.phonemes = to_plot(phonemes);
    d.syllables = to_plot(syllables);

    if (mean_syll.empty()) {
      bundle.notices.push_back("no syllabic word-forms; mean_syllable.dat not written");
    } else {
      bundle.files["mean_syllable.dat"] = plot_data(to_plot(mean_syll), header("syllables", "mean_letters_per_syllable"));
    }
    for (const auto& p : mean_syll) {
      if (p.support >= cfg.min_support) {
        d.mean_syllable.push_back({static_cast<double>(p.syllables), p.mean_length});
      }
    }

    const CountMap* items = &forms.entries;
    items_are_forms = true;
    if (cfg.rank_items == RankItems::Lemmas) {
      if (lemmas && !lemmas->entries.empty()) {
        items = &lemmas->entries;
        items_are_forms = false;
      } else {
        bundle.notices.push_back("rank-frequency list built over word-forms (no lemma lexicon)");
      }
    }
    d.rf = rank_frequency(*items);
    d.coverage = coverage_curve(d.rf);
    d.rank_freq = to_plot(d.rf);
    bundle.files["rank_freq.dat"] = plot_data(d.rank_freq, header("rank", "frequency"));
    bundle.files["coverage.dat"] = plot_data(to_plot(d.coverage), header("rank", "coverage"));
    return d;
  });

  std::map<std::string, std::string> fit_files;
  std::vector<FitEntry> fits;
  for (const auto id : cfg.fits) {
    using fitlab::ModelId;
    switch (id) {
      case ModelId::PhonemeGamma:
        fits.push_back(run_lm(id, "lengths_phonemes.dat", ds.phonemes, cfg, fit_files));
        break;
      case ModelId::ShiftedMenzerath:
        fits.push_back(run_lm(id, "lengths_syllables.dat", ds.syllables, cfg, fit_files));
        break;
      case ModelId::MeanSyllablePower:
      case ModelId::MeanSyllableExp:
        fits.push_back(run_lm(id, "mean_syllable.dat", ds.mean_syllable, cfg, fit_files));
        break;
      case ModelId::ZipfMandelbrot:
        fits.push_back(run_lm(id, "rank_freq.dat", ds.rank_freq, cfg, fit_files));
        break;
      case ModelId::ZipfPower: {
        FitEntry e{"zipf_power", "rank_freq.dat", ds.rf.size(), std::nullopt, {}, {}, {}};
        std::vector<PlotPoint> curve;
        for (const auto& iv : cfg.zipf_intervals) {
          try {
            const auto seg = fitlab::segmented_loglog_fit(ds.rf, {iv});
            e.zipf.push_back(seg.front());
            for (const auto& row : ds.rf.rows) {
              if (row.rank >= seg.front().first_rank && row.rank <= seg.front().last_rank) {
                curve.push_back({static_cast<double>(row.rank),
                                 seg.front().A * std::pow(static_cast<double>(row.rank), -seg.front().z)});
              }
            }
          } catch (const std::exception& ex) {
            e.errors.emplace_back(iv.label(), ex.what());
          }
        }
        if (!curve.empty()) fit_files["fit_zipf_power.dat"] = plot_data(curve);
        fits.push_back(std::move(e));
        break;
      }
      case ModelId::LogCoverage: {
        FitEntry e{"log_coverage", "coverage.dat", ds.coverage.size(), std::nullopt, {}, {}, {}};
        std::vector<PlotPoint> curve;
        for (const auto& iv : cfg.coverage_intervals) {
          try {
            const auto seg = fitlab::fit_coverage(ds.coverage, {iv});
            e.coverage.push_back(seg.front());
            for (const auto& p : ds.coverage) {
              if (p.rank >= seg.front().first_rank && p.rank <= seg.front().last_rank) {
                curve.push_back({static_cast<double>(p.rank),
                                 seg.front().k * std::log(static_cast<double>(p.rank)) + seg.front().T0});
              }
            }
          } catch (const std::exception& ex) {
            e.errors.emplace_back(iv.label(), ex.what());
          }
        }
        if (!curve.empty()) fit_files["fit_log_coverage.dat"] = plot_data(curve);
        fits.push_back(std::move(e));
        break;
      }
    }
  }
  for (const auto& f : fits) {
    if (f.lm && !f.lm->converged) {
      bundle.notices.push_back(f.model + " did not converge (" +
                               std::string(fitlab::to_string(f.lm->termination)) + ")");
    }
    for (const auto& [scope, msg] : f.errors) bundle.notices.push_back(f.model + " [" + scope + "]: " + msg);
  }

  const auto top = stage("topk", [&] {
    std::size_t k = cfg.top_k;
    if (k > ds.rf.size()) {
      bundle.notices.push_back("top_k reduced to " + std::to_string(ds.rf.size()));
      k = ds.rf.size();
    }
    auto rows = top_k(ds.rf, k, profile.N);
    if (items_are_forms) {
      for (auto& r : rows) {
        if (const auto it = forms.display.find(r.item); it != forms.display.end()) r.item = it->second;
      }
    }
    return rows;
  });

  // Drop the files of unselected stages.
  std::map<std::string, std::string> files;
  const auto selected = [&](const char* s) { return cfg.stages.count(s) > 0; };
  if (selected("profile")) {
    files["profile.tsv"] = profile_tsv(profile);
    files["profile.json"] = profile_json(profile).dump(2) + "\n";
  }
  if (selected("distributions")) {
    for (auto& [name, content] : bundle.files) files[name] = std::move(content);
  }
  if (selected("fits")) {
    files["fits.tsv"] = fits_tsv(fits);
    files["fits.json"] = fits_json(fits).dump(2) + "\n";
    for (auto& [name, content] : fit_files) files[name] = std::move(content);
  }
  if (selected("topk")) files["topk.tsv"] = topk_tsv(top);
  bundle.files = std::move(files);
  return bundle;
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw StageError("output", exit_code::output_failure, "cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : bundle.files) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StageError("output", exit_code::output_failure, "cannot write " + path.string());
    out << content;
    if (!out.flush()) throw StageError("output", exit_code::output_failure, "failed writing " + path.string());
  }
}

}  // namespace lexstat
