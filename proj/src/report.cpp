#include "lexstat/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lexstat/error.hpp"

namespace lexstat {

namespace {

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Rounded to 10 significant digits so that JSON output matches the TSV text.
Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(printf_double("%.10g", v));
}

template <typename T>
Json json_optional(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return json_number(*v);
  } else {
    return *v;
  }
}

template <typename T>
std::string tsv_optional(const std::optional<T>& v) {
  if (!v) return "NA";
  if constexpr (std::is_floating_point_v<T>) {
    return format_report_number(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

std::string format_plot_number(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  return printf_double("%.6g", v);
}

std::string format_report_number(double v) {
  if (!std::isfinite(v)) return "NA";
  return printf_double("%.10g", v);
}

std::string format_percent(double v) { return printf_double("%.4f", v); }

std::string plot_data(std::span<const PlotPoint> series, const std::optional<PlotHeader>& header) {
  if (series.empty()) throw ValidationError("plot data: empty series");
  std::string out;
  if (header) out += "# " + header->first + " " + header->second + "\n";
  for (const auto& p : series) {
    out += format_plot_number(p.x);
    out += ' ';
    out += format_plot_number(p.y);
    out += '\n';
  }
  return out;
}

void emit_plot_data(std::span<const PlotPoint> series, const std::filesystem::path& path,
                    const std::optional<PlotHeader>& header) {
  const std::string text = plot_data(series, header);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

std::vector<PlotPoint> to_plot(const LengthDistribution& d) {
  std::vector<PlotPoint> out;
  for (const auto& p : d.points) out.push_back({static_cast<double>(p.length), p.fraction});
  return out;
}

std::vector<PlotPoint> to_plot(const MeanSyllableSeries& s) {
  std::vector<PlotPoint> out;
  for (const auto& p : s) out.push_back({static_cast<double>(p.syllables), p.mean_length});
  return out;
}

std::vector<PlotPoint> to_plot(const RankFrequencyList& rf) {
  std::vector<PlotPoint> out;
  for (const auto& r : rf.rows) {
    out.push_back({static_cast<double>(r.rank), static_cast<double>(r.frequency)});
  }
  return out;
}

std::vector<PlotPoint> to_plot(const CoverageCurve& c) {
  std::vector<PlotPoint> out;
  for (const auto& p : c) out.push_back({static_cast<double>(p.rank), p.covered});
  return out;
}

std::string profile_tsv(const CorpusProfile& p) {
  std::ostringstream os;
  os << "N\t" << p.N << '\n'
     << "F\t" << p.F << '\n'
     << "V\t" << tsv_optional(p.V) << '\n'
     << "variety\t" << tsv_optional(p.variety) << '\n'
     << "density\t" << tsv_optional(p.density) << '\n'
     << "hapax_V1\t" << tsv_optional(p.hapax_V1) << '\n'
     << "excl_vocab\t" << tsv_optional(p.excl_vocab) << '\n'
     << "excl_text\t" << tsv_optional(p.excl_text) << '\n'
     << "N_at_threshold\t" << tsv_optional(p.N_at_threshold) << '\n'
     << "V_at_threshold\t" << tsv_optional(p.V_at_threshold) << '\n'
     << "conc_text\t" << tsv_optional(p.conc_text) << '\n'
     << "conc_vocab\t" << tsv_optional(p.conc_vocab) << '\n'
     << "mean_word_len_letters\t" << format_report_number(p.mean_word_len_letters) << '\n'
     << "mean_sentence_len_words\t" << format_report_number(p.mean_sentence_len_words) << '\n'
     << "threshold\t" << p.threshold << '\n';
  return os.str();
}

Json profile_json(const CorpusProfile& p) {
  Json j;
  j["N"] = p.N;
  j["F"] = p.F;
  j["V"] = json_optional(p.V);
  j["variety"] = json_optional(p.variety);
  j["density"] = json_optional(p.density);
  j["hapax_V1"] = json_optional(p.hapax_V1);
  j["excl_vocab"] = json_optional(p.excl_vocab);
  j["excl_text"] = json_optional(p.excl_text);
  j["N_at_threshold"] = json_optional(p.N_at_threshold);
  j["V_at_threshold"] = json_optional(p.V_at_threshold);
  j["conc_text"] = json_optional(p.conc_text);
  j["conc_vocab"] = json_optional(p.conc_vocab);
  j["mean_word_len_letters"] = json_number(p.mean_word_len_letters);
  j["mean_sentence_len_words"] = json_number(p.mean_sentence_len_words);
  j["threshold"] = p.threshold;
  return j;
}

std::string topk_tsv(const std::vector<TopRow>& rows) {
  std::string out = "rank\titem\tfrequency\tpercent\n";
  for (const auto& r : rows) {
    out += std::to_string(r.rank) + '\t' + r.item + '\t' + std::to_string(r.frequency) + '\t' +
           format_percent(r.percent) + '\n';
  }
  return out;
}

std::string fits_tsv(const std::vector<FitEntry>& fits) {
  std::ostringstream os;
  os << "model\tkey\tvalue\tstd_error\n";
  for (const auto& f : fits) {
    auto row = [&](const std::string& key, const std::string& value, const std::string& se = "NA") {
      os << f.model << '\t' << key << '\t' << value << '\t' << se << '\n';
    };
    row("dataset", f.dataset);
    row("points", std::to_string(f.points));
    if (f.lm) {
      const auto& r = *f.lm;
      row("converged", r.converged ? "true" : "false");
      row("termination", std::string(fitlab::to_string(r.termination)));
      row("iterations", std::to_string(r.iterations));
      row("sse", format_report_number(r.sse));
      row("final_lambda", format_report_number(r.final_lambda));
      for (const auto& p : r.params) {
        row("param." + p.name, format_report_number(p.value), format_report_number(p.std_error));
      }
      for (const auto& p : r.derived) row("derived." + p.name, format_report_number(p.value));
    }
    for (const auto& s : f.zipf) {
      const std::string pre = "segment." + s.interval.label() + ".";
      row(pre + "z", format_report_number(s.z));
      row(pre + "A", format_report_number(s.A));
      row(pre + "r_squared", format_report_number(s.r_squared));
      row(pre + "ranks", std::to_string(s.first_rank) + "-" + std::to_string(s.last_rank));
    }
    for (const auto& s : f.coverage) {
      const std::string pre = "segment." + s.interval.label() + ".";
      row(pre + "k", format_report_number(s.k));
      row(pre + "T0", format_report_number(s.T0));
      row(pre + "r_squared", format_report_number(s.r_squared));
      row(pre + "ranks", std::to_string(s.first_rank) + "-" + std::to_string(s.last_rank));
    }
    for (const auto& [scope, message] : f.errors) row("error." + scope, message);
  }
  return os.str();
}

Json fits_json(const std::vector<FitEntry>& fits) {
  Json arr = Json::array();
  for (const auto& f : fits) {
    Json j;
    j["model"] = f.model;
    j["dataset"] = f.dataset;
    j["points"] = f.points;
    if (f.lm) {
      const auto& r = *f.lm;
      j["converged"] = r.converged;
      j["termination"] = std::string(fitlab::to_string(r.termination));
      j["iterations"] = r.iterations;
      j["sse"] = json_number(r.sse);
      j["final_lambda"] = json_number(r.final_lambda);
      Json params = Json::object();
      for (const auto& p : r.params) {
        params[p.name] = {{"value", json_number(p.value)}, {"std_error", json_number(p.std_error)}};
      }
      j["params"] = params;
      Json derived = Json::object();
      for (const auto& p : r.derived) derived[p.name] = json_number(p.value);
      j["derived"] = derived;
    }
    if (!f.zipf.empty() || !f.coverage.empty()) {
      Json segs = Json::array();
      for (const auto& s : f.zipf) {
        segs.push_back({{"interval", s.interval.label()},
                        {"first_rank", s.first_rank},
                        {"last_rank", s.last_rank},
                        {"z", json_number(s.z)},
                        {"A", json_number(s.A)},
                        {"r_squared", json_number(s.r_squared)}});
      }
      for (const auto& s : f.coverage) {
        segs.push_back({{"interval", s.interval.label()},
                        {"first_rank", s.first_rank},
                        {"last_rank", s.last_rank},
                        {"k", json_number(s.k)},
                        {"T0", json_number(s.T0)},
                        {"r_squared", json_number(s.r_squared)}});
      }
      j["segments"] = segs;
    }
    Json errs = Json::array();
    for (const auto& [scope, message] : f.errors) errs.push_back({{"scope", scope}, {"message", message}});
    j["errors"] = errs;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace lexstat
