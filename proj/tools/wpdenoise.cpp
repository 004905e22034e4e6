// Copyright 2026 The wpdenoise Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wpdenoise command-line tool: synth, preprocess, denoise, evaluate, report.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpdenoise/evaluate.hpp"
#include "wpdenoise/metrics.hpp"
#include "wpdenoise/pipeline.hpp"
#include "wpdenoise/preprocess.hpp"
#include "wpdenoise/record.hpp"
#include "wpdenoise/report.hpp"

namespace fs = std::filesystem;
using namespace wpdenoise;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Selector parse_selector(const std::string& s) {
  if (s == "oracle") return Selector::kOracleGreedy;
  if (s == "blind") return Selector::kBlindLowestApprox;
  throw std::invalid_argument("unknown selector '" + s + "' (oracle, blind)");
}

SnrMode parse_snr_mode(const std::string& s) {
  if (s == "residual") return SnrMode::kResidual;
  if (s == "raw") return SnrMode::kRaw;
  throw std::invalid_argument("unknown SNR mode '" + s + "' (residual, raw)");
}

// "all", "wpd", "wpd-cca" or a comma list of names like WPD_db1,WPD_fk4-CCA.
std::vector<DenoiseConfig> parse_methods(const std::string& spec, Selector selector) {
  std::vector<DenoiseConfig> out;
  for (const std::string& item : split(spec, ',')) {
    if (item == "all" || item == "wpd" || item == "wpd-cca") {
      for (DenoiseConfig m : all_methods()) {
        const bool cca = m.method == Method::kWpdCca;
        if (item == "all" || (item == "wpd") != cca) {
          m.selector = cca ? Selector::kOracleGreedy : selector;
          out.push_back(m);
        }
      }
    } else {
      out.push_back(DenoiseConfig::parse(item, selector));
    }
  }
  return out;
}

struct PreprocessFlags {
  int decim = 0;
  double notch_hz = 50.0;
  int notch_order = 3;
  double notch_width = 1.0;
  int poly_order = 5;
  bool no_zero_phase = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--decim", decim, "Decimation factor (0: EEG to 256 Hz, fNIRS unchanged)");
    cmd->add_option("--notch-hz", notch_hz, "Powerline base frequency in Hz")->capture_default_str();
    cmd->add_option("--notch-order", notch_order, "Butterworth notch order")->capture_default_str();
    cmd->add_option("--notch-width", notch_width, "Half width of each stop band in Hz")->capture_default_str();
    cmd->add_option("--poly-order", poly_order, "Baseline polynomial degree")->capture_default_str();
    cmd->add_flag("--no-zero-phase", no_zero_phase, "Filter forward only");
  }

  PreprocessConfig config() const {
    PreprocessConfig c;
    c.decimation_factor = decim > 0 ? decim : 1;
    c.notch_base_hz = notch_hz;
    c.notch_order = notch_order;
    c.notch_half_width_hz = notch_width;
    c.baseline_poly_order = poly_order;
    c.zero_phase = !no_zero_phase;
    return c;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

// Aligned reference / corrupted / cleaned series for overlay plots.
std::string format_signal_file(const Record& rec, const Signal& cleaned) {
  std::string out = "# id=" + rec.id + "\n# fs=" + format_double(cleaned.sample_rate) + "\n";
  out += "reference,corrupted,cleaned\n";
  for (Eigen::Index i = 0; i < cleaned.size(); ++i) {
    out += format_double(rec.reference.samples[i]) + "," + format_double(rec.corrupted.samples[i]) + "," +
           format_double(cleaned.samples[i]) + "\n";
  }
  return out;
}

void apply_plan_file(const fs::path& path, RunPlan& plan, std::string& methods, std::string& selector,
                     std::string& snr_mode, std::string& exclude, PreprocessFlags& pp) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan '" + path.string() + "'");
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("protocol")) plan.protocol = parse_protocol(j["protocol"].get<std::string>());
  if (j.contains("data_dir")) plan.dataset_dir = j["data_dir"].get<std::string>();
  if (j.contains("methods")) {
    methods.clear();
    for (const auto& m : j["methods"]) methods += (methods.empty() ? "" : ",") + m.get<std::string>();
  }
  if (j.contains("selector")) selector = j["selector"].get<std::string>();
  if (j.contains("snr_mode")) snr_mode = j["snr_mode"].get<std::string>();
  if (j.contains("workers")) plan.workers = j["workers"].get<int>();
  if (j.contains("seed")) plan.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("records")) plan.synthetic_records = j["records"].get<int>();
  if (j.contains("exclude")) {
    exclude.clear();
    for (const auto& e : j["exclude"]) exclude += (exclude.empty() ? "" : ",") + e.get<std::string>();
  }
  if (j.contains("preprocess")) {
    const auto& p = j["preprocess"];
    pp.decim = p.value("decim", pp.decim);
    pp.notch_hz = p.value("notch_hz", pp.notch_hz);
    pp.notch_order = p.value("notch_order", pp.notch_order);
    pp.notch_width = p.value("notch_width", pp.notch_width);
    pp.poly_order = p.value("poly_order", pp.poly_order);
    pp.no_zero_phase = !p.value("zero_phase", !pp.no_zero_phase);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion-artifact removal for single-channel EEG/fNIRS with wavelet packets and CCA"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic corrupted/reference record");
  std::uint64_t synth_seed = 42;
  std::string synth_out, synth_id, synth_modality = "eeg";
  SynthSpec synth_spec = SynthSpec::default_eeg();
  double synth_fs = 0.0;
  synth->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output record file")->required();
  synth->add_option("--id", synth_id, "Record id (default synth_<seed>)");
  synth->add_option("--modality", synth_modality, "eeg or fnirs")->capture_default_str();
  synth->add_option("--fs", synth_fs, "Sample rate in Hz (default 256 for EEG, 25 for fNIRS)");
  synth->add_option("--duration", synth_spec.duration_s, "Duration in seconds")->capture_default_str();
  synth->add_option("--artifact-amp", synth_spec.artifact_amp, "Burst RMS relative to the clean RMS")
      ->capture_default_str();
  synth->add_option("--burst-len", synth_spec.burst_s, "Burst length in seconds")->capture_default_str();
  synth->add_option("--burst-interval", synth_spec.interval_s, "Seconds between burst onsets")
      ->capture_default_str();
  synth->add_option("--first-onset", synth_spec.first_onset_s, "Onset of the first burst in seconds")
      ->capture_default_str();

  // preprocess
  auto* prep = app.add_subcommand("preprocess", "Decimate, notch and detrend both channels of a record");
  std::string prep_in, prep_out;
  PreprocessFlags prep_flags;
  prep->add_option("--in", prep_in, "Input record")->required();
  prep->add_option("--out", prep_out, "Output record")->required();
  prep_flags.add_to(prep);

  // denoise
  auto* den = app.add_subcommand("denoise", "Denoise one record and print its scores");
  std::string den_method = "wpd", den_wavelet = "db1", den_selector = "oracle", den_in, den_out;
  std::string den_snr = "residual";
  int den_level = 4;
  bool den_json = false;
  den->add_option("--method", den_method, "wpd or wpd-cca")->capture_default_str();
  den->add_option("--wavelet", den_wavelet, "Wavelet packet (db1..db3, sym4..sym6, coif1..coif3, fk4, fk6, fk8)")
      ->capture_default_str();
  den->add_option("--selector", den_selector, "oracle or blind")->capture_default_str();
  den->add_option("--level", den_level, "Decomposition level")->capture_default_str();
  den->add_option("--in", den_in, "Input record")->required();
  den->add_option("--out", den_out, "Output signal file (reference, corrupted, cleaned)")->required();
  den->add_option("--snr-mode", den_snr, "residual or raw")->capture_default_str();
  den->add_flag("--json", den_json, "Print scores as JSON");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Batch-evaluate methods over a dataset or synthetic suite");
  RunPlan plan;
  std::string eval_protocol = "synthetic", eval_methods, eval_selector = "oracle", eval_snr = "residual";
  std::string eval_exclude, eval_plan, eval_out;
  std::string eval_data = std::getenv("WPDENOISE_DATA_DIR") ? std::getenv("WPDENOISE_DATA_DIR") : "";
  bool eval_table2 = false;
  PreprocessFlags eval_pp;
  auto* o_protocol = eval->add_option("--protocol", eval_protocol, "full23, table2, fnirs16 or synthetic");
  auto* o_table2 = eval->add_flag("--table2", eval_table2, "Shorthand for --protocol table2");
  auto* o_data = eval->add_option("--data-dir", eval_data, "Record directory (default $WPDENOISE_DATA_DIR)");
  auto* o_methods = eval->add_option("--methods", eval_methods, "all, wpd, wpd-cca or names like WPD_db1,WPD_db1-CCA");
  auto* o_selector = eval->add_option("--selector", eval_selector, "WPD selector: oracle or blind");
  auto* o_snr = eval->add_option("--snr-mode", eval_snr, "residual or raw");
  auto* o_exclude = eval->add_option("--exclude", eval_exclude, "Comma-separated record ids to leave out");
  auto* o_workers = eval->add_option("--workers", plan.workers, "Records processed in parallel");
  auto* o_seed = eval->add_option("--seed", plan.seed, "First seed of the synthetic suite");
  auto* o_records = eval->add_option("--records", plan.synthetic_records, "Synthetic suite size");
  eval->add_option("--plan", eval_plan, "JSON plan file; explicit flags override it");
  eval->add_option("--out-dir", eval_out, "Directory for report.{json,csv,md}")->required();
  eval_pp.add_to(eval);

  // report
  auto* rep = app.add_subcommand("report", "Re-render a JSON evaluation report");
  std::string rep_in, rep_out, rep_format = "markdown", rep_exclude;
  rep->add_option("--in", rep_in, "JSON report")->required();
  rep->add_option("--format", rep_format, "markdown, csv or json")->capture_default_str();
  rep->add_option("--out", rep_out, "Output file (default stdout)");
  rep->add_option("--exclude", rep_exclude, "Comma-separated record ids left out of the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      if (synth_modality == "fnirs" || synth_modality == "FNIRS") {
        SynthSpec f = SynthSpec::default_fnirs();
        f.duration_s = synth_spec.duration_s;
        f.artifact_amp = synth_spec.artifact_amp;
        f.burst_s = synth_spec.burst_s;
        f.interval_s = synth_spec.interval_s;
        f.first_onset_s = synth_spec.first_onset_s;
        synth_spec = f;
      } else if (parse_modality(synth_modality) != Modality::kEeg) {
        throw std::invalid_argument("unknown modality");
      }
      if (synth_fs > 0.0) synth_spec.sample_rate = synth_fs;
      synth_spec.id = synth_id;
      write_record(synth_record(synth_seed, synth_spec), synth_out);
      return 0;
    }

    if (*prep) {
      Record rec = read_record(prep_in);
      RunPlan defaults;
      defaults.decimation_override = prep_flags.decim;
      PreprocessConfig pp = prep_flags.config();
      pp.decimation_factor = decimation_for(rec, defaults);
      rec.corrupted = preprocess(rec.corrupted, pp);
      rec.reference = preprocess(rec.reference, pp);
      write_record(rec, prep_out);
      return 0;
    }

    if (*den) {
      const Record rec = read_record(den_in);
      DenoiseConfig cfg;
      if (den_method == "wpd") {
        cfg.method = Method::kWpdOnly;
      } else if (den_method == "wpd-cca") {
        cfg.method = Method::kWpdCca;
      } else {
        throw std::invalid_argument("unknown method '" + den_method + "' (wpd, wpd-cca)");
      }
      cfg.wavelet = WaveletFamily::parse(den_wavelet);
      cfg.level = den_level;
      cfg.selector = parse_selector(den_selector);
      const CleanResult clean = denoise(rec.corrupted, rec.reference, cfg);
      const ScorePair s = score(rec.reference, rec.corrupted, clean.cleaned, parse_snr_mode(den_snr));
      write_text(den_out, format_signal_file(rec, clean.cleaned));
      if (den_json) {
        const nlohmann::json j = {{"record_id", rec.id},
                                  {"method", cfg.name()},
                                  {"delta_snr_db", s.delta_snr_db},
                                  {"eta_percent", s.eta_percent},
                                  {"rho_before", s.rho_before},
                                  {"rho_after", s.rho_after},
                                  {"removed_components", clean.removed_labels}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::string removed;
        for (const auto& l : clean.removed_labels) removed += (removed.empty() ? "" : ", ") + l;
        char line[256];
        std::snprintf(line, sizeof(line), "| %s | %s | %.2f | %.2f | %.4f | %.4f | %s |\n", rec.id.c_str(),
                      cfg.name().c_str(), s.delta_snr_db, s.eta_percent, s.rho_before, s.rho_after,
                      removed.c_str());
        std::cout << "| Record | Method | ΔSNR (dB) | η (%) | ρ before | ρ after | Removed |\n"
                  << "|---|---|---:|---:|---:|---:|---|\n"
                  << line;
      }
      return 0;
    }

    if (*eval) {
      if (!eval_plan.empty()) {
        apply_plan_file(eval_plan, plan, eval_methods, eval_selector, eval_snr, eval_exclude, eval_pp);
        if (plan.dataset_dir.empty() || o_data->count()) plan.dataset_dir = eval_data;
      } else {
        plan.dataset_dir = eval_data;
        plan.protocol = parse_protocol(eval_protocol);
      }
      if (o_protocol->count()) plan.protocol = parse_protocol(eval_protocol);
      if (o_table2->count() && eval_table2) plan.protocol = Protocol::kTable2;
      const bool table2 = plan.protocol == Protocol::kTable2;
      if (table2 && !o_selector->count() && eval_plan.empty()) eval_selector = "blind";
      if (eval_methods.empty()) eval_methods = table2 ? "wpd" : "all";
      plan.methods = parse_methods(eval_methods, parse_selector(eval_selector));
      plan.snr_mode = parse_snr_mode(eval_snr);
      plan.excluded_ids = split(eval_exclude, ',');
      plan.preprocess = eval_pp.config();
      plan.decimation_override = eval_pp.decim;
      (void)o_methods;
      (void)o_snr;
      (void)o_exclude;
      (void)o_workers;
      (void)o_seed;
      (void)o_records;

      const EvalReport report = cmd_evaluate(plan);
      fs::create_directories(eval_out);
      write_report(report, ReportFormat::kJson, fs::path(eval_out) / "report.json");
      write_report(report, ReportFormat::kCsv, fs::path(eval_out) / "report.csv");
      write_report(report, ReportFormat::kMarkdown, fs::path(eval_out) / "report.md");
      std::cout << "| Method | Records | ΔSNR (dB) | η (%) |\n|---|---:|---:|---:|\n";
      for (const SummaryRow& s : report.summary) {
        std::cout << "| " << s.method << " | " << s.count << " | "
                  << mean_std_cell(s.mean_delta_snr_db, s.std_delta_snr_db) << " | "
                  << mean_std_cell(s.mean_eta_percent, s.std_eta_percent) << " |\n";
      }
      return 0;
    }

    if (*rep) {
      EvalReport report = read_json_report(rep_in);
      if (!rep_exclude.empty()) {
        report.excluded_ids = split(rep_exclude, ',');
        summarize(report);
      }
      const std::string text = render_report(report, parse_report_format(rep_format));
      if (rep_out.empty()) {
        std::cout << text;
      } else {
        write_text(rep_out, text);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "wpdenoise: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
