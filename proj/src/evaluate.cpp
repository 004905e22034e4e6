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

#include "wpdenoise/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace wpdenoise {
namespace {

struct Job {
  std::string record_id;
  const Record* record = nullptr;  // null when the record failed to load
  std::string load_error;
};

RecordResult failure_row(const std::string& id, const DenoiseConfig& method, const std::string& why) {
  RecordResult r;
  r.record_id = id;
  r.method = method.name();
  r.wavelet = method.wavelet.name();
  r.status = "failed: " + why;
  r.delta_snr_db = r.eta_percent = r.rho_before = r.rho_after = std::nan("");
  return r;
}

}  // namespace

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::kFull23:
      return "full23";
    case Protocol::kTable2:
      return "table2";
    case Protocol::kFnirs16:
      return "fnirs16";
    case Protocol::kSynthetic:
      return "synthetic";
  }
  return "?";
}

Protocol parse_protocol(std::string_view text) {
  for (const Protocol p : {Protocol::kFull23, Protocol::kTable2, Protocol::kFnirs16, Protocol::kSynthetic}) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(text) + "' (full23, table2, fnirs16, synthetic)");
}

void RunPlan::validate() const {
  if (methods.empty()) throw std::invalid_argument("plan: no methods selected");
  for (const DenoiseConfig& m : methods) m.validate();
  preprocess.validate();
  if (decimation_override < 0) throw std::invalid_argument("plan: decimation factor must be >= 1");
  if (workers < 1) throw std::invalid_argument("plan: worker count must be >= 1");
  if (protocol == Protocol::kTable2) {
    for (const DenoiseConfig& m : methods) {
      if (m.method != Method::kWpdOnly || m.selector != Selector::kBlindLowestApprox) {
        throw std::invalid_argument("plan: the table2 protocol runs WPD methods with the blind selector only, got " +
                                    m.name());
      }
    }
  }
  if (protocol == Protocol::kSynthetic && synthetic_records < 1) {
    throw std::invalid_argument("plan: synthetic protocol needs at least one record");
  }
  if (protocol != Protocol::kSynthetic && dataset_dir.empty()) {
    throw std::invalid_argument("plan: no dataset directory (use --data-dir or WPDENOISE_DATA_DIR)");
  }
}

std::vector<std::string> RunPlan::exclusions() const {
  if (protocol != Protocol::kTable2) return excluded_ids;
  if (!excluded_ids.empty()) return excluded_ids;
  return {"eeg_12", "eeg_15"};
}

std::vector<DenoiseConfig> all_methods() {
  std::vector<DenoiseConfig> out;
  for (const WaveletFamily& w : WaveletFamily::all()) {
    out.push_back({Method::kWpdOnly, w, 4, Selector::kOracleGreedy});
  }
  for (const WaveletFamily& w : WaveletFamily::all()) {
    if (w.family() == Family::kDaubechies || w.family() == Family::kFejerKorovkin) {
      out.push_back({Method::kWpdCca, w, 4, Selector::kOracleGreedy});
    }
  }
  return out;
}

std::vector<Record> load_dataset(const std::filesystem::path& dir,
                                 std::vector<std::pair<std::string, std::string>>* failures) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("dataset directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Record> records;
  for (const auto& f : files) {
    try {
      records.push_back(read_record(f));
    } catch (const std::exception& e) {
      if (!failures) throw;
      failures->emplace_back(f.stem().string(), e.what());
    }
  }
  return records;
}

int decimation_for(const Record& record, const RunPlan& plan) {
  if (plan.decimation_override > 0) return plan.decimation_override;
  if (record.modality == Modality::kFnirs) return 1;
  const double ratio = record.corrupted.sample_rate / 256.0;
  const auto factor = static_cast<int>(std::lround(ratio));
  if (factor < 1 || std::abs(ratio - factor) > 1e-9) {
    throw std::invalid_argument("record " + record.id + ": EEG sample rate " +
                                format_double(record.corrupted.sample_rate) +
                                " Hz is not an integer multiple of 256 Hz");
  }
  return factor;
}

RecordResult evaluate_one(const Record& record, const DenoiseConfig& method, const RunPlan& plan) {
  try {
    PreprocessConfig pp = plan.preprocess;
    pp.decimation_factor = decimation_for(record, plan);
    const Signal corrupted = preprocess(record.corrupted, pp);
    const Signal reference = preprocess(record.reference, pp);
    const CleanResult clean = denoise(corrupted, reference, method);
    const ScorePair s = score(reference, corrupted, clean.cleaned, plan.snr_mode);
    RecordResult r;
    r.record_id = record.id;
    r.method = method.name();
    r.wavelet = method.wavelet.name();
    r.delta_snr_db = s.delta_snr_db;
    r.eta_percent = s.eta_percent;
    r.rho_before = s.rho_before;
    r.rho_after = s.rho_after;
    r.removed_components = clean.removed_labels;
    return r;
  } catch (const std::exception& e) {
    return failure_row(record.id, method, e.what());
  }
}

EvalReport cmd_evaluate(const RunPlan& plan) {
  plan.validate();

  std::vector<Record> records;
  std::vector<std::pair<std::string, std::string>> load_failures;
  if (plan.protocol == Protocol::kSynthetic) {
    for (int i = 0; i < plan.synthetic_records; ++i) {
      SynthSpec spec = plan.synth;
      const std::uint64_t seed = plan.seed + static_cast<std::uint64_t>(i);
      if (spec.id.empty()) {
        char id[32];
        std::snprintf(id, sizeof(id), "synth_%03d", i + 1);
        spec.id = id;
      } else {
        spec.id += "_" + std::to_string(i + 1);
      }
      records.push_back(synth_record(seed, spec));
    }
  } else {
    records = load_dataset(plan.dataset_dir, &load_failures);
    const Modality wanted = plan.protocol == Protocol::kFnirs16 ? Modality::kFnirs : Modality::kEeg;
    std::erase_if(records, [&](const Record& r) { return r.modality != wanted; });
  }

  const std::vector<std::string> excluded = plan.exclusions();
  Dataset dataset{records, {}};
  for (const std::string& id : excluded) {
    if (std::any_of(records.begin(), records.end(), [&](const Record& r) { return r.id == id; })) {
      dataset.excluded_ids.push_back(id);
    }
  }
  dataset.validate();

  std::vector<Job> jobs;
  for (const Record& r : dataset.records) {
    if (std::find(excluded.begin(), excluded.end(), r.id) == excluded.end()) jobs.push_back({r.id, &r, {}});
  }
  for (const auto& [id, why] : load_failures) jobs.push_back({id, nullptr, why});
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.record_id < b.record_id; });

  std::vector<DenoiseConfig> methods = plan.methods;
  std::stable_sort(methods.begin(), methods.end(),
                   [](const DenoiseConfig& a, const DenoiseConfig& b) { return a.name() < b.name(); });

  // Workers pick whole records; each record's computation stays on one thread.
  std::vector<std::vector<RecordResult>> rows(jobs.size());
  std::atomic<size_t> next{0};
  const auto work = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      for (const DenoiseConfig& m : methods) {
        rows[j].push_back(jobs[j].record ? evaluate_one(*jobs[j].record, m, plan)
                                         : failure_row(jobs[j].record_id, m, jobs[j].load_error));
      }
    }
  };
  const int workers = std::min<int>(plan.workers, std::max<int>(1, static_cast<int>(jobs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  EvalReport report;
  report.protocol = std::string(to_string(plan.protocol));
  report.excluded_ids = excluded;
  for (auto& per_record : rows) {
    for (auto& r : per_record) report.records.push_back(std::move(r));
  }
  summarize(report);
  return report;
}

}  // namespace wpdenoise
