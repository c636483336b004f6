#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "exwlex/error.hpp"
#include "exwlex/full.hpp"
#include "exwlex/homotopy.hpp"
#include "exwlex/io.hpp"
#include "exwlex/limits.hpp"

namespace exwlex {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Verdict { Pass, Fail, Error };
std::string_view to_string(Verdict v);

struct CheckResult {
  std::string check;
  Verdict verdict = Verdict::Pass;
  json witness;         // null when absent
  json counterexample;  // null when absent
  std::string message;
  std::string error_kind;  // set for Verdict::Error
};

/// One run of one subcommand. Everything but `stats` is deterministic for a
/// given input and budget; stats hold timings and search counters.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void add_input(const std::filesystem::path& path);
  void add_input_digest(const std::string& name, const std::string& digest);
  CheckResult& add(CheckResult r);
  CheckResult& pass(std::string check, json witness = nullptr);
  CheckResult& fail(std::string check, json counterexample = nullptr, std::string message = {});
  /// Records the error; BudgetExceeded makes the exit code 3, others 2.
  CheckResult& error(std::string check, const Error& e);
  void set_local_mode(bool on) { local_mode_ = on; }
  void stat(const std::string& key, json value) { stats_[key] = std::move(value); }
  void stage_time(const std::string& stage, double ms) { stats_["stages_ms"][stage] = ms; }
  void merge(const std::string& prefix, const RunReport& other);

  const std::vector<CheckResult>& checks() const { return checks_; }
  Verdict overall() const;
  /// 0 all pass, 1 a verdict failed, 2 input or validation error, 3 budget.
  int exit_code() const;

  json verdict_section() const;
  json to_json() const;

 private:
  std::string command_;
  json inputs_ = json::array();
  std::vector<CheckResult> checks_;
  bool local_mode_ = false;
  bool budget_hit_ = false;
  json stats_ = json::object();
};

/// Milliseconds since construction.
class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --- data files ------------------------------------------------------------------

json cone_to_json(const FinCategory& c, const Cone& k);
Cone cone_from_json(const FinCategory& c, const json& j);
/// {"shape": terminal|product|pullback|equalizer, "at": [ids]}.
Diagram diagram_from_json(const FinCategory& c, const json& j);
json diagram_to_json(const FinCategory& c, const Diagram& d);

json full_datum_to_json(const FinCategory& c, const FullDiagramDatum& d);
FullDiagramDatum full_datum_from_json(const FinCategory& c, const json& j);
json dependent_datum_to_json(const FinCategory& c, const DependentDatum& d);
DependentDatum dependent_datum_from_json(const FinCategory& c, const json& j);
json wexp_datum_to_json(const FinCategory& c, const WeakExponentialDatum& d);
WeakExponentialDatum wexp_datum_from_json(const FinCategory& c, const json& j);
json hwdp_datum_to_json(const FinCategory& c, const HwdpDatum& d);
HwdpDatum hwdp_datum_from_json(const FinCategory& c, const json& j);

/// Wraps a datum with format_version and a kind tag.
json datum_document(const std::string& kind, json datum);
/// Checks format_version and kind; returns the datum.
const json& datum_payload(const json& doc, const std::string& kind);

}  // namespace exwlex
