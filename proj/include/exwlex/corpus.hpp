#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "exwlex/homotopy.hpp"
#include "exwlex/report.hpp"

namespace exwlex {

/// What each global check says about one category. Unset means the check
/// does not apply (its prerequisites are missing).
struct FixtureProperties {
  bool wlex = false;
  std::string wlex_missing;
  bool poset = false;
  bool binary_products = false;
  bool pullbacks = false;
  std::optional<bool> adjoints;  // right adjoints to all weak pullback functors
  std::optional<bool> full;      // full diagrams for all (X, Y)
  std::optional<bool> wexp;      // weak exponentials for all (X, Y)
  std::optional<bool> depfull;   // dependent full diagrams for all composable pairs
  std::optional<bool> wdp;       // weak dependent products for all composable pairs
  std::optional<bool> cc;        // reduced completion cartesian closed
  std::optional<bool> lcc;       // reduced completion locally cartesian closed

  json to_json() const;
};

FixtureProperties compute_properties(LimitContext& ctx);

struct Implication {
  std::string name;
  std::optional<bool> antecedent;
  std::optional<bool> consequent;

  bool applicable() const { return antecedent.has_value() && consequent.has_value(); }
  bool violated() const { return applicable() && *antecedent && !*consequent; }
};

/// adjoints & full => cc, adjoints & cc => wexp, products & wexp => full,
/// depfull => lcc, lcc => wdp, pullbacks & wdp => depfull.
std::vector<Implication> implication_matrix(const FixtureProperties& p);

/// Checks on a globally valid path structure: congruence, strictification
/// of every homotopy triangle over a fibration, uniqueness of every homotopy
/// diagonal filler, hwdp => homotopy full, homotopy full => full in Ho.
RunReport path_suite(LimitContext& ctx, const PathStructure& ps);
/// The designed interval checks (local mode).
RunReport interval_suite(LimitContext& ctx, const PathStructure& ps);

struct CorpusEntry {
  std::string name;
  std::optional<std::filesystem::path> category;
  std::optional<std::filesystem::path> path_structure;
  bool local_mode = false;
  std::string suite;  // "" or "interval"
};

struct Corpus {
  std::filesystem::path file;
  std::vector<CorpusEntry> entries;
};

/// Reads corpus.json (or <dir>/corpus.json). Throws InvalidInput when it
/// lists no fixtures.
Corpus load_corpus(const std::filesystem::path& where);

RunReport run_entry(const CorpusEntry& e, const SearchOptions& options);
/// Every entry (or only the named one) in corpus order.
RunReport run_corpus(const Corpus& corpus, const SearchOptions& options, const std::string& only = {});

}  // namespace exwlex
