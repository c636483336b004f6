#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "exwlex/fincat.hpp"
#include "exwlex/search.hpp"

namespace exwlex {

/// A diagram in C indexed by a finite graph; cones are taken over the free
/// category on that graph, so the functor laws hold by construction. The
/// named shapes (terminal, product, pullback, equalizer) are special cases.
struct Diagram {
  struct Edge {
    int from;
    int to;
    MorId arrow;
    auto operator<=>(const Edge&) const = default;
  };
  std::vector<ObjId> nodes;
  std::vector<Edge> edges;

  auto operator<=>(const Diagram&) const = default;

  static Diagram terminal() { return {}; }
  static Diagram product(std::vector<ObjId> factors) { return {std::move(factors), {}}; }
  /// Nodes: dom f, dom g, cod f; cone legs are [to dom f, to dom g, to cod].
  static Diagram pullback(const FinCategory& c, MorId f, MorId g);
  /// Nodes: dom, cod; cone legs are [e, f∘e].
  static Diagram equalizer(const FinCategory& c, MorId f, MorId g);
};

/// Throws InvalidInput if an edge's arrow does not match its endpoints.
void validate_diagram(const FinCategory& c, const Diagram& d);

struct Cone {
  ObjId apex = -1;
  std::vector<MorId> legs;
  auto operator<=>(const Cone&) const = default;
};

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone);
/// The cone (apex dom m, legs∘m).
Cone precompose(const FinCategory& c, const Cone& cone, MorId m);
/// Pullback cone from its two nontrivial legs.
Cone pullback_cone(const FinCategory& c, const Diagram& d, MorId to_left, MorId to_right);

struct Factorization {
  Cone competitor;
  MorId mediator;
};

struct WeakLimitVerdict {
  bool holds = false;
  /// A competing cone with no mediating morphism.
  std::optional<Cone> counterexample;
  /// For strict limits: a competitor with two distinct mediators.
  std::optional<Cone> non_unique_for;
  std::optional<std::pair<MorId, MorId>> non_unique_mediators;
  /// Competitor -> first mediating morphism, declaration order.
  std::vector<Factorization> table;
};

/// Re-verifies every recorded mediator of a verdict.
bool recheck_factorizations(const FinCategory& c, const Cone& cone, const WeakLimitVerdict& v);

/// Search state for one category: budgets, worker count, and memoized
/// weak/strict limits. Lookups are thread-safe; cached vectors are never
/// invalidated.
class LimitContext {
 public:
  explicit LimitContext(CategoryPtr c, SearchOptions options = {});

  const FinCategory& category() const noexcept { return *cat_; }
  const CategoryPtr& category_ptr() const noexcept { return cat_; }
  const SearchOptions& options() const noexcept { return options_; }
  SearchMeter& meter() noexcept { return meter_; }
  unsigned workers() const noexcept { return options_.workers; }

  /// Cones over d with the given apex, lexicographic in hom-set order.
  const std::vector<Cone>& cones_at(const Diagram& d, ObjId apex);
  /// Every cone over d, apexes in declaration order. BudgetExceeded when the
  /// count exceeds the cone budget.
  std::vector<Cone> enumerate_cones(const Diagram& d);

  WeakLimitVerdict is_weak_limit(const Diagram& d, const Cone& cone, bool with_table = true);
  WeakLimitVerdict is_limit(const Diagram& d, const Cone& cone, bool with_table = true);
  /// All weak limit cones in deterministic order; empty means C lacks it.
  const std::vector<Cone>& weak_limits(const Diagram& d);
  const std::vector<Cone>& limits(const Diagram& d);
  std::optional<Cone> first_limit(const Diagram& d);

  /// First m: source.apex -> target.apex with target.legs∘m = source.legs.
  MorId mediator(const Cone& target, const Cone& source);
  /// Every such m.
  std::vector<MorId> mediators(const Cone& target, const Cone& source);

  bool is_regular_epi(MorId e);

 private:
  bool weak_limit_fast(const Diagram& d, const Cone& cone);

  CategoryPtr cat_;
  SearchOptions options_;
  SearchMeter meter_;
  std::mutex mu_;
  std::map<std::pair<Diagram, ObjId>, std::vector<Cone>> cones_;
  std::map<Diagram, std::vector<Cone>> weak_limits_;
  std::map<Diagram, std::vector<Cone>> limits_;
  std::unique_ptr<std::atomic<signed char>[]> regular_epi_;
};

// --- named shapes -----------------------------------------------------------

std::vector<Cone> find_weak_limits(LimitContext& ctx, const Diagram& d);

/// True iff every pair (a, b) equalized by all legs of `cone` is equalized by f.
struct DeterminedByProjections {
  bool holds = true;
  std::optional<std::pair<MorId, MorId>> counterexample;
};
DeterminedByProjections determined_by_projections(LimitContext& ctx, const Cone& cone, MorId f);

/// Weak product W <- V -> X with evaluation e: V -> Y.
struct WeakExponentialDatum {
  ObjId w = -1;
  ObjId x = -1;
  ObjId y = -1;
  Cone product;  // over Diagram::product({w, x})
  MorId eval = kNoMorphism;
  auto operator<=>(const WeakExponentialDatum&) const = default;
};

struct WeakExponentialWitness {
  WeakExponentialDatum competitor;
  MorId h;  // W' -> W
  MorId k;  // V' -> V
};

struct UniversalVerdict {
  bool holds = false;
  /// Set when the datum itself is malformed (not a weak product, not
  /// determined by projections, does not commute).
  std::string precondition_failure;
};

struct WeakExponentialVerdict : UniversalVerdict {
  std::optional<WeakExponentialDatum> counterexample;
  std::vector<WeakExponentialWitness> table;
};

/// All (W, weak product over (W, X), e) with e determined by projections.
std::vector<WeakExponentialDatum> admissible_exponential_data(LimitContext& ctx, ObjId x, ObjId y);
WeakExponentialVerdict is_weak_exponential(LimitContext& ctx, const WeakExponentialDatum& datum);
std::vector<WeakExponentialDatum> find_weak_exponentials(LimitContext& ctx, ObjId x, ObjId y);

/// The data of a commutative diagram
///   Y <-f- V -p1-> U
///          |p2     |u
///          X --x-> J      with y: Y -> X and y f = p2.
/// Shared by weak dependent products and dependent full diagrams.
struct DependentDatum {
  MorId y = kNoMorphism;
  MorId x = kNoMorphism;
  MorId u = kNoMorphism;
  Cone square;  // over Diagram::pullback(u, x)
  MorId f = kNoMorphism;
  auto operator<=>(const DependentDatum&) const = default;

  ObjId top() const { return square.apex; }
  MorId p1() const { return square.legs[0]; }
  MorId p2() const { return square.legs[1]; }
};

struct DependentProductWitness {
  DependentDatum competitor;
  MorId h;  // U' -> U
  MorId k;  // V' -> V
};

struct DependentProductVerdict : UniversalVerdict {
  std::optional<DependentDatum> counterexample;
  std::vector<DependentProductWitness> table;
};

/// Empty string when the datum has the required shape over (y, x), otherwise
/// the reason it does not.
std::string check_dependent_shape(LimitContext& ctx, const DependentDatum& d, bool require_dbp);
/// Every (u, weak pullback square, f) over (y, x); with require_dbp only those
/// whose f is determined by projections.
std::vector<DependentDatum> admissible_dependent_data(LimitContext& ctx, MorId y, MorId x, bool require_dbp);
DependentProductVerdict is_weak_dependent_product(LimitContext& ctx, const DependentDatum& datum);
std::vector<DependentDatum> find_weak_dependent_products(LimitContext& ctx, MorId y, MorId x);

// --- exactness machinery ------------------------------------------------------

/// Limit cone of the cospan (f, f), if any.
std::optional<Cone> kernel_pair(LimitContext& ctx, MorId f);
/// q is a coequalizer of the parallel pair (a, b) (strict universal property).
bool is_coequalizer(LimitContext& ctx, MorId q, MorId a, MorId b);
/// First coequalizer of (a, b) in declaration order, or kNoMorphism.
MorId coequalizer(LimitContext& ctx, MorId a, MorId b);

struct ImageFactorization {
  MorId cover;  // regular epi
  MorId mono;
};
/// f = mono∘cover with cover regular epi, mono monic; first in declaration order.
std::optional<ImageFactorization> image_factorization(LimitContext& ctx, MorId f);

}  // namespace exwlex
