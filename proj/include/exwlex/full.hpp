#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exwlex/limits.hpp"

namespace exwlex {

/// Weak product U <-p1- V -p2-> X with f: V -> Y.
struct FullDiagramDatum {
  ObjId u = -1;
  ObjId x = -1;
  ObjId y = -1;
  Cone product;  // over Diagram::product({u, x})
  MorId f = kNoMorphism;
  auto operator<=>(const FullDiagramDatum&) const = default;

  ObjId top() const { return product.apex; }
  MorId p1() const { return product.legs[0]; }
  MorId p2() const { return product.legs[1]; }
};

/// h: U' -> U, P a weak pullback of (h, p1) with legs [to U', to V, to U],
/// k: P -> V'.
struct FullWitness {
  FullDiagramDatum competitor;
  MorId h;
  Cone p;
  MorId k;
};

struct FullnessVerdict {
  bool holds = false;
  std::string precondition_failure;
  std::optional<FullDiagramDatum> counterexample;
  std::vector<FullWitness> table;
};

/// Every (U, weak product over (U, X), f: V -> Y), declaration order.
std::vector<FullDiagramDatum> full_candidates(LimitContext& ctx, ObjId x, ObjId y);
FullnessVerdict is_full_diagram(LimitContext& ctx, const FullDiagramDatum& d);
std::vector<FullDiagramDatum> find_full_diagrams(LimitContext& ctx, ObjId x, ObjId y);
/// Re-verifies every recorded (h, P, k).
bool recheck_full(LimitContext& ctx, const FullDiagramDatum& d, const FullnessVerdict& v);

/// h: U' -> U with u h = u', P a weak pullback of (p1, h) with legs
/// [to V, to U', to U], k: P -> V'.
struct DepFullWitness {
  DependentDatum competitor;
  MorId h;
  Cone p;
  MorId k;
};

struct DepFullnessVerdict {
  bool holds = false;
  std::string precondition_failure;
  std::optional<DependentDatum> counterexample;
  std::vector<DepFullWitness> table;
};

DepFullnessVerdict is_dependent_full_diagram(LimitContext& ctx, const DependentDatum& d);
std::vector<DependentDatum> find_dependent_full_diagrams(LimitContext& ctx, MorId y, MorId x);
bool recheck_dependent_full(LimitContext& ctx, const DependentDatum& d, const DepFullnessVerdict& v);

/// Every pair of binary products exists (strict limits).
bool has_binary_products(LimitContext& ctx);
/// Every cospan has a pullback (strict limits).
bool has_pullbacks(LimitContext& ctx);

/// The same data read as a full diagram. Throws NoBinaryProducts.
FullDiagramDatum full_from_weak_exponential(LimitContext& ctx, const WeakExponentialDatum& w);
/// Restricts f along the section of V -> U x X. Throws NoBinaryProducts.
WeakExponentialDatum weak_exponential_from_full(LimitContext& ctx, const FullDiagramDatum& d);

/// Full diagram from X to Y read off a dependent full diagram over
/// V0 -> U0 -> T (T weakly terminal, U0 = X x T, V0 = U0 x Y weakly).
/// Throws NoFullDiagram when no dependent full diagram exists there.
FullDiagramDatum full_from_dependent(LimitContext& ctx, ObjId x, ObjId y);

/// A dependent datum over (y, x) in C, moved into C/J along j: cod x -> J.
struct SliceTransfer {
  SliceCategory slice;
  DependentDatum in_slice;
  bool verdict_base = false;
  bool verdict_slice = false;
  /// Mapping the slice datum back through the forgetful functor gives the input.
  bool round_trip = false;
};
SliceTransfer transfer_to_slice(LimitContext& ctx, MorId j, const DependentDatum& d);

}  // namespace exwlex
