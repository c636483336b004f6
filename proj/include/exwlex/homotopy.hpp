#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exwlex/excom.hpp"
#include "exwlex/full.hpp"
#include "exwlex/io.hpp"
#include "exwlex/lcc.hpp"
#include "exwlex/limits.hpp"

namespace exwlex {

/// X -r-> PX -p-> X x X, with the product cone the factorization lands in.
struct PathObject {
  ObjId obj = -1;  // PX
  MorId r = kNoMorphism;
  MorId p = kNoMorphism;
  Cone product;  // over Diagram::product({X, X})
};

/// A -r-> P_q A -p-> A x_B A for a fibration q: A -> B.
struct FibrewisePathObject {
  ObjId obj = -1;
  MorId r = kNoMorphism;
  MorId p = kNoMorphism;
  Cone pullback;  // over Diagram::pullback(q, q)
};

struct PathStructure {
  CategoryPtr base;
  std::vector<char> fibration;  // per morphism
  std::vector<char> weq;        // per morphism
  std::vector<std::optional<PathObject>> path_objects;  // per object
  std::map<MorId, FibrewisePathObject> fibrewise;
  bool local_mode = false;

  const FinCategory& category() const { return *base; }
  bool is_fibration(MorId f) const { return fibration[f] != 0; }
  bool is_weq(MorId f) const { return weq[f] != 0; }
};

/// Every axiom, checked exhaustively. Throws the error named after the first
/// violated axiom: NoTerminalObject, ClassNotClosed, TwoOutOfSixViolation,
/// TerminalArrowNotFibration, MissingPullbackAlongFibration,
/// NotPullbackStable, MissingSection, MissingPathObject, BadPathObject.
void validate_path_structure(LimitContext& ctx, const PathStructure& ps);

/// Reads the `marked` section of a category document. Validates unless
/// `local_mode`.
PathStructure load_path_structure(LimitContext& ctx, const json& doc, bool local_mode);
json path_structure_to_json(const PathStructure& ps);

/// Fibrations = all arrows, weak equivalences = isos, PX = X with the
/// diagonal; fibrewise path objects for every arrow likewise. Throws
/// DoesNotExist when C lacks the needed products or pullbacks.
PathStructure trivial_path_structure(LimitContext& ctx);

/// Local-mode structure on catalog::interval(): every arrow is a fibration
/// and a weak equivalence, PT = T, PA = A x A with the diagonal, and !_A has
/// the kernel pair as fibrewise path object. AA has no path object.
PathStructure interval_structure(LimitContext& ctx);

// --- homotopy --------------------------------------------------------------------

/// H: C -> PX with p H = <f, g>, or kNoMorphism. Throws MissingPathObject.
MorId are_homotopic(const PathStructure& ps, MorId f, MorId g);
/// H: C -> P_q A with p H = <f, g> over q. Throws MissingFibrewisePathObject.
MorId are_fibrewise_homotopic(const PathStructure& ps, MorId q, MorId f, MorId g);

/// Throws NotACongruence naming the failed property (reflexivity, symmetry,
/// transitivity, left composition, right composition). In local mode arrows
/// into an object without path object are related only when equal.
Congruence homotopy_congruence(const PathStructure& ps);
QuotientCategory homotopy_category(const PathStructure& ps);

/// k' with f k' = g and k' homotopic to k. Throws NoStrictification.
MorId strictify(const PathStructure& ps, MorId f, MorId g, MorId k);

struct FillerResult {
  MorId d = kNoMorphism;
  /// True when d came from the factorization-and-section construction,
  /// false when it needed the exhaustive fallback.
  bool constructed = false;
  std::vector<MorId> fillers;  // every homotopy diagonal filler
  bool unique_up_to_homotopy = false;
};
/// Square g k = l f with f a weak equivalence and g a fibration.
/// Throws InvalidInput on a bad square, NoFiller when none exists.
FillerResult homotopy_diagonal_filler(LimitContext& ctx, const PathStructure& ps, MorId f, MorId k, MorId g, MorId l);

/// Square (apex; a, c) over the cospan (f, g), commuting up to homotopy.
struct HomotopyPullbackVerdict {
  bool holds = false;
  std::string precondition_failure;
  std::optional<Cone> counterexample;
};
HomotopyPullbackVerdict is_homotopy_pullback(const PathStructure& ps, MorId f, MorId g, const Cone& square);
/// All homotopy pullback squares of (f, g), declaration order.
std::vector<Cone> homotopy_pullbacks(const PathStructure& ps, MorId f, MorId g);

/// u: U -> I, the chosen pullback U x_I A and e: U x_I A -> B over
/// fibrations g: B -> A and f: A -> I.
struct HwdpDatum {
  MorId g = kNoMorphism;
  MorId f = kNoMorphism;
  MorId u = kNoMorphism;
  Cone pullback;  // first limit of Diagram::pullback(u, f)
  MorId e = kNoMorphism;
  auto operator<=>(const HwdpDatum&) const = default;

  /// The same data read as a dependent diagram over (g, f).
  DependentDatum as_dependent() const { return {g, f, u, pullback, e}; }
};

struct HwdpWitness {
  MorId u_prime;
  MorId e_prime;
  MorId k;
  MorId homotopy;
};
struct HwdpVerdict {
  bool holds = false;
  std::string precondition_failure;
  /// (u', e') with no k.
  std::optional<std::pair<MorId, MorId>> counterexample;
  std::vector<HwdpWitness> table;
};
HwdpVerdict is_hwdp(LimitContext& ctx, const PathStructure& ps, const HwdpDatum& d);
/// Every (u, e) with u a fibration, declaration order, that passes is_hwdp.
std::vector<HwdpDatum> find_hwdp(LimitContext& ctx, const PathStructure& ps, MorId g, MorId f);
/// Factors the weak dependent product's u as weak equivalence then fibration
/// and fills e. Propagates NoFactorization / NoFiller.
HwdpDatum hwdp_from_wdp(LimitContext& ctx, const PathStructure& ps, const DependentDatum& wdp);

/// Weak equivalence then fibration, from the path object of cod m or, when
/// that construction does not land in the classes, by search.
struct Factorization2 {
  MorId c = kNoMorphism;  // weak equivalence
  MorId p = kNoMorphism;  // fibration
  bool constructed = false;
};
Factorization2 factor_weq_fibration(LimitContext& ctx, const PathStructure& ps, MorId m);

/// Dependent data over (g, f) whose equations hold up to homotopy and whose
/// square is a homotopy pullback.
struct HoFullVerdict {
  bool holds = false;
  std::string precondition_failure;
  std::optional<DependentDatum> counterexample;
};
/// Every (u, homotopy pullback square, f) over (y, x) with y f homotopic to p2.
std::vector<DependentDatum> homotopy_dependent_data(const PathStructure& ps, MorId y, MorId x);
HoFullVerdict is_homotopy_full_diagram(const PathStructure& ps, const DependentDatum& d);
/// The image of the datum in Ho, checked by the strict dependent-full checker.
DepFullnessVerdict ho_image_full_check(const PathStructure& ps, const QuotientCategory& ho, const DependentDatum& d);

// --- the pipeline ------------------------------------------------------------------

struct PipelineStage {
  std::string name;
  bool holds = true;
  std::string detail;
  std::vector<std::string> witnesses;
};
struct PipelineReport {
  bool holds = true;
  std::vector<PipelineStage> stages;
  CategoryPtr ho;
  std::optional<ExCompletion> excom;
};
/// base -> wdp audit -> Ho -> hwdp/hofull -> depfull audit -> excom -> verify-lcc.
PipelineReport pipeline_lccexh(LimitContext& ctx, const PathStructure& ps);

}  // namespace exwlex
