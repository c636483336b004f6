#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exwlex/io.hpp"
#include "exwlex/limits.hpp"

namespace exwlex {

/// R ⇉ X with reflexivity, symmetry and transitivity witnesses.
/// `pullback` is the weak pullback of (r2, r1) the transitivity witness uses.
struct PseudoEqRelation {
  ObjId x = -1;
  ObjId r = -1;
  MorId r1 = kNoMorphism;
  MorId r2 = kNoMorphism;
  MorId rho = kNoMorphism;
  MorId sigma = kNoMorphism;
  Cone pullback;
  MorId tau = kNoMorphism;

  bool is_free(const FinCategory& c) const { return r == x && r1 == c.identity(x) && r2 == r1; }
};

struct PerVerdict {
  bool holds = false;
  std::string failed_axiom;  // "reflexivity" | "symmetry" | "transitivity"
  std::optional<PseudoEqRelation> relation;
};

/// Throws NoWeakPullback when (r2, r1) has no weak pullback.
PerVerdict is_pseudo_eq_relation(LimitContext& ctx, ObjId x, ObjId r, MorId r1, MorId r2);
/// True iff every weak pullback of (r2, r1) admits a transitivity witness.
bool transitivity_choice_independent(LimitContext& ctx, const PseudoEqRelation& rel);

/// Some K: R -> S with s1 K = f r1 and s2 K = f r2.
std::optional<MorId> tracks(const FinCategory& c, const PseudoEqRelation& from, const PseudoEqRelation& to, MorId f);
/// Some H: X -> S with s1 H = f and s2 H = g.
std::optional<MorId> related(const FinCategory& c, const PseudoEqRelation& to, MorId f, MorId g);

struct WlexAudit {
  bool passed = true;
  std::string missing;  // e.g. "weak product of (b, b)"
  std::vector<std::string> witnesses;
};
/// Weak terminal object, weak binary products of all pairs and weak
/// equalizers of all parallel pairs. These generate every finite weak limit.
WlexAudit wlex_audit(LimitContext& ctx);

struct ExCompletion {
  CategoryPtr base;
  CategoryPtr completed;
  std::vector<PseudoEqRelation> relations;     // per completed object
  std::vector<std::vector<MorId>> arrow_classes;  // per completed morphism, base ids ascending
  Functor embedding;                              // base -> completed
  bool reduced = false;

  /// Completed objects in the image of the embedding.
  std::vector<ObjId> projective_objects() const;
};

/// Throws NotWeaklyLex naming the missing weak limit.
ExCompletion build_excom(LimitContext& ctx);
/// One object per isomorphism class (first in declaration order).
ExCompletion reduce_excom(const ExCompletion& full);

std::string relation_name(const FinCategory& c, const PseudoEqRelation& rel);

json excom_to_json(const ExCompletion& e);
/// Loads the completed category and its projective cover from an excom document.
struct LoadedExcom {
  CategoryPtr completed;
  std::vector<ObjId> projective;
  bool reduced = false;
};
LoadedExcom load_excom(const json& doc);

struct ProjectiveCoverReport {
  bool holds = true;
  /// (P-object, regular epi e, map g) with no lift of g along e.
  struct NotProjective {
    ObjId object;
    MorId epi;
    MorId map;
  };
  std::optional<NotProjective> not_projective;
  std::optional<ObjId> uncovered;
  /// Per object of E: first covering regular epi from a P-object.
  std::vector<MorId> covers;
};
ProjectiveCoverReport verify_projective_cover(LimitContext& ctx, const std::vector<ObjId>& p);

struct ExactnessClause {
  std::string name;
  bool holds = true;
  std::string counterexample;
  std::vector<std::string> witnesses;
};
struct ExactnessReport {
  std::vector<ExactnessClause> clauses;
  bool holds() const;
};
/// finite_limits, image_factorizations, effective_equivalence_relations,
/// pullback_stable_regular_epis.
ExactnessReport verify_exactness(LimitContext& ctx);

}  // namespace exwlex
