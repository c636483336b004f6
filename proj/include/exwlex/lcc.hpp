#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exwlex/excom.hpp"
#include "exwlex/full.hpp"
#include "exwlex/limits.hpp"

namespace exwlex {

// --- finite posets --------------------------------------------------------------

struct FinitePoset {
  std::vector<std::string> labels;
  std::vector<std::vector<char>> leq;

  std::size_t size() const noexcept { return leq.size(); }
  bool le(int a, int b) const { return leq[a][b] != 0; }
};

/// Classes of a preorder on `elements` under mutual reachability. Classes are
/// numbered by their minimum element, which is also the representative.
struct PosetReflection {
  FinitePoset poset;
  std::vector<int> elements;        // the underlying things (objects, arrows, monos)
  std::vector<int> class_of;        // per element index
  std::vector<int> representative;  // per class, an element index

  /// Class of an underlying thing, or -1.
  int class_of_element(int e) const;
};

PosetReflection reflect_preorder(std::vector<int> elements, const std::function<bool(int, int)>& le,
                                 const std::function<std::string(int)>& label);
/// Objects of C under "there is an arrow".
PosetReflection poset_reflection(const FinCategory& c);
/// Arrows into X under factorization (the poset reflection of C/X).
PosetReflection poset_reflection_slice(const FinCategory& c, ObjId x);

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m);

struct RightAdjoint {
  bool exists = false;
  std::vector<int> map;
  /// First q without a greatest p with m(p) <= q.
  int witness = -1;
};
RightAdjoint right_adjoint(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m);
/// m(p) <= q iff p <= r(q), for every p and q.
bool galois_law(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m, const std::vector<int>& r);

/// Weak pullback along f: Y -> X as a monotone map Pos(C/X) -> Pos(C/Y).
struct WeakPullbackMap {
  MorId f = kNoMorphism;
  PosetReflection source;
  PosetReflection target;
  std::vector<int> map;
};
/// Throws NoWeakPullback, or InvalidInput when the class of the result
/// depends on the chosen weak pullback or the map is not monotone.
WeakPullbackMap weak_pullback_functor(LimitContext& ctx, MorId f);

struct AdjointsReport {
  bool holds = true;
  MorId failing = kNoMorphism;  // first arrow whose map has no right adjoint
  int witness = -1;             // class in the target poset of that map
  std::vector<WeakPullbackMap> maps;
  std::vector<RightAdjoint> adjoints;
};
/// Right adjoints to every weak pullback functor of C.
AdjointsReport weak_pullback_adjoints(LimitContext& ctx);

// --- subobjects ------------------------------------------------------------------

/// Monos into A up to isomorphism, ordered by factorization.
struct SubobjectLattice {
  ObjId object = -1;
  PosetReflection classes;  // elements are mono ids

  MorId representative(int cls) const { return classes.elements[classes.representative[cls]]; }
  int class_of(MorId mono) const { return classes.class_of_element(mono); }
  std::size_t size() const { return classes.poset.size(); }
};
SubobjectLattice subobject_lattice(LimitContext& ctx, ObjId a);
/// Pullback of a subobject of cod f along f. Throws DoesNotExist without pullback.
int inverse_image(LimitContext& ctx, MorId f, const SubobjectLattice& over_cod, const SubobjectLattice& over_dom, int cls);
std::vector<int> inverse_image_map(LimitContext& ctx, MorId f, const SubobjectLattice& over_cod, const SubobjectLattice& over_dom);

struct InverseImageAdjoints {
  bool holds = true;
  MorId failing = kNoMorphism;
  int witness = -1;
};
/// Right adjoints to inverse images along every arrow of an exact category.
InverseImageAdjoints inverse_image_adjoints(LimitContext& ctx);

/// Pos(C/X) -> Sub(ΓX) sending a: A -> X to the image of Γa.
struct SliceSubobjectIso {
  bool holds = false;
  std::vector<int> map;  // Pos class -> Sub class
  std::string failure;
};
SliceSubobjectIso slice_vs_subobjects(LimitContext& completed, const ExCompletion& ex, ObjId x);

/// Spans Z <- S -> X, S -> Y of C against Sub(ΓZ x ΓX x ΓY).
struct SpanCorrespondence {
  bool holds = false;  // the class map is an order isomorphism
  bool regular_epi_restriction = false;
  bool iso_restriction = false;
  PosetReflection spans;     // elements index `span_data`
  SubobjectLattice subobjects;
  std::vector<std::array<MorId, 3>> span_data;
  std::vector<int> map;  // span class -> subobject class
  std::string failure;
};
SpanCorrespondence spans_vs_subobjects(LimitContext& base, LimitContext& completed, const ExCompletion& ex, ObjId z,
                                       ObjId x, ObjId y);

// --- exponentials -----------------------------------------------------------------

/// W with a product cone over (W, X) and eval: W x X -> B.
struct Exponential {
  ObjId w = -1;
  Cone product;
  MorId eval = kNoMorphism;
};

struct ExponentialPair {
  ObjId x = -1;
  ObjId b = -1;
  std::optional<Exponential> exponential;
  std::string reason;  // set when none exists
};

struct CartesianClosedReport {
  bool holds = true;
  std::vector<ExponentialPair> pairs;  // X-major
  std::vector<std::pair<ObjId, ObjId>> failing;
};

/// hom(Z, W) -> hom(Z x X, B), g |-> eval (g x X), is a bijection for all Z.
bool is_exponential(LimitContext& ctx, ObjId x, ObjId b, const Exponential& e);
std::optional<Exponential> find_exponential(LimitContext& ctx, ObjId x, ObjId b);
CartesianClosedReport verify_cartesian_closed(LimitContext& ctx);

struct SliceReport {
  ObjId base = -1;
  CartesianClosedReport report;
};
struct LccReport {
  bool holds = true;
  std::vector<SliceReport> slices;
};
/// verify_cartesian_closed on every slice.
LccReport verify_lcc(LimitContext& ctx);

/// The exponential of Γx and B in the completion, built from a full diagram.
struct WccResult {
  MorId cover_b = kNoMorphism;  // ΓY ->> B
  ObjId y = -1;                 // base object
  FullDiagramDatum full;        // in the base
  Cone triple;                  // product ΓU x ΓX x B
  MorId gamma = kNoMorphism;    // I >-> ΓU x ΓX x B
  SubobjectLattice sub_u;       // subobjects of ΓU
  std::vector<char> criterion;  // per class of sub_u
  int phi = -1;                 // class of the largest subobject satisfying it
  MorId phi_mono = kNoMorphism;
  Cone fx;                      // product F x ΓX
  MorId eval = kNoMorphism;     // F x ΓX -> B
  bool weakly_terminal = false;
  ObjId w = -1;                 // completed object covering F, in the projective cover
  MorId cover_w = kNoMorphism;
  Cone wx;
  MorId eval_w = kNoMorphism;
  bool w_weakly_terminal = false;
};
/// Throws NoCover, NoFullDiagram, CriterionCheckFailed.
WccResult construct_exponential_wcc(LimitContext& base, LimitContext& completed, const ExCompletion& ex, ObjId x, ObjId b);
/// Every g: Z x X -> B with Z projective factors as eval (h x X).
bool weakly_terminal(LimitContext& completed, const std::vector<ObjId>& projective, ObjId x, ObjId b, ObjId w,
                     const Cone& wx, MorId eval);

}  // namespace exwlex
