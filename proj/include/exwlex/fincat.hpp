#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace exwlex {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr MorId kNoMorphism = -1;

struct RawMorphism {
  std::string id;
  std::string dom;
  std::string cod;
};

/// Unvalidated category description, as read from the external format.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object -> morphism
  std::vector<std::array<std::string, 3>> compose;              // [g, f, g∘f]
};

/// A validated finite category. Objects and morphisms are dense indices in
/// declaration order; composition is an O(1) table lookup. Immutable after
/// construction and safe to share between threads.
class FinCategory {
 public:
  FinCategory() = default;

  std::size_t num_objects() const noexcept { return object_names_.size(); }
  std::size_t num_morphisms() const noexcept { return morphism_names_.size(); }

  ObjId dom(MorId f) const { return dom_[f]; }
  ObjId cod(MorId f) const { return cod_[f]; }
  MorId identity(ObjId x) const { return identity_[x]; }
  bool is_identity(MorId f) const { return identity_[dom_[f]] == f; }
  bool composable(MorId g, MorId f) const { return cod_[f] == dom_[g]; }

  /// g∘f, or kNoMorphism when cod f != dom g.
  MorId compose(MorId g, MorId f) const { return table_[static_cast<std::size_t>(g) * num_morphisms() + f]; }
  MorId compose(MorId h, MorId g, MorId f) const { return compose(h, compose(g, f)); }

  std::span<const MorId> hom(ObjId a, ObjId b) const { return homs_[static_cast<std::size_t>(a) * num_objects() + b]; }
  std::span<const MorId> outgoing(ObjId a) const { return outgoing_[a]; }
  std::span<const MorId> incoming(ObjId b) const { return incoming_[b]; }

  const std::string& object_name(ObjId x) const { return object_names_[x]; }
  const std::string& morphism_name(MorId f) const { return morphism_names_[f]; }
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  /// Lookup by external id; throws UnknownObject / UnknownMorphism.
  ObjId object(std::string_view name) const;
  MorId morphism(std::string_view name) const;

  /// Every hom-set has at most one element.
  bool is_thin() const;
  /// Thin and no two distinct objects are isomorphic.
  bool is_poset() const;

  RawCategory to_raw() const;

 private:
  friend FinCategory validate_category(const RawCategory& raw);

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::vector<ObjId> dom_, cod_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::vector<MorId>> outgoing_, incoming_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

/// Verifies every category axiom exhaustively. Throws Error with kind
/// DuplicateId, UnknownObject, UnknownMorphism, BadComposite, MissingComposite,
/// IdentityLawViolation or NonAssociative, naming the offending ids.
FinCategory validate_category(const RawCategory& raw);

inline CategoryPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

/// Re-asserts associativity over every composable triple.
bool check_associativity(const FinCategory& c);

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  ObjId map_object(ObjId x) const { return on_objects[x]; }
  MorId map_morphism(MorId f) const { return on_morphisms[f]; }
};

/// Throws NotAFunctor unless dom/cod, identities and composition are preserved.
void validate_functor(const Functor& f);
Functor identity_functor(const CategoryPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);
bool is_full(const Functor& f);
bool is_faithful(const Functor& f);

/// Partition of the morphisms into classes that respect dom/cod and
/// composition on both sides.
class Congruence {
 public:
  /// Validates; throws NotACongruence with a violating pair.
  static Congruence from_classes(CategoryPtr base, std::vector<int> class_of);
  static Congruence from_pairs(CategoryPtr base, std::span<const std::pair<MorId, MorId>> related);
  static Congruence discrete(CategoryPtr base);

  const CategoryPtr& base() const noexcept { return base_; }
  int class_of(MorId f) const { return class_of_[f]; }
  std::size_t num_classes() const noexcept { return members_.size(); }
  const std::vector<MorId>& members(int c) const { return members_[c]; }
  /// Minimum morphism id in the class.
  MorId representative(int c) const { return members_[c].front(); }
  bool related(MorId f, MorId g) const { return class_of_[f] == class_of_[g]; }

 private:
  Congruence() = default;
  CategoryPtr base_;
  std::vector<int> class_of_;
  std::vector<std::vector<MorId>> members_;
};

struct SliceCategory {
  CategoryPtr category;
  Functor forget;     // C/X -> C
  ObjId base_object;  // X in C
  /// Object of C/X for each morphism of C with codomain X (or -1).
  std::vector<ObjId> object_of_arrow;
  /// The arrow into X represented by each slice object.
  std::vector<MorId> arrow_of_object;
};

/// C/X: objects are arrows into X, morphisms commuting triangles.
SliceCategory slice_category(const CategoryPtr& c, ObjId x);

struct QuotientCategory {
  CategoryPtr category;
  Functor projection;
};

/// C/K; morphisms are K-classes named "[rep]". Composition independence of
/// representatives is re-verified (throws NotACongruence).
QuotientCategory quotient_by_congruence(const Congruence& k);

struct Subcategory {
  CategoryPtr category;
  Functor inclusion;
  std::vector<ObjId> objects;  // ids in the ambient category
};

/// Full subcategory on the listed objects (kept in the given order).
Subcategory full_subcategory(const CategoryPtr& c, std::span<const ObjId> objects);

struct MorphismFlags {
  bool mono = false;
  bool epi = false;
  bool split_mono = false;
  bool split_epi = false;
  bool iso = false;
};

MorphismFlags classify_morphism(const FinCategory& c, MorId f);
bool is_mono(const FinCategory& c, MorId f);
bool is_epi(const FinCategory& c, MorId f);
/// Some g with g∘f = id and f∘g = id, or kNoMorphism.
MorId inverse_of(const FinCategory& c, MorId f);
/// First isomorphism a -> b in declaration order, or kNoMorphism.
MorId find_iso(const FinCategory& c, ObjId a, ObjId b);

/// An isomorphism of categories found by backtracking, if one exists.
std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b);

struct Skeleton {
  Subcategory sub;                   // one object per iso class (first in order)
  std::vector<ObjId> representative; // per object of C: its representative in C
  std::vector<MorId> to_rep;         // per object of C: a chosen iso x -> rep(x)
  Functor retraction;                // C -> skeleton, an equivalence
};

Skeleton skeleton(const CategoryPtr& c);

}  // namespace exwlex
