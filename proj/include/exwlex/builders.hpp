#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exwlex/fincat.hpp"

namespace exwlex {

/// Preorder as a thin category. `leq` lists generating pairs (a, b) meaning
/// a -> b; the reflexive-transitive closure is taken. Identities are named
/// "id_x", other arrows "a->b".
FinCategory make_preorder(const std::vector<std::string>& objects,
                          const std::vector<std::pair<std::string, std::string>>& leq);

struct FiniteSet {
  std::string name;
  int size;
};

struct SetFunction {
  std::string name;
  std::string dom;
  std::string cod;
  std::vector<int> table;
};

/// Subcategory of finite sets generated by the given functions (plus
/// identities), closed under composition. Composites are named "g.f" after
/// the first factorization found in breadth-first order.
FinCategory make_concrete(const std::vector<FiniteSet>& sets, const std::vector<SetFunction>& generators);

/// Full subcategory of finite sets on the given sets: every function is a
/// morphism, named "D->C:t0t1..." by its value table.
FinCategory make_finset(const std::vector<FiniteSet>& sets);

/// Two objects a, b and two parallel arrows f, g: a -> b.
FinCategory make_parallel_pair();

FinCategory make_terminal();

}  // namespace exwlex
