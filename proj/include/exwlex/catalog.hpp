#pragma once

#include <string>
#include <vector>

#include "exwlex/fincat.hpp"

namespace exwlex::catalog {

// Named categories shipped as fixtures.

FinCategory terminal();
FinCategory chain(int n);  // 0 <= 1 <= ... <= n-1
/// 0 < m < a, b < 1 with a meet b = m.
FinCategory diamond();
/// 2 x 2: 0 < a, b < 1.
FinCategory boolean_square();
/// 0 < 1 ~ 1b < 2 with 1 and 1b isomorphic.
FinCategory chain_dup();
/// 0 < a, b, c < 1 with a, b, c pairwise incomparable.
FinCategory m3();
/// Pentagon 0 < a < c < 1, 0 < b < 1.
FinCategory n5();
FinCategory parallel_pair();
/// Sets T(1), V(2), Y(2) with a0, a1: T -> V, !V, !Y and f: V -> Y.
/// (V, !V, !V) is a weak product of (T, T) that is not a product, and
/// f is not determined by its projections.
FinCategory projections();
/// Codiscrete relation R = A x A on A = {0, 1} with r1, r2, diagonal d and
/// swap s, closed under composition. (r1, r2) has no coequalizer.
FinCategory noneffective();
/// All functions between T(1), A(2), AA(4).
FinCategory interval();

struct Entry {
  std::string name;
  FinCategory (*build)();
};
/// Every category above in corpus order.
std::vector<Entry> all();

}  // namespace exwlex::catalog
