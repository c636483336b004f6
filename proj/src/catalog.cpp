#include "exwlex/catalog.hpp"

#include "exwlex/builders.hpp"

namespace exwlex::catalog {

FinCategory terminal() { return make_terminal(); }

FinCategory chain(int n) {
  std::vector<std::string> objs;
  std::vector<std::pair<std::string, std::string>> leq;
  for (int i = 0; i < n; ++i) {
    objs.push_back(std::to_string(i));
    if (i > 0) leq.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return make_preorder(objs, leq);
}

FinCategory diamond() { return make_preorder({"0", "m", "a", "b", "1"}, {{"0", "m"}, {"m", "a"}, {"m", "b"}, {"a", "1"}, {"b", "1"}}); }

FinCategory boolean_square() { return make_preorder({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}); }

FinCategory chain_dup() { return make_preorder({"0", "1", "1b", "2"}, {{"0", "1"}, {"1", "1b"}, {"1b", "1"}, {"1", "2"}}); }

FinCategory m3() {
  return make_preorder({"0", "a", "b", "c", "1"},
                       {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

FinCategory n5() { return make_preorder({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}}); }

FinCategory parallel_pair() { return make_parallel_pair(); }

FinCategory projections() {
  return make_concrete({{"T", 1}, {"V", 2}, {"Y", 2}}, {{"a0", "T", "V", {0}},
                                                         {"a1", "T", "V", {1}},
                                                         {"!V", "V", "T", {0, 0}},
                                                         {"!Y", "Y", "T", {0, 0}},
                                                         {"f", "V", "Y", {0, 1}}});
}

FinCategory noneffective() {
  // R = A x A, (i, j) encoded as 2i + j
  return make_concrete({{"A", 2}, {"R", 4}}, {{"r1", "R", "A", {0, 0, 1, 1}},
                                               {"r2", "R", "A", {0, 1, 0, 1}},
                                               {"d", "A", "R", {0, 3}},
                                               {"s", "R", "R", {0, 2, 1, 3}}});
}

FinCategory interval() { return make_finset({{"T", 1}, {"A", 2}, {"AA", 4}}); }

std::vector<Entry> all() {
  return {
      {"terminal", terminal},
      {"chain3", [] { return chain(3); }},
      {"chain4", [] { return chain(4); }},
      {"diamond", diamond},
      {"boolean_square", boolean_square},
      {"chain_dup", chain_dup},
      {"m3", m3},
      {"n5", n5},
      {"parallel_pair", parallel_pair},
      {"projections", projections},
      {"noneffective", noneffective},
  };
}

}  // namespace exwlex::catalog
