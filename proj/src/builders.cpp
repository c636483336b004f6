#include "exwlex/builders.hpp"

#include <deque>
#include <map>

#include "exwlex/error.hpp"

namespace exwlex {

FinCategory make_preorder(const std::vector<std::string>& objects,
                          const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = objects.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[objects[i]] = i;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : leq) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) fail(ErrorKind::UnknownObject, "preorder relation names unknown object");
    le[ia->second][ib->second] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  auto arrow = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + objects[i] : objects[i] + "->" + objects[j];
  };
  RawCategory raw;
  raw.objects = objects;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) raw.morphisms.push_back({arrow(i, j), objects[i], objects[j]});
  for (std::size_t i = 0; i < n; ++i) raw.identities.emplace_back(objects[i], arrow(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (le[i][j] && le[j][k]) raw.compose.push_back({arrow(j, k), arrow(i, j), arrow(i, k)});
  return validate_category(raw);
}

namespace {

struct ConcreteMorphism {
  std::string name;
  std::size_t dom, cod;
  std::vector<int> table;
};

std::vector<int> compose_tables(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

RawCategory raw_from_concrete(const std::vector<FiniteSet>& sets, const std::vector<ConcreteMorphism>& mors) {
  RawCategory raw;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, std::size_t> lookup;
  for (const auto& s : sets) raw.objects.push_back(s.name);
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const auto& m = mors[i];
    raw.morphisms.push_back({m.name, sets[m.dom].name, sets[m.cod].name});
    lookup[{m.dom, m.cod, m.table}] = i;
  }
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<int> id(sets[s].size);
    for (int i = 0; i < sets[s].size; ++i) id[i] = i;
    raw.identities.emplace_back(sets[s].name, mors[lookup.at({s, s, id})].name);
  }
  for (const auto& f : mors)
    for (const auto& g : mors)
      if (g.dom == f.cod) {
        const auto& gf = mors[lookup.at({f.dom, g.cod, compose_tables(g.table, f.table)})];
        raw.compose.push_back({g.name, f.name, gf.name});
      }
  return raw;
}

std::size_t set_index(const std::vector<FiniteSet>& sets, const std::string& name) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].name == name) return i;
  fail(ErrorKind::UnknownObject, "unknown set '" + name + "'", {name});
}

}  // namespace

FinCategory make_concrete(const std::vector<FiniteSet>& sets, const std::vector<SetFunction>& generators) {
  std::vector<ConcreteMorphism> mors;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, std::size_t> seen;
  auto add = [&](ConcreteMorphism m) {
    auto key = std::make_tuple(m.dom, m.cod, m.table);
    if (seen.count(key) != 0) return false;
    seen[key] = mors.size();
    mors.push_back(std::move(m));
    return true;
  };
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<int> id(sets[s].size);
    for (int i = 0; i < sets[s].size; ++i) id[i] = i;
    add({"id_" + sets[s].name, s, s, id});
  }
  std::vector<std::size_t> gens;
  for (const auto& g : generators) {
    std::size_t d = set_index(sets, g.dom), c = set_index(sets, g.cod);
    if (static_cast<int>(g.table.size()) != sets[d].size) fail(ErrorKind::InvalidInput, "function table size mismatch", {g.name});
    for (int v : g.table)
      if (v < 0 || v >= sets[c].size) fail(ErrorKind::InvalidInput, "function value out of range", {g.name});
    if (add({g.name, d, c, g.table})) gens.push_back(mors.size() - 1);
  }
  // Breadth-first closure: postcompose every known morphism with generators.
  for (std::size_t i = 0; i < mors.size(); ++i) {
    for (std::size_t gi : gens) {
      const ConcreteMorphism g = mors[gi];
      const ConcreteMorphism f = mors[i];
      if (g.dom != f.cod) continue;
      add({g.name + "." + f.name, f.dom, g.cod, compose_tables(g.table, f.table)});
    }
  }
  return validate_category(raw_from_concrete(sets, mors));
}

FinCategory make_finset(const std::vector<FiniteSet>& sets) {
  std::vector<ConcreteMorphism> mors;
  for (std::size_t d = 0; d < sets.size(); ++d)
    for (std::size_t c = 0; c < sets.size(); ++c) {
      const int n = sets[d].size, k = sets[c].size;
      if (n > 0 && k == 0) continue;
      std::vector<int> t(n, 0);
      for (;;) {
        std::string name;
        bool identity = d == c;
        for (int i = 0; i < n; ++i) identity = identity && t[i] == i;
        if (identity) {
          name = "id_" + sets[d].name;
        } else {
          name = sets[d].name + "->" + sets[c].name + ":";
          for (int v : t) name += std::to_string(v);
        }
        mors.push_back({name, d, c, t});
        int i = n - 1;
        while (i >= 0 && ++t[i] == k) t[i--] = 0;
        if (i < 0) break;
      }
    }
  return validate_category(raw_from_concrete(sets, mors));
}

FinCategory make_parallel_pair() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
  raw.identities = {{"a", "id_a"}, {"b", "id_b"}};
  raw.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"f", "id_a", "f"},
                 {"g", "id_a", "g"},       {"id_b", "f", "f"},       {"id_b", "g", "g"}};
  return validate_category(raw);
}

FinCategory make_terminal() { return make_preorder({"*"}, {}); }

}  // namespace exwlex
