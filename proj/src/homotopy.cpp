#include "exwlex/homotopy.hpp"

#include <algorithm>

#include "exwlex/error.hpp"

namespace exwlex {

namespace {

const std::string& mname(const FinCategory& c, MorId f) { return c.morphism_name(f); }
const std::string& oname(const FinCategory& c, ObjId x) { return c.object_name(x); }

bool is_iso(const FinCategory& c, MorId f) { return inverse_of(c, f) != kNoMorphism; }

void check_class(const FinCategory& c, const std::vector<char>& cls, const char* which) {
  const auto n = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < n; ++f)
    if (!cls[f] && is_iso(c, f))
      fail(ErrorKind::ClassNotClosed, std::string(which) + " miss an isomorphism", {mname(c, f)});
  for (MorId f = 0; f < n; ++f) {
    if (!cls[f]) continue;
    for (MorId g : c.outgoing(c.cod(f)))
      if (cls[g] && !cls[c.compose(g, f)])
        fail(ErrorKind::ClassNotClosed, std::string(which) + " not closed under composition", {mname(c, g), mname(c, f)});
  }
}

void check_two_out_of_six(const FinCategory& c, const PathStructure& ps) {
  const auto n = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < n; ++f)
    for (MorId g : c.outgoing(c.cod(f))) {
      if (!ps.is_weq(c.compose(g, f))) continue;
      for (MorId h : c.outgoing(c.cod(g))) {
        if (!ps.is_weq(c.compose(h, g))) continue;
        for (MorId m : {f, g, h, c.compose(h, g, f)})
          if (!ps.is_weq(m))
            fail(ErrorKind::TwoOutOfSixViolation, "weq not closed under 2-out-of-6",
                 {mname(c, h), mname(c, g), mname(c, f), mname(c, m)});
      }
    }
}

/// legs[i] p r = id for the first `legs` legs.
bool factors_diagonal(const FinCategory& c, ObjId x, MorId r, MorId p, const Cone& cone, std::size_t legs) {
  if (c.dom(r) != x || c.cod(r) != c.dom(p) || c.cod(p) != cone.apex) return false;
  const MorId pr = c.compose(p, r);
  for (std::size_t i = 0; i < legs; ++i)
    if (c.compose(cone.legs[i], pr) != c.identity(x)) return false;
  return true;
}

json cone_json(const FinCategory& c, const Cone& k) {
  json legs = json::array();
  for (MorId l : k.legs) legs.push_back(mname(c, l));
  return {{"apex", oname(c, k.apex)}, {"legs", legs}};
}

Cone cone_from(const FinCategory& c, const json& j) {
  Cone k;
  k.apex = c.object(j.at("apex").get<std::string>());
  for (const auto& l : j.at("legs")) k.legs.push_back(c.morphism(l.get<std::string>()));
  return k;
}

std::vector<std::string> names(const FinCategory& c, std::initializer_list<MorId> ms) {
  std::vector<std::string> out;
  for (MorId m : ms) out.push_back(mname(c, m));
  return out;
}

}  // namespace

// --- validation ------------------------------------------------------------------

void validate_path_structure(LimitContext& ctx, const PathStructure& ps) {
  const auto& c = ctx.category();
  auto term = ctx.first_limit(Diagram::terminal());
  if (!term) fail(ErrorKind::NoTerminalObject, "no terminal object");
  check_class(c, ps.fibration, "fibrations");
  check_class(c, ps.weq, "weak equivalences");
  check_two_out_of_six(c, ps);

  const auto nobj = static_cast<ObjId>(c.num_objects());
  for (ObjId x = 0; x < nobj; ++x)
    for (MorId t : c.hom(x, term->apex))
      if (!ps.is_fibration(t)) fail(ErrorKind::TerminalArrowNotFibration, "terminal arrow is not a fibration", {mname(c, t)});

  const auto n = static_cast<MorId>(c.num_morphisms());
  for (MorId p = 0; p < n; ++p) {
    if (!ps.is_fibration(p)) continue;
    for (MorId g : c.incoming(c.cod(p))) {
      auto pb = ctx.first_limit(Diagram::pullback(c, p, g));
      if (!pb) fail(ErrorKind::MissingPullbackAlongFibration, "no pullback along a fibration", {mname(c, p), mname(c, g)});
      const MorId q = pb->legs[1];
      if (!ps.is_fibration(q)) fail(ErrorKind::NotPullbackStable, "pulled-back fibration is not a fibration", names(c, {p, g, q}));
      if (ps.is_weq(p) && !ps.is_weq(q))
        fail(ErrorKind::NotPullbackStable, "pulled-back acyclic fibration is not acyclic", names(c, {p, g, q}));
    }
  }

  for (MorId p = 0; p < n; ++p) {
    if (!ps.is_fibration(p) || !ps.is_weq(p)) continue;
    const auto homs = c.hom(c.cod(p), c.dom(p));
    bool found = std::any_of(homs.begin(), homs.end(), [&](MorId s) { return c.compose(p, s) == c.identity(c.cod(p)); });
    if (!found) fail(ErrorKind::MissingSection, "acyclic fibration without section", {mname(c, p)});
  }

  for (ObjId x = 0; x < nobj; ++x) {
    if (!ps.path_objects[x]) fail(ErrorKind::MissingPathObject, "no path object", {oname(c, x)});
    const auto& po = *ps.path_objects[x];
    Diagram d = Diagram::product({x, x});
    if (!is_cone(c, d, po.product) || !ctx.is_limit(d, po.product, false).holds)
      fail(ErrorKind::BadPathObject, "designated cone is not a product X x X", {oname(c, x)});
    if (!factors_diagonal(c, x, po.r, po.p, po.product, 2))
      fail(ErrorKind::BadPathObject, "p r is not the diagonal", {oname(c, x)});
    if (!ps.is_weq(po.r)) fail(ErrorKind::BadPathObject, "r is not a weak equivalence", {oname(c, x), mname(c, po.r)});
    if (!ps.is_fibration(po.p)) fail(ErrorKind::BadPathObject, "p is not a fibration", {oname(c, x), mname(c, po.p)});
  }

  for (const auto& [q, po] : ps.fibrewise) {
    if (!ps.is_fibration(q)) fail(ErrorKind::BadPathObject, "fibrewise path object over a non-fibration", {mname(c, q)});
    Diagram d = Diagram::pullback(c, q, q);
    if (!is_cone(c, d, po.pullback) || !ctx.is_limit(d, po.pullback, false).holds)
      fail(ErrorKind::BadPathObject, "designated cone is not a kernel pair", {mname(c, q)});
    if (!factors_diagonal(c, c.dom(q), po.r, po.p, po.pullback, 2))
      fail(ErrorKind::BadPathObject, "p r is not the fibrewise diagonal", {mname(c, q)});
    if (!ps.is_weq(po.r)) fail(ErrorKind::BadPathObject, "r is not a weak equivalence", {mname(c, q), mname(c, po.r)});
    if (!ps.is_fibration(po.p)) fail(ErrorKind::BadPathObject, "p is not a fibration", {mname(c, q), mname(c, po.p)});
  }
}

PathStructure load_path_structure(LimitContext& ctx, const json& doc, bool local_mode) {
  const auto& c = ctx.category();
  if (!doc.contains("marked")) fail(ErrorKind::InvalidInput, "document has no marked section");
  const auto& m = doc.at("marked");
  PathStructure ps;
  ps.base = ctx.category_ptr();
  ps.local_mode = local_mode;
  ps.fibration.assign(c.num_morphisms(), 0);
  ps.weq.assign(c.num_morphisms(), 0);
  ps.path_objects.resize(c.num_objects());
  try {
    for (const auto& f : m.at("fibrations")) ps.fibration[c.morphism(f.get<std::string>())] = 1;
    for (const auto& f : m.at("weak_equivalences")) ps.weq[c.morphism(f.get<std::string>())] = 1;
    if (m.contains("path_objects"))
      for (const auto& [x, po] : m.at("path_objects").items())
        ps.path_objects[c.object(x)] = PathObject{c.object(po.at("P").get<std::string>()), c.morphism(po.at("r").get<std::string>()),
                                                  c.morphism(po.at("p").get<std::string>()), cone_from(c, po.at("product_cone"))};
    if (m.contains("fibrewise_path_objects"))
      for (const auto& [q, po] : m.at("fibrewise_path_objects").items())
        ps.fibrewise[c.morphism(q)] =
            FibrewisePathObject{c.object(po.at("P").get<std::string>()), c.morphism(po.at("r").get<std::string>()),
                                c.morphism(po.at("p").get<std::string>()), cone_from(c, po.at("pullback_cone"))};
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed marked section: ") + e.what());
  }
  if (!local_mode) validate_path_structure(ctx, ps);
  return ps;
}

json path_structure_to_json(const PathStructure& ps) {
  const auto& c = ps.category();
  json fib = json::array(), weq = json::array(), pos = json::object(), fw = json::object();
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    if (ps.is_fibration(f)) fib.push_back(mname(c, f));
    if (ps.is_weq(f)) weq.push_back(mname(c, f));
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    if (const auto& po = ps.path_objects[x])
      pos[oname(c, x)] = {{"P", oname(c, po->obj)}, {"r", mname(c, po->r)}, {"p", mname(c, po->p)}, {"product_cone", cone_json(c, po->product)}};
  for (const auto& [q, po] : ps.fibrewise)
    fw[mname(c, q)] = {{"P", oname(c, po.obj)}, {"r", mname(c, po.r)}, {"p", mname(c, po.p)}, {"pullback_cone", cone_json(c, po.pullback)}};
  return {{"fibrations", fib}, {"weak_equivalences", weq}, {"path_objects", pos}, {"fibrewise_path_objects", fw}};
}

PathStructure trivial_path_structure(LimitContext& ctx) {
  const auto& c = ctx.category();
  PathStructure ps;
  ps.base = ctx.category_ptr();
  ps.fibration.assign(c.num_morphisms(), 1);
  ps.weq.assign(c.num_morphisms(), 0);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) ps.weq[f] = is_iso(c, f);
  ps.path_objects.resize(c.num_objects());
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) {
    auto prod = ctx.first_limit(Diagram::product({x, x}));
    if (!prod) fail(ErrorKind::DoesNotExist, "no product X x X", {oname(c, x)});
    const MorId id = c.identity(x);
    ps.path_objects[x] = PathObject{x, id, ctx.mediator(*prod, Cone{x, {id, id}}), *prod};
  }
  for (MorId q = 0; q < static_cast<MorId>(c.num_morphisms()); ++q) {
    auto kp = ctx.first_limit(Diagram::pullback(c, q, q));
    if (!kp) continue;
    const ObjId a = c.dom(q);
    const MorId id = c.identity(a);
    ps.fibrewise[q] = FibrewisePathObject{a, id, ctx.mediator(*kp, Cone{a, {id, id, q}}), *kp};
  }
  return ps;
}

PathStructure interval_structure(LimitContext& ctx) {
  const auto& c = ctx.category();
  PathStructure ps;
  ps.base = ctx.category_ptr();
  ps.local_mode = true;
  ps.fibration.assign(c.num_morphisms(), 1);
  ps.weq.assign(c.num_morphisms(), 1);
  ps.path_objects.resize(c.num_objects());
  const ObjId t = c.object("T"), a = c.object("A"), aa = c.object("AA");
  const MorId id_t = c.identity(t), pi1 = c.morphism("AA->A:0011"), pi2 = c.morphism("AA->A:0101");
  const MorId diag = c.morphism("A->AA:03");
  ps.path_objects[t] = PathObject{t, id_t, id_t, Cone{t, {id_t, id_t}}};
  ps.path_objects[a] = PathObject{aa, diag, c.identity(aa), Cone{aa, {pi1, pi2}}};
  ps.fibrewise[c.morphism("A->T:00")] = FibrewisePathObject{aa, diag, c.identity(aa), Cone{aa, {pi1, pi2, c.morphism("AA->T:0000")}}};
  return ps;
}

// --- homotopy --------------------------------------------------------------------

MorId are_homotopic(const PathStructure& ps, MorId f, MorId g) {
  const auto& c = ps.category();
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) fail(ErrorKind::InvalidInput, "homotopy between non-parallel arrows", names(c, {f, g}));
  const auto& po = ps.path_objects[c.cod(f)];
  if (!po) fail(ErrorKind::MissingPathObject, "no path object", {oname(c, c.cod(f))});
  auto ok = [&](MorId h) {
    const MorId ph = c.compose(po->p, h);
    return c.compose(po->product.legs[0], ph) == f && c.compose(po->product.legs[1], ph) == g;
  };
  if (f == g && ok(c.compose(po->r, f))) return c.compose(po->r, f);
  for (MorId h : c.hom(c.dom(f), po->obj))
    if (ok(h)) return h;
  return kNoMorphism;
}

MorId are_fibrewise_homotopic(const PathStructure& ps, MorId q, MorId f, MorId g) {
  const auto& c = ps.category();
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.dom(q) || c.cod(g) != c.dom(q) || c.compose(q, f) != c.compose(q, g))
    fail(ErrorKind::InvalidInput, "arrows do not agree over the fibration", names(c, {q, f, g}));
  auto it = ps.fibrewise.find(q);
  if (it == ps.fibrewise.end()) fail(ErrorKind::MissingFibrewisePathObject, "no fibrewise path object", {mname(c, q)});
  const auto& po = it->second;
  auto ok = [&](MorId h) {
    const MorId ph = c.compose(po.p, h);
    return c.compose(po.pullback.legs[0], ph) == f && c.compose(po.pullback.legs[1], ph) == g;
  };
  if (f == g && ok(c.compose(po.r, f))) return c.compose(po.r, f);
  for (MorId h : c.hom(c.dom(f), po.obj))
    if (ok(h)) return h;
  return kNoMorphism;
}

Congruence homotopy_congruence(const PathStructure& ps) {
  const auto& c = ps.category();
  const auto n = static_cast<std::size_t>(c.num_morphisms());
  const auto nobj = static_cast<ObjId>(c.num_objects());
  std::vector<char> rel(n * n, 0);
  auto at = [&](MorId f, MorId g) -> char& { return rel[static_cast<std::size_t>(f) * n + g]; };
  for (ObjId a = 0; a < nobj; ++a)
    for (ObjId b = 0; b < nobj; ++b)
      for (MorId f : c.hom(a, b))
        for (MorId g : c.hom(a, b))
          at(f, g) = ps.local_mode && !ps.path_objects[b] ? f == g : are_homotopic(ps, f, g) != kNoMorphism;

  auto broken = [&](const char* what, std::initializer_list<MorId> ms) {
    fail(ErrorKind::NotACongruence, std::string("homotopy relation fails ") + what, names(c, ms));
  };
  for (ObjId a = 0; a < nobj; ++a)
    for (ObjId b = 0; b < nobj; ++b) {
      const auto hom = c.hom(a, b);
      for (MorId f : hom)
        if (!at(f, f)) broken("reflexivity", {f});
      for (MorId f : hom)
        for (MorId g : hom)
          if (at(f, g) && !at(g, f)) broken("symmetry", {f, g});
      for (MorId f : hom)
        for (MorId g : hom) {
          if (!at(f, g)) continue;
          for (MorId h : hom)
            if (at(g, h) && !at(f, h)) broken("transitivity", {f, g, h});
        }
    }
  for (MorId f = 0; f < static_cast<MorId>(n); ++f)
    for (MorId g : c.hom(c.dom(f), c.cod(f))) {
      if (!at(f, g)) continue;
      for (MorId h : c.outgoing(c.cod(f)))
        if (!at(c.compose(h, f), c.compose(h, g))) broken("left composition", {h, f, g});
      for (MorId k : c.incoming(c.dom(f)))
        if (!at(c.compose(f, k), c.compose(g, k))) broken("right composition", {f, g, k});
    }

  std::vector<int> class_of(n, -1);
  int next = 0;
  for (MorId f = 0; f < static_cast<MorId>(n); ++f) {
    if (class_of[f] >= 0) continue;
    for (MorId g : c.hom(c.dom(f), c.cod(f)))
      if (at(f, g)) class_of[g] = next;
    ++next;
  }
  return Congruence::from_classes(ps.base, std::move(class_of));
}

QuotientCategory homotopy_category(const PathStructure& ps) { return quotient_by_congruence(homotopy_congruence(ps)); }

MorId strictify(const PathStructure& ps, MorId f, MorId g, MorId k) {
  const auto& c = ps.category();
  if (!ps.is_fibration(f)) fail(ErrorKind::InvalidInput, "strictification along a non-fibration", {mname(c, f)});
  if (c.cod(k) != c.dom(f) || c.dom(k) != c.dom(g) || c.cod(g) != c.cod(f))
    fail(ErrorKind::InvalidInput, "triangle does not fit together", names(c, {f, g, k}));
  if (are_homotopic(ps, c.compose(f, k), g) == kNoMorphism)
    fail(ErrorKind::InvalidInput, "triangle does not commute up to homotopy", names(c, {f, g, k}));
  if (c.compose(f, k) == g) return k;
  for (MorId k2 : c.hom(c.dom(k), c.cod(k)))
    if (c.compose(f, k2) == g && are_homotopic(ps, k2, k) != kNoMorphism) return k2;
  fail(ErrorKind::NoStrictification, "no strict lift homotopic to k", names(c, {f, g, k}));
}

// --- factorization and fillers --------------------------------------------------------

Factorization2 factor_weq_fibration(LimitContext& ctx, const PathStructure& ps, MorId m) {
  const auto& c = ctx.category();
  const ObjId a = c.dom(m), q = c.cod(m);
  // E = A x_Q PQ along d0, c = (1, r m), p = d1 pr2
  if (const auto& po = ps.path_objects[q]) {
    const MorId d0 = c.compose(po->product.legs[0], po->p), d1 = c.compose(po->product.legs[1], po->p);
    if (auto e = ctx.first_limit(Diagram::pullback(c, m, d0))) {
      const MorId rm = c.compose(po->r, m);
      const MorId cm = ctx.mediator(*e, Cone{a, {c.identity(a), rm, m}});
      const MorId pm = c.compose(d1, e->legs[1]);
      if (cm != kNoMorphism && ps.is_weq(cm) && ps.is_fibration(pm) && c.compose(pm, cm) == m) return {cm, pm, true};
    }
  }
  for (ObjId e = 0; e < static_cast<ObjId>(c.num_objects()); ++e)
    for (MorId cm : c.hom(a, e)) {
      if (!ps.is_weq(cm)) continue;
      for (MorId pm : c.hom(e, q))
        if (ps.is_fibration(pm) && c.compose(pm, cm) == m) return {cm, pm, false};
    }
  fail(ErrorKind::NoFactorization, "no weq-then-fibration factorization", {mname(c, m)});
}

FillerResult homotopy_diagonal_filler(LimitContext& ctx, const PathStructure& ps, MorId f, MorId k, MorId g, MorId l) {
  const auto& c = ctx.category();
  if (c.dom(f) != c.dom(k) || c.cod(k) != c.dom(g) || c.cod(f) != c.dom(l) || c.cod(l) != c.cod(g) ||
      c.compose(g, k) != c.compose(l, f))
    fail(ErrorKind::InvalidInput, "square does not commute", names(c, {f, k, g, l}));
  if (!ps.is_weq(f)) fail(ErrorKind::InvalidInput, "left side is not a weak equivalence", {mname(c, f)});
  if (!ps.is_fibration(g)) fail(ErrorKind::InvalidInput, "right side is not a fibration", {mname(c, g)});

  auto is_filler = [&](MorId d) {
    return c.compose(g, d) == l && are_fibrewise_homotopic(ps, g, c.compose(d, f), k) != kNoMorphism;
  };

  FillerResult out;
  auto pb = ctx.first_limit(Diagram::pullback(c, l, g));
  if (!pb) fail(ErrorKind::NoFactorization, "no pullback of the fibration along the bottom", names(c, {l, g}));
  const MorId fk = ctx.mediator(*pb, Cone{c.dom(f), {f, k, c.compose(l, f)}});
  if (fk != kNoMorphism) {
    try {
      auto fac = factor_weq_fibration(ctx, ps, fk);
      // pr1 p: E -> B is an acyclic fibration; a section gives d
      const MorId t = c.compose(pb->legs[0], fac.p);
      for (MorId s : c.hom(c.cod(f), c.cod(fac.c))) {
        if (c.compose(t, s) != c.identity(c.cod(f))) continue;
        const MorId d = c.compose(pb->legs[1], fac.p, s);
        if (is_filler(d)) {
          out.d = d;
          out.constructed = true;
        }
        break;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoFactorization) throw;
    }
  }
  for (MorId d : c.hom(c.cod(f), c.cod(k)))
    if (is_filler(d)) out.fillers.push_back(d);
  if (out.fillers.empty()) fail(ErrorKind::NoFiller, "no homotopy diagonal filler", names(c, {f, k, g, l}));
  if (out.d == kNoMorphism) out.d = out.fillers.front();
  out.unique_up_to_homotopy = true;
  for (MorId a : out.fillers)
    for (MorId b : out.fillers)
      if (are_fibrewise_homotopic(ps, g, a, b) == kNoMorphism) out.unique_up_to_homotopy = false;
  return out;
}

// --- homotopy pullbacks -------------------------------------------------------------

HomotopyPullbackVerdict is_homotopy_pullback(const PathStructure& ps, MorId f, MorId g, const Cone& square) {
  const auto& c = ps.category();
  HomotopyPullbackVerdict v;
  if (c.cod(f) != c.cod(g)) {
    v.precondition_failure = "not a cospan";
    return v;
  }
  if (square.legs.size() < 2 || c.dom(square.legs[0]) != square.apex || c.dom(square.legs[1]) != square.apex ||
      c.cod(square.legs[0]) != c.dom(f) || c.cod(square.legs[1]) != c.dom(g)) {
    v.precondition_failure = "square legs do not fit the cospan";
    return v;
  }
  const MorId a = square.legs[0], b = square.legs[1];
  if (are_homotopic(ps, c.compose(f, a), c.compose(g, b)) == kNoMorphism) {
    v.precondition_failure = "square does not commute up to homotopy";
    return v;
  }
  for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z)
    for (MorId a2 : c.hom(z, c.dom(f)))
      for (MorId b2 : c.hom(z, c.dom(g))) {
        if (are_homotopic(ps, c.compose(f, a2), c.compose(g, b2)) == kNoMorphism) continue;
        bool found = false;
        for (MorId m : c.hom(z, square.apex))
          if (are_homotopic(ps, c.compose(a, m), a2) != kNoMorphism && are_homotopic(ps, c.compose(b, m), b2) != kNoMorphism) {
            found = true;
            break;
          }
        if (!found) {
          v.counterexample = Cone{z, {a2, b2, c.compose(f, a2)}};
          return v;
        }
      }
  v.holds = true;
  return v;
}

std::vector<Cone> homotopy_pullbacks(const PathStructure& ps, MorId f, MorId g) {
  const auto& c = ps.category();
  std::vector<Cone> out;
  for (ObjId p = 0; p < static_cast<ObjId>(c.num_objects()); ++p)
    for (MorId a : c.hom(p, c.dom(f)))
      for (MorId b : c.hom(p, c.dom(g))) {
        Cone sq{p, {a, b, c.compose(f, a)}};
        if (is_homotopy_pullback(ps, f, g, sq).holds) out.push_back(std::move(sq));
      }
  return out;
}

// --- homotopy weak dependent products --------------------------------------------------

HwdpVerdict is_hwdp(LimitContext& ctx, const PathStructure& ps, const HwdpDatum& d) {
  const auto& c = ctx.category();
  HwdpVerdict v;
  if (c.cod(d.g) != c.dom(d.f) || c.cod(d.u) != c.cod(d.f)) {
    v.precondition_failure = "arrows do not fit together";
    return v;
  }
  if (!ps.is_fibration(d.f) || !ps.is_fibration(d.g) || !ps.is_fibration(d.u)) {
    v.precondition_failure = "f, g and u must be fibrations";
    return v;
  }
  Diagram shape = Diagram::pullback(c, d.u, d.f);
  if (!is_cone(c, shape, d.pullback) || !ctx.is_limit(shape, d.pullback, false).holds) {
    v.precondition_failure = "square is not a pullback of (u, f)";
    return v;
  }
  if (c.dom(d.e) != d.pullback.apex || c.cod(d.e) != c.dom(d.g) || c.compose(d.g, d.e) != d.pullback.legs[1]) {
    v.precondition_failure = "g e != the projection to A";
    return v;
  }
  if (!ps.fibrewise.count(d.g)) fail(ErrorKind::MissingFibrewisePathObject, "no fibrewise path object", {mname(c, d.g)});

  struct Competitor {
    MorId u2;
    Cone pb;
    MorId e2;
  };
  std::vector<Competitor> comps;
  for (MorId u2 : c.incoming(c.cod(d.f))) {
    auto pb = ctx.first_limit(Diagram::pullback(c, u2, d.f));
    if (!pb) fail(ErrorKind::MissingPullbackAlongFibration, "no pullback along f", names(c, {u2, d.f}));
    for (MorId e2 : c.hom(pb->apex, c.dom(d.g)))
      if (c.compose(d.g, e2) == pb->legs[1]) comps.push_back({u2, *pb, e2});
  }
  std::vector<std::optional<HwdpWitness>> found(comps.size());
  std::size_t bad = first_failure(comps.size(), ctx.workers(), [&](std::size_t i) {
    const auto& q = comps[i];
    for (MorId k : c.hom(c.dom(q.u2), c.dom(d.u))) {
      ctx.meter().charge();
      if (c.compose(d.u, k) != q.u2) continue;
      const MorId ka = ctx.mediator(d.pullback, Cone{q.pb.apex, {c.compose(k, q.pb.legs[0]), q.pb.legs[1], q.pb.legs[2]}});
      if (ka == kNoMorphism) continue;
      const MorId h = are_fibrewise_homotopic(ps, d.g, c.compose(d.e, ka), q.e2);
      if (h != kNoMorphism) {
        found[i] = HwdpWitness{q.u2, q.e2, k, h};
        return true;
      }
    }
    return false;
  });
  v.holds = bad == comps.size();
  if (!v.holds) {
    v.counterexample = std::make_pair(comps[bad].u2, comps[bad].e2);
    return v;
  }
  for (auto& w : found) v.table.push_back(*w);
  return v;
}

std::vector<HwdpDatum> find_hwdp(LimitContext& ctx, const PathStructure& ps, MorId g, MorId f) {
  const auto& c = ctx.category();
  std::vector<HwdpDatum> out;
  for (MorId u : c.incoming(c.cod(f))) {
    if (!ps.is_fibration(u)) continue;
    auto pb = ctx.first_limit(Diagram::pullback(c, u, f));
    if (!pb) continue;
    for (MorId e : c.hom(pb->apex, c.dom(g))) {
      if (c.compose(g, e) != pb->legs[1]) continue;
      HwdpDatum d{g, f, u, *pb, e};
      if (is_hwdp(ctx, ps, d).holds) out.push_back(std::move(d));
    }
  }
  return out;
}

HwdpDatum hwdp_from_wdp(LimitContext& ctx, const PathStructure& ps, const DependentDatum& wdp) {
  const auto& c = ctx.category();
  if (!ps.is_fibration(wdp.y) || !ps.is_fibration(wdp.x))
    fail(ErrorKind::InvalidInput, "weak dependent product over non-fibrations", names(c, {wdp.y, wdp.x}));
  auto strict = is_weak_dependent_product(ctx, wdp);
  if (!strict.holds)
    fail(ErrorKind::InvalidInput,
         "datum is not a weak dependent product" + (strict.precondition_failure.empty() ? "" : ": " + strict.precondition_failure));
  const MorId g = wdp.y, f = wdp.x, w = wdp.u;
  auto fac = factor_weq_fibration(ctx, ps, w);
  auto wpb = ctx.first_limit(Diagram::pullback(c, w, f));
  auto upb = ctx.first_limit(Diagram::pullback(c, fac.p, f));
  if (!wpb || !upb) fail(ErrorKind::MissingPullbackAlongFibration, "no pullback along f", names(c, {w, fac.p, f}));
  // W x_I A -> V -> B, and c x A: W x_I A -> U x_I A
  const MorId mid = ctx.mediator(wdp.square, *wpb);
  if (mid == kNoMorphism) fail(ErrorKind::InvalidInput, "square is not a weak pullback");
  const MorId top = c.compose(wdp.f, mid);
  const MorId cxa = ctx.mediator(*upb, Cone{wpb->apex, {c.compose(fac.c, wpb->legs[0]), wpb->legs[1], wpb->legs[2]}});
  if (!ps.is_weq(cxa)) fail(ErrorKind::NoFiller, "c x A is not a weak equivalence", {mname(c, cxa)});
  auto filler = homotopy_diagonal_filler(ctx, ps, cxa, top, g, upb->legs[1]);
  return {g, f, fac.p, *upb, filler.d};
}

// --- homotopy full diagrams ------------------------------------------------------------

namespace {

std::string hofull_precondition(const PathStructure& ps, const DependentDatum& d) {
  const auto& c = ps.category();
  if (c.cod(d.y) != c.dom(d.x)) return "y and x are not composable";
  if (c.cod(d.u) != c.cod(d.x)) return "u does not land in the codomain of x";
  if (d.square.legs.size() != 3 || c.cod(d.p1()) != c.dom(d.u) || c.cod(d.p2()) != c.dom(d.x) || c.dom(d.p1()) != d.top() ||
      c.dom(d.p2()) != d.top())
    return "square legs do not fit (u, x)";
  if (c.dom(d.f) != d.top() || c.cod(d.f) != c.dom(d.y)) return "f has the wrong domain or codomain";
  if (are_homotopic(ps, c.compose(d.y, d.f), d.p2()) == kNoMorphism) return "y f is not homotopic to p2";
  if (!is_homotopy_pullback(ps, d.u, d.x, d.square).holds) return "square is not a homotopy pullback";
  return {};
}

bool hofull_factor(const PathStructure& ps, const DependentDatum& d, const DependentDatum& comp,
                   std::vector<std::optional<std::vector<Cone>>>& hpb_cache) {
  const auto& c = ps.category();
  for (MorId h : c.hom(c.dom(comp.u), c.dom(d.u))) {
    if (are_homotopic(ps, c.compose(d.u, h), comp.u) == kNoMorphism) continue;
    auto& pbs = hpb_cache[h];
    if (!pbs) pbs = homotopy_pullbacks(ps, d.p1(), h);
    for (const auto& p : *pbs) {
      const MorId b = p.legs[0], a = p.legs[1];
      const MorId p2b = c.compose(d.p2(), b), fb = c.compose(d.f, b);
      for (MorId k : c.hom(p.apex, comp.top()))
        if (are_homotopic(ps, c.compose(comp.p1(), k), a) != kNoMorphism &&
            are_homotopic(ps, c.compose(comp.p2(), k), p2b) != kNoMorphism &&
            are_homotopic(ps, c.compose(comp.f, k), fb) != kNoMorphism)
          return true;
    }
  }
  return false;
}

}  // namespace

std::vector<DependentDatum> homotopy_dependent_data(const PathStructure& ps, MorId y, MorId x) {
  const auto& c = ps.category();
  if (c.cod(y) != c.dom(x)) fail(ErrorKind::InvalidInput, "arrows are not composable", names(c, {y, x}));
  std::vector<DependentDatum> out;
  for (MorId u : c.incoming(c.cod(x)))
    for (const auto& sq : homotopy_pullbacks(ps, u, x))
      for (MorId f : c.hom(sq.apex, c.dom(y)))
        if (are_homotopic(ps, c.compose(y, f), sq.legs[1]) != kNoMorphism) out.push_back({y, x, u, sq, f});
  return out;
}

HoFullVerdict is_homotopy_full_diagram(const PathStructure& ps, const DependentDatum& d) {
  const auto& c = ps.category();
  HoFullVerdict v;
  v.precondition_failure = hofull_precondition(ps, d);
  if (!v.precondition_failure.empty()) return v;
  std::vector<std::optional<std::vector<Cone>>> cache(c.num_morphisms());
  for (const auto& comp : homotopy_dependent_data(ps, d.y, d.x))
    if (!hofull_factor(ps, d, comp, cache)) {
      v.counterexample = comp;
      return v;
    }
  v.holds = true;
  return v;
}

DepFullnessVerdict ho_image_full_check(const PathStructure&, const QuotientCategory& ho, const DependentDatum& d) {
  const auto& q = ho.projection;
  const auto& h = *ho.category;
  LimitContext hctx(ho.category, {});
  auto mm = [&](MorId m) { return q.map_morphism(m); };
  DependentDatum image{mm(d.y), mm(d.x), mm(d.u),
                       Cone{q.map_object(d.top()), {mm(d.p1()), mm(d.p2()), h.compose(mm(d.u), mm(d.p1()))}}, mm(d.f)};
  return is_dependent_full_diagram(hctx, image);
}

// --- the pipeline ------------------------------------------------------------------

PipelineReport pipeline_lccexh(LimitContext& ctx, const PathStructure& ps) {
  const auto& c = ctx.category();
  PipelineReport rep;
  auto add = [&](PipelineStage s) {
    rep.holds = rep.holds && s.holds;
    rep.stages.push_back(std::move(s));
    return rep.holds;
  };

  PipelineStage validate{"validate"};
  if (ps.local_mode) {
    validate.detail = "local-mode: skipped";
  } else {
    validate_path_structure(ctx, ps);
    validate.detail = "all axioms hold";
  }
  add(validate);

  // composable fibration pairs g: B -> A, f: A -> I
  std::vector<std::pair<MorId, MorId>> pairs;
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    if (!ps.is_fibration(f)) continue;
    for (MorId g : c.incoming(c.dom(f)))
      if (ps.is_fibration(g)) pairs.emplace_back(g, f);
  }
  PipelineStage wdp{"wdp_audit"};
  std::vector<std::optional<DependentDatum>> wdps(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto found = find_weak_dependent_products(ctx, pairs[i].first, pairs[i].second);
    if (found.empty()) {
      wdp.holds = false;
      wdp.witnesses.push_back(mname(c, pairs[i].first) + "," + mname(c, pairs[i].second));
    } else {
      wdps[i] = found.front();
    }
  }
  wdp.detail = std::to_string(pairs.size()) + " fibration pairs";
  if (!add(wdp)) return rep;

  auto ho = homotopy_category(ps);
  rep.ho = ho.category;
  const auto& h = *ho.category;
  add({"ho", true, std::to_string(h.num_objects()) + " objects, " + std::to_string(h.num_morphisms()) + " morphisms"});

  PipelineStage hw{"hwdp_hofull"};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto d = hwdp_from_wdp(ctx, ps, *wdps[i]);
    const std::string tag = mname(c, pairs[i].first) + "," + mname(c, pairs[i].second);
    if (!is_hwdp(ctx, ps, d).holds) {
      hw.holds = false;
      hw.witnesses.push_back(tag + ": hwdp");
      continue;
    }
    auto dep = d.as_dependent();
    if (!is_homotopy_full_diagram(ps, dep).holds) {
      hw.holds = false;
      hw.witnesses.push_back(tag + ": homotopy full");
      continue;
    }
    if (!ho_image_full_check(ps, ho, dep).holds) {
      hw.holds = false;
      hw.witnesses.push_back(tag + ": image in Ho");
    }
  }
  hw.detail = std::to_string(pairs.size()) + " data";
  if (!add(hw)) return rep;

  // Ho arrows of the form [p] i with p a fibration and i an iso
  LimitContext hctx(ho.category, ctx.options());
  std::vector<char> eligible(h.num_morphisms(), 0);
  for (MorId p = 0; p < static_cast<MorId>(c.num_morphisms()); ++p) {
    if (!ps.is_fibration(p)) continue;
    const MorId hp = ho.projection.map_morphism(p);
    for (MorId i : h.incoming(h.dom(hp)))
      if (is_iso(h, i)) eligible[h.compose(hp, i)] = 1;
  }
  PipelineStage dep{"depfull_audit"};
  std::size_t audited = 0;
  for (MorId x = 0; x < static_cast<MorId>(h.num_morphisms()); ++x) {
    if (!eligible[x]) continue;
    for (MorId y : h.incoming(h.dom(x))) {
      if (!eligible[y]) continue;
      ++audited;
      if (find_dependent_full_diagrams(hctx, y, x).empty()) {
        dep.holds = false;
        dep.witnesses.push_back(mname(h, y) + "," + mname(h, x));
      }
    }
  }
  dep.detail = std::to_string(audited) + " composable pairs";
  if (!add(dep)) return rep;

  auto ex = reduce_excom(build_excom(hctx));
  PipelineStage exs{"excom", true, std::to_string(ex.completed->num_objects()) + " objects, " +
                                       std::to_string(ex.completed->num_morphisms()) + " morphisms"};
  rep.excom = ex;
  add(exs);

  LimitContext ectx(ex.completed, ctx.options());
  auto lcc = verify_lcc(ectx);
  PipelineStage ls{"verify_lcc", lcc.holds, std::to_string(lcc.slices.size()) + " slices"};
  for (const auto& s : lcc.slices)
    if (!s.report.holds) ls.witnesses.push_back(ex.completed->object_name(s.base));
  add(ls);
  return rep;
}

}  // namespace exwlex
