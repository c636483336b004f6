// Writes the shipped fixture corpus into a directory (default: fixtures).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "exwlex/catalog.hpp"
#include "exwlex/excom.hpp"
#include "exwlex/full.hpp"
#include "exwlex/homotopy.hpp"
#include "exwlex/io.hpp"
#include "exwlex/report.hpp"

using namespace exwlex;
namespace fs = std::filesystem;

namespace {

const char* kLattices[] = {"terminal", "chain3", "chain4", "diamond", "boolean_square", "chain_dup", "m3", "n5"};

json with_marked(const PathStructure& ps) {
  json doc = category_to_json(ps.category());
  doc["marked"] = path_structure_to_json(ps);
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const json& doc) {
    write_json_file(dir / name, doc);
    std::cout << name << "\n";
  };

  json fixtures = json::array();
  for (const auto& e : catalog::all()) {
    put(e.name + ".json", category_to_json(e.build()));
    fixtures.push_back({{"name", e.name}, {"category", e.name + ".json"}});
  }
  put("chain.json", category_to_json(catalog::chain(3)));

  for (const auto& e : catalog::all()) {
    if (std::find(std::begin(kLattices), std::end(kLattices), e.name) == std::end(kLattices)) continue;
    LimitContext ctx(share(e.build()), {});
    put(e.name + ".path.json", with_marked(trivial_path_structure(ctx)));
    fixtures.push_back({{"name", e.name + "-path"}, {"path_structure", e.name + ".path.json"}});
  }
  {
    LimitContext ctx(share(catalog::chain(3)), {});
    put("chain.path.json", with_marked(trivial_path_structure(ctx)));
  }

  // excom of M3, reduced
  {
    LimitContext ctx(share(catalog::m3()), {});
    put("m3.excom.json", excom_to_json(reduce_excom(build_excom(ctx))));
  }
  {
    LimitContext ctx(share(catalog::chain(3)), {});
    put("chain.excom.json", excom_to_json(reduce_excom(build_excom(ctx))));
  }

  // data files on chain 0 <= 1 <= 2
  {
    LimitContext ctx(share(catalog::chain(3)), {});
    const auto& c = ctx.category();
    const ObjId o1 = c.object("1"), o2 = c.object("2");
    auto prod = ctx.first_limit(Diagram::product({o1, o2}));
    put("chain.product12.cone.json",
        datum_document("cone", {{"diagram", {{"shape", "product"}, {"at", {"1", "2"}}}}, {"cone", cone_to_json(c, *prod)}}));
    put("chain.product12.apex0.cone.json",
        datum_document("cone", {{"diagram", {{"shape", "product"}, {"at", {"1", "2"}}}},
                                {"cone", cone_to_json(c, Cone{c.object("0"), {c.morphism("0->1"), c.morphism("0->2")}})}}));
    put("chain.full.json", datum_document("full", full_datum_to_json(c, find_full_diagrams(ctx, o1, o2).front())));
    put("chain.wexp.json", datum_document("wexp", wexp_datum_to_json(c, find_weak_exponentials(ctx, o1, o2).front())));
    const MorId y = c.morphism("0->1"), x = c.morphism("1->2");
    put("chain.dependent.json", datum_document("dependent", dependent_datum_to_json(c, find_dependent_full_diagrams(ctx, y, x).front())));
  }

  // V <- V -> ... (V, !V, !V) over (T, T) with f not determined by projections
  {
    auto c = catalog::projections();
    put("projections.weakprod.cone.json",
        datum_document("cone", {{"diagram", {{"shape", "product"}, {"at", {"T", "T"}}}},
                                {"cone", cone_to_json(c, Cone{c.object("V"), {c.morphism("!V"), c.morphism("!V")}})}}));
  }

  // interval, local mode
  {
    LimitContext ctx(share(catalog::interval()), {});
    const auto& c = ctx.category();
    auto ps = interval_structure(ctx);
    {
      // large; written without indentation
      std::ofstream(dir / "interval.path.json") << with_marked(ps).dump() << '\n';
      std::cout << "interval.path.json\n";
    }
    fixtures.push_back({{"name", "interval"}, {"path_structure", "interval.path.json"}, {"local_mode", true}, {"suite", "interval"}});

    const MorId bang = c.morphism("A->T:00"), id_t = c.identity(c.object("T"));
    auto pb = ctx.first_limit(Diagram::pullback(c, id_t, id_t));
    HwdpDatum slack{bang, id_t, id_t, *pb, c.morphism("T->A:0")};
    put("interval.hwdp.json", datum_document("hwdp", hwdp_datum_to_json(c, slack)));
    auto sq = ctx.first_limit(Diagram::pullback(c, bang, id_t));
    DependentDatum wdp{bang, id_t, bang, *sq, sq->legs[0]};
    put("interval.wdp.json", datum_document("dependent", dependent_datum_to_json(c, wdp)));
  }

  put("corpus.json", {{"format_version", kFormatVersion}, {"fixtures", fixtures}});
  fs::create_directories(dir / "empty");
  put("empty/corpus.json", {{"format_version", kFormatVersion}, {"fixtures", json::array()}});
  return 0;
}
