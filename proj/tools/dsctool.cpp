#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dsc/category.hpp"
#include "dsc/json_io.hpp"
#include "dsc/random_dsc.hpp"
#include "dsc/versions.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCap = 2;
constexpr int kExitIo = 3;

dsc::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dsc::ParseError("cannot open " + path);
  dsc::Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw dsc::ParseError(std::string("bad JSON in ") + path + ": " + ex.what());
  }
  return j;
}

// Accepts either canonical DSC JSON or a package manifest.
dsc::Dsc load_dsc(const std::string& path) {
  dsc::Json j = read_json(path);
  dsc::PreDsc p = dsc::looks_like_manifest(j) ? dsc::manifest_to_predsc(j)
                                              : dsc::predsc_from_json(j);
  dsc::ValidationReport report = dsc::validate_dsc(p);
  if (!report.ok()) throw dsc::ValidationError(report.to_string(p.ground));
  return dsc::Dsc(std::move(p));
}

void emit_lattice(const dsc::FiniteLattice& l, bool dot, const std::string& name) {
  if (dot) {
    std::cout << dsc::to_dot(l, name);
    return;
  }
  std::cout << l.size() << " elements\n";
  for (std::size_t i = 0; i < l.size(); ++i) std::cout << "  " << l.name(i) << "\n";
  std::cout << l.covers().size() << " cover edges\n";
}

void emit_classification(const dsc::DscMorphism& f) {
  std::cout << "morphism: " << (f.is_morphism() ? "yes" : "no") << "\n"
            << "comorphism: " << (f.is_comorphism() ? "yes" : "no") << "\n"
            << "bimorphism: " << (f.is_bimorphism() ? "yes" : "no") << "\n"
            << "distributive-preserving: "
            << (f.is_distributive_preserving() ? "yes" : "no") << "\n";
  if (auto w = f.morphism_witness())
    std::cout << "  morphism failure at " << f.source().ground().label(w->event) << ": "
              << w->detail << "\n";
  if (auto w = f.comorphism_witness())
    std::cout << "  comorphism failure at " << f.source().ground().label(w->event) << ": "
              << w->detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency structures with choice: lattices, completions, Merkle stores"};
  app.require_subcommand(1);
  app.fallthrough();

  bool dot = false, json = false;
  std::size_t cap = dsc::kDefaultGroundCap;
  unsigned seed = 0;
  app.add_flag("--dot", dot, "emit DOT diagrams");
  app.add_flag("--json", json, "emit JSON");
  app.add_option("--cap", cap, "enumeration cap on ground-set size");
  app.add_option("--seed", seed, "random seed (fuzz)");

  std::string input, input2, input3, map_path;
  std::string event_label;
  std::size_t fuzz_count = 100, fuzz_events = 6;

  auto* validate = app.add_subcommand("validate", "check the D axioms");
  validate->add_option("input", input)->required();

  auto* rdp_cmd = app.add_subcommand("rdp", "reachable dependency lattice");
  rdp_cmd->add_option("input", input)->required();

  auto* anti = app.add_subcommand("antimatroid", "feasible-set view and round trip");
  anti->add_option("input", input)->required();

  auto* bl = app.add_subcommand("bl", "completion of the reachable lattice");
  bl->add_option("input", input)->required();

  auto* merkle = app.add_subcommand("merkle", "content-addressed store of the completion");
  merkle->add_option("input", input)->required();

  auto* morphism = app.add_subcommand("morphism", "classify a ground-set map");
  morphism->add_option("source", input)->required();
  morphism->add_option("target", input2)->required();
  morphism->add_option("map", map_path)->required();

  auto* product_cmd = app.add_subcommand("product", "categorical product");
  product_cmd->add_option("left", input)->required();
  product_cmd->add_option("right", input2)->required();

  auto* coproduct_cmd = app.add_subcommand("coproduct", "categorical coproduct");
  coproduct_cmd->add_option("left", input)->required();
  coproduct_cmd->add_option("right", input2)->required();

  auto* equalizer_cmd = app.add_subcommand("equalizer", "equalizer of two parallel maps");
  equalizer_cmd->add_option("source", input)->required();
  equalizer_cmd->add_option("target", input2)->required();
  equalizer_cmd->add_option("map1", map_path)->required();
  equalizer_cmd->add_option("map2", input3)->required();

  auto* pullback_cmd = app.add_subcommand("pullback", "pullback of two maps into a common target");
  pullback_cmd->add_option("left", input)->required();
  pullback_cmd->add_option("right", input2)->required();
  pullback_cmd->add_option("target", input3)->required();
  pullback_cmd->add_option("maps", map_path, "JSON {\"left\":{...},\"right\":{...}}")->required();

  auto* double_cmd = app.add_subcommand("double", "split one event into two copies");
  double_cmd->add_option("input", input)->required();
  double_cmd->add_option("event", event_label)->required();

  auto* versions_cmd = app.add_subcommand("versions", "higher-version relation");
  versions_cmd->add_option("input", input)->required();

  auto* fuzz = app.add_subcommand("fuzz", "random structures through the main invariants");
  fuzz->add_option("--count", fuzz_count);
  fuzz->add_option("--events", fuzz_events);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      dsc::Json j = read_json(input);
      dsc::PreDsc p = dsc::looks_like_manifest(j) ? dsc::manifest_to_predsc(j)
                                                  : dsc::predsc_from_json(j);
      dsc::ValidationReport report = dsc::validate_dsc(p);
      if (!report.ok()) {
        std::cout << report.to_string(p.ground);
        return kExitValidation;
      }
      std::cout << "ok: " << p.size() << " events\n";
      if (json) std::cout << dsc::canonical_json(dsc::predsc_to_json(p));
    } else if (rdp_cmd->parsed()) {
      dsc::Dsc d = load_dsc(input);
      emit_lattice(dsc::rdp(d, cap), dot, "rdp");
    } else if (anti->parsed()) {
      dsc::Dsc d = load_dsc(input);
      dsc::Antimatroid m = dsc::phi(d, cap);
      if (json) std::cout << dsc::canonical_json(dsc::antimatroid_to_json(m));
      std::cout << m.feasible().size() << " feasible sets; round trip "
                << (dsc::psi(m) == d ? "ok" : "FAILED") << "\n";
    } else if (bl->parsed()) {
      dsc::Dsc d = load_dsc(input);
      dsc::FiniteLattice l = dsc::rdp(d, cap);
      dsc::DistributiveLatticeView view = dsc::bruns_lakser(l);
      if (dot) {
        std::cout << dsc::to_dot(view.base, "bl");
      } else {
        std::cout << view.base.size() << " elements, top "
                  << view.base.name(view.base.top()) << "\n";
      }
    } else if (merkle->parsed()) {
      dsc::Dsc d = load_dsc(input);
      dsc::Dsc m = dsc::merkle_dsnc(d, cap);
      std::cout << dsc::canonical_json(dsc::merkle_store_to_json(dsc::merkle_hashes(m)));
    } else if (morphism->parsed()) {
      dsc::Dsc s = load_dsc(input), t = load_dsc(input2);
      emit_classification(dsc::morphism_from_json(read_json(map_path), s, t));
    } else if (product_cmd->parsed()) {
      dsc::ConstructionResult r = dsc::product(load_dsc(input), load_dsc(input2));
      std::cout << dsc::canonical_json(dsc::dsc_to_json(r.object));
      if (json)
        for (const auto& leg : r.legs)
          std::cout << dsc::canonical_json(dsc::morphism_to_json(leg));
    } else if (coproduct_cmd->parsed()) {
      dsc::ConstructionResult r = dsc::coproduct(load_dsc(input), load_dsc(input2));
      std::cout << dsc::canonical_json(dsc::dsc_to_json(r.object));
      if (json)
        for (const auto& leg : r.legs)
          std::cout << dsc::canonical_json(dsc::morphism_to_json(leg));
    } else if (equalizer_cmd->parsed()) {
      dsc::Dsc s = load_dsc(input), t = load_dsc(input2);
      dsc::DscMorphism f = dsc::morphism_from_json(read_json(map_path), s, t);
      dsc::DscMorphism g2 = dsc::morphism_from_json(read_json(input3), s, t);
      dsc::ConstructionResult r = dsc::equalizer(f, g2);
      std::cout << dsc::canonical_json(dsc::dsc_to_json(r.object));
    } else if (pullback_cmd->parsed()) {
      dsc::Dsc x = load_dsc(input), y = load_dsc(input2), z = load_dsc(input3);
      dsc::Json maps = read_json(map_path);
      dsc::DscMorphism f = dsc::morphism_from_json(maps.at("left"), x, z);
      dsc::DscMorphism g2 = dsc::morphism_from_json(maps.at("right"), y, z);
      dsc::ConstructionResult r = dsc::pullback(f, g2);
      std::cout << dsc::canonical_json(dsc::dsc_to_json(r.object));
    } else if (double_cmd->parsed()) {
      dsc::Dsc d = load_dsc(input);
      dsc::ConstructionResult r = dsc::double_event(d, d.ground().index(event_label));
      std::cout << dsc::canonical_json(dsc::dsc_to_json(r.object));
    } else if (versions_cmd->parsed()) {
      dsc::Dsc d = load_dsc(input);
      for (auto [e, ep] : dsc::version_relation(d).pairs)
        if (e != ep)
          std::cout << d.ground().label(e) << " -> " << d.ground().label(ep) << "\n";
      for (dsc::EventSet cls : dsc::version_equivalence_classes(d))
        if (cls.size() > 1)
          std::cout << "class {" << d.ground().set_label(cls) << "}\n";
      std::cout << "reflexive, transitive\n";
    } else if (fuzz->parsed()) {
      std::mt19937 rng(seed);
      for (std::size_t i = 0; i < fuzz_count; ++i) {
        dsc::Dsc d = dsc::random_dsc(rng, 1 + rng() % fuzz_events);
        dsc::Antimatroid m = dsc::phi(d);
        if (!(dsc::psi(m) == d)) {
          std::cout << "round-trip failure:\n" << dsc::canonical_json(dsc::dsc_to_json(d));
          return kExitValidation;
        }
        if (!dsc::is_diamond_free_semimodular(dsc::feasible_lattice(m))) {
          std::cout << "lattice shape failure:\n" << dsc::canonical_json(dsc::dsc_to_json(d));
          return kExitValidation;
        }
      }
      std::cout << fuzz_count << " random structures ok\n";
    }
  } catch (const dsc::SizeError& ex) {
    std::cerr << "cap exceeded: " << ex.what() << "\n";
    return kExitCap;
  } catch (const dsc::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return kExitIo;
  } catch (const dsc::ValidationError& ex) {
    std::cerr << "validation failed: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
