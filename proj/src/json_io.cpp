#include "dsc/json_io.hpp"

#include <algorithm>

namespace dsc {

namespace {

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ParseError(std::string(what) + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Json set_to_json(const Ground& g, EventSet s) {
  Json arr = Json::array();
  s.for_each([&](EventId e) { arr.push_back(g.label(e)); });
  return arr;
}

EventSet set_from_json(const Ground& g, const Json& j) {
  EventSet s;
  for (const auto& label : string_list(j, "depset")) s = s.with(g.index(label));
  return s;
}

}  // namespace

Json predsc_to_json(const PreDsc& p) {
  Json j;
  j["events"] = p.ground.labels();
  Json dep = Json::object();
  for (EventId e = 0; e < p.size(); ++e) {
    std::vector<EventSet> family = p.dep[e];
    std::sort(family.begin(), family.end());
    Json arr = Json::array();
    for (EventSet s : family) arr.push_back(set_to_json(p.ground, s));
    dep[p.ground.label(e)] = std::move(arr);
  }
  j["dep"] = std::move(dep);
  return j;
}

PreDsc predsc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("events") || !j.contains("dep"))
    throw ParseError("expected an object with \"events\" and \"dep\"");
  Ground g(string_list(j["events"], "events"));
  const Json& dep = j["dep"];
  if (!dep.is_object()) throw ParseError("\"dep\" must be an object");
  std::vector<std::vector<EventSet>> table(g.size());
  std::vector<char> seen(g.size(), 0);
  for (const auto& [label, families] : dep.items()) {
    EventId e = g.index(label);
    seen[e] = 1;
    if (!families.is_array()) throw ParseError("dep entries must be arrays of depsets");
    for (const auto& f : families) table[e].push_back(set_from_json(g, f));
  }
  for (EventId e = 0; e < g.size(); ++e)
    if (!seen[e]) throw ParseError("missing dep entry for " + g.label(e));
  return PreDsc(std::move(g), std::move(table));
}

Json dsc_to_json(const Dsc& d) { return predsc_to_json(d.pre()); }

Dsc dsc_from_json(const Json& j) { return Dsc(predsc_from_json(j)); }

Json antimatroid_to_json(const Antimatroid& m) {
  Json j;
  j["events"] = m.ground().labels();
  Json feasible = Json::array();
  for (EventSet s : m.feasible()) feasible.push_back(set_to_json(m.ground(), s));
  j["feasible"] = std::move(feasible);
  return j;
}

Antimatroid antimatroid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("events") || !j.contains("feasible"))
    throw ParseError("expected an object with \"events\" and \"feasible\"");
  Ground g(string_list(j["events"], "events"));
  std::vector<EventSet> family;
  if (!j["feasible"].is_array()) throw ParseError("\"feasible\" must be an array");
  for (const auto& f : j["feasible"]) family.push_back(set_from_json(g, f));
  return Antimatroid(std::move(g), std::move(family));
}

Json morphism_to_json(const DscMorphism& f) {
  Json map = Json::object();
  for (EventId e = 0; e < f.source().size(); ++e)
    map[f.source().ground().label(e)] = f.target().ground().label(f.apply(e));
  return Json{{"map", std::move(map)}};
}

DscMorphism morphism_from_json(const Json& j, const Dsc& source, const Dsc& target) {
  if (!j.is_object() || !j.contains("map") || !j["map"].is_object())
    throw ParseError("expected an object with a \"map\" object");
  std::vector<EventId> map(source.size());
  std::vector<char> seen(source.size(), 0);
  for (const auto& [from, to] : j["map"].items()) {
    if (!to.is_string()) throw ParseError("map values must be strings");
    EventId e = source.ground().index(from);
    map[e] = target.ground().index(to.get<std::string>());
    seen[e] = 1;
  }
  for (EventId e = 0; e < source.size(); ++e)
    if (!seen[e]) throw ParseError("map missing source event " + source.ground().label(e));
  return DscMorphism(source, target, std::move(map));
}

Json merkle_store_to_json(const MerkleStore& s) {
  Json nodes = Json::array();
  for (const auto& n : s.nodes)
    nodes.push_back(Json{{"label", n.label}, {"deps", n.dep_hashes}, {"hash", n.hash}});
  return Json{{"nodes", std::move(nodes)}};
}

namespace {

struct Version {
  long major = 0, minor = 0, patch = 0;
  std::string text;
};

Version parse_version(const std::string& s) {
  Version v;
  v.text = s;
  long parts[3] = {0, 0, 0};
  std::size_t idx = 0, part = 0;
  while (idx < s.size() && part < 3) {
    std::size_t end = idx;
    while (end < s.size() && s[end] != '.') ++end;
    try {
      parts[part] = std::stol(s.substr(idx, end - idx));
    } catch (const std::exception&) {
      throw ParseError("bad version string: " + s);
    }
    ++part;
    idx = end + 1;
  }
  if (part == 0) throw ParseError("bad version string: " + s);
  v.major = parts[0];
  v.minor = parts[1];
  v.patch = parts[2];
  return v;
}

bool spec_matches(const std::string& spec, const Version& candidate) {
  if (!spec.empty() && spec[0] == '^') {
    Version base = parse_version(spec.substr(1));
    return candidate.major == base.major && candidate.minor >= base.minor;
  }
  return candidate.text == spec;
}

constexpr std::size_t kDepsetFamilyCap = 4096;

}  // namespace

bool looks_like_manifest(const Json& j) { return j.is_object() && j.contains("packages"); }

PreDsc manifest_to_predsc(const Json& manifest) {
  if (!looks_like_manifest(manifest)) throw ParseError("manifest must contain \"packages\"");
  const Json& packages = manifest["packages"];
  if (!packages.is_array()) throw ParseError("\"packages\" must be an array");

  struct Pkg {
    std::string name;
    Version version;
    std::vector<std::pair<std::string, std::string>> requires_;  // (name, spec)
    std::string label;
  };
  std::vector<Pkg> pkgs;
  for (const auto& p : packages) {
    Pkg pkg;
    pkg.name = p.at("name").get<std::string>();
    pkg.version = parse_version(p.at("version").get<std::string>());
    pkg.label = pkg.name + "-" + pkg.version.text;
    if (p.contains("dependencies"))
      for (const auto& dep : p["dependencies"])
        pkg.requires_.emplace_back(dep.at("name").get<std::string>(),
                                   dep.at("spec").get<std::string>());
    pkgs.push_back(std::move(pkg));
  }
  std::vector<std::string> labels;
  for (const auto& p : pkgs) labels.push_back(p.label);
  Ground g(labels);

  // cross product of version alternatives per requirement
  std::vector<std::vector<EventSet>> dep(g.size());
  for (const auto& p : pkgs) {
    std::vector<EventSet> family{EventSet{}};
    for (const auto& [rname, rspec] : p.requires_) {
      std::vector<EventId> alternatives;
      for (const auto& cand : pkgs)
        if (cand.name == rname && spec_matches(rspec, cand.version))
          alternatives.push_back(g.index(cand.label));
      if (alternatives.empty())
        throw ParseError("unresolvable requirement " + rname + " " + rspec + " of " + p.label);
      std::vector<EventSet> next;
      for (EventSet base : family)
        for (EventId alt : alternatives) next.push_back(base.with(alt));
      if (next.size() > kDepsetFamilyCap) throw SizeError("depset expansion exceeds cap");
      family = std::move(next);
    }
    dep[g.index(p.label)] = minimal_members(std::move(family));
  }

  // transitive closure: expand each depset with a choice of depsets of its
  // members until no depset is left incomplete
  for (std::size_t round = 0; round < g.size(); ++round) {
    bool changed = false;
    for (EventId e = 0; e < g.size(); ++e) {
      std::vector<EventSet> expanded;
      for (EventSet d : dep[e]) {
        std::vector<EventSet> variants{d};
        d.for_each([&](EventId m) {
          bool satisfied = false;
          for (EventSet dm : dep[m])
            if (dm.subset_of(d)) { satisfied = true; break; }
          if (satisfied) return;
          std::vector<EventSet> next;
          for (EventSet v : variants)
            for (EventSet dm : dep[m]) next.push_back(v | dm);
          if (next.size() > kDepsetFamilyCap) throw SizeError("closure expansion exceeds cap");
          variants = std::move(next);
        });
        for (EventSet v : variants) {
          if (!(v == d)) changed = true;
          expanded.push_back(v);
        }
      }
      dep[e] = minimal_members(std::move(expanded));
    }
    if (!changed) break;
  }
  return PreDsc(std::move(g), std::move(dep));
}

std::string canonical_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace dsc
