#pragma once

#include <string>

#include <json.hpp>

#include "dsc/antimatroid.hpp"
#include "dsc/completion.hpp"
#include "dsc/core.hpp"
#include "dsc/morphisms.hpp"

namespace dsc {

using Json = nlohmann::json;

// {"events":[...sorted...],"dep":{"<label>":[["<label>",...],...]}} with
// member lists and depset lists sorted lexicographically. This is the
// canonical form: loading and re-emitting is the identity on it.
Json predsc_to_json(const PreDsc& p);
PreDsc predsc_from_json(const Json& j);

Json dsc_to_json(const Dsc& d);
Dsc dsc_from_json(const Json& j);

// {"events":[...],"feasible":[["..."],...]} sorted canonically.
Json antimatroid_to_json(const Antimatroid& m);
Antimatroid antimatroid_from_json(const Json& j);

// {"map":{"<source label>":"<target label>",...}}
Json morphism_to_json(const DscMorphism& f);
DscMorphism morphism_from_json(const Json& j, const Dsc& source, const Dsc& target);

// {"nodes":[{"label":...,"deps":[hex...],"hash":hex}]} sorted by hash.
Json merkle_store_to_json(const MerkleStore& s);

// Manifest {"packages":[{"name","version","dependencies":[{"name","spec"}]}]}
// to a preDSC over events "name-version". Specs are exact versions or caret
// ranges "^X.Y.Z" (same major, minor at least Y). Depsets are transitively
// closed by fixpoint expansion; the caller validates the result.
PreDsc manifest_to_predsc(const Json& manifest);

bool looks_like_manifest(const Json& j);

std::string canonical_json(const Json& j);

}  // namespace dsc
