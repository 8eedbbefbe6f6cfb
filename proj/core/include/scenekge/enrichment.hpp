#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "scenekge/triplestore.hpp"

namespace scenekge {

/// Levels of informational detail. Variants are cumulative: WithPaths contains WithTypes.
enum class KgVariant { Base, WithTypes, WithPaths };

/// "base", "types", "paths".
std::string_view variant_name(KgVariant v) noexcept;
std::optional<KgVariant> parse_variant(std::string_view name) noexcept;

/// Adds (e, rdf:type, c') for every asserted (e, rdf:type, c) and every strict superclass c'
/// of c. Node and relation vocabularies are unchanged. Throws OntologyError on a subclass cycle.
KnowledgeGraph infer_types(const KnowledgeGraph& kg);

/// Adds (s, includes, o) for every (s, hasPart, x), (x, includes, o). One hop only.
KnowledgeGraph materialize_include_paths(const KnowledgeGraph& kg);

/// Base -> copy, WithTypes -> infer_types, WithPaths -> materialize_include_paths(infer_types).
KnowledgeGraph make_variant(const KnowledgeGraph& kg, KgVariant v);

}  // namespace scenekge
