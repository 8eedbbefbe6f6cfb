#include "scenekge/enrichment.hpp"

#include <unordered_map>
#include <vector>

#include "scenekge/ontology.hpp"
#include "scenekge/vocabulary.hpp"

namespace scenekge {

std::string_view variant_name(KgVariant v) noexcept {
    switch (v) {
        case KgVariant::Base: return "base";
        case KgVariant::WithTypes: return "types";
        case KgVariant::WithPaths: return "paths";
    }
    return "base";
}

std::optional<KgVariant> parse_variant(std::string_view name) noexcept {
    if (name == "base") return KgVariant::Base;
    if (name == "types") return KgVariant::WithTypes;
    if (name == "paths") return KgVariant::WithPaths;
    return std::nullopt;
}

KnowledgeGraph infer_types(const KnowledgeGraph& kg) {
    require_frozen(kg, "infer_types");
    const SceneOntology ontology = SceneOntology::build(kg);
    KnowledgeGraph out = kg.mutable_copy();
    if (const auto type = type_relation(kg)) {
        // Snapshot: the pairs span would otherwise grow while we insert.
        const std::vector<NodePair> asserted(kg.triples_with_predicate(*type).begin(),
                                             kg.triples_with_predicate(*type).end());
        for (const auto& [entity, cls] : asserted) {
            for (const NodeId ancestor : ontology.superclass_closure(cls)) {
                out.insert(Triple{entity, *type, ancestor});
            }
        }
    }
    out.freeze();
    return out;
}

KnowledgeGraph materialize_include_paths(const KnowledgeGraph& kg) {
    require_frozen(kg, "materialize_include_paths");
    KnowledgeGraph out = kg.mutable_copy();
    const auto has_part = kg.find_relation(Term::iri(iri::has_part));
    const auto includes = kg.find_relation(Term::iri(iri::includes));
    if (has_part && includes) {
        std::unordered_map<NodeId, std::vector<NodeId>> included_by;
        for (const auto& [x, o] : kg.triples_with_predicate(*includes)) included_by[x].push_back(o);
        for (const auto& [s, x] : kg.triples_with_predicate(*has_part)) {
            const auto it = included_by.find(x);
            if (it == included_by.end()) continue;
            for (const NodeId o : it->second) out.insert(Triple{s, *includes, o});
        }
    }
    out.freeze();
    return out;
}

KnowledgeGraph make_variant(const KnowledgeGraph& kg, KgVariant v) {
    switch (v) {
        case KgVariant::Base: {
            require_frozen(kg, "make_variant");
            return kg;
        }
        case KgVariant::WithTypes: return infer_types(kg);
        case KgVariant::WithPaths: return materialize_include_paths(infer_types(kg));
    }
    return kg;
}

}  // namespace scenekge
