#include "scenekge/ontology.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "scenekge/errors.hpp"
#include "scenekge/log.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/vocabulary.hpp"

namespace scenekge {

namespace {

const std::vector<NodeId> kNoNodes;

void sort_unique(std::vector<NodeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<RelId> relations_outside_vocabulary(const KnowledgeGraph& kg) {
    std::vector<RelId> unknown;
    for (std::size_t i = 0; i < kg.relation_count(); ++i) {
        const Term& term = kg.relation_term(RelId(i));
        const bool known = std::find(kSceneRelations.begin(), kSceneRelations.end(), term.lexical) !=
                           kSceneRelations.end();
        if (!known) unknown.push_back(RelId(i));
    }
    return unknown;
}

}  // namespace

std::optional<RelId> type_relation(const KnowledgeGraph& kg) { return kg.find_relation(Term::iri(iri::rdf_type)); }

std::optional<RelId> subclass_relation(const KnowledgeGraph& kg) {
    return kg.find_relation(Term::iri(iri::owl_subclass_of));
}

SceneOntology SceneOntology::build(const KnowledgeGraph& kg) {
    SceneOntology onto;
    std::set<NodeId> classes;
    if (const auto sub = subclass_relation(kg)) {
        for (const auto& [child, parent] : kg.triples_with_predicate(*sub)) {
            classes.insert(child);
            classes.insert(parent);
            onto.edges_.emplace_back(child, parent);
            onto.parents_[child].push_back(parent);
        }
    }
    if (const auto type = type_relation(kg)) {
        for (const auto& pair : kg.triples_with_predicate(*type)) classes.insert(pair.second);
    }
    onto.classes_.assign(classes.begin(), classes.end());
    std::sort(onto.edges_.begin(), onto.edges_.end());
    for (auto& [_, ps] : onto.parents_) sort_unique(ps);

    // Iterative DFS over parent links; a grey node reached again closes a cycle.
    enum class Mark { White, Grey, Black };
    std::unordered_map<NodeId, Mark> mark;
    for (const NodeId c : onto.classes_) mark[c] = Mark::White;

    for (const NodeId root : onto.classes_) {
        if (mark[root] != Mark::White) continue;
        std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
        mark[root] = Mark::Grey;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            const auto pit = onto.parents_.find(node);
            const std::vector<NodeId>& ps = pit == onto.parents_.end() ? kNoNodes : pit->second;
            if (next < ps.size()) {
                const NodeId parent = ps[next++];
                if (mark[parent] == Mark::Grey) {
                    throw OntologyError("subclass cycle through " + format_term(kg.node_term(parent)));
                }
                if (mark[parent] == Mark::White) {
                    mark[parent] = Mark::Grey;
                    stack.emplace_back(parent, 0);
                }
                continue;
            }
            // All parents finished: closure is the union of parents and their closures.
            std::vector<NodeId> closure;
            for (const NodeId p : ps) {
                closure.push_back(p);
                const auto& pc = onto.closure_.at(p);
                closure.insert(closure.end(), pc.begin(), pc.end());
            }
            sort_unique(closure);
            onto.closure_[node] = std::move(closure);
            mark[node] = Mark::Black;
            stack.pop_back();
        }
    }

    onto.unknown_relations_ = relations_outside_vocabulary(kg);
    return onto;
}

std::span<const NodeId> SceneOntology::parents(NodeId c) const {
    if (!is_class(c)) throw ValidationError("unknown class id " + std::to_string(index(c)));
    const auto it = parents_.find(c);
    return it == parents_.end() ? std::span<const NodeId>(kNoNodes) : std::span<const NodeId>(it->second);
}

std::span<const NodeId> SceneOntology::superclass_closure(NodeId c) const {
    const auto it = closure_.find(c);
    if (it == closure_.end()) throw ValidationError("unknown class id " + std::to_string(index(c)));
    return it->second;
}

std::vector<NodeId> SceneOntology::roots() const {
    std::vector<NodeId> out;
    for (const NodeId c : classes_) {
        if (parents(c).empty()) out.push_back(c);
    }
    return out;
}

bool SceneOntology::is_top_level(NodeId c) const {
    const auto ps = parents(c);
    if (ps.empty()) return true;
    return std::any_of(ps.begin(), ps.end(), [&](NodeId p) { return parents(p).empty(); });
}

std::vector<NodeId> asserted_types(NodeId entity, const KnowledgeGraph& kg) {
    std::vector<NodeId> out;
    if (const auto type = type_relation(kg)) {
        for (const auto& [h, t] : kg.triples_with_predicate(*type)) {
            if (h == entity) out.push_back(t);
        }
    }
    sort_unique(out);
    return out;
}

TypeIndex::TypeIndex(const KnowledgeGraph& kg) {
    if (const auto type = type_relation(kg)) {
        for (const auto& [h, t] : kg.triples_with_predicate(*type)) {
            types_[h].push_back(t);
            instances_[t].push_back(h);
        }
    }
    for (auto& [_, v] : types_) sort_unique(v);
    for (auto& [_, v] : instances_) sort_unique(v);
}

std::span<const NodeId> TypeIndex::types_of(NodeId entity) const {
    const auto it = types_.find(entity);
    return it == types_.end() ? std::span<const NodeId>(kNoNodes) : std::span<const NodeId>(it->second);
}

std::span<const NodeId> TypeIndex::instances_of(NodeId c) const {
    const auto it = instances_.find(c);
    return it == instances_.end() ? std::span<const NodeId>(kNoNodes) : std::span<const NodeId>(it->second);
}

bool TypeIndex::has_type(NodeId entity, NodeId c) const {
    const auto types = types_of(entity);
    return std::binary_search(types.begin(), types.end(), c);
}

std::vector<NodeId> TypeIndex::populated_classes() const {
    std::vector<NodeId> out;
    out.reserve(instances_.size());
    for (const auto& [c, _] : instances_) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RelId> check_relation_vocabulary(const KnowledgeGraph& kg) {
    auto unknown = relations_outside_vocabulary(kg);
    for (const RelId r : unknown) {
        warn("relation outside the scene vocabulary: " + format_term(kg.relation_term(r)));
    }
    return unknown;
}

}  // namespace scenekge
