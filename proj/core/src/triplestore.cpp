#include "scenekge/triplestore.hpp"

#include <limits>
#include <string>

#include "scenekge/errors.hpp"

namespace scenekge {

std::uint32_t Vocabulary::intern(const Term& term) {
    if (const auto it = ids_.find(term); it != ids_.end()) return it->second;
    validate(term);
    if (terms_.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("vocabulary exhausted");
    }
    const auto id = static_cast<std::uint32_t>(terms_.size());
    terms_.push_back(term);
    ids_.emplace(term, id);
    return id;
}

std::optional<std::uint32_t> Vocabulary::find(const Term& term) const {
    if (const auto it = ids_.find(term); it != ids_.end()) return it->second;
    return std::nullopt;
}

NodeId KnowledgeGraph::intern_node(const Term& term) {
    if (auto id = nodes_.find(term)) return NodeId{*id};
    require_mutable();
    return NodeId{nodes_.intern(term)};
}

RelId KnowledgeGraph::intern_relation(const Term& term) {
    if (auto id = relations_.find(term)) return RelId{*id};
    require_mutable();
    const RelId id{relations_.intern(term)};
    by_predicate_.emplace_back();
    return id;
}

std::optional<NodeId> KnowledgeGraph::find_node(const Term& term) const {
    if (auto id = nodes_.find(term)) return NodeId{*id};
    return std::nullopt;
}

std::optional<RelId> KnowledgeGraph::find_relation(const Term& term) const {
    if (auto id = relations_.find(term)) return RelId{*id};
    return std::nullopt;
}

const Term& KnowledgeGraph::node_term(NodeId id) const {
    if (index(id) >= nodes_.size()) throw ValidationError("node id out of range: " + std::to_string(index(id)));
    return nodes_.term(static_cast<std::uint32_t>(id));
}

const Term& KnowledgeGraph::relation_term(RelId id) const {
    if (index(id) >= relations_.size()) {
        throw ValidationError("relation id out of range: " + std::to_string(index(id)));
    }
    return relations_.term(static_cast<std::uint32_t>(id));
}

bool KnowledgeGraph::insert(const Triple& triple) {
    require_mutable();
    if (index(triple.head) >= nodes_.size() || index(triple.tail) >= nodes_.size()) {
        throw ValidationError("triple references an unknown node id");
    }
    if (index(triple.relation) >= relations_.size()) {
        throw ValidationError("triple references an unknown relation id");
    }
    if (!triple_set_.insert(triple).second) return false;
    triples_.push_back(triple);
    by_predicate_[index(triple.relation)].emplace_back(triple.head, triple.tail);
    return true;
}

bool KnowledgeGraph::insert(const Term& head, const Term& relation, const Term& tail) {
    const NodeId h = intern_node(head);
    const RelId r = intern_relation(relation);
    const NodeId t = intern_node(tail);
    return insert(Triple{h, r, t});
}

std::span<const NodePair> KnowledgeGraph::triples_with_predicate(RelId r) const {
    if (index(r) >= by_predicate_.size()) {
        throw ValidationError("relation id out of range: " + std::to_string(index(r)));
    }
    return by_predicate_[index(r)];
}

KnowledgeGraph KnowledgeGraph::mutable_copy() const {
    KnowledgeGraph copy = *this;
    copy.frozen_ = false;
    return copy;
}

void KnowledgeGraph::require_mutable() const {
    if (frozen_) throw ValidationError("knowledge graph is frozen");
}

bool same_triples(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    if (a.triples().size() != b.triples().size()) return false;
    for (const Triple& t : a.triples()) {
        const auto h = b.find_node(a.node_term(t.head));
        const auto r = b.find_relation(a.relation_term(t.relation));
        const auto o = b.find_node(a.node_term(t.tail));
        if (!h || !r || !o || !b.contains(Triple{*h, *r, *o})) return false;
    }
    return true;
}

void require_frozen(const KnowledgeGraph& kg, const char* operation) {
    if (!kg.frozen()) throw ValidationError(std::string(operation) + " requires a frozen knowledge graph");
}

}  // namespace scenekge
