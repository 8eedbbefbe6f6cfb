#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scenekge/term.hpp"

namespace scenekge {

enum class NodeId : std::uint32_t {};
enum class RelId : std::uint32_t {};

constexpr std::size_t index(NodeId id) noexcept { return static_cast<std::size_t>(id); }
constexpr std::size_t index(RelId id) noexcept { return static_cast<std::size_t>(id); }

struct Triple {
    NodeId head;
    RelId relation;
    NodeId tail;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept {
        std::uint64_t k = (static_cast<std::uint64_t>(index(t.head)) << 32) ^ index(t.tail);
        k ^= static_cast<std::uint64_t>(index(t.relation)) * 0x9E3779B97F4A7C15ULL;
        k = (k ^ (k >> 31)) * 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(k ^ (k >> 29));
    }
};

struct KgStats {
    std::size_t triple_count = 0;
    std::size_t entity_count = 0;
    std::size_t relation_count = 0;

    friend bool operator==(const KgStats&, const KgStats&) = default;
};

/// Dense bijective Term <-> id table.
class Vocabulary {
public:
    std::uint32_t intern(const Term& term);
    std::optional<std::uint32_t> find(const Term& term) const;
    const Term& term(std::uint32_t id) const { return terms_.at(id); }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }

private:
    std::vector<Term> terms_;
    std::unordered_map<Term, std::uint32_t, TermHash> ids_;
};

using NodePair = std::pair<NodeId, NodeId>;

/// Directed labelled multigraph with set semantics over dictionary-encoded terms.
///
/// Nodes and relations are interned in separate tables, so an IRI used in both roles gets one
/// id in each. The graph is built by a single writer and then frozen; a frozen graph rejects
/// further mutation and is safe to share between readers.
class KnowledgeGraph {
public:
    NodeId intern_node(const Term& term);
    RelId intern_relation(const Term& term);

    std::optional<NodeId> find_node(const Term& term) const;
    std::optional<RelId> find_relation(const Term& term) const;

    const Term& node_term(NodeId id) const;
    const Term& relation_term(RelId id) const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t relation_count() const noexcept { return relations_.size(); }

    /// Returns true iff the triple was new. Throws ValidationError on an out-of-range id.
    bool insert(const Triple& triple);
    bool insert(const Term& head, const Term& relation, const Term& tail);

    bool contains(const Triple& triple) const { return triple_set_.contains(triple); }

    /// All triples in insertion order.
    std::span<const Triple> triples() const noexcept { return triples_; }

    /// (head, tail) pairs of relation `r` in insertion order.
    std::span<const NodePair> triples_with_predicate(RelId r) const;

    KgStats stats() const noexcept { return {triples_.size(), nodes_.size(), relations_.size()}; }

    void freeze() noexcept { frozen_ = true; }
    bool frozen() const noexcept { return frozen_; }

    /// Unfrozen copy sharing the same ids, for passes that extend an existing graph.
    KnowledgeGraph mutable_copy() const;

private:
    void require_mutable() const;

    Vocabulary nodes_;
    Vocabulary relations_;
    std::vector<Triple> triples_;
    std::unordered_set<Triple, TripleHash> triple_set_;
    std::vector<std::vector<NodePair>> by_predicate_;
    bool frozen_ = false;
};

/// Equality of the term-level triple sets, independent of id assignment and insertion order.
bool same_triples(const KnowledgeGraph& a, const KnowledgeGraph& b);

/// Throws ValidationError unless the graph is frozen.
void require_frozen(const KnowledgeGraph& kg, const char* operation);

}  // namespace scenekge
