#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scenekge/triplestore.hpp"

namespace scenekge {

/// Class hierarchy recovered from the owl:subClassOf and rdf:type triples of a graph.
///
/// Classes are every endpoint of a subclass edge plus every object of an rdf:type triple.
/// The subclass edges must form a DAG; multiple inheritance is allowed.
class SceneOntology {
public:
    /// Throws OntologyError naming one class on a subclass cycle.
    static SceneOntology build(const KnowledgeGraph& kg);

    /// Sorted by id.
    std::span<const NodeId> classes() const noexcept { return classes_; }
    /// (child, parent) pairs, sorted.
    std::span<const NodePair> subclass_edges() const noexcept { return edges_; }

    bool is_class(NodeId node) const noexcept { return closure_.contains(node); }
    bool empty() const noexcept { return classes_.empty(); }

    /// Direct parents of `c`, sorted. Throws ValidationError for an unknown class.
    std::span<const NodeId> parents(NodeId c) const;

    /// All strict ancestors of `c` under the transitive subclass relation, sorted.
    /// Throws ValidationError for an unknown class.
    std::span<const NodeId> superclass_closure(NodeId c) const;

    /// Classes with no parent.
    std::vector<NodeId> roots() const;

    /// A root, or a direct child of a root (e.g. Vehicle under FeatureOfInterest).
    bool is_top_level(NodeId c) const;

    /// Relations used by the graph that are outside the scene relation vocabulary.
    std::span<const RelId> unknown_relations() const noexcept { return unknown_relations_; }

private:
    std::vector<NodeId> classes_;
    std::vector<NodePair> edges_;
    std::unordered_map<NodeId, std::vector<NodeId>> parents_;
    std::unordered_map<NodeId, std::vector<NodeId>> closure_;
    std::vector<RelId> unknown_relations_;
};

/// Objects of the rdf:type triples whose subject is `entity`, sorted. Empty for untyped nodes.
std::vector<NodeId> asserted_types(NodeId entity, const KnowledgeGraph& kg);

/// rdf:type lookups in both directions, built once per graph.
class TypeIndex {
public:
    explicit TypeIndex(const KnowledgeGraph& kg);

    /// Sorted asserted types of `entity`.
    std::span<const NodeId> types_of(NodeId entity) const;
    /// Sorted instances asserted to have type `c`.
    std::span<const NodeId> instances_of(NodeId c) const;
    bool has_type(NodeId entity, NodeId c) const;

    /// Every class with at least one instance, sorted.
    std::vector<NodeId> populated_classes() const;

private:
    std::unordered_map<NodeId, std::vector<NodeId>> types_;
    std::unordered_map<NodeId, std::vector<NodeId>> instances_;
};

/// rdf:type relation id of `kg`, if the graph uses it.
std::optional<RelId> type_relation(const KnowledgeGraph& kg);
std::optional<RelId> subclass_relation(const KnowledgeGraph& kg);

/// Emits a warning for every relation of `kg` outside the scene vocabulary and returns them.
std::vector<RelId> check_relation_vocabulary(const KnowledgeGraph& kg);

}  // namespace scenekge
