#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenekge/embedding.hpp"
#include "scenekge/ontology.hpp"
#include "scenekge/triplestore.hpp"

namespace scenekge {

/// A metric value with the number of instances (or triples) behind it. An empty `value`
/// means the metric is undefined for the target, which is distinct from 0.
struct MetricValue {
    std::optional<double> value;
    std::size_t support = 0;
};

struct TransitionValue {
    std::optional<double> value;
    std::size_t support = 0;  // triples that contributed
    std::size_t skipped = 0;  // triples dropped for a zero-norm operand or a missing vector
};

enum class CoherencePool {
    ExcludeClasses,  // candidates are non-class entities only
    IncludeClasses,
};

/// Precomputed type index and ontology for evaluating one (embeddings, graph) pair.
///
/// Membership of an entity in a class is an asserted rdf:type triple of the graph being
/// evaluated, so an enriched variant enlarges the membership sets.
class MetricContext {
public:
    MetricContext(const EmbeddingLookup& lookup, const KnowledgeGraph& kg);

    /// Cosine between the mean instance vector of `cls` and the class's own vector.
    /// Throws NumericError when either vector has zero norm.
    MetricValue categorization(NodeId cls) const;

    /// Fraction of the `n` nearest entities to `cls` (cosine, ties by ascending id, the
    /// class itself excluded) that are typed by it. With fewer than `n` candidates the
    /// fraction is taken over all of them and a warning is emitted.
    MetricValue coherence(NodeId cls, std::size_t n, CoherencePool pool = CoherencePool::ExcludeClasses) const;

    /// Mean over the triples of `relation` of cos(h + r, t).
    TransitionValue transition_distance(RelId relation) const;

    const TypeIndex& types() const noexcept { return types_; }
    const SceneOntology& ontology() const noexcept { return ontology_; }
    const KnowledgeGraph& graph() const noexcept { return *kg_; }
    const EmbeddingLookup& lookup() const noexcept { return *lookup_; }

private:
    const EmbeddingLookup* lookup_;
    const KnowledgeGraph* kg_;
    TypeIndex types_;
    SceneOntology ontology_;
};

MetricValue categorization(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeId cls);
MetricValue coherence(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeId cls, std::size_t n,
                      CoherencePool pool = CoherencePool::ExcludeClasses);
TransitionValue transition_distance(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, RelId relation);

enum class MetricKind { Categorization, Coherence, TransitionDistance };

std::string_view metric_name(MetricKind kind) noexcept;
std::optional<MetricKind> parse_metric(std::string_view text) noexcept;

struct MetricRow {
    MetricKind metric = MetricKind::Categorization;
    std::string target;
    std::string kg_variant;
    std::string model;
    double value = 0.0;
    std::size_t support = 0;

    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

struct MetricReport {
    std::vector<MetricRow> rows;
    // Set for RESCAL: transition distances use the diagonal of M_r as the relation vector.
    bool relation_vector_proxy = false;
    std::size_t coherence_n = 0;
    bool coherence_includes_classes = false;
    // Targets of class rows that are ontology roots or direct children of a root.
    std::vector<std::string> top_level_classes;

    const MetricRow* find(MetricKind metric, std::string_view target) const;

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct EvaluationConfig {
    std::string kg_variant = "base";
    std::size_t coherence_n = 1000;
    CoherencePool coherence_pool = CoherencePool::ExcludeClasses;
    bool allow_provenance_mismatch = false;
    int threads = 1;
};

/// Categorization and coherence for every class with an instance, and transition distance
/// for every relation with a triple. Undefined values are omitted rather than reported as 0.
/// Rows are ordered by metric, then target text. Throws ValidationError on a provenance
/// mismatch unless allowed.
MetricReport evaluate_all(const EmbeddingSet& es, const KnowledgeGraph& kg, const EvaluationConfig& cfg);

/// CSV `metric,target,kg_variant,model,value,support`, preceded by `#` metadata lines.
void write_csv(const MetricReport& report, std::ostream& out);
std::string write_csv(const MetricReport& report);
/// Throws FormatError on a malformed report.
MetricReport read_csv(std::istream& in);
MetricReport read_csv(std::string_view text);

}  // namespace scenekge
