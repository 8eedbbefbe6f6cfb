#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scenekge/rng.hpp"
#include "scenekge/term.hpp"
#include "scenekge/triplestore.hpp"

namespace scenekge {

enum class ModelKind { TransE, Rescal, HolE };
enum class Norm { L1, L2 };

/// "TransE", "RESCAL", "HolE".
std::string_view model_tag(ModelKind model) noexcept;
/// Accepts the tags above case-insensitively.
std::optional<ModelKind> parse_model(std::string_view text) noexcept;

struct BatchMode {
    // Full-batch mode draws the corrupted set once and then runs exact gradient descent on the
    // fixed objective; minibatch mode reshuffles and resamples every epoch.
    bool full_batch = false;
    std::size_t minibatch_size = 128;
};

struct TrainConfig {
    ModelKind model = ModelKind::TransE;
    std::size_t dim = 100;
    double margin = 1.0;
    double learning_rate = 0.01;
    int epochs = 100;
    BatchMode batch;
    int negatives_per_positive = 1;
    Norm norm = Norm::L1;  // TransE only
    double weight_decay = 0.0;  // RESCAL and HolE only
    std::uint64_t seed = 0;
    // Training refuses graphs whose parameter estimate exceeds this many reals.
    std::size_t max_parameters = 100'000'000;
};

/// Throws ValidationError unless dim >= 1, margin > 0, learning_rate > 0, epochs >= 1 and
/// the batch and negative settings are positive.
void validate(const TrainConfig& cfg);

/// n*d + m*d for TransE and HolE, n*d + m*d^2 for RESCAL.
std::size_t parameter_count(ModelKind model, std::size_t entities, std::size_t relations, std::size_t dim) noexcept;

/// Learned parameters. Entity row i belongs to entity_terms[i]; relation row j to
/// relation_terms[j]. A relation row has d values (TransE, HolE) or d*d values in row-major
/// order (RESCAL).
struct EmbeddingSet {
    ModelKind model = ModelKind::TransE;
    std::size_t dim = 0;
    Norm norm = Norm::L1;
    std::uint64_t seed = 0;
    std::vector<Term> entity_terms;
    std::vector<Term> relation_terms;
    std::vector<double> entities;
    std::vector<double> relations;

    // Provenance; not part of the on-disk format.
    KgStats source_stats;
    std::vector<double> loss_trace;

    std::size_t entity_count() const noexcept { return entity_terms.size(); }
    std::size_t relation_count() const noexcept { return relation_terms.size(); }
    std::size_t relation_width() const noexcept { return model == ModelKind::Rescal ? dim * dim : dim; }
    std::size_t parameter_count() const noexcept { return entities.size() + relations.size(); }

    std::span<const double> entity(std::size_t i) const { return {entities.data() + i * dim, dim}; }
    std::span<double> entity(std::size_t i) { return {entities.data() + i * dim, dim}; }
    std::span<const double> relation(std::size_t j) const {
        return {relations.data() + j * relation_width(), relation_width()};
    }
    std::span<double> relation(std::size_t j) { return {relations.data() + j * relation_width(), relation_width()}; }

    /// Model, dimension, seed, terms and every parameter bit-for-bit.
    friend bool operator==(const EmbeddingSet& a, const EmbeddingSet& b);
};

/// out[i] = sum_k a[k] * b[(k + i) mod d]. Throws ValidationError on a size mismatch.
std::vector<double> circular_correlation(std::span<const double> a, std::span<const double> b);

/// Plausibility of (h, r, t); higher is more plausible for every model.
/// TransE: -||h + r - t|| (L1 or L2). RESCAL: h^T M_r t. HolE: r^T (h corr t).
double score(ModelKind model, Norm norm, std::span<const double> head, std::span<const double> relation,
             std::span<const double> tail);

/// Score of a triple whose ids index the rows of `es`. Throws ValidationError on a bad id.
double score(const EmbeddingSet& es, const Triple& triple);

struct ScoreGradients {
    std::vector<double> head;
    std::vector<double> relation;
    std::vector<double> tail;
};

/// Analytic partial derivatives of the score. TransE-L1 uses sign(0) = 0; TransE-L2 has a
/// zero gradient where h + r = t.
ScoreGradients score_gradients(ModelKind model, Norm norm, std::span<const double> head,
                               std::span<const double> relation, std::span<const double> tail);
ScoreGradients score_gradients(const EmbeddingSet& es, const Triple& triple);

inline constexpr int kNegativeSampleAttempts = 100;

/// Corrupts the head or the tail (probability 1/2 each) with a different, uniformly drawn
/// entity. Corruptions already in `kg` are redrawn up to kNegativeSampleAttempts times, after
/// which the last draw is returned. Throws SamplingError for a single-entity graph.
Triple sample_negative(const Triple& positive, const KnowledgeGraph& kg, Rng& rng);

/// Minimises sum max(0, margin - f(pos) + f(neg)) by (minibatch) gradient descent.
///
/// Parameters start uniform in [-6/sqrt(d), 6/sqrt(d)]. TransE keeps entity vectors on the
/// unit L2 sphere after every update. Fully deterministic for a given graph and config.
/// Throws TrainingError on non-finite values, an oversized model, or a graph with fewer than
/// two entities or no triples.
EmbeddingSet train(const KnowledgeGraph& kg, const TrainConfig& cfg);

/// Text format: header `model=<tag> d=<d> entities=<n> relations=<m> seed=<s>`, then one
/// `E <term> <values>` line per entity and one `R <term> <values>` line per relation.
/// Values use the shortest representation that reads back exactly.
void save_embeddings(const EmbeddingSet& es, std::ostream& out);
std::string save_embeddings(const EmbeddingSet& es);

/// Throws FormatError (with line number) on any malformed, truncated or mis-shaped input.
EmbeddingSet load_embeddings(std::istream& in);
EmbeddingSet load_embeddings(std::string_view text);

/// Maps the nodes and relations of a graph to rows of an embedding set by term.
class EmbeddingLookup {
public:
    /// Throws ValidationError when the embedding set was not trained on a graph with the same
    /// vocabulary, unless `allow_mismatch` is set; unmatched terms then have no vector.
    EmbeddingLookup(const EmbeddingSet& es, const KnowledgeGraph& kg, bool allow_mismatch = false);

    const EmbeddingSet& embeddings() const noexcept { return *es_; }
    std::size_t dim() const noexcept { return es_->dim; }

    std::optional<std::span<const double>> entity(NodeId node) const;
    /// Relation translation vector. RESCAL has none, so the diagonal of M_r stands in for it.
    std::optional<std::vector<double>> relation_vector(RelId relation) const;

    bool relation_vector_is_proxy() const noexcept { return es_->model == ModelKind::Rescal; }

private:
    const EmbeddingSet* es_;
    std::vector<std::int64_t> node_rows_;
    std::vector<std::int64_t> relation_rows_;
};

}  // namespace scenekge
