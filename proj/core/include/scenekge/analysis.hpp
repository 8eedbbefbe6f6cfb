#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scenekge/embedding.hpp"
#include "scenekge/scenegen.hpp"
#include "scenekge/triplestore.hpp"

namespace scenekge {

/// Cosine similarity in [-1, 1]. Throws NumericError for a zero vector and ValidationError
/// for a size mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

struct ScenePair {
    NodeId a;  // a < b
    NodeId b;
    double similarity = 0.0;
    PairMode relation = PairMode::SameParent;
};

/// The `k` most similar sub-scene pairs of the given mode by cosine of their entity vectors,
/// most similar first, ties by (a, b). Sub-scenes without a vector are ignored. Asking for
/// more pairs than exist returns all of them with a warning.
std::vector<ScenePair> top_scene_pairs(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, PairMode mode,
                                       std::size_t k);

/// For each parent scene (ascending id), its most similar pair of sub-scenes.
std::vector<ScenePair> best_pair_per_parent(const EmbeddingLookup& lookup, const KnowledgeGraph& kg);

/// Position of every sub-scene among its siblings, ordered by the xsd:dateTime of its
/// hasTime instant (sub-scenes without a timestamp sort last, by term text).
std::unordered_map<NodeId, std::size_t> sample_positions(const KnowledgeGraph& kg);

/// Top-two principal axes of a point cloud.
struct PcaProjection {
    std::vector<std::array<double, 2>> coordinates;  // one per input row
    std::array<std::vector<double>, 2> components;    // unit vectors, first nonzero loading positive
    std::array<double, 2> variances{};                // eigenvalues of the covariance
    std::vector<double> mean;
};

/// Projects the rows of `points` (all the same length) onto the top two eigenvectors of their
/// centred covariance. Throws NumericError when all points coincide.
PcaProjection pca_2d(const std::vector<std::vector<double>>& points);

/// Eigenpairs of a symmetric matrix (row-major, n x n), eigenvalues descending.
struct EigenPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};
EigenPairs symmetric_eigen(std::vector<double> matrix, std::size_t n);

enum class NodeFilter { All, Scenes, Fois, Events };
std::optional<NodeFilter> parse_node_filter(std::string_view text) noexcept;

struct ProjectedPoint {
    std::string term;
    double x = 0.0;
    double y = 0.0;
    std::string label;  // most specific asserted type; empty when untyped
};

/// PCA projection of the selected nodes' vectors, ordered by term text. Scenes are nodes
/// typed Scene; FoIs and events are nodes whose asserted types fall under FeatureOfInterest
/// or Event. Throws ValidationError with fewer than two selected nodes.
std::vector<ProjectedPoint> project_2d(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeFilter filter);

/// `scene_a,scene_b,similarity`
void write_pairs_csv(const std::vector<ScenePair>& pairs, const KnowledgeGraph& kg, std::ostream& out);
/// `term,x,y,label`
void write_projection_csv(const std::vector<ProjectedPoint>& points, std::ostream& out);

}  // namespace scenekge
