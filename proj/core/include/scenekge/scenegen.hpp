#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "scenekge/triplestore.hpp"

namespace scenekge {

/// Parameters of the synthetic scene-graph generator.
///
/// The object-count range and the persistence/event probabilities have no counterpart in
/// the source datasets; the defaults are toolkit choices.
struct GenConfig {
    int num_scenes = 10;
    int subscenes_per_scene = 40;
    // 9 selects the Lyft-like catalog, 23 the NuScenes-like one. Other sizes take the most
    // frequent categories of the Lyft list (<= 9) or the NuScenes list (<= 23).
    int foi_catalog_size = 9;
    int min_objects_per_subscene = 3;
    int max_objects_per_subscene = 10;
    double object_persistence = 0.8;
    double event_probability = 0.5;
    std::uint64_t seed = 0;
};

inline constexpr int kLyftCatalogSize = 9;
inline constexpr int kNuScenesCatalogSize = 23;

/// Throws ValidationError when a field is out of range.
void validate(const GenConfig& cfg);

/// Builds a frozen Base-variant scene graph including its ontology. Same config, same graph.
///
/// Per scene: rdf:type Scene, a city location, and a time interval whose beginning and end
/// instants carry xsd:dateTime literals. Per sub-scene (one every 0.5 s): hasPart/isPartOf
/// with the parent, an instant, a point location, and includes edges to object and event
/// instances typed to leaf classes. Objects carry over to the next sub-scene with
/// probability `object_persistence`; each object joins a paired event with probability
/// `event_probability`.
KnowledgeGraph generate(const GenConfig& cfg);

enum class PairMode { SameParent, CrossParent };

/// Unordered sub-scene pairs (a < b by id), sorted. Sub-scenes are the objects of hasPart.
/// SameParent pairs share a parent; CrossParent pairs share none.
std::vector<NodePair> split_scene_pairs(const KnowledgeGraph& kg, PairMode mode);

}  // namespace scenekge
