#pragma once

#include <array>
#include <string>
#include <string_view>

namespace scenekge {

struct PrefixBinding {
    std::string_view prefix;  // without the trailing ':'
    std::string_view ns;
};

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view scene = "http://example.org/scene-kge/ontology#";
inline constexpr std::string_view inst = "http://example.org/scene-kge/instance#";
}  // namespace ns

/// Built-in prefix table. The empty prefix (`:local`) is an input-only alias for `inst:`;
/// output always uses the named prefixes in this order of preference.
inline constexpr std::array<PrefixBinding, 7> kPrefixes{{
    {"scene", ns::scene},
    {"inst", ns::inst},
    {"rdf", ns::rdf},
    {"rdfs", ns::rdfs},
    {"owl", ns::owl},
    {"xsd", ns::xsd},
    {"", ns::inst},
}};

inline std::string scene_iri(std::string_view local) { return std::string(ns::scene) + std::string(local); }
inline std::string inst_iri(std::string_view local) { return std::string(ns::inst) + std::string(local); }

namespace iri {
inline const std::string rdf_type = std::string(ns::rdf) + "type";
// Appears in some tables as "rdfs:type"; the parser folds it into rdf:type.
inline const std::string rdfs_type_alias = std::string(ns::rdfs) + "type";
inline const std::string owl_subclass_of = std::string(ns::owl) + "subClassOf";
inline const std::string xsd_date_time = std::string(ns::xsd) + "dateTime";

inline const std::string has_part = scene_iri("hasPart");
inline const std::string is_part_of = scene_iri("isPartOf");
inline const std::string includes = scene_iri("includes");
inline const std::string has_participant = scene_iri("hasParticipant");
inline const std::string is_participant_in = scene_iri("isParticipantIn");
inline const std::string has_location = scene_iri("hasLocation");
inline const std::string has_time = scene_iri("hasTime");
inline const std::string has_beginning = scene_iri("hasBeginning");
inline const std::string has_end = scene_iri("hasEnd");
inline const std::string in_xsd_date_time = scene_iri("inXSDDateTime");

inline const std::string scene_class = scene_iri("Scene");
inline const std::string feature_of_interest = scene_iri("FeatureOfInterest");
inline const std::string event_class = scene_iri("Event");
}  // namespace iri

/// The fixed scene relation vocabulary. Relations outside it are accepted with a warning.
inline const std::array<std::string, 12> kSceneRelations{
    iri::rdf_type,      iri::owl_subclass_of, iri::has_part,         iri::is_part_of,
    iri::includes,      iri::has_participant, iri::is_participant_in, iri::has_location,
    iri::has_time,      iri::has_beginning,   iri::has_end,          iri::in_xsd_date_time,
};

}  // namespace scenekge
