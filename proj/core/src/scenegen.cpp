#include "scenekge/scenegen.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <span>
#include <string>

#include "scenekge/errors.hpp"
#include "scenekge/rng.hpp"
#include "scenekge/vocabulary.hpp"

namespace scenekge {

namespace {

enum class EventFamily { None, Vehicle, Cycle, Pedestrian };

struct Category {
    std::string_view leaf;
    std::string_view parent;
    int weight;
    EventFamily events;
};

// Ordered by frequency so that a catalog prefix keeps the dominant categories.
constexpr std::array<Category, 9> kLyftCatalog{{
    {"Car", "Vehicle", 50, EventFamily::Vehicle},
    {"Pedestrian", "Human", 15, EventFamily::Pedestrian},
    {"Truck", "Vehicle", 6, EventFamily::Vehicle},
    {"Bicycle", "Vehicle", 6, EventFamily::Cycle},
    {"OtherVehicle", "Vehicle", 5, EventFamily::Vehicle},
    {"Bus", "Vehicle", 4, EventFamily::Vehicle},
    {"Motorcycle", "Vehicle", 3, EventFamily::Cycle},
    {"EmergencyVehicle", "Vehicle", 1, EventFamily::Vehicle},
    {"Animal", "FeatureOfInterest", 1, EventFamily::None},
}};

constexpr std::array<Category, 23> kNuScenesCatalog{{
    {"Car", "Vehicle", 40, EventFamily::Vehicle},
    {"Adult", "Human", 15, EventFamily::Pedestrian},
    {"Barrier", "MovableObject", 8, EventFamily::None},
    {"TrafficCone", "MovableObject", 6, EventFamily::None},
    {"Truck", "Vehicle", 5, EventFamily::Vehicle},
    {"Trailer", "Vehicle", 3, EventFamily::Vehicle},
    {"Bicycle", "Vehicle", 2, EventFamily::Cycle},
    {"Motorcycle", "Vehicle", 2, EventFamily::Cycle},
    {"ConstructionVehicle", "Vehicle", 2, EventFamily::Vehicle},
    {"RigidBus", "Vehicle", 2, EventFamily::Vehicle},
    {"Child", "Human", 1, EventFamily::Pedestrian},
    {"ConstructionWorker", "Human", 1, EventFamily::Pedestrian},
    {"BicycleRack", "StaticObject", 1, EventFamily::None},
    {"PushablePullable", "MovableObject", 1, EventFamily::None},
    {"Debris", "MovableObject", 1, EventFamily::None},
    {"BendyBus", "Vehicle", 1, EventFamily::Vehicle},
    {"PoliceOfficer", "Human", 1, EventFamily::Pedestrian},
    {"PersonalMobility", "Human", 1, EventFamily::Pedestrian},
    {"Stroller", "Human", 1, EventFamily::Pedestrian},
    {"Wheelchair", "Human", 1, EventFamily::Pedestrian},
    {"Ambulance", "Vehicle", 1, EventFamily::Vehicle},
    {"PoliceVehicle", "Vehicle", 1, EventFamily::Vehicle},
    {"Animal", "FeatureOfInterest", 1, EventFamily::None},
}};

constexpr std::array<std::string_view, 4> kVehicleEvents{"VehicleMoving", "VehicleStopped", "VehicleParked",
                                                         "VehicleTurning"};
constexpr std::array<std::string_view, 2> kCycleEvents{"CycleWithRider", "CycleWithoutRider"};
constexpr std::array<std::string_view, 3> kPedestrianEvents{"PedestrianMoving", "PedestrianStanding",
                                                            "PedestrianSitting"};

constexpr std::array<std::string_view, 4> kCities{"boston", "singapore", "palo-alto", "pittsburgh"};

std::span<const std::string_view> events_of(EventFamily family) {
    switch (family) {
        case EventFamily::Vehicle: return kVehicleEvents;
        case EventFamily::Cycle: return kCycleEvents;
        case EventFamily::Pedestrian: return kPedestrianEvents;
        case EventFamily::None: break;
    }
    return {};
}

std::string_view event_parent(EventFamily family) {
    switch (family) {
        case EventFamily::Vehicle: return "VehicleEvent";
        case EventFamily::Cycle: return "CycleEvent";
        case EventFamily::Pedestrian: return "PedestrianEvent";
        case EventFamily::None: break;
    }
    return "";
}

std::span<const Category> catalog_for(int size) {
    if (size <= kLyftCatalogSize) return std::span<const Category>(kLyftCatalog).first(static_cast<std::size_t>(size));
    return std::span<const Category>(kNuScenesCatalog).first(static_cast<std::size_t>(size));
}

// Days since 1970-01-01 to proleptic Gregorian (y, m, d).
void civil_from_days(long long z, long long& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    if (m <= 2) ++y;
}

// ISO-8601 timestamp `half_seconds` * 0.5 s after 2019-01-01T00:00:00.
std::string timestamp(long long half_seconds) {
    constexpr long long kEpochDay = 17897;  // 2019-01-01
    const long long millis = half_seconds * 500;
    const long long seconds = millis / 1000;
    long long y;
    unsigned m, d;
    civil_from_days(kEpochDay + seconds / 86400, y, m, d);
    const long long sod = seconds % 86400;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lld", y, m, d, sod / 3600,
                  (sod / 60) % 60, sod % 60, millis % 1000);
    return buf;
}

std::string padded(long long value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*lld", width, value);
    return buf;
}

class GraphWriter {
public:
    GraphWriter()
        : type_(kg_.intern_relation(Term::iri(iri::rdf_type))),
          subclass_(kg_.intern_relation(Term::iri(iri::owl_subclass_of))),
          has_part_(kg_.intern_relation(Term::iri(iri::has_part))),
          is_part_of_(kg_.intern_relation(Term::iri(iri::is_part_of))),
          includes_(kg_.intern_relation(Term::iri(iri::includes))),
          has_participant_(kg_.intern_relation(Term::iri(iri::has_participant))),
          is_participant_in_(kg_.intern_relation(Term::iri(iri::is_participant_in))),
          has_location_(kg_.intern_relation(Term::iri(iri::has_location))),
          has_time_(kg_.intern_relation(Term::iri(iri::has_time))),
          has_beginning_(kg_.intern_relation(Term::iri(iri::has_beginning))),
          has_end_(kg_.intern_relation(Term::iri(iri::has_end))),
          in_date_time_(kg_.intern_relation(Term::iri(iri::in_xsd_date_time))) {}

    NodeId cls(std::string_view local) { return kg_.intern_node(Term::iri(scene_iri(local))); }
    NodeId instance(const std::string& local) { return kg_.intern_node(Term::iri(inst_iri(local))); }
    NodeId date_time(long long half_seconds) {
        return kg_.intern_node(Term::literal(timestamp(half_seconds), iri::xsd_date_time));
    }

    void add(NodeId h, RelId r, NodeId t) { kg_.insert(Triple{h, r, t}); }

    KnowledgeGraph finish() {
        kg_.freeze();
        return std::move(kg_);
    }

    KnowledgeGraph kg_;
    const RelId type_, subclass_, has_part_, is_part_of_, includes_, has_participant_, is_participant_in_,
        has_location_, has_time_, has_beginning_, has_end_, in_date_time_;
};

void write_ontology(GraphWriter& w, std::span<const Category> catalog) {
    std::set<std::pair<std::string_view, std::string_view>> edges{
        {"City", "SpatialRegion"},
        {"Point", "SpatialRegion"},
        {"TimeInterval", "TemporalRegion"},
        {"TimeInstant", "TemporalRegion"},
    };
    for (const Category& c : catalog) {
        edges.emplace(c.leaf, c.parent);
        if (c.parent != "FeatureOfInterest") edges.emplace(c.parent, "FeatureOfInterest");
        if (c.events != EventFamily::None) {
            for (const auto e : events_of(c.events)) edges.emplace(e, event_parent(c.events));
            edges.emplace(event_parent(c.events), "Event");
        }
    }
    for (const auto& [child, parent] : edges) w.add(w.cls(child), w.subclass_, w.cls(parent));
}

void write_scene(GraphWriter& w, const GenConfig& cfg, std::span<const Category> catalog, int scene_index,
                 const std::vector<NodeId>& cities) {
    Rng rng = Rng(cfg.seed).fork(static_cast<std::uint64_t>(scene_index));

    int total_weight = 0;
    for (const Category& c : catalog) total_weight += c.weight;
    const auto draw_category = [&]() -> const Category& {
        auto pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(total_weight)));
        for (const Category& c : catalog) {
            if (pick < c.weight) return c;
            pick -= c.weight;
        }
        return catalog.back();
    };

    const std::string scene_name = "scene-" + padded(scene_index, 4);
    const NodeId scene_class = w.cls("Scene");
    const NodeId instant_class = w.cls("TimeInstant");
    const NodeId scene = w.instance(scene_name);
    w.add(scene, w.type_, scene_class);
    w.add(scene, w.has_location_, cities[rng.below(cities.size())]);

    // Scenes start one minute apart; samples follow every 0.5 s.
    const long long start = static_cast<long long>(scene_index) * 120;
    const long long last = start + cfg.subscenes_per_scene - 1;
    const NodeId interval = w.instance(scene_name + "-interval");
    w.add(scene, w.has_time_, interval);
    w.add(interval, w.type_, w.cls("TimeInterval"));
    const NodeId begin = w.instance(scene_name + "-begin");
    w.add(interval, w.has_beginning_, begin);
    w.add(begin, w.type_, instant_class);
    w.add(begin, w.in_date_time_, w.date_time(start));
    const NodeId end = w.instance(scene_name + "-end");
    w.add(interval, w.has_end_, end);
    w.add(end, w.type_, instant_class);
    w.add(end, w.in_date_time_, w.date_time(last));

    struct Object {
        NodeId node;
        const Category* category;
    };
    std::vector<Object> previous;
    int next_object = 0;
    const int span = cfg.max_objects_per_subscene - cfg.min_objects_per_subscene + 1;

    for (int k = 0; k < cfg.subscenes_per_scene; ++k) {
        const std::string sample_name = scene_name + "-sample-" + padded(k, 3);
        const NodeId sub = w.instance(sample_name);
        w.add(scene, w.has_part_, sub);
        w.add(sub, w.is_part_of_, scene);
        w.add(sub, w.type_, scene_class);
        const NodeId instant = w.instance(sample_name + "-instant");
        w.add(sub, w.has_time_, instant);
        w.add(instant, w.type_, instant_class);
        w.add(instant, w.in_date_time_, w.date_time(start + k));
        const NodeId point = w.instance(sample_name + "-point");
        w.add(sub, w.has_location_, point);
        w.add(point, w.type_, w.cls("Point"));

        std::vector<Object> current;
        for (const Object& o : previous) {
            if (rng.bernoulli(cfg.object_persistence)) current.push_back(o);
        }
        const auto target = static_cast<std::size_t>(cfg.min_objects_per_subscene +
                                                     static_cast<int>(rng.below(static_cast<std::uint64_t>(span))));
        if (current.size() > target) current.resize(target);
        while (current.size() < target) {
            const Category& category = draw_category();
            const NodeId node = w.instance(scene_name + "-object-" + padded(next_object++, 4));
            w.add(node, w.type_, w.cls(category.leaf));
            current.push_back(Object{node, &category});
        }

        for (const Object& o : current) {
            w.add(sub, w.includes_, o.node);
            const auto family = events_of(o.category->events);
            if (family.empty() || !rng.bernoulli(cfg.event_probability)) continue;
            const std::string_view event_leaf = family[rng.below(family.size())];
            const std::string& object_local = w.kg_.node_term(o.node).lexical;
            const std::string object_suffix = object_local.substr(object_local.rfind('-') + 1);
            const NodeId event = w.instance(sample_name + "-event-" + object_suffix);
            w.add(event, w.type_, w.cls(event_leaf));
            w.add(sub, w.includes_, event);
            w.add(event, w.has_participant_, o.node);
            w.add(o.node, w.is_participant_in_, event);
        }
        previous = std::move(current);
    }
}

}  // namespace

void validate(const GenConfig& cfg) {
    if (cfg.num_scenes < 1) throw ValidationError("num_scenes must be positive");
    if (cfg.subscenes_per_scene < 1) throw ValidationError("subscenes_per_scene must be positive");
    if (cfg.foi_catalog_size < 1 || cfg.foi_catalog_size > kNuScenesCatalogSize) {
        throw ValidationError("foi_catalog_size must be in [1, 23]");
    }
    if (cfg.min_objects_per_subscene < 0 || cfg.min_objects_per_subscene > cfg.max_objects_per_subscene) {
        throw ValidationError("objects per sub-scene must satisfy 0 <= min <= max");
    }
    const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(cfg.object_persistence)) throw ValidationError("object_persistence must be in [0, 1]");
    if (!in_unit(cfg.event_probability)) throw ValidationError("event_probability must be in [0, 1]");
}

KnowledgeGraph generate(const GenConfig& cfg) {
    validate(cfg);
    const auto catalog = catalog_for(cfg.foi_catalog_size);
    GraphWriter w;
    write_ontology(w, catalog);

    std::vector<NodeId> cities;
    for (const auto city : kCities) {
        const NodeId node = w.instance("city-" + std::string(city));
        w.add(node, w.type_, w.cls("City"));
        cities.push_back(node);
    }
    for (int s = 0; s < cfg.num_scenes; ++s) write_scene(w, cfg, catalog, s, cities);
    return w.finish();
}

std::vector<NodePair> split_scene_pairs(const KnowledgeGraph& kg, PairMode mode) {
    std::vector<NodePair> pairs;
    const auto has_part = kg.find_relation(Term::iri(iri::has_part));
    if (!has_part) return pairs;

    std::map<NodeId, std::vector<NodeId>> parents;
    for (const auto& [parent, child] : kg.triples_with_predicate(*has_part)) parents[child].push_back(parent);
    for (auto& [_, ps] : parents) std::sort(ps.begin(), ps.end());

    std::vector<NodeId> subscenes;
    for (const auto& [child, _] : parents) subscenes.push_back(child);

    const auto share_parent = [&](NodeId a, NodeId b) {
        const auto& pa = parents.at(a);
        const auto& pb = parents.at(b);
        std::size_t i = 0, j = 0;
        while (i < pa.size() && j < pb.size()) {
            if (pa[i] == pb[j]) return true;
            pa[i] < pb[j] ? ++i : ++j;
        }
        return false;
    };
    for (std::size_t i = 0; i < subscenes.size(); ++i) {
        for (std::size_t j = i + 1; j < subscenes.size(); ++j) {
            const bool same = share_parent(subscenes[i], subscenes[j]);
            if (same == (mode == PairMode::SameParent)) pairs.emplace_back(subscenes[i], subscenes[j]);
        }
    }
    return pairs;
}

}  // namespace scenekge
