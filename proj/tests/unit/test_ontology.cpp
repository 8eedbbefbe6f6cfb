#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scenekge/enrichment.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/log.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/ontology.hpp"
#include "scenekge/rng.hpp"

using namespace scenekge;

namespace {

NodeId node(const KnowledgeGraph& kg, const std::string& text) {
    const auto id = kg.find_node(parse_term(text));
    REQUIRE(id.has_value());
    return *id;
}

std::vector<NodeId> nodes(const KnowledgeGraph& kg, std::initializer_list<const char*> texts) {
    std::vector<NodeId> out;
    for (const char* t : texts) out.push_back(node(kg, t));
    std::sort(out.begin(), out.end());
    return out;
}

template <typename Span>
std::vector<NodeId> vec(Span s) {
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("a two-edge chain gives three classes") {
    const KnowledgeGraph kg = parse_document(
        "scene:Car owl:subClassOf scene:Vehicle .\nscene:Vehicle owl:subClassOf scene:FeatureOfInterest .\n");
    const SceneOntology ont = SceneOntology::build(kg);
    CHECK(ont.classes().size() == 3);
    CHECK(ont.subclass_edges().size() == 2);
    CHECK(vec(ont.superclass_closure(node(kg, "scene:Car"))) ==
          nodes(kg, {"scene:Vehicle", "scene:FeatureOfInterest"}));
    CHECK(ont.superclass_closure(node(kg, "scene:FeatureOfInterest")).empty());
    CHECK(ont.roots() == nodes(kg, {"scene:FeatureOfInterest"}));
    CHECK(ont.is_top_level(node(kg, "scene:Vehicle")));
    CHECK_FALSE(ont.is_top_level(node(kg, "scene:Car")));
}

TEST_CASE("graphs without class triples give an empty ontology") {
    const KnowledgeGraph kg = parse_document("inst:a scene:hasPart inst:b .\n");
    CHECK(SceneOntology::build(kg).empty());
    CHECK_THROWS_AS(SceneOntology::build(kg).superclass_closure(node(kg, "inst:a")), ValidationError);
}

TEST_CASE("subclass cycles are rejected") {
    const KnowledgeGraph two = parse_document("scene:A owl:subClassOf scene:B .\nscene:B owl:subClassOf scene:A .\n");
    CHECK_THROWS_AS(SceneOntology::build(two), OntologyError);
    const KnowledgeGraph self = parse_document("scene:A owl:subClassOf scene:A .\n");
    CHECK_THROWS_AS(SceneOntology::build(self), OntologyError);
    const KnowledgeGraph longer = parse_document(
        "scene:A owl:subClassOf scene:B .\nscene:B owl:subClassOf scene:C .\nscene:C owl:subClassOf scene:A .\n");
    CHECK_THROWS_AS(SceneOntology::build(longer), OntologyError);
}

TEST_CASE("multiple inheritance unions every parent path") {
    const KnowledgeGraph kg = parse_document(
        "scene:Bike owl:subClassOf scene:Vehicle .\nscene:Bike owl:subClassOf scene:Toy .\n"
        "scene:Vehicle owl:subClassOf scene:Thing .\nscene:Toy owl:subClassOf scene:Thing .\n");
    const SceneOntology ont = SceneOntology::build(kg);
    CHECK(vec(ont.superclass_closure(node(kg, "scene:Bike"))) ==
          nodes(kg, {"scene:Vehicle", "scene:Toy", "scene:Thing"}));
    CHECK(vec(ont.parents(node(kg, "scene:Bike"))) == nodes(kg, {"scene:Vehicle", "scene:Toy"}));
}

TEST_CASE("closure equals brute-force reachability on random DAGs") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Rng rng(seed);
        std::vector<std::pair<int, int>> edges;
        KnowledgeGraph kg;
        for (int i = 0; i < 10; ++i) kg.intern_node(Term::iri(scene_iri("K" + std::to_string(i))));
        const auto cls = [](int i) { return Term::iri(scene_iri("K" + std::to_string(i))); };
        for (int e = 0; e < 15; ++e) {
            const int a = static_cast<int>(rng.below(10));
            const int b = static_cast<int>(rng.below(10));
            if (a >= b) continue;
            edges.emplace_back(a, b);
            kg.insert(cls(a), Term::iri(iri::owl_subclass_of), cls(b));
        }
        kg.freeze();
        const SceneOntology ont = SceneOntology::build(kg);
        for (int c = 0; c < 10; ++c) {
            const auto id = kg.find_node(cls(c));
            if (!ont.is_class(*id)) continue;
            std::vector<NodeId> expected;
            for (const int x : oracle::reachable(edges, c)) expected.push_back(*kg.find_node(cls(x)));
            std::sort(expected.begin(), expected.end());
            const auto got = vec(ont.superclass_closure(*id));
            CHECK(got == expected);
            CHECK_FALSE(std::binary_search(got.begin(), got.end(), *id));
            // Monotone along every edge.
            for (const NodeId p : ont.parents(*id)) {
                CHECK(std::binary_search(got.begin(), got.end(), p));
                for (const NodeId q : ont.superclass_closure(p)) CHECK(std::binary_search(got.begin(), got.end(), q));
            }
        }
    }
}

TEST_CASE("asserted types read rdf:type triples") {
    const KnowledgeGraph kg = parse_document(fixture::read("scene_example.nt"));
    CHECK(asserted_types(node(kg, ":inst-car"), kg) == nodes(kg, {"scene:Car"}));
    CHECK(asserted_types(node(kg, ":inst-scene"), kg).empty());

    const KnowledgeGraph enriched = infer_types(kg);
    const SceneOntology ont = SceneOntology::build(kg);
    const auto after = asserted_types(node(enriched, ":inst-car"), enriched);
    for (const NodeId c : ont.superclass_closure(node(kg, "scene:Car"))) {
        const auto same = enriched.find_node(kg.node_term(c));
        CHECK(std::binary_search(after.begin(), after.end(), *same));
    }

    const TypeIndex types(enriched);
    CHECK(types.instances_of(node(enriched, "scene:Vehicle")).size() == 1);
    CHECK(types.has_type(node(enriched, ":inst-car"), node(enriched, "scene:FeatureOfInterest")));
    CHECK(types.populated_classes().size() == 3);
}

TEST_CASE("relations outside the scene vocabulary warn but do not fail") {
    std::vector<std::string> warnings;
    const auto previous = set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
    const KnowledgeGraph kg = parse_document("inst:a scene:likes inst:b .\ninst:a scene:hasPart inst:c .\n");
    const auto unknown = check_relation_vocabulary(kg);
    set_warning_sink(previous);
    REQUIRE(unknown.size() == 1);
    CHECK(kg.relation_term(unknown[0]) == Term::iri(scene_iri("likes")));
    CHECK_FALSE(warnings.empty());
}
