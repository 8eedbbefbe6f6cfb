#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/rng.hpp"
#include "scenekge/term.hpp"
#include "scenekge/triplestore.hpp"
#include "scenekge/vocabulary.hpp"

using namespace scenekge;

namespace {

Term scene(const char* local) { return Term::iri(scene_iri(local)); }
Term inst(const char* local) { return Term::iri(inst_iri(local)); }

}  // namespace

TEST_CASE("terms compare on kind, lexical form and datatype") {
    CHECK(Term::iri("http://a") == Term::iri("http://a"));
    CHECK_FALSE(Term::iri("http://a") == Term::literal("http://a"));
    CHECK_FALSE(Term::literal("1", iri::xsd_date_time) == Term::literal("1"));
    CHECK(is_valid_iri("http://example.org/x"));
    CHECK_FALSE(is_valid_iri(""));
    CHECK_FALSE(is_valid_iri("http://a b"));
    CHECK_THROWS_AS(validate(Term::iri("has space")), ValidationError);
}

TEST_CASE("interning is idempotent and dense") {
    KnowledgeGraph kg;
    const NodeId car = kg.intern_node(scene("Car"));
    CHECK(kg.intern_node(scene("Car")) == car);
    CHECK(index(car) == 0);
    CHECK(index(kg.intern_node(scene("Vehicle"))) == 1);

    // Nodes and relations have separate tables.
    CHECK(index(kg.intern_relation(scene("Car"))) == 0);
    CHECK(kg.node_count() == 2);
    CHECK(kg.relation_count() == 1);
}

TEST_CASE("literals are nodes usable as triple objects") {
    KnowledgeGraph kg;
    const Term stamp = Term::literal("2019-01-01T00:00:00", iri::xsd_date_time);
    const NodeId lit = kg.intern_node(stamp);
    const Triple t{kg.intern_node(inst("t0")), kg.intern_relation(Term::iri(iri::in_xsd_date_time)), lit};
    CHECK(kg.insert(t));
    CHECK(kg.node_term(lit) == stamp);
}

TEST_CASE("insert has set semantics") {
    KnowledgeGraph kg;
    CHECK(kg.insert(inst("a"), scene("hasPart"), inst("b")));
    CHECK_FALSE(kg.insert(inst("a"), scene("hasPart"), inst("b")));
    CHECK(kg.stats().triple_count == 1);

    const auto r = *kg.find_relation(scene("hasPart"));
    const auto pairs = kg.triples_with_predicate(r);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == NodePair{*kg.find_node(inst("a")), *kg.find_node(inst("b"))});

    for (int i = 0; i < 4; ++i) kg.insert(inst("x"), scene("includes"), inst(("o" + std::to_string(i)).c_str()));
    CHECK(kg.stats().triple_count == 5);
}

TEST_CASE("invalid ids and frozen graphs are rejected") {
    KnowledgeGraph kg;
    CHECK_THROWS_AS(kg.insert(Triple{NodeId{0}, RelId{0}, NodeId{0}}), ValidationError);
    CHECK_THROWS_AS(kg.node_term(NodeId{3}), ValidationError);
    kg.insert(inst("a"), scene("hasPart"), inst("b"));
    kg.freeze();
    CHECK_THROWS_AS(kg.insert(inst("a"), scene("hasPart"), inst("c")), ValidationError);
    KnowledgeGraph copy = kg.mutable_copy();
    CHECK(copy.insert(inst("a"), scene("hasPart"), inst("c")));
    CHECK(kg.stats().triple_count == 1);
}

TEST_CASE("predicate index queries") {
    KnowledgeGraph empty;
    CHECK(empty.stats() == KgStats{0, 0, 0});

    KnowledgeGraph kg;
    for (int i = 0; i < 3; ++i) kg.insert(inst("s"), scene("hasPart"), inst(("p" + std::to_string(i)).c_str()));
    for (int i = 0; i < 2; ++i) kg.insert(inst("p0"), scene("includes"), inst(("o" + std::to_string(i)).c_str()));
    CHECK(kg.triples_with_predicate(*kg.find_relation(scene("hasPart"))).size() == 3);
    CHECK(kg.triples_with_predicate(*kg.find_relation(scene("includes"))).size() == 2);
}

TEST_CASE("predicate index equals a brute-force filter of the triple set") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const KnowledgeGraph kg = oracle::random_graph(seed);
        std::set<Triple> rebuilt;
        for (std::size_t j = 0; j < kg.relation_count(); ++j) {
            const RelId r{static_cast<std::uint32_t>(j)};
            std::vector<NodePair> expected;
            for (const Triple& t : kg.triples()) {
                if (t.relation == r) expected.emplace_back(t.head, t.tail);
            }
            const auto got = kg.triples_with_predicate(r);
            CHECK(std::vector<NodePair>(got.begin(), got.end()) == expected);
            for (const auto& [h, t] : got) rebuilt.insert(Triple{h, r, t});
        }
        CHECK(rebuilt == std::set<Triple>(kg.triples().begin(), kg.triples().end()));
    }
}

TEST_CASE("interning is a bijection and duplicates collapse") {
    Rng rng(42);
    KnowledgeGraph kg;
    std::set<std::tuple<int, int, int>> distinct;
    for (int i = 0; i < 2000; ++i) {
        const int h = static_cast<int>(rng.below(30));
        const int r = static_cast<int>(rng.below(4));
        const int t = static_cast<int>(rng.below(30));
        distinct.emplace(h, r, t);
        kg.insert(inst(("n" + std::to_string(h)).c_str()), scene(("r" + std::to_string(r)).c_str()),
                  inst(("n" + std::to_string(t)).c_str()));
    }
    CHECK(kg.stats().triple_count == distinct.size());
    for (std::size_t i = 0; i < kg.node_count(); ++i) {
        const NodeId id{static_cast<std::uint32_t>(i)};
        CHECK(kg.find_node(kg.node_term(id)) == id);
    }
}

TEST_CASE("stats of the scene example match a hand count") {
    const KnowledgeGraph kg = parse_document(fixture::read("scene_example.nt"));
    // 5 triples; scene, sub-scene, car, Car, Vehicle, FeatureOfInterest;
    // hasPart, includes, rdf:type, owl:subClassOf.
    CHECK(kg.stats() == KgStats{5, 6, 4});
}

TEST_CASE("same_triples ignores id assignment and order") {
    KnowledgeGraph a, b;
    a.insert(inst("x"), scene("hasPart"), inst("y"));
    a.insert(inst("y"), scene("includes"), inst("z"));
    b.insert(inst("y"), scene("includes"), inst("z"));
    b.insert(inst("x"), scene("hasPart"), inst("y"));
    CHECK(same_triples(a, b));
    b.insert(inst("x"), scene("hasPart"), inst("z"));
    CHECK_FALSE(same_triples(a, b));
}
