#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scenekge/enrichment.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/log.hpp"
#include "scenekge/metrics.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/rng.hpp"
#include "scenekge/scenegen.hpp"

using namespace scenekge;

namespace {

using V = std::vector<double>;

// Embedding set over `kg` whose rows are given explicitly by term text; other rows are zero
// except for a small distinct value so they never trip zero-norm checks.
EmbeddingSet explicit_set(const KnowledgeGraph& kg, std::size_t d, const std::map<std::string, V>& rows,
                          const std::map<std::string, V>& rel_rows = {}) {
    EmbeddingSet es = oracle::random_embeddings(kg, ModelKind::TransE, d, 1);
    for (std::size_t i = 0; i < es.entity_terms.size(); ++i) {
        const auto it = rows.find(format_term(es.entity_terms[i]));
        if (it != rows.end()) std::copy(it->second.begin(), it->second.end(), es.entity(i).begin());
    }
    for (std::size_t j = 0; j < es.relation_terms.size(); ++j) {
        const auto it = rel_rows.find(format_term(es.relation_terms[j]));
        if (it != rel_rows.end()) std::copy(it->second.begin(), it->second.end(), es.relation(j).begin());
    }
    return es;
}

NodeId node(const KnowledgeGraph& kg, const char* text) { return *kg.find_node(parse_term(text)); }
RelId rel(const KnowledgeGraph& kg, const char* text) { return *kg.find_relation(parse_term(text)); }

const char* kTiny =
    "inst:e1 rdf:type scene:C .\n"
    "inst:e2 rdf:type scene:C .\n"
    "inst:x scene:hasPart inst:e1 .\n";

}  // namespace

TEST_CASE("categorization by hand") {
    const KnowledgeGraph kg = parse_document(kTiny);
    const auto es = explicit_set(kg, 2, {{"inst:e1", {1, 0}}, {"inst:e2", {0, 1}}, {"scene:C", {1, 1}}});
    const EmbeddingLookup lookup(es, kg);
    const MetricValue v = categorization(lookup, kg, node(kg, "scene:C"));
    REQUIRE(v.value);
    CHECK(*v.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.support == 2);

    const auto same = explicit_set(kg, 2, {{"inst:e1", {2, 3}}, {"inst:e2", {2, 3}}, {"scene:C", {2, 3}}});
    CHECK(*categorization(EmbeddingLookup(same, kg), kg, node(kg, "scene:C")).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    const auto anti = explicit_set(kg, 2, {{"inst:e1", {-1, 0}}, {"inst:e2", {0, -1}}, {"scene:C", {1, 1}}});
    CHECK(*categorization(EmbeddingLookup(anti, kg), kg, node(kg, "scene:C")).value ==
          doctest::Approx(-1.0).epsilon(1e-12));

    // No instances: absent rather than zero.
    CHECK_FALSE(categorization(lookup, kg, node(kg, "inst:x")).value.has_value());

    const auto zero = explicit_set(kg, 2, {{"inst:e1", {1, 0}}, {"inst:e2", {-1, 0}}, {"scene:C", {1, 1}}});
    CHECK_THROWS_AS(categorization(EmbeddingLookup(zero, kg), kg, node(kg, "scene:C")), NumericError);
}

TEST_CASE("coherence by hand") {
    const KnowledgeGraph kg = parse_document(
        "inst:e1 rdf:type scene:C .\ninst:e2 rdf:type scene:C .\ninst:o rdf:type scene:D .\n"
        "inst:x scene:hasPart inst:y .\n");
    // Nearest to C: e1, e2 (typed), then x, y, o.
    const auto es = explicit_set(kg, 2,
                                 {{"scene:C", {1, 0}},
                                  {"scene:D", {1, 0.01}},
                                  {"inst:e1", {1, 0.1}},
                                  {"inst:e2", {1, 0.2}},
                                  {"inst:x", {0, 1}},
                                  {"inst:y", {-1, 1}},
                                  {"inst:o", {-1, 0}}});
    const EmbeddingLookup lookup(es, kg);
    CHECK(*coherence(lookup, kg, node(kg, "scene:C"), 2).value == 1.0);
    CHECK(*coherence(lookup, kg, node(kg, "scene:C"), 4).value == 0.5);
    // With classes in the pool, D (untyped by C) is second nearest.
    CHECK(*coherence(lookup, kg, node(kg, "scene:C"), 2, CoherencePool::IncludeClasses).value == 0.5);
    CHECK(*coherence(lookup, kg, node(kg, "scene:D"), 1).value == 0.0);

    std::vector<std::string> warnings;
    const auto previous = set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
    const MetricValue all = coherence(lookup, kg, node(kg, "scene:C"), 100);
    set_warning_sink(previous);
    CHECK(*all.value == doctest::Approx(2.0 / 5.0));
    CHECK(warnings.size() == 1);
}

TEST_CASE("coherence equals the exhaustive nearest-neighbour oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const KnowledgeGraph kg = oracle::random_graph(seed, {.triples = 150, .entities = 30, .classes = 6});
        const EmbeddingSet es = oracle::random_embeddings(kg, ModelKind::TransE, 4, seed + 100);
        const EmbeddingLookup lookup(es, kg);
        const MetricContext ctx(lookup, kg);
        for (const NodeId c : ctx.types().populated_classes()) {
            const std::string text = format_term(kg.node_term(c));
            const auto expected = oracle::coherence(kg, es, text, 10);
            const auto got = ctx.coherence(c, 10).value;
            REQUIRE(got.has_value() == expected.has_value());
            if (got) CHECK(*got == *expected);
        }
    }
}

TEST_CASE("transition distance by hand and against the oracle") {
    const KnowledgeGraph kg = parse_document("inst:a scene:hasPart inst:b .\n");
    const auto exact = explicit_set(kg, 2, {{"inst:a", {1, 0}}, {"inst:b", {1, 1}}}, {{"scene:hasPart", {0, 1}}});
    CHECK(*transition_distance(EmbeddingLookup(exact, kg), kg, rel(kg, "scene:hasPart")).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    const auto opposite = explicit_set(kg, 2, {{"inst:a", {1, 0}}, {"inst:b", {-1, -1}}}, {{"scene:hasPart", {0, 1}}});
    CHECK(*transition_distance(EmbeddingLookup(opposite, kg), kg, rel(kg, "scene:hasPart")).value ==
          doctest::Approx(-1.0).epsilon(1e-12));
    const auto zero = explicit_set(kg, 2, {{"inst:a", {1, 0}}, {"inst:b", {0, 0}}}, {{"scene:hasPart", {0, 1}}});
    const TransitionValue skipped = transition_distance(EmbeddingLookup(zero, kg), kg, rel(kg, "scene:hasPart"));
    CHECK_FALSE(skipped.value.has_value());
    CHECK(skipped.skipped == 1);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const KnowledgeGraph g = oracle::random_graph(seed, {.triples = 60});
        const EmbeddingSet es = oracle::random_embeddings(g, ModelKind::TransE, 4, seed);
        const EmbeddingLookup lookup(es, g);
        for (std::size_t j = 0; j < g.relation_count(); ++j) {
            const RelId r{static_cast<std::uint32_t>(j)};
            CHECK(std::abs(*transition_distance(lookup, g, r).value - oracle::transition(g, es, r)) <= 1e-12);
        }
        const MetricContext ctx(lookup, g);
        for (const NodeId c : ctx.types().populated_classes()) {
            const auto text = format_term(g.node_term(c));
            CHECK(std::abs(*ctx.categorization(c).value - oracle::categorization(g, es, text)) <= 1e-12);
        }
    }
}

TEST_CASE("metrics are invariant to a common positive scale") {
    const KnowledgeGraph kg = oracle::random_graph(7, {.triples = 120, .entities = 25, .classes = 5});
    EmbeddingSet es = oracle::random_embeddings(kg, ModelKind::TransE, 6, 3);
    EvaluationConfig cfg;
    cfg.coherence_n = 8;
    const MetricReport before = evaluate_all(es, kg, cfg);
    for (double& x : es.entities) x *= 3.5;
    for (double& x : es.relations) x *= 3.5;
    const MetricReport after = evaluate_all(es, kg, cfg);
    REQUIRE(before.rows.size() == after.rows.size());
    for (std::size_t i = 0; i < before.rows.size(); ++i) {
        CHECK(before.rows[i].target == after.rows[i].target);
        CHECK(before.rows[i].value == doctest::Approx(after.rows[i].value).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_all covers populated classes and used relations") {
    GenConfig gen;
    gen.num_scenes = 2;
    gen.subscenes_per_scene = 4;
    const KnowledgeGraph kg = make_variant(generate(gen), KgVariant::WithTypes);
    TrainConfig tc;
    tc.dim = 8;
    tc.epochs = 3;
    const EmbeddingSet es = train(kg, tc);
    EvaluationConfig cfg;
    cfg.kg_variant = "types";
    cfg.coherence_n = 20;
    const MetricReport report = evaluate_all(es, kg, cfg);

    const TypeIndex types(kg);
    std::set<std::string> expected_classes, got_cat, got_coh, got_rel, expected_rel;
    for (const NodeId c : types.populated_classes()) expected_classes.insert(format_term(kg.node_term(c)));
    for (const Triple& t : kg.triples()) expected_rel.insert(format_term(kg.relation_term(t.relation)));
    for (const MetricRow& row : report.rows) {
        CHECK(row.kg_variant == "types");
        CHECK(row.model == "TransE");
        if (row.metric == MetricKind::Categorization) {
            got_cat.insert(row.target);
            CHECK(row.value >= -1.0);
            CHECK(row.value <= 1.0);
        }
        if (row.metric == MetricKind::Coherence) {
            got_coh.insert(row.target);
            CHECK(row.value >= 0.0);
            CHECK(row.value <= 1.0);
        }
        if (row.metric == MetricKind::TransitionDistance) got_rel.insert(row.target);
    }
    CHECK(got_cat == expected_classes);
    CHECK(got_coh == expected_classes);
    CHECK(got_rel == expected_rel);
    CHECK(std::find(report.top_level_classes.begin(), report.top_level_classes.end(), "scene:Vehicle") !=
          report.top_level_classes.end());

    const std::string csv = write_csv(report);
    CHECK(read_csv(csv) == report);
    CHECK(write_csv(read_csv(csv)) == csv);

    EvaluationConfig threaded = cfg;
    threaded.threads = 3;
    CHECK(evaluate_all(es, kg, threaded) == report);
}

TEST_CASE("provenance mismatch needs an override") {
    const KnowledgeGraph kg = parse_document(kTiny);
    const auto es = explicit_set(kg, 2, {});
    const KnowledgeGraph bigger = parse_document(std::string(kTiny) + "inst:z rdf:type scene:C .\n");
    CHECK_THROWS_AS(evaluate_all(es, bigger, EvaluationConfig{}), ValidationError);
    EvaluationConfig loose;
    loose.allow_provenance_mismatch = true;
    loose.coherence_n = 2;
    CHECK_NOTHROW(evaluate_all(es, bigger, loose));
}

TEST_CASE("RESCAL reports flag the diagonal proxy") {
    const KnowledgeGraph kg = parse_document(kTiny);
    const EmbeddingSet es = oracle::random_embeddings(kg, ModelKind::Rescal, 3, 2);
    EvaluationConfig cfg;
    cfg.coherence_n = 2;
    const MetricReport report = evaluate_all(es, kg, cfg);
    CHECK(report.relation_vector_proxy);
    CHECK(write_csv(report).find("# relation_vector=rescal_diagonal_proxy") == 0);
}

TEST_CASE("malformed report CSV is rejected with a line number") {
    CHECK_THROWS_AS(read_csv("metric,target,kg_variant,model,value,support\nbogus,a,b,c,1,2\n"), FormatError);
    CHECK_THROWS_AS(read_csv("metric,target,kg_variant,model,value,support\ncoherence,a,b,c,x,2\n"), FormatError);
    CHECK_THROWS_AS(read_csv("wrong,header\n"), FormatError);
}
