#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "scenekge/embedding.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/rng.hpp"
#include "scenekge/scenegen.hpp"

using namespace scenekge;

namespace {

using V = std::vector<double>;

KnowledgeGraph toy_graph(std::size_t entities, std::size_t relations, std::size_t triples, std::uint64_t seed) {
    Rng rng(seed);
    KnowledgeGraph kg;
    for (std::size_t i = 0; i < entities; ++i) kg.intern_node(Term::iri(inst_iri("n" + std::to_string(i))));
    for (std::size_t j = 0; j < relations; ++j) kg.intern_relation(Term::iri(scene_iri("r" + std::to_string(j))));
    while (kg.stats().triple_count < triples) {
        kg.insert(Triple{NodeId{static_cast<std::uint32_t>(rng.below(entities))},
                         RelId{static_cast<std::uint32_t>(rng.below(relations))},
                         NodeId{static_cast<std::uint32_t>(rng.below(entities))}});
    }
    kg.freeze();
    return kg;
}

TrainConfig small_config(ModelKind model) {
    TrainConfig cfg;
    cfg.model = model;
    cfg.dim = 8;
    cfg.epochs = 5;
    cfg.seed = 17;
    return cfg;
}

}  // namespace

TEST_CASE("circular correlation") {
    CHECK(circular_correlation(V{1, 0}, V{0, 1}) == V{0, 1});
    CHECK(circular_correlation(V{0, 0, 0}, V{1, 2, 3}) == V{0, 0, 0});
    Rng rng(1);
    V a(16), b(16);
    for (double& x : a) x = rng.uniform(-1, 1);
    for (double& x : b) x = rng.uniform(-1, 1);
    const V fast = circular_correlation(a, b);
    const V slow = oracle::naive_correlation(a, b);
    for (std::size_t i = 0; i < 16; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
}

TEST_CASE("hand-evaluated scores") {
    CHECK(score(ModelKind::TransE, Norm::L1, V{1, 0}, V{0, 1}, V{1, 1}) == 0.0);
    CHECK(score(ModelKind::TransE, Norm::L2, V{1, 0}, V{0, 1}, V{1, 1}) == 0.0);
    CHECK(score(ModelKind::Rescal, Norm::L1, V{1, 0}, V{1, 0, 0, 1}, V{1, 0}) == 1.0);
    CHECK(score(ModelKind::Rescal, Norm::L1, V{1, 1}, V{1, 2, 3, 4}, V{1, 0}) == 4.0);
    CHECK(score(ModelKind::HolE, Norm::L1, V{1, 0}, V{0, 1}, V{0, 1}) == 1.0);
    CHECK_THROWS_AS(score(ModelKind::Rescal, Norm::L1, V{1, 1}, V{1, 2}, V{1, 0}), ValidationError);
}

TEST_CASE("scores equal naive loops on random inputs") {
    Rng rng(3);
    for (int probe = 0; probe < 200; ++probe) {
        const std::size_t d = 1 + rng.below(64);
        V h(d), r(d), t(d), m(d * d);
        for (V* v : {&h, &r, &t, &m}) {
            for (double& x : *v) x = rng.uniform(-1, 1);
        }
        CHECK(std::abs(score(ModelKind::HolE, Norm::L1, h, r, t) - oracle::naive_hole(h, r, t)) <= 1e-12);
        CHECK(std::abs(score(ModelKind::Rescal, Norm::L1, h, m, t) - oracle::naive_rescal(h, m, t)) <= 1e-12);
        const double l1 = score(ModelKind::TransE, Norm::L1, h, r, t);
        CHECK(std::abs(l1 - oracle::naive_transe(h, r, t, true)) <= 1e-12);
        CHECK(std::abs(score(ModelKind::TransE, Norm::L2, h, r, t) - oracle::naive_transe(h, r, t, false)) <= 1e-12);
        CHECK(l1 <= 0.0);
    }
}

TEST_CASE("hand-derived gradients") {
    const auto g = score_gradients(ModelKind::Rescal, Norm::L1, V{1, 1}, V{1, 2, 3, 4}, V{1, 0});
    CHECK(g.head == V{1, 3});
    // d/dt = M^T h = (4, 6); d/dM = h t^T.
    CHECK(g.tail == V{4, 6});
    CHECK(g.relation == V{1, 0, 1, 0});

    const auto z = score_gradients(ModelKind::TransE, Norm::L2, V{1, 0}, V{0, 1}, V{1, 1});
    CHECK(z.head == V{0, 0});
    CHECK(z.relation == V{0, 0});
    CHECK(z.tail == V{0, 0});
}

TEST_CASE("gradients agree with central differences") {
    CHECK(oracle::max_gradient_error(ModelKind::TransE, Norm::L1, 8, 100, 1) <= 1e-4);
    CHECK(oracle::max_gradient_error(ModelKind::TransE, Norm::L2, 8, 100, 2) <= 1e-4);
    CHECK(oracle::max_gradient_error(ModelKind::Rescal, Norm::L1, 8, 100, 3) <= 1e-4);
    CHECK(oracle::max_gradient_error(ModelKind::HolE, Norm::L1, 8, 100, 4) <= 1e-4);
}

TEST_CASE("negative sampling corrupts exactly one side and avoids known triples") {
    // Corruptions of (a, r, b): heads b, c and tails a, c. (c, r, b) and (a, r, c) are known,
    // which leaves exactly (b, r, b) and (a, r, a).
    const KnowledgeGraph kg = parse_document(
        "inst:a scene:r inst:b .\ninst:c scene:r inst:b .\ninst:a scene:r inst:c .\n");
    const Triple pos = kg.triples()[0];
    const NodeId a = *kg.find_node(parse_term("inst:a"));
    const NodeId b = *kg.find_node(parse_term("inst:b"));
    Rng rng(9);
    std::set<Triple> seen;
    for (int i = 0; i < 200; ++i) {
        const Triple neg = sample_negative(pos, kg, rng);
        CHECK(((neg.head == pos.head) != (neg.tail == pos.tail)));
        CHECK(neg.relation == pos.relation);
        CHECK_FALSE(kg.contains(neg));
        seen.insert(neg);
    }
    CHECK(seen == std::set<Triple>{Triple{b, pos.relation, b}, Triple{a, pos.relation, a}});
}

TEST_CASE("negative sampling falls back to an unfiltered draw and is seeded") {
    // Every single-side corruption of (a, r, b) is already known.
    const KnowledgeGraph full = parse_document(
        "inst:a scene:r inst:b .\ninst:a scene:r inst:a .\ninst:b scene:r inst:b .\n");
    Rng rng(1);
    const Triple neg = sample_negative(full.triples()[0], full, rng);
    CHECK(full.contains(neg));
    CHECK_FALSE(neg == full.triples()[0]);

    const KnowledgeGraph kg = toy_graph(30, 2, 60, 5);
    Rng r1(44), r2(44);
    for (int i = 0; i < 50; ++i) CHECK(sample_negative(kg.triples()[0], kg, r1) == sample_negative(kg.triples()[0], kg, r2));

    const KnowledgeGraph lonely = parse_document("inst:a scene:r inst:a .\n");
    CHECK_THROWS_AS(sample_negative(lonely.triples()[0], lonely, rng), SamplingError);
}

TEST_CASE("parameter counts follow the model formulas") {
    const KnowledgeGraph kg = toy_graph(100, 5, 300, 2);
    for (const ModelKind m : {ModelKind::TransE, ModelKind::Rescal, ModelKind::HolE}) {
        TrainConfig cfg = small_config(m);
        cfg.dim = 10;
        cfg.epochs = 1;
        const EmbeddingSet es = train(kg, cfg);
        const std::size_t expected = m == ModelKind::Rescal ? 100 * 10 + 5 * 100 : 100 * 10 + 5 * 10;
        CHECK(es.parameter_count() == expected);
        CHECK(parameter_count(m, 100, 5, 10) == expected);
    }
}

TEST_CASE("training is deterministic and finite") {
    const KnowledgeGraph kg = toy_graph(40, 3, 120, 8);
    for (const ModelKind m : {ModelKind::TransE, ModelKind::Rescal, ModelKind::HolE}) {
        const EmbeddingSet a = train(kg, small_config(m));
        const EmbeddingSet b = train(kg, small_config(m));
        CHECK(a == b);
        CHECK(save_embeddings(a) == save_embeddings(b));
        CHECK(a.loss_trace == b.loss_trace);
        for (const double x : a.entities) CHECK(std::isfinite(x));
        TrainConfig other = small_config(m);
        other.seed = 18;
        CHECK_FALSE(train(kg, other) == a);
    }
}

TEST_CASE("TransE keeps entity vectors on the unit sphere") {
    const EmbeddingSet es = train(toy_graph(30, 2, 80, 4), small_config(ModelKind::TransE));
    for (std::size_t i = 0; i < es.entity_terms.size(); ++i) {
        const auto v = es.entity(i);
        CHECK(std::sqrt(oracle::dot(v, v)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("full-batch descent with a small step never increases the loss") {
    const KnowledgeGraph kg = toy_graph(12, 2, 20, 6);
    for (const ModelKind m : {ModelKind::Rescal, ModelKind::HolE, ModelKind::TransE}) {
        CAPTURE(model_tag(m));
        TrainConfig cfg = small_config(m);
        cfg.batch.full_batch = true;
        cfg.learning_rate = 1e-4;
        cfg.epochs = 40;
        const EmbeddingSet es = train(kg, cfg);
        REQUIRE(es.loss_trace.size() == 40);
        for (std::size_t e = 1; e < es.loss_trace.size(); ++e) CHECK(es.loss_trace[e] <= es.loss_trace[e - 1] + 1e-9);
    }
}

TEST_CASE("training refuses bad settings and oversized models") {
    const KnowledgeGraph kg = toy_graph(20, 2, 30, 1);
    TrainConfig cfg = small_config(ModelKind::Rescal);
    cfg.max_parameters = 100;
    CHECK_THROWS_AS(train(kg, cfg), TrainingError);
    cfg = small_config(ModelKind::TransE);
    cfg.margin = 0.0;
    CHECK_THROWS_AS(train(kg, cfg), ValidationError);
    cfg = small_config(ModelKind::TransE);
    cfg.dim = 0;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
    CHECK_THROWS_AS(train(KnowledgeGraph{}, small_config(ModelKind::TransE)), Error);
}

TEST_CASE("model tags parse case-insensitively") {
    CHECK(parse_model("transe") == ModelKind::TransE);
    CHECK(parse_model("RESCAL") == ModelKind::Rescal);
    CHECK(parse_model("HolE") == ModelKind::HolE);
    CHECK_FALSE(parse_model("distmult").has_value());
}

TEST_CASE("embedding files round-trip bit-exactly") {
    const KnowledgeGraph kg = toy_graph(25, 3, 60, 12);
    for (const ModelKind m : {ModelKind::TransE, ModelKind::Rescal, ModelKind::HolE}) {
        const EmbeddingSet es = train(kg, small_config(m));
        const std::string text = save_embeddings(es);
        const EmbeddingSet back = load_embeddings(text);
        CHECK(back.model == es.model);
        CHECK(back.entities == es.entities);
        CHECK(back.relations == es.relations);
        CHECK(back.entity_terms == es.entity_terms);
        CHECK(save_embeddings(back) == text);
    }
}

TEST_CASE("malformed embedding files report a line") {
    const auto line_of = [](const std::string& text) -> std::size_t {
        try {
            load_embeddings(text);
        } catch (const FormatError& e) {
            return e.line_number();
        }
        return 0;
    };
    CHECK(line_of("model=RESCAL d=2 entities=1 relations=1 seed=0\nE inst:a 1 2\nR scene:r 1 2\n") == 3);
    CHECK(line_of("model=TransE d=2 entities=2 relations=1 seed=0\nE inst:a 1 2\n") == 3);
    CHECK(line_of("model=Foo d=2 entities=1 relations=1 seed=0\nE inst:a 1 2\nR scene:r 1 2\n") == 1);
    CHECK(line_of("model=TransE d=2 entities=2 relations=0 seed=0\nE inst:a 1 2\nE inst:a 1 2\n") == 3);
    CHECK(line_of("model=TransE d=2 entities=1 relations=0 seed=0\nE inst:a 1 x\n") == 2);
    CHECK(line_of("model=TransE d=2 entities=1 relations=0 seed=0\nE inst:a 1 2\nE inst:b 1 2\n") == 3);
    CHECK(line_of("") == 1);
}

TEST_CASE("lookup maps graph terms to rows and checks provenance") {
    const KnowledgeGraph kg = toy_graph(10, 2, 20, 3);
    const EmbeddingSet es = train(kg, small_config(ModelKind::Rescal));
    const EmbeddingLookup lookup(es, kg);
    const auto v = lookup.entity(NodeId{3});
    REQUIRE(v.has_value());
    CHECK(v->size() == 8);
    const auto diag = lookup.relation_vector(RelId{1});
    REQUIRE(diag.has_value());
    for (std::size_t i = 0; i < 8; ++i) CHECK((*diag)[i] == es.relation(1)[i * 8 + i]);
    CHECK(lookup.relation_vector_is_proxy());

    const KnowledgeGraph other = toy_graph(11, 2, 20, 3);
    CHECK_THROWS_AS(EmbeddingLookup(es, other), ValidationError);
    const EmbeddingLookup loose(es, other, true);
    CHECK_FALSE(loose.entity(NodeId{10}).has_value());
}
