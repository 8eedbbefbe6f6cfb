#include "scenekge/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "scenekge/errors.hpp"
#include "scenekge/ntriples.hpp"

namespace scenekge {

namespace {

double sign(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_same_size(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) {
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    }
}

void check_shapes(ModelKind model, std::span<const double> head, std::span<const double> relation,
                  std::span<const double> tail) {
    require_same_size(head, tail, "score");
    const std::size_t d = head.size();
    const std::size_t expected = model == ModelKind::Rescal ? d * d : d;
    if (relation.size() != expected) {
        throw ValidationError("score: relation parameters have " + std::to_string(relation.size()) +
                              " values, expected " + std::to_string(expected));
    }
}

double transe_score(Norm norm, const double* h, const double* r, const double* t, std::size_t d) noexcept {
    double acc = 0.0;
    if (norm == Norm::L1) {
        for (std::size_t i = 0; i < d; ++i) acc += std::abs(h[i] + r[i] - t[i]);
        return -acc;
    }
    for (std::size_t i = 0; i < d; ++i) {
        const double v = h[i] + r[i] - t[i];
        acc += v * v;
    }
    return -std::sqrt(acc);
}

double rescal_score(const double* h, const double* m, const double* t, std::size_t d) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double* row = m + i * d;
        double inner = 0.0;
        for (std::size_t j = 0; j < d; ++j) inner += row[j] * t[j];
        acc += h[i] * inner;
    }
    return acc;
}

// (a corr b)[i] = sum_k a[k] * b[(k + i) mod d]
double correlation_at(const double* a, const double* b, std::size_t d, std::size_t i) noexcept {
    double acc = 0.0;
    const std::size_t split = d - i;
    for (std::size_t k = 0; k < split; ++k) acc += a[k] * b[k + i];
    for (std::size_t k = split; k < d; ++k) acc += a[k] * b[k + i - d];
    return acc;
}

double hole_score(const double* h, const double* r, const double* t, std::size_t d) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += r[i] * correlation_at(h, t, d, i);
    return acc;
}

double raw_score(ModelKind model, Norm norm, const double* h, const double* r, const double* t, std::size_t d) {
    switch (model) {
        case ModelKind::TransE: return transe_score(norm, h, r, t, d);
        case ModelKind::Rescal: return rescal_score(h, r, t, d);
        case ModelKind::HolE: return hole_score(h, r, t, d);
    }
    return 0.0;
}

// Adds coeff * d(score)/d(theta) into gh, gr, gt.
void accumulate_gradients(ModelKind model, Norm norm, const double* h, const double* r, const double* t,
                          std::size_t d, double coeff, double* gh, double* gr, double* gt) {
    switch (model) {
        case ModelKind::TransE: {
            if (norm == Norm::L1) {
                for (std::size_t i = 0; i < d; ++i) {
                    const double s = coeff * sign(h[i] + r[i] - t[i]);
                    gh[i] -= s;
                    gr[i] -= s;
                    gt[i] += s;
                }
                return;
            }
            double sq = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double v = h[i] + r[i] - t[i];
                sq += v * v;
            }
            if (sq == 0.0) return;
            const double scale = coeff / std::sqrt(sq);
            for (std::size_t i = 0; i < d; ++i) {
                const double v = scale * (h[i] + r[i] - t[i]);
                gh[i] -= v;
                gr[i] -= v;
                gt[i] += v;
            }
            return;
        }
        case ModelKind::Rescal: {
            for (std::size_t i = 0; i < d; ++i) {
                const double* row = r + i * d;
                double* grow = gr + i * d;
                double inner = 0.0;
                const double hi = coeff * h[i];
                for (std::size_t j = 0; j < d; ++j) {
                    inner += row[j] * t[j];
                    grow[j] += hi * t[j];
                    gt[j] += hi * row[j];
                }
                gh[i] += coeff * inner;
            }
            return;
        }
        case ModelKind::HolE: {
            for (std::size_t i = 0; i < d; ++i) {
                gr[i] += coeff * correlation_at(h, t, d, i);
                // d/dh_i = sum_j r_j t[(i + j) mod d]
                double acc_h = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    const std::size_t idx = i + j < d ? i + j : i + j - d;
                    acc_h += r[j] * t[idx];
                }
                gh[i] += coeff * acc_h;
                // d/dt_i = sum_j r_j h[(i - j) mod d]
                double acc_t = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    const std::size_t idx = i >= j ? i - j : i + d - j;
                    acc_t += r[j] * h[idx];
                }
                gt[i] += coeff * acc_t;
            }
            return;
        }
    }
}

void normalize_l2(std::span<double> v) noexcept {
    double sq = 0.0;
    for (const double x : v) sq += x * x;
    if (sq == 0.0) return;
    const double inv = 1.0 / std::sqrt(sq);
    for (double& x : v) x *= inv;
}

void check_triple_ids(const EmbeddingSet& es, const Triple& triple) {
    if (index(triple.head) >= es.entity_count() || index(triple.tail) >= es.entity_count()) {
        throw ValidationError("entity id out of range for embedding set");
    }
    if (index(triple.relation) >= es.relation_count()) {
        throw ValidationError("relation id out of range for embedding set");
    }
}

// Dense gradient buffers for one parameter block, zeroed lazily through a touched list.
class GradientBlock {
public:
    GradientBlock(std::size_t rows, std::size_t width) : width_(width), grad_(rows * width, 0.0), touched_(rows, 0) {}

    double* row(std::size_t i) {
        if (!touched_[i]) {
            touched_[i] = 1;
            touched_rows_.push_back(i);
        }
        return grad_.data() + i * width_;
    }

    template <typename Fn>
    void apply_and_clear(Fn&& fn) {
        std::sort(touched_rows_.begin(), touched_rows_.end());
        for (const std::size_t i : touched_rows_) {
            double* g = grad_.data() + i * width_;
            fn(i, std::span<double>(g, width_));
            std::fill(g, g + width_, 0.0);
            touched_[i] = 0;
        }
        touched_rows_.clear();
    }

private:
    std::size_t width_;
    std::vector<double> grad_;
    std::vector<char> touched_;
    std::vector<std::size_t> touched_rows_;
};

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void append_number(std::string& out, double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

}  // namespace

std::string_view model_tag(ModelKind model) noexcept {
    switch (model) {
        case ModelKind::TransE: return "TransE";
        case ModelKind::Rescal: return "RESCAL";
        case ModelKind::HolE: return "HolE";
    }
    return "TransE";
}

std::optional<ModelKind> parse_model(std::string_view text) noexcept {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "transe") return ModelKind::TransE;
    if (lower == "rescal") return ModelKind::Rescal;
    if (lower == "hole") return ModelKind::HolE;
    return std::nullopt;
}

void validate(const TrainConfig& cfg) {
    if (cfg.dim < 1) throw ValidationError("embedding dimension must be >= 1");
    if (!(cfg.margin > 0.0)) throw ValidationError("margin must be > 0");
    if (!(cfg.learning_rate > 0.0)) throw ValidationError("learning rate must be > 0");
    if (cfg.epochs < 1) throw ValidationError("epochs must be >= 1");
    if (!cfg.batch.full_batch && cfg.batch.minibatch_size < 1) throw ValidationError("minibatch size must be >= 1");
    if (cfg.negatives_per_positive < 1) throw ValidationError("negatives per positive must be >= 1");
    if (!(cfg.weight_decay >= 0.0)) throw ValidationError("weight decay must be >= 0");
}

std::size_t parameter_count(ModelKind model, std::size_t entities, std::size_t relations, std::size_t dim) noexcept {
    const std::size_t width = model == ModelKind::Rescal ? dim * dim : dim;
    return entities * dim + relations * width;
}

bool operator==(const EmbeddingSet& a, const EmbeddingSet& b) {
    const auto same_bits = [](const std::vector<double>& x, const std::vector<double>& y) {
        return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](double p, double q) {
                   return std::memcmp(&p, &q, sizeof(double)) == 0;
               });
    };
    return a.model == b.model && a.dim == b.dim && a.seed == b.seed && a.entity_terms == b.entity_terms &&
           a.relation_terms == b.relation_terms && same_bits(a.entities, b.entities) &&
           same_bits(a.relations, b.relations);
}

std::vector<double> circular_correlation(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b, "circular_correlation");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = correlation_at(a.data(), b.data(), a.size(), i);
    return out;
}

double score(ModelKind model, Norm norm, std::span<const double> head, std::span<const double> relation,
             std::span<const double> tail) {
    check_shapes(model, head, relation, tail);
    return raw_score(model, norm, head.data(), relation.data(), tail.data(), head.size());
}

double score(const EmbeddingSet& es, const Triple& triple) {
    check_triple_ids(es, triple);
    return score(es.model, es.norm, es.entity(index(triple.head)), es.relation(index(triple.relation)),
                 es.entity(index(triple.tail)));
}

ScoreGradients score_gradients(ModelKind model, Norm norm, std::span<const double> head,
                               std::span<const double> relation, std::span<const double> tail) {
    check_shapes(model, head, relation, tail);
    ScoreGradients g{std::vector<double>(head.size(), 0.0), std::vector<double>(relation.size(), 0.0),
                     std::vector<double>(tail.size(), 0.0)};
    accumulate_gradients(model, norm, head.data(), relation.data(), tail.data(), head.size(), 1.0, g.head.data(),
                         g.relation.data(), g.tail.data());
    return g;
}

ScoreGradients score_gradients(const EmbeddingSet& es, const Triple& triple) {
    check_triple_ids(es, triple);
    return score_gradients(es.model, es.norm, es.entity(index(triple.head)), es.relation(index(triple.relation)),
                           es.entity(index(triple.tail)));
}

Triple sample_negative(const Triple& positive, const KnowledgeGraph& kg, Rng& rng) {
    const std::size_t n = kg.node_count();
    if (n < 2) throw SamplingError("negative sampling needs at least two entities");
    Triple candidate = positive;
    for (int attempt = 0; attempt < kNegativeSampleAttempts; ++attempt) {
        candidate = positive;
        const bool corrupt_head = rng.bernoulli(0.5);
        NodeId& slot = corrupt_head ? candidate.head : candidate.tail;
        // Uniform over the other n - 1 entities.
        auto pick = static_cast<std::size_t>(rng.below(n - 1));
        if (pick >= index(slot)) ++pick;
        slot = NodeId(static_cast<std::uint32_t>(pick));
        if (!kg.contains(candidate)) return candidate;
    }
    return candidate;
}

EmbeddingSet train(const KnowledgeGraph& kg, const TrainConfig& cfg) {
    validate(cfg);
    require_frozen(kg, "train");
    const std::size_t n = kg.node_count();
    const std::size_t m = kg.relation_count();
    const std::size_t d = cfg.dim;
    if (n < 2) throw TrainingError("training needs at least two entities");
    if (kg.triples().empty()) throw TrainingError("training needs at least one triple");
    const std::size_t needed = parameter_count(cfg.model, n, m, d);
    if (needed > cfg.max_parameters) {
        throw TrainingError(std::string(model_tag(cfg.model)) + " needs " + std::to_string(needed) +
                            " parameters for this graph, above the cap of " + std::to_string(cfg.max_parameters));
    }

    EmbeddingSet es;
    es.model = cfg.model;
    es.dim = d;
    es.norm = cfg.norm;
    es.seed = cfg.seed;
    es.source_stats = kg.stats();
    es.entity_terms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) es.entity_terms.push_back(kg.node_term(NodeId(static_cast<std::uint32_t>(i))));
    es.relation_terms.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        es.relation_terms.push_back(kg.relation_term(RelId(static_cast<std::uint32_t>(j))));
    }

    const Rng root(cfg.seed);
    Rng init_rng = root.fork(1);
    Rng sample_rng = root.fork(2);
    Rng order_rng = root.fork(3);

    const double bound = 6.0 / std::sqrt(static_cast<double>(d));
    es.entities.resize(n * d);
    es.relations.resize(m * es.relation_width());
    for (double& x : es.entities) x = init_rng.uniform(-bound, bound);
    for (double& x : es.relations) x = init_rng.uniform(-bound, bound);
    const bool translational = cfg.model == ModelKind::TransE;
    if (translational) {
        for (std::size_t i = 0; i < n; ++i) normalize_l2(es.entity(i));
        for (std::size_t j = 0; j < m; ++j) normalize_l2(es.relation(j));
    }

    const auto triples = kg.triples();
    const std::size_t k = static_cast<std::size_t>(cfg.negatives_per_positive);
    std::vector<Triple> fixed_negatives;
    if (cfg.batch.full_batch) {
        fixed_negatives.reserve(triples.size() * k);
        for (const Triple& pos : triples) {
            for (std::size_t j = 0; j < k; ++j) fixed_negatives.push_back(sample_negative(pos, kg, sample_rng));
        }
    }

    std::vector<std::size_t> order(triples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch_size = cfg.batch.full_batch ? triples.size() : cfg.batch.minibatch_size;

    GradientBlock entity_grad(n, d);
    GradientBlock relation_grad(m, es.relation_width());
    const double lr = cfg.learning_rate;
    const double decay = translational ? 0.0 : cfg.weight_decay;

    const auto accumulate = [&](const Triple& t, double coeff) {
        const std::size_t h = index(t.head), r = index(t.relation), o = index(t.tail);
        // Row pointers into the gradient blocks; h and o may coincide, row() handles both.
        double* gh = entity_grad.row(h);
        double* gt = entity_grad.row(o);
        double* gr = relation_grad.row(r);
        accumulate_gradients(cfg.model, cfg.norm, es.entity(h).data(), es.relation(r).data(), es.entity(o).data(), d,
                             coeff, gh, gr, gt);
    };
    const auto triple_score = [&](const Triple& t) {
        return raw_score(cfg.model, cfg.norm, es.entity(index(t.head)).data(), es.relation(index(t.relation)).data(),
                         es.entity(index(t.tail)).data(), d);
    };

    es.loss_trace.reserve(static_cast<std::size_t>(cfg.epochs));
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        if (!cfg.batch.full_batch) order_rng.shuffle(std::span<std::size_t>(order));
        double epoch_loss = 0.0;
        for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
            const std::size_t end = std::min(order.size(), begin + batch_size);
            for (std::size_t b = begin; b < end; ++b) {
                const std::size_t idx = order[b];
                const Triple& pos = triples[idx];
                const double pos_score = triple_score(pos);
                for (std::size_t j = 0; j < k; ++j) {
                    const Triple neg = cfg.batch.full_batch ? fixed_negatives[idx * k + j]
                                                            : sample_negative(pos, kg, sample_rng);
                    const double loss = cfg.margin - pos_score + triple_score(neg);
                    if (loss <= 0.0) continue;
                    epoch_loss += loss;
                    accumulate(pos, -1.0);
                    accumulate(neg, 1.0);
                }
            }
            entity_grad.apply_and_clear([&](std::size_t row, std::span<double> g) {
                auto v = es.entity(row);
                for (std::size_t i = 0; i < d; ++i) v[i] -= lr * (g[i] + decay * v[i]);
                if (translational) normalize_l2(v);
            });
            relation_grad.apply_and_clear([&](std::size_t row, std::span<double> g) {
                auto v = es.relation(row);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= lr * (g[i] + decay * v[i]);
            });
        }
        if (!std::isfinite(epoch_loss) || !all_finite(es.entities) || !all_finite(es.relations)) {
            throw TrainingError("non-finite value encountered in epoch " + std::to_string(epoch));
        }
        es.loss_trace.push_back(epoch_loss);
    }
    return es;
}

void save_embeddings(const EmbeddingSet& es, std::ostream& out) {
    out << "model=" << model_tag(es.model) << " d=" << es.dim << " entities=" << es.entity_count()
        << " relations=" << es.relation_count() << " seed=" << es.seed << '\n';
    std::string line;
    const auto write_row = [&](char tag, const Term& term, std::span<const double> values) {
        line.clear();
        line.push_back(tag);
        line.push_back(' ');
        line += format_term(term);
        for (const double v : values) {
            line.push_back(' ');
            append_number(line, v);
        }
        line.push_back('\n');
        out << line;
    };
    for (std::size_t i = 0; i < es.entity_count(); ++i) write_row('E', es.entity_terms[i], es.entity(i));
    for (std::size_t j = 0; j < es.relation_count(); ++j) write_row('R', es.relation_terms[j], es.relation(j));
}

std::string save_embeddings(const EmbeddingSet& es) {
    std::ostringstream out;
    save_embeddings(es, out);
    return out.str();
}

namespace {

std::size_t parse_count(std::string_view text, std::size_t line_number, const char* what) {
    std::size_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError(line_number, std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::string_view header_value(std::string_view token, std::string_view key, std::size_t line_number) {
    if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=') {
        throw FormatError(line_number, "expected '" + std::string(key) + "=' in header");
    }
    return token.substr(key.size() + 1);
}

}  // namespace

EmbeddingSet load_embeddings(std::istream& in) {
    std::string line;
    std::size_t line_number = 1;
    if (!std::getline(in, line)) throw FormatError(1, "missing header");

    std::vector<std::string_view> tokens;
    {
        std::string_view rest(line);
        while (!rest.empty()) {
            const std::size_t sp = rest.find(' ');
            const std::string_view tok = rest.substr(0, sp);
            if (!tok.empty()) tokens.push_back(tok);
            if (sp == std::string_view::npos) break;
            rest.remove_prefix(sp + 1);
        }
    }
    if (tokens.size() != 5) throw FormatError(1, "header must have model, d, entities, relations and seed");

    EmbeddingSet es;
    const auto model = parse_model(header_value(tokens[0], "model", 1));
    if (!model) throw FormatError(1, "unknown model tag '" + std::string(header_value(tokens[0], "model", 1)) + "'");
    es.model = *model;
    es.dim = parse_count(header_value(tokens[1], "d", 1), 1, "dimension");
    if (es.dim == 0) throw FormatError(1, "dimension must be positive");
    const std::size_t n = parse_count(header_value(tokens[2], "entities", 1), 1, "entity count");
    const std::size_t m = parse_count(header_value(tokens[3], "relations", 1), 1, "relation count");
    {
        const auto seed_text = header_value(tokens[4], "seed", 1);
        const auto res = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), es.seed);
        if (res.ec != std::errc() || res.ptr != seed_text.data() + seed_text.size()) {
            throw FormatError(1, "invalid seed");
        }
    }

    const std::size_t width = es.relation_width();
    es.entity_terms.reserve(n);
    es.relation_terms.reserve(m);
    es.entities.reserve(n * es.dim);
    es.relations.reserve(m * width);
    std::unordered_map<Term, int, TermHash> seen_entities, seen_relations;

    const auto read_row = [&](char tag, std::size_t expected_values) {
        if (!std::getline(in, line)) {
            throw FormatError(line_number + 1, "unexpected end of file (truncated embedding file)");
        }
        ++line_number;
        if (line.size() < 2 || line[0] != tag || line[1] != ' ') {
            throw FormatError(line_number, std::string("expected a '") + tag + "' row");
        }
        std::size_t pos = 2;
        Term term;
        try {
            term = read_term(line, pos, line_number);
        } catch (const ParseError& e) {
            throw FormatError(line_number, e.detail());
        }
        auto& seen = tag == 'E' ? seen_entities : seen_relations;
        if (!seen.emplace(term, 0).second) throw FormatError(line_number, "duplicate term " + format_term(term));
        auto& values = tag == 'E' ? es.entities : es.relations;
        std::size_t count = 0;
        const std::string_view text(line);
        while (pos < text.size()) {
            if (text[pos] != ' ') throw FormatError(line_number, "expected a space before each value");
            ++pos;
            std::size_t end = text.find(' ', pos);
            if (end == std::string_view::npos) end = text.size();
            double value = 0.0;
            const auto res = std::from_chars(text.data() + pos, text.data() + end, value);
            if (res.ec != std::errc() || res.ptr != text.data() + end) {
                throw FormatError(line_number, "invalid number '" + std::string(text.substr(pos, end - pos)) + "'");
            }
            values.push_back(value);
            ++count;
            pos = end;
        }
        if (count != expected_values) {
            throw FormatError(line_number, "expected " + std::to_string(expected_values) + " values for " +
                                               std::string(model_tag(es.model)) + ", found " + std::to_string(count));
        }
        (tag == 'E' ? es.entity_terms : es.relation_terms).push_back(std::move(term));
    };

    for (std::size_t i = 0; i < n; ++i) read_row('E', es.dim);
    for (std::size_t j = 0; j < m; ++j) read_row('R', width);
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty()) throw FormatError(line_number, "unexpected content after the last relation row");
    }
    return es;
}

EmbeddingSet load_embeddings(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_embeddings(in);
}

EmbeddingLookup::EmbeddingLookup(const EmbeddingSet& es, const KnowledgeGraph& kg, bool allow_mismatch)
    : es_(&es), node_rows_(kg.node_count(), -1), relation_rows_(kg.relation_count(), -1) {
    std::unordered_map<Term, std::int64_t, TermHash> entity_row, relation_row;
    for (std::size_t i = 0; i < es.entity_count(); ++i) entity_row.emplace(es.entity_terms[i], static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < es.relation_count(); ++j) {
        relation_row.emplace(es.relation_terms[j], static_cast<std::int64_t>(j));
    }
    std::size_t missing = 0;
    for (std::size_t i = 0; i < kg.node_count(); ++i) {
        const auto it = entity_row.find(kg.node_term(NodeId(static_cast<std::uint32_t>(i))));
        if (it == entity_row.end()) {
            ++missing;
        } else {
            node_rows_[i] = it->second;
        }
    }
    for (std::size_t j = 0; j < kg.relation_count(); ++j) {
        const auto it = relation_row.find(kg.relation_term(RelId(static_cast<std::uint32_t>(j))));
        if (it == relation_row.end()) {
            ++missing;
        } else {
            relation_rows_[j] = it->second;
        }
    }
    const bool counts_match = es.entity_count() == kg.node_count() && es.relation_count() == kg.relation_count();
    if (!allow_mismatch && (missing > 0 || !counts_match)) {
        throw ValidationError("embedding provenance mismatch: embeddings cover " + std::to_string(es.entity_count()) +
                              " entities and " + std::to_string(es.relation_count()) + " relations, graph has " +
                              std::to_string(kg.node_count()) + " and " + std::to_string(kg.relation_count()) +
                              " (" + std::to_string(missing) + " terms unmatched)");
    }
}

std::optional<std::span<const double>> EmbeddingLookup::entity(NodeId node) const {
    if (index(node) >= node_rows_.size() || node_rows_[index(node)] < 0) return std::nullopt;
    return es_->entity(static_cast<std::size_t>(node_rows_[index(node)]));
}

std::optional<std::vector<double>> EmbeddingLookup::relation_vector(RelId relation) const {
    if (index(relation) >= relation_rows_.size() || relation_rows_[index(relation)] < 0) return std::nullopt;
    const auto params = es_->relation(static_cast<std::size_t>(relation_rows_[index(relation)]));
    if (es_->model != ModelKind::Rescal) return std::vector<double>(params.begin(), params.end());
    std::vector<double> diagonal(es_->dim);
    for (std::size_t i = 0; i < es_->dim; ++i) diagonal[i] = params[i * es_->dim + i];
    return diagonal;
}

}  // namespace scenekge
