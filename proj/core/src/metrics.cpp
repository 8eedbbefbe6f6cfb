#include "scenekge/metrics.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "scenekge/csv.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/log.hpp"
#include "scenekge/ntriples.hpp"
#include "vecmath.hpp"

namespace scenekge {

namespace {

std::string node_text(const KnowledgeGraph& kg, NodeId id) { return format_term(kg.node_term(id)); }

// Runs fn(i) for i in [0, count) on up to `threads` workers; results land by index.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

MetricContext::MetricContext(const EmbeddingLookup& lookup, const KnowledgeGraph& kg)
    : lookup_(&lookup), kg_(&kg), types_(kg), ontology_(SceneOntology::build(kg)) {}

MetricValue MetricContext::categorization(NodeId cls) const {
    const auto concept_vec = lookup_->entity(cls);
    if (!concept_vec) return {};
    const std::size_t d = lookup_->dim();
    std::vector<double> mean(d, 0.0);
    std::size_t count = 0;
    for (const NodeId e : types_.instances_of(cls)) {
        const auto v = lookup_->entity(e);
        if (!v) continue;
        for (std::size_t i = 0; i < d; ++i) mean[i] += (*v)[i];
        ++count;
    }
    if (count == 0) return {};
    for (double& x : mean) x /= static_cast<double>(count);
    const double mean_norm = detail::l2(mean);
    const double concept_norm = detail::l2(*concept_vec);
    if (mean_norm == 0.0 || concept_norm == 0.0) {
        throw NumericError("categorization of " + node_text(*kg_, cls) + ": zero-norm vector");
    }
    return {detail::cosine_with_norms(mean, mean_norm, *concept_vec, concept_norm), count};
}

MetricValue MetricContext::coherence(NodeId cls, std::size_t n, CoherencePool pool) const {
    if (n == 0) throw ValidationError("coherence neighbourhood size must be positive");
    const auto concept_vec = lookup_->entity(cls);
    const std::size_t instances = types_.instances_of(cls).size();
    if (!concept_vec || instances == 0) return {};
    const double concept_norm = detail::l2(*concept_vec);
    if (concept_norm == 0.0) throw NumericError("coherence of " + node_text(*kg_, cls) + ": zero-norm vector");

    std::vector<std::pair<double, NodeId>> candidates;
    candidates.reserve(kg_->node_count());
    for (std::size_t i = 0; i < kg_->node_count(); ++i) {
        const NodeId node{static_cast<std::uint32_t>(i)};
        if (node == cls) continue;
        if (pool == CoherencePool::ExcludeClasses && ontology_.is_class(node)) continue;
        const auto v = lookup_->entity(node);
        if (!v) continue;
        const double norm = detail::l2(*v);
        if (norm == 0.0) continue;
        candidates.emplace_back(detail::cosine_with_norms(*v, norm, *concept_vec, concept_norm), node);
    }
    if (candidates.empty()) return {};
    std::size_t take = n;
    if (candidates.size() < n) {
        warn("coherence of " + node_text(*kg_, cls) + ": only " + std::to_string(candidates.size()) +
             " candidates for n = " + std::to_string(n));
        take = candidates.size();
    }
    const auto closer = [](const std::pair<double, NodeId>& a, const std::pair<double, NodeId>& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                      closer);
    std::size_t typed = 0;
    for (std::size_t i = 0; i < take; ++i) {
        if (types_.has_type(candidates[i].second, cls)) ++typed;
    }
    return {static_cast<double>(typed) / static_cast<double>(take), instances};
}

TransitionValue MetricContext::transition_distance(RelId relation) const {
    TransitionValue result;
    if (index(relation) >= kg_->relation_count()) throw ValidationError("relation id out of range");
    const auto r = lookup_->relation_vector(relation);
    const auto pairs = kg_->triples_with_predicate(relation);
    if (!r) {
        result.skipped = pairs.size();
        return result;
    }
    const std::size_t d = lookup_->dim();
    std::vector<double> translated(d);
    double sum = 0.0;
    for (const auto& [h, t] : pairs) {
        const auto hv = lookup_->entity(h);
        const auto tv = lookup_->entity(t);
        if (!hv || !tv) {
            ++result.skipped;
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) translated[i] = (*hv)[i] + (*r)[i];
        const double a = detail::l2(translated);
        const double b = detail::l2(*tv);
        if (a == 0.0 || b == 0.0) {
            ++result.skipped;
            continue;
        }
        sum += detail::cosine_with_norms(translated, a, *tv, b);
        ++result.support;
    }
    if (result.support > 0) result.value = sum / static_cast<double>(result.support);
    return result;
}

MetricValue categorization(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeId cls) {
    return MetricContext(lookup, kg).categorization(cls);
}

MetricValue coherence(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeId cls, std::size_t n,
                      CoherencePool pool) {
    return MetricContext(lookup, kg).coherence(cls, n, pool);
}

TransitionValue transition_distance(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, RelId relation) {
    return MetricContext(lookup, kg).transition_distance(relation);
}

std::string_view metric_name(MetricKind kind) noexcept {
    switch (kind) {
        case MetricKind::Categorization: return "categorization";
        case MetricKind::Coherence: return "coherence";
        case MetricKind::TransitionDistance: return "transition_distance";
    }
    return "categorization";
}

std::optional<MetricKind> parse_metric(std::string_view text) noexcept {
    if (text == "categorization") return MetricKind::Categorization;
    if (text == "coherence") return MetricKind::Coherence;
    if (text == "transition_distance") return MetricKind::TransitionDistance;
    return std::nullopt;
}

const MetricRow* MetricReport::find(MetricKind metric, std::string_view target) const {
    for (const MetricRow& row : rows) {
        if (row.metric == metric && row.target == target) return &row;
    }
    return nullptr;
}

MetricReport evaluate_all(const EmbeddingSet& es, const KnowledgeGraph& kg, const EvaluationConfig& cfg) {
    const EmbeddingLookup lookup(es, kg, cfg.allow_provenance_mismatch);
    const MetricContext ctx(lookup, kg);

    MetricReport report;
    report.relation_vector_proxy = lookup.relation_vector_is_proxy();
    report.coherence_n = cfg.coherence_n;
    report.coherence_includes_classes = cfg.coherence_pool == CoherencePool::IncludeClasses;
    const std::string model(model_tag(es.model));

    // Classes ordered by their text so row order does not depend on id assignment.
    std::vector<std::pair<std::string, NodeId>> classes;
    for (const NodeId c : ctx.types().populated_classes()) classes.emplace_back(node_text(kg, c), c);
    std::sort(classes.begin(), classes.end());
    std::vector<std::pair<std::string, RelId>> relations;
    for (std::size_t j = 0; j < kg.relation_count(); ++j) {
        const RelId r{static_cast<std::uint32_t>(j)};
        if (!kg.triples_with_predicate(r).empty()) relations.emplace_back(format_term(kg.relation_term(r)), r);
    }
    std::sort(relations.begin(), relations.end());

    std::vector<MetricValue> cat(classes.size()), coh(classes.size());
    std::vector<TransitionValue> trans(relations.size());
    parallel_for(classes.size(), cfg.threads, [&](std::size_t i) {
        cat[i] = ctx.categorization(classes[i].second);
        coh[i] = ctx.coherence(classes[i].second, cfg.coherence_n, cfg.coherence_pool);
    });
    parallel_for(relations.size(), cfg.threads,
                 [&](std::size_t i) { trans[i] = ctx.transition_distance(relations[i].second); });

    const auto emit = [&](MetricKind kind, const std::string& target, const std::optional<double>& value,
                          std::size_t support) {
        if (!value) return;
        report.rows.push_back(MetricRow{kind, target, cfg.kg_variant, model, *value, support});
    };
    for (std::size_t i = 0; i < classes.size(); ++i) emit(MetricKind::Categorization, classes[i].first, cat[i].value, cat[i].support);
    for (std::size_t i = 0; i < classes.size(); ++i) emit(MetricKind::Coherence, classes[i].first, coh[i].value, coh[i].support);
    for (std::size_t i = 0; i < relations.size(); ++i) {
        emit(MetricKind::TransitionDistance, relations[i].first, trans[i].value, trans[i].support);
        if (trans[i].skipped > 0) {
            warn("transition distance of " + relations[i].first + ": skipped " + std::to_string(trans[i].skipped) +
                 " triples");
        }
    }
    for (const auto& [text, c] : classes) {
        if (ctx.ontology().is_class(c) && ctx.ontology().is_top_level(c)) report.top_level_classes.push_back(text);
    }
    return report;
}

void write_csv(const MetricReport& report, std::ostream& out) {
    out << "# relation_vector=" << (report.relation_vector_proxy ? "rescal_diagonal_proxy" : "translation") << '\n';
    out << "# coherence_n=" << report.coherence_n << '\n';
    out << "# coherence_pool=" << (report.coherence_includes_classes ? "include_classes" : "exclude_classes") << '\n';
    out << "# top_level=";
    for (std::size_t i = 0; i < report.top_level_classes.size(); ++i) {
        if (i > 0) out << ' ';
        out << report.top_level_classes[i];
    }
    out << '\n';
    out << "metric,target,kg_variant,model,value,support\n";
    for (const MetricRow& row : report.rows) {
        out << metric_name(row.metric) << ',' << csv::field(row.target) << ',' << csv::field(row.kg_variant) << ','
            << csv::field(row.model) << ',' << csv::number(row.value) << ',' << row.support << '\n';
    }
}

std::string write_csv(const MetricReport& report) {
    std::ostringstream out;
    write_csv(report, out);
    return out.str();
}

MetricReport read_csv(std::istream& in) {
    MetricReport report;
    std::string line;
    std::size_t line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_seen) throw FormatError(line_number, "metadata after the header");
            const std::string_view meta = std::string_view(line).substr(1);
            const std::size_t start = meta.find_first_not_of(' ');
            const std::string_view body = start == std::string_view::npos ? "" : meta.substr(start);
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            const std::string_view key = body.substr(0, eq);
            const std::string_view value = body.substr(eq + 1);
            if (key == "relation_vector") {
                report.relation_vector_proxy = value == "rescal_diagonal_proxy";
            } else if (key == "coherence_n") {
                report.coherence_n = static_cast<std::size_t>(csv::parse_number(value, line_number));
            } else if (key == "coherence_pool") {
                report.coherence_includes_classes = value == "include_classes";
            } else if (key == "top_level") {
                std::string_view rest = value;
                while (!rest.empty()) {
                    const std::size_t sp = rest.find(' ');
                    const std::string_view tok = rest.substr(0, sp);
                    if (!tok.empty()) report.top_level_classes.emplace_back(tok);
                    if (sp == std::string_view::npos) break;
                    rest.remove_prefix(sp + 1);
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "metric,target,kg_variant,model,value,support") throw FormatError(line_number, "unexpected header");
            header_seen = true;
            continue;
        }
        const auto fields = csv::split(line, line_number);
        if (fields.size() != 6) throw FormatError(line_number, "expected 6 fields");
        const auto metric = parse_metric(fields[0]);
        if (!metric) throw FormatError(line_number, "unknown metric '" + fields[0] + "'");
        MetricRow row;
        row.metric = *metric;
        row.target = fields[1];
        row.kg_variant = fields[2];
        row.model = fields[3];
        row.value = csv::parse_number(fields[4], line_number);
        row.support = static_cast<std::size_t>(csv::parse_number(fields[5], line_number));
        report.rows.push_back(std::move(row));
    }
    if (!header_seen) throw FormatError(line_number + 1, "missing header");
    return report;
}

MetricReport read_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_csv(in);
}

}  // namespace scenekge
