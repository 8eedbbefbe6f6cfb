#include "scenekge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "scenekge/csv.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/log.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/ontology.hpp"
#include "scenekge/vocabulary.hpp"
#include "vecmath.hpp"

namespace scenekge {

namespace {

bool pair_order(const ScenePair& x, const ScenePair& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

std::map<NodeId, std::vector<NodeId>> children_by_parent(const KnowledgeGraph& kg) {
    std::map<NodeId, std::vector<NodeId>> children;
    if (const auto has_part = kg.find_relation(Term::iri(iri::has_part))) {
        for (const auto& [parent, child] : kg.triples_with_predicate(*has_part)) children[parent].push_back(child);
    }
    for (auto& [_, c] : children) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    return children;
}

std::optional<ScenePair> make_pair(const EmbeddingLookup& lookup, NodeId a, NodeId b, PairMode mode) {
    const auto u = lookup.entity(a);
    const auto v = lookup.entity(b);
    if (!u || !v) return std::nullopt;
    if (b < a) std::swap(a, b);
    return ScenePair{a, b, cosine(*u, *v), mode};
}

}  // namespace

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw ValidationError("cosine: dimension mismatch");
    const double nu = detail::l2(u);
    const double nv = detail::l2(v);
    if (nu == 0.0 || nv == 0.0) throw NumericError("cosine of a zero vector is undefined");
    return detail::cosine_with_norms(u, nu, v, nv);
}

std::vector<ScenePair> top_scene_pairs(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, PairMode mode,
                                       std::size_t k) {
    const auto children = children_by_parent(kg);
    std::size_t subscenes = 0;
    for (const auto& [_, c] : children) subscenes += c.size();
    if (subscenes < 2) throw ValidationError("scene similarity needs at least two sub-scenes");

    std::vector<ScenePair> pairs;
    for (const auto& [a, b] : split_scene_pairs(kg, mode)) {
        if (auto p = make_pair(lookup, a, b, mode)) pairs.push_back(*p);
    }
    if (k > pairs.size()) {
        warn("requested " + std::to_string(k) + " scene pairs, only " + std::to_string(pairs.size()) + " exist");
        k = pairs.size();
    }
    std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(k), pairs.end(), pair_order);
    pairs.resize(k);
    return pairs;
}

std::vector<ScenePair> best_pair_per_parent(const EmbeddingLookup& lookup, const KnowledgeGraph& kg) {
    std::vector<ScenePair> best;
    for (const auto& [parent, c] : children_by_parent(kg)) {
        std::optional<ScenePair> top;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                const auto p = make_pair(lookup, c[i], c[j], PairMode::SameParent);
                if (p && (!top || pair_order(*p, *top))) top = p;
            }
        }
        if (top) best.push_back(*top);
    }
    return best;
}

std::unordered_map<NodeId, std::size_t> sample_positions(const KnowledgeGraph& kg) {
    const auto has_time = kg.find_relation(Term::iri(iri::has_time));
    const auto date_time = kg.find_relation(Term::iri(iri::in_xsd_date_time));
    std::unordered_map<NodeId, NodeId> time_of, stamp_of;
    if (has_time) {
        for (const auto& [s, t] : kg.triples_with_predicate(*has_time)) time_of.emplace(s, t);
    }
    if (date_time) {
        for (const auto& [t, lit] : kg.triples_with_predicate(*date_time)) stamp_of.emplace(t, lit);
    }
    const auto timestamp = [&](NodeId sub) -> std::optional<std::string> {
        const auto t = time_of.find(sub);
        if (t == time_of.end()) return std::nullopt;
        const auto s = stamp_of.find(t->second);
        if (s == stamp_of.end()) return std::nullopt;
        return kg.node_term(s->second).lexical;
    };

    std::unordered_map<NodeId, std::size_t> positions;
    for (const auto& [_, children] : children_by_parent(kg)) {
        struct Key {
            bool missing;
            std::string stamp;
            std::string text;
            NodeId node;
        };
        std::vector<Key> keys;
        for (const NodeId c : children) {
            const auto stamp = timestamp(c);
            keys.push_back(Key{!stamp.has_value(), stamp.value_or(""), format_term(kg.node_term(c)), c});
        }
        std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
            return std::tie(x.missing, x.stamp, x.text) < std::tie(y.missing, y.stamp, y.text);
        });
        for (std::size_t i = 0; i < keys.size(); ++i) positions.emplace(keys[i].node, i);
    }
    return positions;
}

EigenPairs symmetric_eigen(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw ValidationError("symmetric_eigen: matrix is not n x n");
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    // Cyclic Jacobi rotations until the off-diagonal mass is negligible.
    double scale = 0.0;
    for (const double x : a) scale += x * x;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        }
        if (off <= 1e-30 * scale || off == 0.0) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });
    EigenPairs out;
    for (const std::size_t col : order) {
        out.values.push_back(a[col * n + col]);
        std::vector<double> vec(n);
        for (std::size_t k = 0; k < n; ++k) vec[k] = v[k * n + col];
        double largest = 0.0;
        for (const double x : vec) largest = std::max(largest, std::abs(x));
        for (const double x : vec) {
            if (std::abs(x) > 1e-12 * largest) {
                if (x < 0.0) {
                    for (double& y : vec) y = -y;
                }
                break;
            }
        }
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

PcaProjection pca_2d(const std::vector<std::vector<double>>& points) {
    if (points.size() < 2) throw ValidationError("projection needs at least two points");
    const std::size_t d = points.front().size();
    if (d == 0) throw ValidationError("projection needs non-empty vectors");
    for (const auto& p : points) {
        if (p.size() != d) throw ValidationError("projection: points differ in dimension");
    }
    if (std::all_of(points.begin(), points.end(), [&](const auto& p) { return p == points.front(); })) {
        throw NumericError("degenerate projection: all points are identical");
    }

    PcaProjection out;
    out.mean.assign(d, 0.0);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < d; ++i) out.mean[i] += p[i];
    }
    for (double& x : out.mean) x /= static_cast<double>(points.size());

    std::vector<double> cov(d * d, 0.0);
    std::vector<double> centred(d);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < d; ++i) centred[i] = p[i] - out.mean[i];
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) cov[i * d + j] += centred[i] * centred[j];
        }
    }
    const double denom = static_cast<double>(points.size() - 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            cov[i * d + j] /= denom;
            cov[j * d + i] = cov[i * d + j];
        }
    }

    EigenPairs eig = symmetric_eigen(std::move(cov), d);
    if (!(eig.values[0] > 0.0)) throw NumericError("degenerate projection: zero variance");
    for (int c = 0; c < 2; ++c) {
        if (static_cast<std::size_t>(c) < d) {
            out.components[c] = eig.vectors[c];
            out.variances[c] = std::max(0.0, eig.values[c]);
        } else {
            out.components[c].assign(d, 0.0);
        }
    }
    out.coordinates.reserve(points.size());
    for (const auto& p : points) {
        std::array<double, 2> xy{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) {
            const double c = p[i] - out.mean[i];
            xy[0] += c * out.components[0][i];
            xy[1] += c * out.components[1][i];
        }
        out.coordinates.push_back(xy);
    }
    return out;
}

std::optional<NodeFilter> parse_node_filter(std::string_view text) noexcept {
    if (text == "all") return NodeFilter::All;
    if (text == "scenes") return NodeFilter::Scenes;
    if (text == "fois") return NodeFilter::Fois;
    if (text == "events") return NodeFilter::Events;
    return std::nullopt;
}

std::vector<ProjectedPoint> project_2d(const EmbeddingLookup& lookup, const KnowledgeGraph& kg, NodeFilter filter) {
    const TypeIndex types(kg);
    const SceneOntology ontology = SceneOntology::build(kg);
    const auto class_node = [&](const std::string& iri) { return kg.find_node(Term::iri(iri)); };
    const auto scene_class = class_node(iri::scene_class);
    const auto foi_class = class_node(iri::feature_of_interest);
    const auto event_class = class_node(iri::event_class);

    const auto falls_under = [&](NodeId node, const std::optional<NodeId>& root) {
        if (!root) return false;
        for (const NodeId t : types.types_of(node)) {
            if (t == *root) return true;
            if (!ontology.is_class(t)) continue;
            const auto up = ontology.superclass_closure(t);
            if (std::binary_search(up.begin(), up.end(), *root)) return true;
        }
        return false;
    };
    const auto selected = [&](NodeId node) {
        switch (filter) {
            case NodeFilter::All: return true;
            case NodeFilter::Scenes: return scene_class && types.has_type(node, *scene_class);
            case NodeFilter::Fois: return falls_under(node, foi_class);
            case NodeFilter::Events: return falls_under(node, event_class);
        }
        return false;
    };
    const auto leaf_label = [&](NodeId node) -> std::string {
        const auto ts = types.types_of(node);
        std::vector<std::string> leaves;
        for (const NodeId t : ts) {
            const bool is_ancestor_of_other = std::any_of(ts.begin(), ts.end(), [&](NodeId other) {
                if (other == t || !ontology.is_class(other)) return false;
                const auto up = ontology.superclass_closure(other);
                return std::binary_search(up.begin(), up.end(), t);
            });
            if (!is_ancestor_of_other) leaves.push_back(format_term(kg.node_term(t)));
        }
        if (leaves.empty()) return "";
        return *std::min_element(leaves.begin(), leaves.end());
    };

    struct Selected {
        std::string term;
        NodeId node;
    };
    std::vector<Selected> nodes;
    for (std::size_t i = 0; i < kg.node_count(); ++i) {
        const NodeId node{static_cast<std::uint32_t>(i)};
        if (!lookup.entity(node) || !selected(node)) continue;
        nodes.push_back(Selected{format_term(kg.node_term(node)), node});
    }
    if (nodes.size() < 2) throw ValidationError("projection needs at least two selected nodes");
    std::sort(nodes.begin(), nodes.end(), [](const Selected& x, const Selected& y) { return x.term < y.term; });

    std::vector<std::vector<double>> points;
    points.reserve(nodes.size());
    for (const Selected& s : nodes) {
        const auto v = *lookup.entity(s.node);
        points.emplace_back(v.begin(), v.end());
    }
    const PcaProjection pca = pca_2d(points);

    std::vector<ProjectedPoint> out;
    out.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.push_back(ProjectedPoint{nodes[i].term, pca.coordinates[i][0], pca.coordinates[i][1],
                                     leaf_label(nodes[i].node)});
    }
    return out;
}

void write_pairs_csv(const std::vector<ScenePair>& pairs, const KnowledgeGraph& kg, std::ostream& out) {
    out << "scene_a,scene_b,similarity\n";
    for (const ScenePair& p : pairs) {
        out << csv::field(format_term(kg.node_term(p.a))) << ',' << csv::field(format_term(kg.node_term(p.b))) << ','
            << csv::number(p.similarity) << '\n';
    }
}

void write_projection_csv(const std::vector<ProjectedPoint>& points, std::ostream& out) {
    out << "term,x,y,label\n";
    for (const ProjectedPoint& p : points) {
        out << csv::field(p.term) << ',' << csv::number(p.x) << ',' << csv::number(p.y) << ',' << csv::field(p.label)
            << '\n';
    }
}

}  // namespace scenekge
