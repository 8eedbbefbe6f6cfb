#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scenekge/analysis.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/ontology.hpp"

#ifndef SCENEKGE_VERSION
#define SCENEKGE_VERSION "unknown"
#endif

namespace scenekge::cli {

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

KnowledgeGraph read_graph(const std::string& path) {
    auto in = open_input(path);
    return parse_document(in);
}

EmbeddingSet read_embeddings(const std::string& path) {
    auto in = open_input(path);
    return load_embeddings(in);
}

// Writes to the named file, or to `out` when no path was given.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

struct Common {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string output;
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--seed", common.seed, "Seed for all randomness")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", common.output, "Output file (standard output when omitted)");
}

void write_manifest(const CLI::App* sub, const Common& common, std::chrono::steady_clock::duration elapsed,
                    const std::string& extra = "") {
    if (common.output.empty()) return;
    std::ostringstream m;
    m << "subcommand=" << sub->get_name() << '\n';
    m << "version=" << SCENEKGE_VERSION << '\n';
    for (const CLI::Option* opt : sub->get_options()) {
        std::string name = opt->get_single_name();
        if (name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& results = opt->results();
            for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
        } else if (opt->get_type_size() == 0) {
            value = "false";
        } else {
            value = opt->get_default_str();
        }
        m << name << '=' << value << '\n';
    }
    m << extra;
    m << "duration_seconds=" << std::chrono::duration<double>(elapsed).count() << '\n';
    std::ofstream file(common.output + ".manifest", std::ios::binary);
    if (!file) throw IoError("cannot write manifest for '" + common.output + "'");
    file << m.str();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !(in >> std::ws).eof()) throw ValidationError("grid config: bad value for '" + key + "': " + text);
    return value;
}

int catalog_size(const std::string& name) {
    const std::string n = lower(name);
    if (n == "lyft") return kLyftCatalogSize;
    if (n == "nuscenes") return kNuScenesCatalogSize;
    throw ValidationError("unknown catalog '" + name + "' (expected lyft or nuscenes)");
}

}  // namespace

GridConfig parse_grid_config(std::istream& in) {
    GridConfig cfg;
    std::string line;
    std::size_t line_number = 0;
    bool saw_models = false;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("grid config line " + std::to_string(line_number) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        if (key == "models") {
            saw_models = true;
            cfg.models.clear();
            for (const auto& m : split_list(value)) {
                const auto model = parse_model(m);
                if (!model) throw ValidationError("grid config: unknown model '" + m + "'");
                cfg.models.push_back(*model);
            }
        } else if (key == "variants") {
            cfg.variants.clear();
            for (const auto& v : split_list(value)) {
                const auto variant = parse_variant(lower(v));
                if (!variant) throw ValidationError("grid config: unknown variant '" + v + "'");
                cfg.variants.push_back(*variant);
            }
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& s : split_list(value)) cfg.seeds.push_back(parse_value<std::uint64_t>(key, s));
        } else if (key == "input") {
            cfg.input = value;
        } else if (key == "scenes") {
            cfg.generator.num_scenes = parse_value<int>(key, value);
        } else if (key == "subscenes") {
            cfg.generator.subscenes_per_scene = parse_value<int>(key, value);
        } else if (key == "catalog") {
            cfg.generator.foi_catalog_size = catalog_size(value);
        } else if (key == "catalog_size") {
            cfg.generator.foi_catalog_size = parse_value<int>(key, value);
        } else if (key == "min_objects") {
            cfg.generator.min_objects_per_subscene = parse_value<int>(key, value);
        } else if (key == "max_objects") {
            cfg.generator.max_objects_per_subscene = parse_value<int>(key, value);
        } else if (key == "persistence") {
            cfg.generator.object_persistence = parse_value<double>(key, value);
        } else if (key == "event_probability") {
            cfg.generator.event_probability = parse_value<double>(key, value);
        } else if (key == "graph_seed") {
            cfg.graph_seed = parse_value<std::uint64_t>(key, value);
        } else if (key == "d") {
            cfg.training.dim = parse_value<std::size_t>(key, value);
        } else if (key == "epochs") {
            cfg.training.epochs = parse_value<int>(key, value);
        } else if (key == "lr") {
            cfg.training.learning_rate = parse_value<double>(key, value);
        } else if (key == "margin") {
            cfg.training.margin = parse_value<double>(key, value);
        } else if (key == "batch") {
            const auto b = parse_value<std::size_t>(key, value);
            cfg.training.batch.full_batch = b == 0;
            if (b > 0) cfg.training.batch.minibatch_size = b;
        } else if (key == "negatives") {
            cfg.training.negatives_per_positive = parse_value<int>(key, value);
        } else if (key == "norm") {
            const std::string n = lower(value);
            if (n != "l1" && n != "l2") throw ValidationError("grid config: norm must be l1 or l2");
            cfg.training.norm = n == "l1" ? Norm::L1 : Norm::L2;
        } else if (key == "weight_decay") {
            cfg.training.weight_decay = parse_value<double>(key, value);
        } else if (key == "max_parameters") {
            cfg.training.max_parameters = parse_value<std::size_t>(key, value);
        } else if (key == "coherence_n") {
            cfg.coherence_n = parse_value<std::size_t>(key, value);
        } else if (key == "include_classes") {
            const std::string b = lower(value);
            if (b != "true" && b != "false") throw ValidationError("grid config: include_classes must be true/false");
            cfg.coherence_pool = b == "true" ? CoherencePool::IncludeClasses : CoherencePool::ExcludeClasses;
        } else if (key == "output") {
            cfg.output_dir = value;
        } else if (key == "threads") {
            cfg.threads = parse_value<int>(key, value);
        } else {
            throw ValidationError("grid config line " + std::to_string(line_number) + ": unknown key '" + key + "'");
        }
    }
    if (!saw_models || cfg.models.empty()) throw ValidationError("grid config: model list is empty");
    if (cfg.variants.empty()) cfg.variants = {KgVariant::Base, KgVariant::WithTypes, KgVariant::WithPaths};
    if (cfg.seeds.empty()) cfg.seeds = {0};
    if (cfg.threads < 1) throw ValidationError("grid config: threads must be positive");
    return cfg;
}

GridConfig parse_grid_config_file(const std::string& path) {
    auto in = open_input(path);
    return parse_grid_config(in);
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int dispatch(CLI::App& app, std::ostream& out, std::ostream& err, const std::vector<std::string>& args) {
    Common common;

    auto* gen = app.add_subcommand("generate", "Generate a synthetic scene graph");
    GenConfig gcfg;
    std::string catalog = "lyft";
    std::optional<int> catalog_n;
    gen->add_option("--scenes", gcfg.num_scenes, "Number of scenes")->capture_default_str();
    gen->add_option("--subscenes", gcfg.subscenes_per_scene, "Sub-scenes per scene")->capture_default_str();
    gen->add_option("--catalog", catalog, "Object catalog: lyft or nuscenes")->capture_default_str();
    gen->add_option("--catalog-size", catalog_n, "Use the first N categories of the catalog");
    gen->add_option("--min-objects", gcfg.min_objects_per_subscene)->capture_default_str();
    gen->add_option("--max-objects", gcfg.max_objects_per_subscene)->capture_default_str();
    gen->add_option("--persistence", gcfg.object_persistence, "Object persistence between samples")
        ->capture_default_str();
    gen->add_option("--event-probability", gcfg.event_probability)->capture_default_str();
    add_common(gen, common);

    auto* enrich = app.add_subcommand("enrich", "Produce an enriched graph variant");
    std::string input, embeddings_path;
    std::string variant = "paths";
    enrich->add_option("input", input, "N-Triples input")->required();
    enrich->add_option("--variant", variant, "base, types or paths")->capture_default_str();
    add_common(enrich, common);

    auto* stats = app.add_subcommand("stats", "Print triple, entity and relation counts");
    stats->add_option("input", input, "N-Triples input")->required();
    add_common(stats, common);

    auto* train_cmd = app.add_subcommand("train", "Train an embedding model");
    TrainConfig tcfg;
    std::string model = "transe", norm = "l1";
    std::size_t batch = tcfg.batch.minibatch_size;
    train_cmd->add_option("input", input, "N-Triples input")->required();
    train_cmd->add_option("--model", model, "transe, rescal or hole")->capture_default_str();
    train_cmd->add_option("--d,--dim", tcfg.dim, "Embedding dimension")->capture_default_str();
    train_cmd->add_option("--epochs", tcfg.epochs)->capture_default_str();
    train_cmd->add_option("--lr", tcfg.learning_rate, "Learning rate")->capture_default_str();
    train_cmd->add_option("--margin", tcfg.margin)->capture_default_str();
    train_cmd->add_option("--batch", batch, "Minibatch size; 0 for full batch")->capture_default_str();
    train_cmd->add_option("--negatives", tcfg.negatives_per_positive)->capture_default_str();
    train_cmd->add_option("--norm", norm, "TransE distance: l1 or l2")->capture_default_str();
    train_cmd->add_option("--weight-decay", tcfg.weight_decay)->capture_default_str();
    train_cmd->add_option("--max-parameters", tcfg.max_parameters)->capture_default_str();
    add_common(train_cmd, common);

    auto* eval = app.add_subcommand("evaluate", "Compute categorization, coherence and transition distance");
    std::string label = "base";
    std::size_t coherence_n = 1000;
    bool include_classes = false, allow_mismatch = false;
    eval->add_option("graph", input, "N-Triples graph the embeddings were trained on")->required();
    eval->add_option("embeddings", embeddings_path, "Embedding file")->required();
    eval->add_option("--variant", label, "Variant label recorded in the report")->capture_default_str();
    eval->add_option("--coherence-n", coherence_n, "Neighbours considered by coherence")->capture_default_str();
    eval->add_flag("--include-classes", include_classes, "Keep class nodes in the coherence candidate pool");
    eval->add_flag("--allow-mismatch", allow_mismatch, "Accept embeddings trained on a different graph");
    add_common(eval, common);

    auto* similar = app.add_subcommand("similar", "Most similar sub-scene pairs");
    std::string mode = "same";
    std::size_t k = 10;
    similar->add_option("graph", input)->required();
    similar->add_option("embeddings", embeddings_path)->required();
    similar->add_option("--mode", mode, "same or cross parent scene")->capture_default_str();
    similar->add_option("-k", k, "Number of pairs")->capture_default_str()->check(CLI::PositiveNumber);
    add_common(similar, common);

    auto* project = app.add_subcommand("project", "2D PCA projection of entity vectors");
    std::string filter = "all";
    project->add_option("graph", input)->required();
    project->add_option("embeddings", embeddings_path)->required();
    project->add_option("--filter", filter, "all, scenes, fois or events")->capture_default_str();
    add_common(project, common);

    auto* grid = app.add_subcommand("grid", "Run a model x variant x seed experiment grid");
    std::string config_path;
    grid->add_option("config", config_path, "key=value grid description")->required();
    add_common(grid, common);

    app.require_subcommand(1, 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] { return std::chrono::steady_clock::now() - start; };

    if (gen->parsed()) {
        gcfg.seed = common.seed;
        gcfg.foi_catalog_size = catalog_n ? *catalog_n : catalog_size(catalog);
        const KnowledgeGraph kg = generate(gcfg);
        emit(common.output, out, [&](std::ostream& o) { serialize_document(kg, o); });
        write_manifest(gen, common, elapsed());
    } else if (enrich->parsed()) {
        const auto v = parse_variant(lower(variant));
        if (!v) throw UsageError("--variant must be base, types or paths");
        const KnowledgeGraph kg = make_variant(read_graph(input), *v);
        emit(common.output, out, [&](std::ostream& o) { serialize_document(kg, o); });
        write_manifest(enrich, common, elapsed());
    } else if (stats->parsed()) {
        const KgStats s = read_graph(input).stats();
        emit(common.output, out, [&](std::ostream& o) {
            o << "triples=" << s.triple_count << "\nentities=" << s.entity_count << "\nrelations=" << s.relation_count
              << '\n';
        });
        write_manifest(stats, common, elapsed());
    } else if (train_cmd->parsed()) {
        const auto m = parse_model(model);
        if (!m) throw UsageError("--model must be transe, rescal or hole");
        const std::string n = lower(norm);
        if (n != "l1" && n != "l2") throw UsageError("--norm must be l1 or l2");
        tcfg.model = *m;
        tcfg.norm = n == "l1" ? Norm::L1 : Norm::L2;
        tcfg.batch.full_batch = batch == 0;
        if (batch > 0) tcfg.batch.minibatch_size = batch;
        tcfg.seed = common.seed;
        const KnowledgeGraph kg = read_graph(input);
        const EmbeddingSet es = train(kg, tcfg);
        emit(common.output, out, [&](std::ostream& o) { save_embeddings(es, o); });
        std::ostringstream extra;
        extra << "final_loss=" << (es.loss_trace.empty() ? 0.0 : es.loss_trace.back()) << '\n';
        write_manifest(train_cmd, common, elapsed(), extra.str());
        err << "trained " << model_tag(es.model) << " on " << kg.stats().triple_count << " triples\n";
    } else if (eval->parsed()) {
        const KnowledgeGraph kg = read_graph(input);
        const EmbeddingSet es = read_embeddings(embeddings_path);
        EvaluationConfig ecfg;
        ecfg.kg_variant = label;
        ecfg.coherence_n = coherence_n;
        ecfg.coherence_pool = include_classes ? CoherencePool::IncludeClasses : CoherencePool::ExcludeClasses;
        ecfg.allow_provenance_mismatch = allow_mismatch;
        ecfg.threads = common.threads;
        const MetricReport report = evaluate_all(es, kg, ecfg);
        emit(common.output, out, [&](std::ostream& o) { write_csv(report, o); });
        write_manifest(eval, common, elapsed());
    } else if (similar->parsed()) {
        PairMode pm;
        if (mode == "same") {
            pm = PairMode::SameParent;
        } else if (mode == "cross") {
            pm = PairMode::CrossParent;
        } else {
            throw UsageError("--mode must be same or cross");
        }
        const KnowledgeGraph kg = read_graph(input);
        const EmbeddingSet es = read_embeddings(embeddings_path);
        const EmbeddingLookup lookup(es, kg);
        const auto pairs = top_scene_pairs(lookup, kg, pm, k);
        emit(common.output, out, [&](std::ostream& o) { write_pairs_csv(pairs, kg, o); });
        write_manifest(similar, common, elapsed());
    } else if (project->parsed()) {
        const auto f = parse_node_filter(filter);
        if (!f) throw UsageError("--filter must be all, scenes, fois or events");
        const KnowledgeGraph kg = read_graph(input);
        const EmbeddingSet es = read_embeddings(embeddings_path);
        const EmbeddingLookup lookup(es, kg);
        const auto points = project_2d(lookup, kg, *f);
        emit(common.output, out, [&](std::ostream& o) { write_projection_csv(points, o); });
        write_manifest(project, common, elapsed());
    } else if (grid->parsed()) {
        GridConfig gc;
        try {
            gc = parse_grid_config_file(config_path);
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
        if (!common.output.empty()) gc.output_dir = common.output;
        if (grid->count("--threads") > 0) gc.threads = common.threads;
        return run_grid(gc, err);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scene knowledge graph embedding toolkit", "scene-kge"};
    try {
        return dispatch(app, out, err, args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << SCENEKGE_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace scenekge::cli
