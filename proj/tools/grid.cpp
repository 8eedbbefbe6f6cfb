#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "scenekge/csv.hpp"
#include "scenekge/errors.hpp"
#include "scenekge/ntriples.hpp"

#ifndef SCENEKGE_VERSION
#define SCENEKGE_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace scenekge::cli {

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string column_name(ModelKind model, KgVariant variant) {
    return std::string(model_tag(model)) + "/" + std::string(variant_name(variant));
}

std::string describe(const GridConfig& cfg) {
    std::ostringstream m;
    const auto list = [&](const char* key, const auto& items, auto&& fmt) {
        m << key << '=';
        for (std::size_t i = 0; i < items.size(); ++i) m << (i ? "," : "") << fmt(items[i]);
        m << '\n';
    };
    list("models", cfg.models, [](ModelKind k) { return std::string(model_tag(k)); });
    list("variants", cfg.variants, [](KgVariant v) { return std::string(variant_name(v)); });
    list("seeds", cfg.seeds, [](std::uint64_t s) { return std::to_string(s); });
    if (cfg.input) {
        m << "input=" << *cfg.input << '\n';
    } else {
        const GenConfig& g = cfg.generator;
        m << "scenes=" << g.num_scenes << "\nsubscenes=" << g.subscenes_per_scene
          << "\ncatalog_size=" << g.foi_catalog_size << "\nmin_objects=" << g.min_objects_per_subscene
          << "\nmax_objects=" << g.max_objects_per_subscene << "\npersistence=" << csv::number(g.object_persistence)
          << "\nevent_probability=" << csv::number(g.event_probability) << '\n';
        if (cfg.graph_seed) m << "graph_seed=" << *cfg.graph_seed << '\n';
    }
    const TrainConfig& t = cfg.training;
    m << "d=" << t.dim << "\nepochs=" << t.epochs << "\nlr=" << csv::number(t.learning_rate)
      << "\nmargin=" << csv::number(t.margin) << "\nbatch=" << (t.batch.full_batch ? 0 : t.batch.minibatch_size)
      << "\nnegatives=" << t.negatives_per_positive << "\nnorm=" << (t.norm == Norm::L1 ? "l1" : "l2")
      << "\nweight_decay=" << csv::number(t.weight_decay) << "\nmax_parameters=" << t.max_parameters
      << "\ncoherence_n=" << cfg.coherence_n
      << "\ninclude_classes=" << (cfg.coherence_pool == CoherencePool::IncludeClasses ? "true" : "false") << '\n';
    return m.str();
}

}  // namespace

std::string cell_name(const GridCell& cell) {
    return std::string(model_tag(cell.model)) + "-" + std::string(variant_name(cell.variant)) + "-seed" +
           std::to_string(cell.seed);
}

void write_merged_csv(const GridConfig& cfg, const std::vector<std::pair<GridCell, MetricReport>>& reports,
                      std::ostream& out) {
    struct Acc {
        double sum = 0.0;
        int count = 0;
    };
    using RowKey = std::pair<MetricKind, std::string>;
    std::map<RowKey, std::map<std::pair<ModelKind, KgVariant>, Acc>> table;
    // Accumulate in seed order so the floating-point sums are reproducible.
    for (const std::uint64_t seed : cfg.seeds) {
        for (const auto& [cell, report] : reports) {
            if (cell.seed != seed) continue;
            for (const MetricRow& row : report.rows) {
                Acc& acc = table[{row.metric, row.target}][{cell.model, cell.variant}];
                acc.sum += row.value;
                ++acc.count;
            }
        }
    }

    out << "metric,target";
    for (const ModelKind m : cfg.models) {
        for (const KgVariant v : cfg.variants) out << ',' << csv::field(column_name(m, v));
    }
    out << '\n';
    for (const auto& [key, cells] : table) {
        out << metric_name(key.first) << ',' << csv::field(key.second);
        for (const ModelKind m : cfg.models) {
            for (const KgVariant v : cfg.variants) {
                out << ',';
                const auto it = cells.find({m, v});
                if (it != cells.end() && it->second.count > 0) out << csv::number(it->second.sum / it->second.count);
            }
        }
        out << '\n';
    }
}

int run_grid(const GridConfig& cfg, std::ostream& err) {
    if (cfg.models.empty()) throw ValidationError("grid: model list is empty");
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());

    // Every intermediate goes through its file format so a grid run matches the equivalent
    // sequence of generate / enrich / train / evaluate invocations.
    std::map<std::pair<std::uint64_t, KgVariant>, KnowledgeGraph> graphs;
    std::optional<std::string> input_text;
    if (cfg.input) input_text = read_file(*cfg.input);
    for (const std::uint64_t seed : cfg.seeds) {
        std::string base_text;
        if (input_text) {
            base_text = *input_text;
        } else {
            GenConfig g = cfg.generator;
            g.seed = cfg.graph_seed.value_or(seed);
            base_text = serialize_document(generate(g));
        }
        const KnowledgeGraph base = parse_document(base_text);
        for (const KgVariant v : cfg.variants) {
            const fs::path path = dir / ("kg-" + std::string(variant_name(v)) + "-seed" + std::to_string(seed) + ".nt");
            write_file(path, serialize_document(make_variant(base, v)));
            graphs.emplace(std::pair{seed, v}, parse_document(read_file(path)));
        }
    }

    std::vector<GridCell> cells;
    for (const ModelKind m : cfg.models) {
        for (const KgVariant v : cfg.variants) {
            for (const std::uint64_t s : cfg.seeds) cells.push_back(GridCell{m, v, s});
        }
    }

    std::vector<std::optional<MetricReport>> results(cells.size());
    std::vector<std::string> failures(cells.size());
    std::mutex log_mutex;
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const GridCell& cell = cells[i];
            const std::string name = cell_name(cell);
            const auto start = std::chrono::steady_clock::now();
            try {
                const KnowledgeGraph& kg = graphs.at({cell.seed, cell.variant});
                TrainConfig t = cfg.training;
                t.model = cell.model;
                t.seed = cell.seed;
                const fs::path emb_path = dir / (name + ".emb");
                write_file(emb_path, save_embeddings(train(kg, t)));
                const EmbeddingSet es = load_embeddings(read_file(emb_path));

                EvaluationConfig e;
                e.kg_variant = std::string(variant_name(cell.variant));
                e.coherence_n = cfg.coherence_n;
                e.coherence_pool = cfg.coherence_pool;
                const fs::path csv_path = dir / (name + ".csv");
                write_file(csv_path, write_csv(evaluate_all(es, kg, e)));
                results[i] = read_csv(read_file(csv_path));
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                std::lock_guard lock(log_mutex);
                err << "cell " << name << " done in " << secs << " s\n";
            } catch (const std::exception& ex) {
                failures[i] = ex.what();
                std::lock_guard lock(log_mutex);
                err << "cell " << name << " failed: " << ex.what() << '\n';
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<GridCell, MetricReport>> reports;
    std::ostringstream failure_log;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (results[i]) {
            reports.emplace_back(cells[i], std::move(*results[i]));
        } else {
            failure_log << cell_name(cells[i]) << ": " << failures[i] << '\n';
        }
    }
    std::ostringstream merged;
    write_merged_csv(cfg, reports, merged);
    write_file(dir / "merged.csv", merged.str());
    write_file(dir / "merged.csv.manifest", "subcommand=grid\nversion=" SCENEKGE_VERSION "\n" + describe(cfg));
    if (!failure_log.str().empty()) {
        write_file(dir / "failures.txt", failure_log.str());
        return kExitDomain;
    }
    fs::remove(dir / "failures.txt", ec);
    return kExitOk;
}

}  // namespace scenekge::cli
