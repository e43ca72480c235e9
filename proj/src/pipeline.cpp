#include "sbs/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "sbs/centrality.hpp"
#include "sbs/csv.hpp"
#include "sbs/diagnostics.hpp"
#include "sbs/doc_metrics.hpp"
#include "sbs/format.hpp"
#include "sbs/lexicon.hpp"
#include "sbs/parallel.hpp"
#include "sbs/sbs_score.hpp"
#include "sbs/topics.hpp"

namespace sbs {

extern const char* const kDefaultStopwords;

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kAllSlices = "all";

struct StageSet {
    bool stats = false, sbs = false, topics = false, associations = false, dimensions = false, novelty = false,
         export_graph = false;

    bool needs_graphs() const { return sbs || topics || associations || dimensions || export_graph; }
    bool needs_aggregate() const { return topics || associations || dimensions; }
};

StageSet stages_for(Command c) {
    StageSet s;
    switch (c) {
        case Command::run:
            s = {true, true, true, true, true, true, true};
            break;
        case Command::stats: s.stats = true; break;
        case Command::sbs: s.sbs = true; break;
        case Command::topics: s.topics = true; break;
        case Command::associations: s.associations = true; break;
        case Command::dimensions: s.dimensions = true; break;
        case Command::novelty: s.novelty = true; break;
        case Command::export_graph: s.export_graph = true; break;
    }
    return s;
}

bool needs_brands(Command c) {
    return c == Command::run || c == Command::sbs || c == Command::topics || c == Command::associations ||
           c == Command::dimensions;
}

double num(double v) { return round_fixed(v); }

std::string dump(const ojson& j) { return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n"; }

class OutputTree {
public:
    explicit OutputTree(fs::path root) : root_(std::move(root)) {}

    const fs::path& root() const { return root_; }

    void write(const fs::path& relative, const std::string& content) const {
        const fs::path p = root_ / relative;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + p.string());
    }

    void ensure_dir(const fs::path& relative) const { fs::create_directories(root_ / relative); }

private:
    fs::path root_;
};

// Per-slice products. Filled only for the stages that asked for them.
struct SliceResult {
    std::string label;
    CoocGraph graph;
    std::vector<CentralityRow> centrality;
    std::vector<BrandScore> scores;
    std::optional<Partition> partition;
    std::vector<TopicCluster> topics;
    std::vector<AssociationReport> associations;
    std::vector<SentimentResult> sentiment;
    std::vector<std::vector<double>> dimensions;  // per brand
};

struct Inputs {
    std::vector<std::string> brands;
    std::optional<SentimentLexicon> sentiment;
    std::vector<DimensionLexicon> dimensions;
};

void analyse_slice(SliceResult& r, const StageSet& st, const Inputs& in, const RunConfig& cfg, unsigned bc_threads,
                   bool with_scores) {
    if (with_scores && st.sbs) {
        r.centrality = centrality_table(r.graph, bc_threads);
        r.scores = score_slice(r.graph, r.centrality, in.brands, r.label);
    }
    if (st.topics) {
        r.partition = louvain(r.graph, {cfg.seed, cfg.resolution});
        r.topics = build_topics(r.graph, *r.partition, in.brands, cfg.top_k_keywords);
    }
    if (st.associations || st.dimensions) {
        for (const auto& b : in.brands) {
            auto rep = associations(r.graph, b, cfg.top_k_associations, r.label);
            if (in.sentiment) {
                annotate_sentiment(rep, *in.sentiment);
                r.sentiment.push_back(association_sentiment(rep, *in.sentiment));
            } else {
                r.sentiment.push_back({});
            }
            r.associations.push_back(std::move(rep));
            r.dimensions.push_back(dimension_profile(r.graph, b, in.dimensions));
        }
    }
}

ojson stats_json(const CorpusStats& s, const LoadResult& loaded, const std::vector<TimeSlice>& slices) {
    auto ms = [](double m, double sd) { return ojson{{"mean", num(m)}, {"sd", num(sd)}}; };
    ojson errors = ojson::array();
    for (const auto& e : loaded.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
    ojson sl = ojson::array();
    for (const auto& t : slices)
        sl.push_back({{"label", t.label},
                      {"start", format_timestamp(t.start)},
                      {"end", format_timestamp(t.end)},
                      {"documents", t.documents.size()}});
    return ojson{
        {"documents", s.documents},
        {"empty_documents", s.empty_documents},
        {"tokens", ms(s.mean_tokens, s.sd_tokens)},
        {"types", ms(s.mean_types, s.sd_types)},
        {"type_token_ratio", ms(s.mean_ttr, s.sd_ttr)},
        {"six_letter_share", ms(s.mean_six_letter_share, s.sd_six_letter_share)},
        {"metadata",
         {{"standard_deviation", "population"},
          {"tokenization", "runs of letters, lowercased, before stopword removal and stemming"},
          {"six_letter_words", "words with at least 6 letters"}}},
        {"slices", sl},
        {"record_errors", errors},
    };
}

std::string scores_csv(const std::vector<SliceResult>& slices) {
    std::ostringstream out;
    out << "brand,slice,prevalence,diversity,connectivity,z_prevalence,z_diversity,z_connectivity,sbs\n";
    for (const auto& r : slices)
        for (const auto& s : r.scores)
            out << csv::escape(s.brand) << ',' << csv::escape(s.slice) << ','
                << static_cast<std::uint64_t>(s.raw.prevalence) << ',' << format_fixed(s.raw.diversity) << ','
                << format_fixed(s.raw.connectivity) << ',' << format_fixed(s.z.prevalence) << ','
                << format_fixed(s.z.diversity) << ',' << format_fixed(s.z.connectivity) << ','
                << format_fixed(s.sbs) << '\n';
    return out.str();
}

std::string trends_csv(const std::vector<SliceResult>& slices, const std::vector<std::string>& brands) {
    std::vector<BrandScore> all;
    for (const auto& r : slices) all.insert(all.end(), r.scores.begin(), r.scores.end());
    const auto trends = trend(all);
    std::ostringstream out;
    out << "slice";
    for (const auto& b : brands) out << ',' << csv::escape(b);
    out << '\n';
    for (std::size_t i = 0; i < slices.size(); ++i) {
        out << csv::escape(slices[i].label);
        for (const auto& t : trends) out << ',' << format_fixed(t.series[i].sbs);
        out << '\n';
    }
    if (!slices.empty()) {
        out << "mean";
        for (const auto& t : trends) out << ',' << format_fixed(t.mean);
        out << '\n';
    }
    return out.str();
}

std::string centrality_csv(const SliceResult& r) {
    std::ostringstream out;
    out << "word,prevalence,diversity,connectivity\n";
    for (const auto& row : r.centrality)
        out << csv::escape(row.word) << ',' << row.prevalence << ',' << format_fixed(row.diversity) << ','
            << format_fixed(row.connectivity) << '\n';
    return out.str();
}

std::string associations_json(const SliceResult& r, const RunConfig& cfg, bool have_lexicon) {
    ojson brands = ojson::array();
    for (std::size_t b = 0; b < r.associations.size(); ++b) {
        const auto& rep = r.associations[b];
        ojson entries = ojson::array();
        for (const auto& e : rep.entries) {
            ojson item{{"word", e.word}, {"weight", e.weight}};
            item["sentiment"] = e.sentiment ? ojson(num(*e.sentiment)) : ojson(nullptr);
            entries.push_back(std::move(item));
        }
        ojson item{{"brand", rep.brand}};
        if (have_lexicon && r.sentiment[b].covered)
            item["sentiment"] = num(r.sentiment[b].value);
        else
            item["sentiment"] = nullptr;
        item["associations"] = std::move(entries);
        brands.push_back(std::move(item));
    }
    return dump(ojson{{"slice", r.label}, {"top_k", cfg.top_k_associations}, {"brands", brands}});
}

std::string topics_json(const SliceResult& r) {
    ojson clusters = ojson::array();
    for (const auto& t : r.topics) {
        ojson kws = ojson::array();
        for (const auto& k : t.keywords) kws.push_back({{"word", k.word}, {"score", num(k.score)}});
        ojson assoc = ojson::object();
        for (const auto& [b, v] : t.brand_assoc) assoc[b] = num(v);
        clusters.push_back({{"id", t.id},
                            {"relevance", num(t.relevance)},
                            {"size", t.members.size()},
                            {"members", t.members},
                            {"keywords", kws},
                            {"brand_association", assoc}});
    }
    return dump(ojson{{"slice", r.label},
                      {"modularity", num(r.partition ? r.partition->modularity : 0.0)},
                      {"clusters", clusters}});
}

std::string dimensions_csv(const std::vector<const SliceResult*>& slices, const Inputs& in) {
    std::ostringstream out;
    out << "slice,brand,sentiment,sentiment_covered";
    for (const auto& d : in.dimensions) out << ',' << csv::escape(d.name);
    out << '\n';
    for (const auto* r : slices) {
        for (std::size_t b = 0; b < in.brands.size(); ++b) {
            out << csv::escape(r->label) << ',' << csv::escape(in.brands[b]) << ',';
            const auto& s = r->sentiment[b];
            if (in.sentiment && s.covered) out << format_fixed(s.value);
            out << ',' << (in.sentiment && s.covered ? "true" : "false");
            for (double v : r->dimensions[b]) out << ',' << format_fixed(v);
            out << '\n';
        }
    }
    return out.str();
}

ojson manifest_json(Command command, const RunConfig& cfg, const RunSummary& summary,
                    const std::vector<std::string>& slice_labels) {
    auto path_or_null = [](const std::optional<fs::path>& p) { return p ? ojson(p->generic_string()) : ojson(nullptr); };
    ojson config{
        {"input", cfg.input.generic_string()},
        {"format", cfg.format == CorpusFormat::jsonl ? "jsonl" : "csv"},
        {"brands", path_or_null(cfg.brands_file)},
        {"stopwords", cfg.stopwords_file ? ojson(cfg.stopwords_file->generic_string()) : ojson("built-in")},
        {"sentiment_lexicon", path_or_null(cfg.sentiment_file)},
        {"dimension_lexicon", path_or_null(cfg.dimensions_file)},
        {"granularity", std::string(to_string(cfg.granularity))},
        {"window", cfg.window},
        {"min_edge_weight", cfg.min_edge_weight},
        {"top_k_associations", cfg.top_k_associations},
        {"top_k_keywords", cfg.top_k_keywords},
        {"seed", cfg.seed},
        {"resolution", cfg.resolution},
        {"stemmer", std::string(to_string(cfg.stemmer))},
        {"min_token_len", cfg.min_token_len},
        {"strip_urls", cfg.strip_urls},
    };
    ojson formulas{
        {"prevalence", "occurrences of the brand token in the slice"},
        {"diversity", "distinctiveness sum_j w_ij * log10((n-1)/deg_j)"},
        {"connectivity", "weighted betweenness (Brandes), edge length 1/weight, unnormalized, pairs counted once"},
        {"standardization", "z = (x - mean) / sd over all slice graph nodes, population sd, zero-variance -> 0"},
        {"sbs", "z_prevalence + z_diversity + z_connectivity"},
        {"cooccurrence", "position pairs closer than `window` tokens within one document"},
        {"novelty", "(1/n) sum_w f_w ln(N / n_w), n = token count; sum mode = average * n"},
        {"log_base", "natural log for novelty, base 10 for distinctiveness"},
        {"topic_relevance", "share of total weighted degree"},
        {"keyword_score", "weighted_degree * internal_weight / weighted_degree"},
        {"brand_topic_association", "share of brand weighted degree into each cluster"},
        {"dimension_profile", "share of brand weighted degree to words matching the dimension lexicon"},
        {"sentiment", "edge-weight-weighted mean lexicon score over the top-k associations found in the lexicon"},
        {"number_format", "fixed, 6 decimals, round half to even"},
        {"aggregate_slice", std::string(kAllSlices) + " = whole corpus graph (associations, topics, dimensions)"},
    };
    return ojson{
        {"tool", "sbs"},
        {"version", kVersion},
        {"command", std::string(to_string(command))},
        {"config", config},
        {"formulas", formulas},
        {"corpus",
         {{"documents", summary.documents}, {"record_errors", summary.record_errors}, {"slices", slice_labels}}},
        {"warnings", summary.warnings},
    };
}

std::set<std::string> parse_stopword_text(const char* text) {
    std::set<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.insert(line);
    }
    return out;
}

}  // namespace

std::set<std::string> default_stopwords() { return parse_stopword_text(kDefaultStopwords); }

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::run, Command::stats, Command::sbs, Command::topics, Command::associations,
                      Command::dimensions, Command::novelty, Command::export_graph})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

std::string_view to_string(Command c) {
    switch (c) {
        case Command::run: return "run";
        case Command::stats: return "stats";
        case Command::sbs: return "sbs";
        case Command::topics: return "topics";
        case Command::associations: return "associations";
        case Command::dimensions: return "dimensions";
        case Command::novelty: return "novelty";
        case Command::export_graph: return "export-graph";
    }
    return "?";
}

void validate(Command command, const RunConfig& cfg) {
    auto need_file = [](const fs::path& p, const char* what) {
        std::error_code ec;
        if (!fs::is_regular_file(p, ec)) throw ValidationError(std::string(what) + " not found: " + p.string());
        std::ifstream probe(p);
        if (!probe) throw ValidationError(std::string(what) + " is not readable: " + p.string());
    };
    if (cfg.input.empty()) throw ValidationError("no input corpus given");
    need_file(cfg.input, "input corpus");
    if (cfg.brands_file)
        need_file(*cfg.brands_file, "brands file");
    else if (needs_brands(command))
        throw ValidationError("command '" + std::string(to_string(command)) + "' requires a brands file");
    if (cfg.stopwords_file) need_file(*cfg.stopwords_file, "stopword file");
    if (cfg.sentiment_file) need_file(*cfg.sentiment_file, "sentiment lexicon");
    if (cfg.dimensions_file) need_file(*cfg.dimensions_file, "dimension lexicon");
    if (cfg.window < 2) throw ValidationError("window must be >= 2");
    if (cfg.min_edge_weight < 1) throw ValidationError("min-edge-weight must be >= 1");
    if (cfg.top_k_associations < 1 || cfg.top_k_keywords < 1) throw ValidationError("top-k values must be >= 1");
    if (!(cfg.resolution > 0) || cfg.resolution > 1e6) throw ValidationError("resolution must be in (0, 1e6]");
    if (cfg.min_token_len < 1 || cfg.min_token_len > 64) throw ValidationError("min-token-len must be in [1, 64]");
    if (cfg.threads < 1 || cfg.threads > 1024) throw ValidationError("threads must be in [1, 1024]");
    if (cfg.output_dir.empty()) throw ValidationError("no output directory given");
    std::error_code ec;
    if (fs::exists(cfg.output_dir, ec) && !fs::is_directory(cfg.output_dir, ec))
        throw ValidationError("output path exists and is not a directory: " + cfg.output_dir.string());
}

RunSummary execute(Command command, const RunConfig& cfg) {
    validate(command, cfg);
    const StageSet st = stages_for(command);

    // Load every auxiliary file before producing output.
    PrepConfig prep;
    prep.stopwords = cfg.stopwords_file ? load_stopwords(*cfg.stopwords_file) : default_stopwords();
    prep.stemmer = cfg.stemmer;
    prep.min_token_len = cfg.min_token_len;
    prep.strip_urls = cfg.strip_urls;
    if (cfg.brands_file) prep.brand_aliases = load_brand_aliases(*cfg.brands_file);
    const Preprocessor preprocessor(std::move(prep));

    Inputs in;
    for (const auto& [canonical, forms] : preprocessor.config().brand_aliases) in.brands.push_back(canonical);
    auto normalize = [&](std::string_view t) { return preprocessor.normalize_term(t); };
    if (cfg.sentiment_file) in.sentiment = load_sentiment_lexicon(*cfg.sentiment_file, normalize);
    if (cfg.dimensions_file) in.dimensions = load_dimension_lexicons(*cfg.dimensions_file, normalize);

    std::mutex warn_mutex;
    std::vector<std::string> warnings;
    auto previous = set_warning_sink(nullptr);
    set_warning_sink([&](std::string_view msg) {
        {
            std::lock_guard lock(warn_mutex);
            warnings.emplace_back(msg);
        }
        if (previous) previous(msg);
    });
    struct RestoreSink {
        WarningSink& prev;
        ~RestoreSink() { set_warning_sink(std::move(prev)); }
    } restore{previous};

    const OutputTree out(cfg.output_dir);
    fs::create_directories(cfg.output_dir);
    fs::remove(cfg.output_dir / "FAILED");

    LoadResult loaded = load_corpus(cfg.input, cfg.format);
    for (const auto& e : loaded.errors)
        warn(cfg.input.filename().string() + ":" + std::to_string(e.line) + ": " + e.message);
    auto& docs = loaded.documents;
    if (docs.empty()) warn("corpus contains no valid documents");

    constexpr std::size_t kChunk = 2048;
    parallel_for((docs.size() + kChunk - 1) / kChunk, cfg.threads, [&](std::size_t c) {
        const std::size_t end = std::min(docs.size(), (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) preprocessor.apply(docs[i]);
    });

    const auto slices = slice_by_period(docs, cfg.granularity);
    std::vector<std::string> labels;
    for (const auto& s : slices) labels.push_back(s.label);

    if (st.stats) out.write("stats.json", dump(stats_json(describe(docs), loaded, slices)));

    if (st.novelty) {
        const auto index = build_index(docs);
        std::vector<NoveltyScores> scores(docs.size());
        parallel_for(docs.size(), cfg.threads, [&](std::size_t i) { scores[i] = novelty_scores(docs[i], index); });
        std::ostringstream csv_out;
        csv_out << "id,timestamp,novelty_avg,novelty_sum\n";
        for (std::size_t i = 0; i < docs.size(); ++i)
            csv_out << csv::escape(docs[i].id) << ',' << format_timestamp(docs[i].timestamp) << ','
                    << format_fixed(scores[i].average) << ',' << format_fixed(scores[i].sum) << '\n';
        out.write("novelty.csv", csv_out.str());
    }

    if (st.needs_graphs()) {
        const GraphOptions gopts{cfg.window, cfg.min_edge_weight};
        std::vector<SliceResult> results(slices.size());
        const unsigned slice_workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, slices.size())));
        const unsigned bc_threads = std::max(1u, cfg.threads / slice_workers);
        parallel_for(slices.size(), slice_workers, [&](std::size_t i) {
            auto& r = results[i];
            r.label = slices[i].label;
            r.graph = build_graph(docs, slices[i].documents, gopts);
            analyse_slice(r, st, in, cfg, bc_threads, true);
            if (!st.export_graph) r.graph = CoocGraph{};  // release memory early
        });

        std::optional<SliceResult> aggregate;
        if (st.needs_aggregate()) {
            aggregate.emplace();
            aggregate->label = kAllSlices;
            aggregate->graph = build_graph(docs, gopts);
            analyse_slice(*aggregate, st, in, cfg, cfg.threads, false);
        }

        if (st.sbs) {
            out.write("scores.csv", scores_csv(results));
            out.write("trends.csv", trends_csv(results, in.brands));
            if (cfg.dump_centrality)
                for (const auto& r : results) out.write(fs::path("centrality") / (r.label + ".csv"), centrality_csv(r));
        }
        std::vector<const SliceResult*> with_all;
        for (const auto& r : results) with_all.push_back(&r);
        if (aggregate) with_all.push_back(&*aggregate);
        if (st.topics) {
            out.ensure_dir("topics");
            for (const auto* r : with_all) out.write(fs::path("topics") / (r->label + ".json"), topics_json(*r));
        }
        if (st.associations) {
            out.ensure_dir("associations");
            for (const auto* r : with_all)
                out.write(fs::path("associations") / (r->label + ".json"),
                          associations_json(*r, cfg, in.sentiment.has_value()));
        }
        if (st.dimensions) out.write("dimensions.csv", dimensions_csv(with_all, in));
        if (st.export_graph) {
            out.ensure_dir("graphs");
            for (const auto& r : results) {
                std::ostringstream edges;
                write_edge_csv(edges, r.graph);
                out.write(fs::path("graphs") / (r.label + "_edges.csv"), edges.str());
                out.write(fs::path("graphs") / (r.label + "_nodes.json"), node_table_json(r.graph));
            }
        }
    }

    RunSummary summary;
    summary.documents = docs.size();
    summary.record_errors = loaded.errors.size();
    summary.slices = slices.size();
    {
        std::lock_guard lock(warn_mutex);
        summary.warnings = warnings;
    }
    std::sort(summary.warnings.begin(), summary.warnings.end());
    out.write("manifest.json", dump(manifest_json(command, cfg, summary, labels)));
    return summary;
}

int run_command(Command command, const RunConfig& cfg, std::ostream& err) {
    try {
        execute(command, cfg);
        return 0;
    } catch (const ValidationError& e) {
        err << "sbs " << to_string(command) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "sbs " << to_string(command) << ": processing failed: " << e.what() << '\n';
        std::error_code ec;
        if (fs::is_directory(cfg.output_dir, ec)) {
            std::ofstream marker(cfg.output_dir / "FAILED", std::ios::trunc);
            marker << to_string(command) << ": " << e.what() << '\n';
        }
        return 2;
    }
}

}  // namespace sbs
