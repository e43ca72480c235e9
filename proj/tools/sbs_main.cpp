// sbs: Semantic Brand Score and discourse analytics over timestamped corpora.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sbs/pipeline.hpp"

namespace {

struct Flags {
    std::string input;
    std::string format;  // empty: infer from extension
    std::string brands, stopwords, sentiment, dimensions;
    std::string granularity = "day";
    std::string stemmer = "porter";
    std::string output;
    sbs::RunConfig cfg;
    bool keep_urls = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("-i,--input", f.input, "Corpus file (JSONL or CSV with id,timestamp,text)")->required();
    cmd->add_option("--format", f.format, "jsonl or csv (default: from file extension)")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("-o,--output", f.output, "Output directory")->required();
    cmd->add_option("--brands", f.brands, "Brand file: canonical<TAB>surface form<TAB>...");
    cmd->add_option("--stopwords", f.stopwords, "Stopword file, one word per line (default: built-in English list)");
    cmd->add_option("--sentiment", f.sentiment, "Sentiment lexicon: term<TAB>score in [-1,1]");
    cmd->add_option("--dimensions", f.dimensions, "Dimension lexicon: term<TAB>category");
    cmd->add_option("--granularity", f.granularity, "Time slices: day, week or month")
        ->check(CLI::IsMember({"day", "week", "month"}));
    cmd->add_option("--window", f.cfg.window, "Co-occurrence window in tokens (>= 2)")->capture_default_str();
    cmd->add_option("--min-edge-weight", f.cfg.min_edge_weight, "Drop edges lighter than this")->capture_default_str();
    cmd->add_option("--top-k", f.cfg.top_k_associations, "Associations reported per brand")->capture_default_str();
    cmd->add_option("--keywords", f.cfg.top_k_keywords, "Keywords reported per topic")->capture_default_str();
    cmd->add_option("--seed", f.cfg.seed, "Louvain node-order seed")->capture_default_str();
    cmd->add_option("--resolution", f.cfg.resolution, "Louvain resolution")->capture_default_str();
    cmd->add_option("--stemmer", f.stemmer, "porter or identity")->check(CLI::IsMember({"porter", "identity"}));
    cmd->add_option("--min-token-len", f.cfg.min_token_len, "Shortest token kept")->capture_default_str();
    cmd->add_flag("--keep-urls", f.keep_urls, "Do not strip URLs before tokenizing");
    cmd->add_flag("--dump-centrality", f.cfg.dump_centrality, "Write centrality/<slice>.csv for every node");
    cmd->add_option("-j,--threads", f.cfg.threads, "Worker threads")->capture_default_str();
}

sbs::RunConfig to_config(const Flags& f) {
    sbs::RunConfig cfg = f.cfg;
    cfg.input = f.input;
    cfg.output_dir = f.output;
    if (!f.format.empty())
        cfg.format = f.format == "csv" ? sbs::CorpusFormat::csv : sbs::CorpusFormat::jsonl;
    else
        cfg.format = cfg.input.extension() == ".csv" ? sbs::CorpusFormat::csv : sbs::CorpusFormat::jsonl;
    auto opt = [](const std::string& s) -> std::optional<std::filesystem::path> {
        if (s.empty()) return std::nullopt;
        return std::filesystem::path(s);
    };
    cfg.brands_file = opt(f.brands);
    cfg.stopwords_file = opt(f.stopwords);
    cfg.sentiment_file = opt(f.sentiment);
    cfg.dimensions_file = opt(f.dimensions);
    cfg.granularity = sbs::parse_granularity(f.granularity);
    cfg.stemmer = sbs::parse_stemmer(f.stemmer);
    cfg.strip_urls = !f.keep_urls;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic Brand Score: prevalence, diversity and connectivity of brands in text corpora"};
    app.require_subcommand(1);

    const std::map<std::string, std::string> descriptions{
        {"run", "Full pipeline: every output below plus manifest.json"},
        {"stats", "Corpus descriptive statistics (stats.json)"},
        {"sbs", "Per-slice brand scores and trends (scores.csv, trends.csv)"},
        {"topics", "Modularity-based topics per slice (topics/*.json)"},
        {"associations", "Top brand associations with sentiment (associations/*.json)"},
        {"dimensions", "Association sentiment and lexicon dimensions (dimensions.csv)"},
        {"novelty", "Per-document TF-IDF novelty (novelty.csv)"},
        {"export-graph", "Per-slice co-occurrence graphs (graphs/*)"},
    };
    Flags flags;
    std::map<CLI::App*, sbs::Command> commands;
    for (const auto& [name, help] : descriptions) {
        auto* sub = app.add_subcommand(name, help);
        add_flags(sub, flags);
        commands.emplace(sub, *sbs::parse_command(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (const auto& [sub, command] : commands) {
        if (!sub->parsed()) continue;
        sbs::RunConfig cfg;
        try {
            cfg = to_config(flags);
        } catch (const std::exception& e) {
            std::cerr << "sbs: " << e.what() << '\n';
            return 1;
        }
        return sbs::run_command(command, cfg, std::cerr);
    }
    return 1;
}
