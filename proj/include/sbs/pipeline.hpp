#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sbs/cooc_graph.hpp"
#include "sbs/corpus.hpp"
#include "sbs/text_prep.hpp"

namespace sbs {

enum class Command { run, stats, sbs, topics, associations, dimensions, novelty, export_graph };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

struct RunConfig {
    std::filesystem::path input;
    CorpusFormat format = CorpusFormat::jsonl;
    std::optional<std::filesystem::path> brands_file;
    std::optional<std::filesystem::path> stopwords_file;  // built-in English list when unset
    std::optional<std::filesystem::path> sentiment_file;
    std::optional<std::filesystem::path> dimensions_file;
    Granularity granularity = Granularity::day;
    std::size_t window = 7;
    Weight min_edge_weight = 1;
    std::size_t top_k_associations = 10;
    std::size_t top_k_keywords = 10;
    std::uint64_t seed = 42;
    double resolution = 1.0;
    StemmerKind stemmer = StemmerKind::porter_like;
    std::size_t min_token_len = 2;
    bool strip_urls = true;
    bool dump_centrality = false;
    unsigned threads = 1;
    std::filesystem::path output_dir;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Checks files, ranges and per-command requirements. Throws ValidationError.
void validate(Command command, const RunConfig& cfg);

struct RunSummary {
    std::size_t documents = 0;
    std::size_t record_errors = 0;
    std::size_t slices = 0;
    std::vector<std::string> warnings;  // sorted
};

// Validates, then runs the command's stage and its predecessors, writing
// outputs under cfg.output_dir. Throws ValidationError before touching the
// filesystem; any other exception is a processing failure.
RunSummary execute(Command command, const RunConfig& cfg);

// execute() with the exit-code contract: 0 success, 1 validation error,
// 2 processing error (partial outputs kept, FAILED marker written).
int run_command(Command command, const RunConfig& cfg, std::ostream& err);

// The stopword list compiled into the binary.
std::set<std::string> default_stopwords();

}  // namespace sbs
