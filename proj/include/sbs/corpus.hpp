#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbs/timestamp.hpp"

namespace sbs {

struct Document {
    std::string id;
    Timestamp timestamp;
    std::string raw_text;
    std::vector<std::string> tokens;  // empty until preprocess()
};

enum class CorpusFormat { jsonl, csv };

struct RecordError {
    std::size_t line;  // 1-based physical line where the record starts
    std::string message;
};

struct LoadResult {
    std::vector<Document> documents;  // file order
    std::vector<RecordError> errors;
};

// Thrown when the corpus file cannot be read at all.
class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Records need "id", "timestamp" and "text". Malformed records are skipped
// and reported; a duplicate id is a record-level error as well.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Writes id,timestamp,text with RFC-4180 quoting.
void write_corpus_csv(const std::filesystem::path& path, const std::vector<Document>& docs);
void write_corpus_jsonl(const std::filesystem::path& path, const std::vector<Document>& docs);

enum class Granularity { day, week, month };

Granularity parse_granularity(std::string_view name);
std::string_view to_string(Granularity g);

struct TimeSlice {
    std::string label;  // day: 2021-03-05, week: Monday start date, month: 2021-03
    Timestamp start;
    Timestamp end;                      // exclusive
    std::vector<std::size_t> documents;  // indices into the source document list
};

// Calendar buckets at 00:00 UTC. Every bucket between the earliest and latest
// document is emitted, including empty ones. Weeks start on Monday.
std::vector<TimeSlice> slice_by_period(const std::vector<Document>& docs, Granularity granularity);

struct CorpusStats {
    std::size_t documents = 0;
    double mean_tokens = 0, sd_tokens = 0;
    double mean_types = 0, sd_types = 0;
    double mean_ttr = 0, sd_ttr = 0;
    double mean_six_letter_share = 0, sd_six_letter_share = 0;
    // Documents with no letters at all; they are excluded from the TTR and
    // six-letter averages since both ratios are undefined for them.
    std::size_t empty_documents = 0;
};

// Lowercased runs of letters (ASCII letters and any non-ASCII code point).
// Used for descriptive statistics, before stopword removal and stemming.
std::vector<std::string> letter_tokens(std::string_view text);

// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

// Population standard deviations. All-empty input yields zeros and a warning.
CorpusStats describe(const std::vector<Document>& docs);

}  // namespace sbs
