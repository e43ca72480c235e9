#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sbs/corpus.hpp"

namespace sbs {

// Document frequencies over preprocessed tokens.
class DocFrequencyIndex {
public:
    std::size_t total_docs() const { return total_docs_; }
    // 0 for unindexed words.
    std::size_t doc_frequency(std::string_view word) const;
    std::size_t vocabulary_size() const { return doc_freq_.size(); }

    void add_document(const std::vector<std::string>& tokens);
    void merge(const DocFrequencyIndex& other);

private:
    std::size_t total_docs_ = 0;
    std::unordered_map<std::string, std::size_t> doc_freq_;
};

DocFrequencyIndex build_index(std::span<const Document> docs);

enum class NoveltyMode { average, sum };

class IndexMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NoveltyScores {
    double average = 0;  // (1/n) sum_w f_w ln(N / n_w), n = token count
    double sum = 0;      // average * n
};

// Throws IndexMismatch when a token of doc is not in the index.
NoveltyScores novelty_scores(const Document& doc, const DocFrequencyIndex& index);
double novelty(const Document& doc, const DocFrequencyIndex& index, NoveltyMode mode);

}  // namespace sbs
