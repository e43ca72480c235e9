#include "sbs/doc_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sbs {

std::size_t DocFrequencyIndex::doc_frequency(std::string_view word) const {
    auto it = doc_freq_.find(std::string(word));
    return it == doc_freq_.end() ? 0 : it->second;
}

void DocFrequencyIndex::add_document(const std::vector<std::string>& tokens) {
    ++total_docs_;
    std::vector<std::string_view> distinct(tokens.begin(), tokens.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto w : distinct) ++doc_freq_[std::string(w)];
}

void DocFrequencyIndex::merge(const DocFrequencyIndex& other) {
    total_docs_ += other.total_docs_;
    for (const auto& [w, n] : other.doc_freq_) doc_freq_[w] += n;
}

DocFrequencyIndex build_index(std::span<const Document> docs) {
    DocFrequencyIndex idx;
    for (const auto& d : docs) idx.add_document(d.tokens);
    return idx;
}

NoveltyScores novelty_scores(const Document& doc, const DocFrequencyIndex& index) {
    if (doc.tokens.empty()) return {};
    std::map<std::string_view, std::size_t> freq;  // ordered: fixed summation order
    for (const auto& t : doc.tokens) ++freq[t];
    const double total = static_cast<double>(index.total_docs());
    double acc = 0;
    for (const auto& [w, f] : freq) {
        const std::size_t nw = index.doc_frequency(w);
        if (nw == 0)
            throw IndexMismatch("document \"" + doc.id + "\" contains \"" + std::string(w) +
                                "\" which is missing from the document-frequency index");
        acc += static_cast<double>(f) * std::log(total / static_cast<double>(nw));
    }
    const double n = static_cast<double>(doc.tokens.size());
    NoveltyScores s;
    s.average = acc / n;
    s.sum = s.average * n;
    return s;
}

double novelty(const Document& doc, const DocFrequencyIndex& index, NoveltyMode mode) {
    const auto s = novelty_scores(doc, index);
    return mode == NoveltyMode::average ? s.average : s.sum;
}

}  // namespace sbs
