#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sbs {

// Exact terms plus trailing-wildcard prefixes ("happi*"). Exact entries win;
// among prefixes the longest match wins.
template <typename Value>
class TermTable {
public:
    void add(std::string term, Value value) {
        if (!term.empty() && term.back() == '*') {
            term.pop_back();
            for (auto& [prefix, existing] : prefixes_) {
                if (prefix == term) {
                    existing = std::move(value);
                    return;
                }
            }
            prefixes_.emplace_back(std::move(term), std::move(value));
            std::stable_sort(prefixes_.begin(), prefixes_.end(),
                             [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
        } else {
            exact_.insert_or_assign(std::move(term), std::move(value));
        }
    }

    const Value* lookup(std::string_view word) const {
        if (auto it = exact_.find(std::string(word)); it != exact_.end()) return &it->second;
        for (const auto& [prefix, value] : prefixes_)
            if (word.substr(0, prefix.size()) == prefix) return &value;
        return nullptr;
    }

    std::size_t size() const { return exact_.size() + prefixes_.size(); }
    bool empty() const { return size() == 0; }

private:
    std::unordered_map<std::string, Value> exact_;
    std::vector<std::pair<std::string, Value>> prefixes_;
};

// word -> score in [-1, 1]
class SentimentLexicon {
public:
    // Repeated terms (e.g. two surface words sharing a stem) average.
    void add(std::string term, double score);
    std::optional<double> score(std::string_view word) const;
    std::size_t size() const { return table_.size(); }
    bool empty() const { return table_.empty(); }

private:
    struct Acc {
        double sum = 0;
        int count = 0;
    };
    TermTable<Acc> table_;
    std::map<std::string, Acc> pending_;
};

struct DimensionLexicon {
    std::string name;
    TermTable<bool> words;
    bool matches(std::string_view word) const { return words.lookup(word) != nullptr; }
};

using TermNormalizer = std::function<std::string(std::string_view)>;

// "term<TAB>score" per line. Scores outside [-1, 1] are rejected.
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path, const TermNormalizer& normalize = {});

// "term<TAB>category" per line; one lexicon per category, in order of first
// appearance.
std::vector<DimensionLexicon> load_dimension_lexicons(const std::filesystem::path& path,
                                                      const TermNormalizer& normalize = {});

}  // namespace sbs
