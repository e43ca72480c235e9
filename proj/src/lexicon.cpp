#include "sbs/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace sbs {
namespace {

std::string lower_trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

template <typename OnEntry>
void read_tab_file(const std::filesystem::path& path, const char* what, OnEntry on_entry) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot read ") + what + " " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected term<TAB>value");
        on_entry(lineno, lower_trim(std::string_view(line).substr(0, tab)), std::string_view(line).substr(tab + 1));
    }
}

}  // namespace

void SentimentLexicon::add(std::string term, double score) {
    Acc& acc = pending_[term];
    acc.sum += score;
    ++acc.count;
    table_.add(std::move(term), acc);
}

std::optional<double> SentimentLexicon::score(std::string_view word) const {
    const Acc* acc = table_.lookup(word);
    if (!acc) return std::nullopt;
    return acc->sum / acc->count;
}

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path, const TermNormalizer& normalize) {
    SentimentLexicon lex;
    read_tab_file(path, "sentiment lexicon", [&](std::size_t lineno, std::string term, std::string_view value) {
        std::string v = lower_trim(value);
        double score = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), score);
        if (ec != std::errc{} || p != v.data() + v.size() || score < -1.0 || score > 1.0)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": score must be a number in [-1, 1]");
        if (term.empty()) return;
        lex.add(normalize ? normalize(term) : term, score);
    });
    return lex;
}

std::vector<DimensionLexicon> load_dimension_lexicons(const std::filesystem::path& path,
                                                      const TermNormalizer& normalize) {
    std::vector<DimensionLexicon> out;
    read_tab_file(path, "dimension lexicon", [&](std::size_t lineno, std::string term, std::string_view value) {
        std::string category = lower_trim(value);
        if (category.empty())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": empty category");
        if (term.empty()) return;
        auto it = std::find_if(out.begin(), out.end(), [&](const DimensionLexicon& d) { return d.name == category; });
        if (it == out.end()) {
            out.push_back(DimensionLexicon{category, {}});
            it = out.end() - 1;
        }
        it->words.add(normalize ? normalize(term) : term, true);
    });
    return out;
}

}  // namespace sbs
