#include "sbs/text_prep.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace sbs {
namespace {

bool word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_url_start(std::string_view chunk) {
    auto starts = [&](std::string_view p) {
        if (chunk.size() < p.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (std::tolower(static_cast<unsigned char>(chunk[i])) != p[i]) return false;
        return true;
    };
    return starts("http://") || starts("https://") || starts("www.");
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string trim(std::string s) {
    while (!s.empty() && is_space(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    return s.substr(i);
}

std::string lowercase(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

}  // namespace

StemmerKind parse_stemmer(std::string_view name) {
    if (name == "porter" || name == "porter_like") return StemmerKind::porter_like;
    if (name == "identity" || name == "none") return StemmerKind::identity;
    throw std::invalid_argument("unknown stemmer \"" + std::string(name) + "\"");
}

std::string_view to_string(StemmerKind k) { return k == StemmerKind::porter_like ? "porter" : "identity"; }

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read stopword file " + path.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        words.insert(lowercase(std::move(line)));
    }
    return words;
}

std::map<std::string, std::vector<std::string>> load_brand_aliases(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read brands file " + path.string());
    std::map<std::string, std::vector<std::string>> brands;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            fields.push_back(trim(line.substr(start, tab - start)));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        std::string canonical = lowercase(fields[0]);
        if (canonical.empty() || !std::all_of(canonical.begin(), canonical.end(), [](char c) {
                return word_char(static_cast<unsigned char>(c)) && !(c >= 'A' && c <= 'Z');
            }))
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": canonical brand token \"" +
                                     fields[0] + "\" must be a single alphanumeric word");
        auto& forms = brands[canonical];
        for (std::size_t i = 1; i < fields.size(); ++i)
            if (!fields[i].empty()) forms.push_back(fields[i]);
    }
    return brands;
}

std::vector<std::string> raw_tokens(std::string_view text, bool strip_urls) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (strip_urls && (i == 0 || is_space(text[i - 1])) && is_url_start(text.substr(i))) {
            flush();
            while (i < text.size() && !is_space(text[i])) ++i;
            continue;
        }
        const char c = text[i];
        if (word_char(static_cast<unsigned char>(c)))
            cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        else
            flush();
        ++i;
    }
    flush();
    return out;
}

Preprocessor::Preprocessor(PrepConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.min_token_len < 1) throw std::invalid_argument("min_token_len must be >= 1");
    for (const auto& w : cfg_.stopwords) stopwords_.insert(lowercase(w));
    for (const auto& [canonical, forms] : cfg_.brand_aliases) {
        brands_.insert(canonical);
        std::vector<std::string> surfaces = forms;
        surfaces.push_back(canonical);
        for (const auto& form : surfaces) {
            auto words = raw_tokens(form, false);
            if (words.empty()) continue;
            aliases_[words.front()].push_back(Alias{std::move(words), canonical});
        }
    }
    for (auto& [first, list] : aliases_) {
        std::stable_sort(list.begin(), list.end(),
                         [](const Alias& a, const Alias& b) { return a.words.size() > b.words.size(); });
    }
}

std::vector<std::string> Preprocessor::tokens(std::string_view text) const {
    const auto raw = raw_tokens(text, cfg_.strip_urls);
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        if (auto it = aliases_.find(raw[i]); it != aliases_.end()) {
            const Alias* match = nullptr;
            for (const auto& a : it->second) {
                if (i + a.words.size() <= raw.size() && std::equal(a.words.begin(), a.words.end(), raw.begin() + i)) {
                    match = &a;
                    break;
                }
            }
            if (match) {
                out.push_back(match->canonical);
                i += match->words.size();
                continue;
            }
        }
        const std::string& word = raw[i++];
        if (brands_.count(word)) {
            out.push_back(word);
            continue;
        }
        if (stopwords_.count(word)) continue;
        std::string stemmed = apply_stemmer(cfg_.stemmer, word);
        if (stopwords_.count(stemmed)) continue;
        if (utf8_length(stemmed) < cfg_.min_token_len) continue;
        out.push_back(std::move(stemmed));
    }
    return out;
}

std::string Preprocessor::normalize_term(std::string_view term) const {
    std::string t = lowercase(std::string(term));
    if (t.empty() || t.back() == '*' || brands_.count(t)) return t;
    return apply_stemmer(cfg_.stemmer, t);
}

Document preprocess(Document doc, const PrepConfig& cfg) {
    Preprocessor(cfg).apply(doc);
    return doc;
}

}  // namespace sbs
