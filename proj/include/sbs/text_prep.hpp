#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sbs/corpus.hpp"

namespace sbs {

enum class StemmerKind { porter_like, identity };

StemmerKind parse_stemmer(std::string_view name);
std::string_view to_string(StemmerKind k);

// Porter (1980) suffix stripper, applied until the word stops changing so
// that stem(stem(w)) == stem(w). Input is expected to be lowercase ASCII
// letters; anything else, and words of two letters or fewer, pass through.
std::string stem(std::string_view word);

std::string apply_stemmer(StemmerKind kind, std::string_view word);

struct PrepConfig {
    std::set<std::string> stopwords;
    StemmerKind stemmer = StemmerKind::porter_like;
    // canonical token -> surface forms (case-insensitive, may span words)
    std::map<std::string, std::vector<std::string>> brand_aliases;
    std::size_t min_token_len = 2;
    bool strip_urls = true;
};

// One word per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

// "canonical<TAB>surface form<TAB>surface form..." per line.
std::map<std::string, std::vector<std::string>> load_brand_aliases(const std::filesystem::path& path);

// Lowercased alphanumeric runs; '#' and '@' sigils fall away as separators,
// URLs are dropped when strip_urls is set. Non-ASCII bytes count as word
// characters so UTF-8 words stay whole.
std::vector<std::string> raw_tokens(std::string_view text, bool strip_urls);

// A PrepConfig compiled for repeated use. Immutable, safe to share across threads.
class Preprocessor {
public:
    explicit Preprocessor(PrepConfig cfg);

    std::vector<std::string> tokens(std::string_view text) const;
    void apply(Document& doc) const { doc.tokens = tokens(doc.raw_text); }

    const PrepConfig& config() const { return cfg_; }
    bool is_brand(std::string_view token) const { return brands_.count(std::string(token)) > 0; }

    // Stems a lexicon entry the way document words are stemmed. Brand
    // tokens and wildcard patterns ("happi*") are left as written.
    std::string normalize_term(std::string_view term) const;

private:
    struct Alias {
        std::vector<std::string> words;
        std::string canonical;
    };
    PrepConfig cfg_;
    std::unordered_set<std::string> brands_;
    std::unordered_set<std::string> stopwords_;
    // first surface word -> candidates, longest first
    std::unordered_map<std::string, std::vector<Alias>> aliases_;
};

// Convenience for one-off calls; compiles cfg each time.
Document preprocess(Document doc, const PrepConfig& cfg);

}  // namespace sbs
