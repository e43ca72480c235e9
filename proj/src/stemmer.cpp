// Porter's suffix-stripping algorithm, following the rule tables of the
// original 1980 description.
#include <array>
#include <string>
#include <string_view>

#include "sbs/text_prep.hpp"

namespace sbs {
namespace {

class PorterStem {
public:
    explicit PorterStem(std::string_view w) : b_(w) {}

    std::string run() {
        if (b_.size() <= 2) return b_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_;
    }

private:
    std::string b_;

    bool consonant(std::size_t i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 || !consonant(i - 1);
            default: return true;
        }
    }

    // m() of the prefix b_[0, len): number of VC sequences.
    int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) ++i;
        while (i < len) {
            while (i < len && !consonant(i)) ++i;
            if (i >= len) break;
            ++m;
            while (i < len && consonant(i)) ++i;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t len) const {
        return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
    }

    // *o: stem ends cvc, where the final c is not w, x or y.
    bool cvc(std::size_t len) const {
        if (len < 3 || !consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
        const char c = b_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) const {
        return b_.size() >= s.size() && std::string_view(b_).substr(b_.size() - s.size()) == s;
    }

    std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

    void replace_suffix(std::string_view suffix, std::string_view with) {
        b_.resize(stem_len(suffix));
        b_ += with;
    }

    void step1a() {
        if (ends("sses")) replace_suffix("sses", "ss");
        else if (ends("ies")) replace_suffix("ies", "i");
        else if (ends("ss")) {}
        else if (ends("s")) replace_suffix("s", "");
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
            return;
        }
        std::string_view hit;
        if (ends("ed") && has_vowel(stem_len("ed"))) hit = "ed";
        else if (ends("ing") && has_vowel(stem_len("ing"))) hit = "ing";
        if (hit.empty()) return;
        replace_suffix(hit, "");
        if (ends("at")) replace_suffix("at", "ate");
        else if (ends("bl")) replace_suffix("bl", "ble");
        else if (ends("iz")) replace_suffix("iz", "ize");
        else if (double_consonant(b_.size())) {
            const char c = b_.back();
            if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
        } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
            b_ += 'e';
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(stem_len("y"))) b_.back() = 'i';
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    // Applies the longest matching rule if the remaining stem has m > min_m.
    template <std::size_t N>
    void apply_rules(const std::array<Rule, N>& rules, int min_m) {
        const Rule* best = nullptr;
        for (const auto& r : rules)
            if (ends(r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
        if (best && measure(stem_len(best->suffix)) > min_m) replace_suffix(best->suffix, best->replacement);
    }

    void step2() {
        static constexpr std::array<Rule, 20> rules{{
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},   {"izer", "ize"},
            {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},       {"ousli", "ous"},
            {"ization", "ize"}, {"ation", "ate"},   {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
            {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        }};
        apply_rules(rules, 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""},
        }};
        apply_rules(rules, 0);
    }

    void step4() {
        static constexpr std::array<std::string_view, 19> suffixes{
            "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
            "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
        };
        std::string_view best;
        for (auto s : suffixes)
            if (ends(s) && s.size() > best.size()) best = s;
        if (best.empty()) return;
        const std::size_t len = stem_len(best);
        if (measure(len) <= 1) return;
        if (best == "ion" && (len == 0 || (b_[len - 1] != 's' && b_[len - 1] != 't'))) return;
        b_.resize(len);
    }

    void step5() {
        if (ends("e")) {
            const std::size_t len = stem_len("e");
            const int m = measure(len);
            if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
        }
        if (measure(b_.size()) > 1 && double_consonant(b_.size()) && b_.back() == 'l') b_.pop_back();
    }
};

bool ascii_lower_letters(std::string_view w) {
    for (char c : w)
        if (c < 'a' || c > 'z') return false;
    return !w.empty();
}

}  // namespace

std::string stem(std::string_view word) {
    if (!ascii_lower_letters(word)) return std::string(word);
    // One Porter pass can leave a stemmable word behind (oversized -> overs),
    // so repeat until nothing changes. Passes never lengthen the word.
    std::string current = PorterStem(word).run();
    for (int pass = 0; pass < 8; ++pass) {
        std::string next = PorterStem(current).run();
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

std::string apply_stemmer(StemmerKind kind, std::string_view word) {
    return kind == StemmerKind::porter_like ? stem(word) : std::string(word);
}

}  // namespace sbs
