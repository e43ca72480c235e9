#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbs/pipeline.hpp"
#include "sbs/text_prep.hpp"
#include "test_util.hpp"

using namespace sbs;

namespace {

Document raw(std::string text) { return Document{"d", {}, std::move(text), {}}; }

std::vector<std::string> toks(const std::string& text, const PrepConfig& cfg) {
    return preprocess(raw(text), cfg).tokens;
}

}  // namespace

TEST_CASE("porter stemmer rule traces") {
    CHECK(stem("running") == "run");
    CHECK(stem("bags") == "bag");
    CHECK(stem("suits") == "suit");
    CHECK(stem("gucci") == "gucci");
    CHECK(stem("elegance") == stem("elegant"));
    CHECK(stem("elegant") == "eleg");
    // Reference pairs from the original algorithm description.
    CHECK(stem("caresses") == "caress");
    CHECK(stem("ponies") == "poni");
    CHECK(stem("caress") == "caress");
    CHECK(stem("cats") == "cat");
    CHECK(stem("feed") == "feed");
    CHECK(stem("agreed") == "agr");  // one pass gives "agre", which stems again
    CHECK(stem("plastered") == "plaster");
    CHECK(stem("bled") == "bled");
    CHECK(stem("motoring") == "motor");
    CHECK(stem("sing") == "sing");
    CHECK(stem("conflated") == "conflat");
    CHECK(stem("troubled") == "troubl");
    CHECK(stem("sized") == "size");
    CHECK(stem("hopping") == "hop");
    CHECK(stem("falling") == "fall");
    CHECK(stem("hissing") == "hiss");
    CHECK(stem("filing") == "file");
    CHECK(stem("happy") == "happi");
    CHECK(stem("sky") == "sky");
    CHECK(stem("relational") == "relat");
    CHECK(stem("conditional") == "condit");
    CHECK(stem("valenci") == "valenc");
    CHECK(stem("digitizer") == "digit");
    CHECK(stem("generalization") == "gener");
    CHECK(stem("hopefulness") == "hope");
    CHECK(stem("triplicate") == "triplic");
    CHECK(stem("formative") == "form");
    CHECK(stem("electrical") == "electr");
    CHECK(stem("revival") == "reviv");
    CHECK(stem("allowance") == "allow");
    CHECK(stem("adjustment") == "adjust");
    CHECK(stem("adoption") == "adopt");
    CHECK(stem("probate") == "probat");
    CHECK(stem("rate") == "rate");
    CHECK(stem("controll") == "control");
    CHECK(stem("roll") == "roll");
}

TEST_CASE("stemmer passes through what it does not cover") {
    CHECK(stem("fw21") == "fw21");
    CHECK(stem("caf\xC3\xA9s") == "caf\xC3\xA9s");
    CHECK(stem("is") == "is");
    // A single pass stops at "overs".
    CHECK(stem("oversized") == "over");
    CHECK(apply_stemmer(StemmerKind::identity, "running") == "running");
}

TEST_CASE("stemmer is idempotent on its outputs over a fashion-discourse word list") {
    const char* words[] = {"collection", "launching", "launched", "ambassador", "artists", "celebrity", "korean",
                           "filming", "playing", "spoiler", "fashion", "shows", "matches", "racing", "oversized",
                           "shirts", "leather", "elegant", "elegance", "brands", "luxury", "bags", "designers",
                           "happiness", "crying", "teddy", "bears", "capsule", "stores", "shopping", "directed",
                           "murder", "wife", "popular", "popularity", "searches", "competitors", "associations",
                           "influencers", "streaming", "magazine", "outfits", "posts", "movies", "sponsors",
                           "presenting", "supported", "trusting", "friendliness", "companionship"};
    for (const char* w : words) {
        const std::string once = stem(w);
        CAPTURE(w);
        CHECK(stem(once) == once);
    }
}

TEST_CASE("raw tokenization") {
    CHECK(raw_tokens("Hello, WORLD!", true) == std::vector<std::string>{"hello", "world"});
    CHECK(raw_tokens("#KaiXGucciLaunch @lamodechief", true) == std::vector<std::string>{"kaixguccilaunch", "lamodechief"});
    CHECK(raw_tokens("see https://t.co/abc now", true) == std::vector<std::string>{"see", "now"});
    CHECK(raw_tokens("see https://t.co/abc now", false) == std::vector<std::string>{"see", "https", "t", "co", "abc", "now"});
    CHECK(raw_tokens("FW21 caf\xC3\xA9", true) == std::vector<std::string>{"fw21", "caf\xC3\xA9"});
}

TEST_CASE("preprocess") {
    PrepConfig cfg;
    cfg.stopwords = {"the"};
    SUBCASE("stopwords and stemming") { CHECK(toks("The bags", cfg) == std::vector<std::string>{"bag"}); }
    SUBCASE("multi-word brand becomes its canonical token") {
        cfg.brand_aliases = {{"tomford", {"tom ford"}}};
        CHECK(toks("Tom Ford suits", cfg) == std::vector<std::string>{"tomford", "suit"});
        CHECK(toks("TOM   FORD", cfg) == std::vector<std::string>{"tomford"});
        CHECK(toks("tom and ford", cfg) == std::vector<std::string>{"tom", "and", "ford"});
    }
    SUBCASE("empty text") { CHECK(toks("", cfg).empty()); }
    SUBCASE("brand tokens are never stemmed or stopworded") {
        cfg.stopwords.insert("ions");
        cfg.brand_aliases = {{"ions", {}}, {"prada", {"Prada's"}}, {"mium", {"miu miu"}}};
        CHECK(toks("IONS Prada's Miu Miu pradas", cfg) == std::vector<std::string>{"ions", "prada", "mium", "prada"});
    }
    SUBCASE("longest surface form wins") {
        cfg.brand_aliases = {{"house", {"house"}}, {"houseofgucci", {"house of gucci"}}};
        CHECK(toks("House of Gucci house", cfg) == std::vector<std::string>{"houseofgucci", "house"});
    }
    SUBCASE("min token length drops residue") {
        CHECK(toks("a b cd", cfg) == std::vector<std::string>{"cd"});
        cfg.min_token_len = 1;
        CHECK(toks("a b cd", cfg) == std::vector<std::string>{"a", "b", "cd"});
    }
    SUBCASE("a stem that lands on a stopword is dropped") {
        cfg.stopwords.insert("on");
        CHECK(stem("ones") == "on");
        CHECK(toks("ones", cfg).empty());
    }
}

TEST_CASE("preprocess properties on random text") {
    PrepConfig cfg;
    cfg.stopwords = default_stopwords();
    cfg.brand_aliases = {{"gucci", {"Gucci", "house of gucci"}}, {"tomford", {"Tom Ford"}}};
    const Preprocessor prep(cfg);
    const char* pieces[] = {"The", "Gucci", "tom", "FORD", "house", "of", "bags", "Running", "#Kai", "@exo",
                            "http://x.y/z", ",", "!", "and", "Elegant", "ELEGANCE", "teddy", "bears", "12", "x"};
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::string text;
        for (int k = 0, n = static_cast<int>(rng() % 20); k < n; ++k) {
            text += pieces[rng() % std::size(pieces)];
            text += (rng() % 3 == 0) ? "" : " ";
        }
        const auto a = prep.tokens(text);
        CHECK(a == prep.tokens(text));
        for (const auto& t : a) {
            CHECK(std::none_of(t.begin(), t.end(), [](char c) { return c >= 'A' && c <= 'Z'; }));
            CHECK(cfg.stopwords.count(t) == 0);
        }
    }
}

TEST_CASE("config files") {
    testutil::TempDir dir;
    auto sw = dir.write("stop.txt", "# comment\nThe\n\n and \n");
    CHECK(load_stopwords(sw) == std::set<std::string>{"and", "the"});
    auto br = dir.write("brands.tsv", "gucci\tGucci\tHouse of Gucci\n\ntomford\tTom Ford\r\n");
    auto b = load_brand_aliases(br);
    REQUIRE(b.size() == 2);
    CHECK(b["gucci"] == std::vector<std::string>{"Gucci", "House of Gucci"});
    CHECK(b["tomford"] == std::vector<std::string>{"Tom Ford"});
    auto bad = dir.write("bad.tsv", "tom ford\tTom Ford\n");
    CHECK_THROWS(load_brand_aliases(bad));
    CHECK_THROWS(load_stopwords(dir / "nope.txt"));
    CHECK(default_stopwords().count("the") == 1);
}
