// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "sbs/centrality.hpp"
#include "sbs/diagnostics.hpp"
#include "sbs/doc_metrics.hpp"
#include "sbs/pipeline.hpp"
#include "sbs/sbs_score.hpp"
#include "sbs/text_prep.hpp"
#include "sbs/topics.hpp"
#include "synthetic_corpus.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace sbs;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome betweenness_suite() {
    Outcome o;
    std::mt19937_64 rng(2021);
    const auto t0 = Clock::now();
    double worst = 0;
    int graphs = 0;
    for (; graphs < 250; ++graphs) {
        auto g = CoocGraph::from_edges(oracle::random_graph(rng, 2 + rng() % 7, 0.2 + 0.6 * (rng() % 100) / 100.0, 5));
        auto fast = weighted_betweenness(g);
        auto slow = brute_force_betweenness(g);
        for (std::size_t i = 0; i < fast.size(); ++i) worst = std::max(worst, std::abs(fast[i] - slow[i]));
    }
    const double elapsed = seconds_since(t0);
    o.require(worst <= 1e-9, "max deviation above 1e-9");
    o.require(elapsed < 10, "runtime over 10 s");
    o.detail << graphs << " graphs, max |diff| " << worst << ", " << elapsed << " s";
    return o;
}

Outcome distinctiveness_suite() {
    Outcome o;
    std::mt19937_64 rng(2022);
    double worst = 0;
    int graphs = 0;
    for (; graphs < 250; ++graphs) {
        auto edges = oracle::random_graph(rng, 2 + rng() % 12, 0.35, 5);
        auto g = CoocGraph::from_edges(edges);
        auto all = distinctiveness_all(g);
        for (const auto& [word, expected] : oracle::distinctiveness(edges))
            worst = std::max(worst, std::abs(all[*g.find(word)] - expected));
    }
    o.require(worst <= 1e-9, "random-graph deviation above 1e-9");
    oracle::EdgeList star;
    for (int i = 0; i < 4; ++i) star.emplace_back("center", "leaf" + std::to_string(i), 1);
    auto g = CoocGraph::from_edges(star);
    const double center = distinctiveness(g, "center");
    o.require(std::abs(center - 4 * std::log10(4.0)) <= 1e-12, "star center");
    for (int i = 0; i < 4; ++i) o.require(std::abs(distinctiveness(g, "leaf" + std::to_string(i))) <= 1e-12, "star leaf");
    o.detail << graphs << " graphs, max |diff| " << worst << ", star center " << center;
    return o;
}

Outcome novelty_suite() {
    Outcome o;
    std::mt19937_64 rng(2023);
    double worst = 0;
    int corpora = 0;
    for (; corpora < 150; ++corpora) {
        std::vector<std::vector<std::string>> lists;
        for (std::size_t d = 0, n = 1 + rng() % 25; d < n; ++d) {
            std::vector<std::string> t;
            for (std::size_t k = 0, m = rng() % 12; k < m; ++k) t.push_back("w" + std::to_string(rng() % 20));
            lists.push_back(t);
        }
        std::vector<Document> docs;
        for (const auto& l : lists) docs.push_back(Document{"d", {}, "", l});
        auto idx = build_index(docs);
        auto avg = oracle::tfidf_average(lists);
        auto sum = oracle::tfidf_sum(lists);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            auto s = novelty_scores(docs[i], idx);
            worst = std::max({worst, std::abs(s.average - avg[i]), std::abs(s.sum - sum[i])});
            o.require(s.sum == s.average * static_cast<double>(lists[i].size()), "sum != average * n");
            o.require(novelty(docs[i], idx, NoveltyMode::sum) == s.sum, "mode dispatch");
        }
        // The same documents, one corpus each.
        for (const auto& d : docs) {
            auto single = build_index(std::span<const Document>(&d, 1));
            o.require(novelty(d, single, NoveltyMode::average) == 0.0 && novelty(d, single, NoveltyMode::sum) == 0.0,
                      "single-document corpus nonzero");
        }
    }
    o.require(worst <= 1e-9, "oracle deviation above 1e-9");
    o.detail << corpora << " corpora, max |diff| " << worst;
    return o;
}

Outcome louvain_suite() {
    Outcome o;
    oracle::EdgeList tri;
    for (const char* p : {"a", "b"})
        for (auto [x, y] : {std::pair{0, 1}, {1, 2}, {0, 2}})
            tri.emplace_back(p + std::to_string(x), p + std::to_string(y), 1);
    auto tg = CoocGraph::from_edges(tri);
    auto tp = louvain(tg);
    o.require(tp.modularity == 0.5 && tp.count == 2, "two triangles");

    std::mt19937_64 rng(2024);
    double ratio_sum = 0;
    bool monotone = true, bounded = true;
    const int graphs = 100;
    for (int i = 0; i < graphs; ++i) {
        auto edges = oracle::random_graph(rng, 2 + rng() % 5, 0.5, 5);
        auto g = CoocGraph::from_edges(edges);
        auto p = louvain(g, {static_cast<std::uint64_t>(i), 1.0});
        const double best = oracle::exhaustive_max_modularity(edges).first;
        bounded = bounded && p.modularity <= best + 1e-12;
        ratio_sum += best > 1e-12 ? p.modularity / best : 1.0;
        for (std::size_t k = 1; k < p.history.size(); ++k) monotone = monotone && p.history[k] >= p.history[k - 1];
    }
    const double mean_ratio = ratio_sum / graphs;
    o.require(bounded, "Q above exhaustive optimum");
    o.require(mean_ratio >= 0.95, "mean Q ratio below 0.95");
    o.require(monotone, "modularity decreased between passes");
    o.detail << "triangles Q=" << tp.modularity << ", mean Q/Qmax " << mean_ratio << " over " << graphs << " graphs";
    return o;
}

Outcome sbs_composition() {
    Outcome o;
    WarningCapture quiet;
    PrepConfig cfg;
    cfg.stopwords = default_stopwords();
    const fs::path demo = fs::path(SBS_DATA_DIR) / "demo";
    cfg.brand_aliases = load_brand_aliases(demo / "brands.tsv");
    const Preprocessor prep(cfg);

    // Per-slice standardization on the demo corpus.
    auto loaded = load_corpus(demo / "corpus.jsonl", CorpusFormat::jsonl);
    for (auto& d : loaded.documents) d.tokens = prep.tokens(d.raw_text);
    double worst_mean = 0, worst_var = 0;
    bool exact = true;
    for (const auto& slice : slice_by_period(loaded.documents, Granularity::day)) {
        auto g = build_graph(loaded.documents, slice.documents, {});
        auto scores = score_slice(g, g.words(), slice.label);
        auto check = [&](auto field) {
            std::vector<double> v;
            for (const auto& s : scores) v.push_back(field(s));
            const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
            double var = 0;
            for (double x : v) var += (x - mean) * (x - mean);
            var /= static_cast<double>(v.size());
            worst_mean = std::max(worst_mean, std::abs(mean));
            worst_var = std::max(worst_var, std::abs(var - 1));
        };
        check([](const BrandScore& s) { return s.z.prevalence; });
        check([](const BrandScore& s) { return s.z.diversity; });
        check([](const BrandScore& s) { return s.z.connectivity; });
        for (const auto& s : scores) exact = exact && s.sbs == s.z.prevalence + s.z.diversity + s.z.connectivity;
    }
    o.require(worst_mean <= 1e-9 && worst_var <= 1e-9, "z moments");
    o.require(exact, "sbs is not the exact z sum");

    // Ten documents over three days; brand A dominates day two.
    const char* texts[] = {
        "Aurelia silk scarf and leather bag",       "Borvane sneakers and street hoodie",
        "Castellan perfume in the Paris boutique",  "Aurelia runway show with silk gowns and gold",
        "Aurelia leather tote and Aurelia scarf",   "Aurelia gold jewellery beside Borvane sneakers",
        "Aurelia campaign photography in Milan",    "Borvane sneakers restock with Castellan perfume",
        "Castellan cotton shirts and Borvane hoodie", "Castellan boutique and Borvane street art",
    };
    const int day_of[] = {0, 0, 0, 1, 1, 1, 1, 2, 2, 2};
    std::vector<Document> docs;
    for (int i = 0; i < 10; ++i) {
        Document d{std::to_string(i), *parse_timestamp("2021-03-0" + std::to_string(5 + day_of[i]) + "T12:00:00Z"),
                   texts[i], {}};
        d.tokens = prep.tokens(d.raw_text);
        docs.push_back(d);
    }
    std::vector<BrandScore> all;
    for (const auto& slice : slice_by_period(docs, Granularity::day)) {
        auto g = build_graph(docs, slice.documents, {});
        auto s = score_slice(g, {"aurelia", "borvane", "castellan"}, slice.label);
        all.insert(all.end(), s.begin(), s.end());
    }
    auto trends = trend(all);
    const auto& a = trends.at(0);
    auto peak = std::max_element(a.series.begin(), a.series.end(),
                                 [](const TrendPoint& x, const TrendPoint& y) { return x.sbs < y.sbs; });
    o.require(a.brand == "aurelia" && a.series.size() == 3 && peak->slice == "2021-03-06", "brand A peak");
    o.detail << "max |mean| " << worst_mean << ", max |var-1| " << worst_var << ", A peaks at " << peak->slice;
    return o;
}

Outcome normalization_sums() {
    Outcome o;
    std::mt19937_64 rng(2026);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto g = CoocGraph::from_edges(oracle::random_graph(rng, 3 + rng() % 40, 0.15, 6));
        auto p = louvain(g, {static_cast<std::uint64_t>(trial), 1.0});
        auto rel = topic_relevance(g, p);
        worst = std::max(worst, std::abs(std::accumulate(rel.begin(), rel.end(), 0.0) - 1));
        for (NodeId b = 0; b < g.node_count(); ++b) {
            auto a = brand_topic_assoc(g, g.word(b), p);
            worst = std::max(worst, std::abs(std::accumulate(a.begin(), a.end(), 0.0) - 1));
        }
        std::vector<DimensionLexicon> dims(1 + rng() % 4);
        for (NodeId i = 0; i < g.node_count(); ++i) dims[rng() % dims.size()].words.add(g.word(i), true);
        for (NodeId b = 0; b < g.node_count(); ++b) {
            auto prof = dimension_profile(g, g.word(b), dims);
            worst = std::max(worst, std::abs(std::accumulate(prof.begin(), prof.end(), 0.0) - 1));
        }
    }
    o.require(worst <= 1e-9, "sum deviates from 1");
    o.detail << "max |sum-1| " << worst << " over 100 graphs";
    return o;
}

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = testutil::read_file(e.path());
    return out;
}

Outcome determinism() {
    Outcome o;
    testutil::TempDir dir;
    const fs::path demo = fs::path(SBS_DATA_DIR) / "demo";
    auto config = [&](const std::string& name) {
        RunConfig cfg;
        cfg.input = demo / "corpus.jsonl";
        cfg.brands_file = demo / "brands.tsv";
        cfg.sentiment_file = demo / "sentiment.tsv";
        cfg.dimensions_file = demo / "dimensions.tsv";
        cfg.output_dir = dir / name;
        return cfg;
    };
    std::ostringstream err;
    o.require(run_command(Command::run, config("a"), err) == 0, "first run");
    o.require(run_command(Command::run, config("b"), err) == 0, "second run");
    const auto a = tree(dir / "a");
    o.require(!a.empty() && a == tree(dir / "b"), "run trees differ");
    std::size_t compared = 0;
    for (Command c : {Command::stats, Command::sbs, Command::topics, Command::associations, Command::dimensions,
                      Command::novelty, Command::export_graph}) {
        const std::string name(to_string(c));
        o.require(run_command(c, config(name), err) == 0, name + " failed");
        for (const auto& [file, content] : tree(dir / name)) {
            if (file == "manifest.json") continue;
            o.require(a.count(file) && a.at(file) == content, name + ": " + file);
            ++compared;
        }
    }
    o.detail << a.size() << " files per run, " << compared << " stage files compared";
    return o;
}

Outcome scale_check() {
    Outcome o;
    testutil::TempDir dir;
    synthetic::CorpusSpec spec;  // 200k documents over 8 days
    {
        auto docs = synthetic::Generator(spec).generate();
        write_corpus_jsonl(dir / "corpus.jsonl", docs);
    }
    dir.write("brands.tsv", "aurelia\tAurelia\nborvane\tBorvane\ncastellan\tMaison Castellan\n");
    RunConfig cfg;
    cfg.input = dir / "corpus.jsonl";
    cfg.brands_file = dir / "brands.tsv";
    cfg.output_dir = dir / "out";
    cfg.min_edge_weight = 2;
    cfg.granularity = Granularity::day;
    const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
    cfg.threads = std::min(cores, 4u);

    // Run in a child so its peak RSS is measured alone.
    const auto t0 = Clock::now();
    const pid_t pid = fork();
    if (pid == 0) {
        set_warning_sink([](std::string_view) {});
        std::ostringstream err;
        _exit(run_command(Command::run, cfg, err));
    }
    int status = 0;
    rusage usage{};
    wait4(pid, &status, 0, &usage);
    const double elapsed = seconds_since(t0);
    const double rss_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
    o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "run failed");
    o.require(elapsed < 600, "over 10 minutes");
    o.require(rss_gb < 4.0, "peak RSS over 4 GB");
    o.detail << spec.documents << " docs, " << elapsed << " s, peak RSS " << rss_gb << " GB, " << cfg.threads
             << " thread(s) on " << cores << " core(s)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"betweenness matches brute force", betweenness_suite},
        {"distinctiveness matches direct sum", distinctiveness_suite},
        {"novelty matches tf-idf oracle", novelty_suite},
        {"louvain quality", louvain_suite},
        {"sbs composition", sbs_composition},
        {"normalization sums", normalization_sums},
        {"end-to-end determinism", determinism},
        {"scale check", scale_check},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failed += !o.pass;
        std::printf("criterion %zu: %s  %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
