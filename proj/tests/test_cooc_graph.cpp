#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "sbs/cooc_graph.hpp"

using namespace sbs;

namespace {

std::vector<Document> docs_of(const std::vector<std::vector<std::string>>& token_lists) {
    std::vector<Document> docs;
    for (std::size_t i = 0; i < token_lists.size(); ++i)
        docs.push_back(Document{std::to_string(i), {}, "", token_lists[i]});
    return docs;
}

Weight w(const CoocGraph& g, const std::string& a, const std::string& b) {
    auto ia = g.find(a), ib = g.find(b);
    if (!ia || !ib) return 0;
    return g.weight(*ia, *ib);
}

// Every graph invariant the module promises.
void check_invariants(const CoocGraph& g) {
    Weight sum = 0;
    for (const auto& e : g.edges()) {
        CHECK(e.u < e.v);
        CHECK(e.weight >= 1);
        CHECK(e.v < g.node_count());
        CHECK(g.weight(e.u, e.v) == e.weight);
        CHECK(g.weight(e.v, e.u) == e.weight);
        sum += e.weight;
    }
    CHECK(sum == g.total_weight());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        CHECK(g.frequency(i) >= 1);
        if (i) CHECK(g.word(i - 1) < g.word(i));
        for (const auto& nb : g.neighbors(i)) CHECK(nb.node != i);
    }
}

}  // namespace

TEST_CASE("adjacent pairs only with window 2") {
    auto docs = docs_of({{"a", "b", "c"}});
    auto g = build_graph(docs, {2, 1});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(w(g, "a", "b") == 1);
    CHECK(w(g, "b", "c") == 1);
    CHECK(w(g, "a", "c") == 0);
    check_invariants(g);
}

TEST_CASE("repeated tokens count per position pair, never as self-loops") {
    auto docs = docs_of({{"a", "b", "a"}});
    auto g = build_graph(docs, {3, 1});
    CHECK(g.edge_count() == 1);
    CHECK(w(g, "a", "b") == 2);
    CHECK(g.frequency("a") == 2);
}

TEST_CASE("threshold removes edges and prunes isolated nodes") {
    auto docs = docs_of({{"a", "b"}, {"b", "c"}});
    auto g = build_graph(docs, {2, 2});
    CHECK(g.edge_count() == 0);
    CHECK(g.node_count() == 0);
    // Frequencies survive pruning.
    CHECK(g.frequency("b") == 2);
    CHECK(g.frequency("a") == 1);
    CHECK(g.frequency("zzz") == 0);
}

TEST_CASE("co-occurrence never crosses documents") {
    auto docs = docs_of({{"a"}, {"b"}, {"c", "d"}});
    auto g = build_graph(docs, {7, 1});
    CHECK(g.node_count() == 2);
    CHECK(w(g, "c", "d") == 1);
    CHECK_FALSE(g.find("a"));
}

TEST_CASE("subset overload uses only the listed documents") {
    auto docs = docs_of({{"a", "b"}, {"c", "d"}, {"a", "b"}});
    std::vector<std::size_t> subset{0, 2};
    auto g = build_graph(docs, subset, {2, 1});
    CHECK(w(g, "a", "b") == 2);
    CHECK_FALSE(g.find("c"));
}

TEST_CASE("bad options") {
    CHECK_THROWS_AS(build_graph(std::vector<Document>{}, GraphOptions{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(std::vector<Document>{}, GraphOptions{2, 0}), std::invalid_argument);
    CHECK(build_graph(std::vector<Document>{}).empty());
}

TEST_CASE("random corpora match brute-force pair enumeration") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<std::vector<std::string>> lists;
        const auto ndocs = 1 + rng() % 6;
        for (std::size_t d = 0; d < ndocs; ++d) {
            std::vector<std::string> t;
            for (std::size_t k = 0, n = rng() % 9; k < n; ++k) t.push_back(std::string(1, static_cast<char>('a' + rng() % 5)));
            lists.push_back(t);
        }
        const std::size_t window = 2 + rng() % 6;
        const Weight min_w = 1 + rng() % 2;
        auto g = build_graph(docs_of(lists), {window, min_w});
        auto expected = oracle::pair_counts(lists, window);
        std::erase_if(expected, [&](const auto& kv) { return kv.second < min_w; });
        REQUIRE(g.edge_count() == expected.size());
        for (const auto& [pair, count] : expected) CHECK(w(g, pair.first, pair.second) == count);
        check_invariants(g);
    }
}

TEST_CASE("window covering the document equals all-pairs counting") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> t;
        for (std::size_t k = 0, n = 1 + rng() % 6; k < n; ++k) t.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
        auto g = build_graph(docs_of({t}), {std::max<std::size_t>(2, t.size()), 1});
        std::map<std::pair<std::string, std::string>, Weight> all;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (t[i] != t[j]) ++all[std::minmax(t[i], t[j])];
        CHECK(g.edge_count() == all.size());
        for (const auto& [p, c] : all) CHECK(w(g, p.first, p.second) == c);
    }
}

TEST_CASE("duplicating every document doubles every weight") {
    std::mt19937_64 rng(8);
    std::vector<std::vector<std::string>> lists;
    for (int d = 0; d < 20; ++d) {
        std::vector<std::string> t;
        for (std::size_t k = 0, n = rng() % 12; k < n; ++k) t.push_back("w" + std::to_string(rng() % 15));
        lists.push_back(t);
    }
    auto once = build_graph(docs_of(lists), {5, 1});
    auto doubled_lists = lists;
    doubled_lists.insert(doubled_lists.end(), lists.begin(), lists.end());
    auto twice = build_graph(docs_of(doubled_lists), {5, 1});
    REQUIRE(once.edge_count() == twice.edge_count());
    for (std::size_t i = 0; i < once.edge_count(); ++i) {
        CHECK(once.edges()[i].u == twice.edges()[i].u);
        CHECK(twice.edges()[i].weight == 2 * once.edges()[i].weight);
    }
}

TEST_CASE("degree_stats") {
    SUBCASE("star") {
        auto g = CoocGraph::from_edges({{"c", "l1", 1}, {"c", "l2", 1}, {"c", "l3", 1}, {"c", "l4", 1}});
        auto d = degree_stats(g);
        CHECK(d[*g.find("c")].degree == 4);
        CHECK(d[*g.find("c")].weighted_degree == 4);
    }
    SUBCASE("weighted") {
        auto g = CoocGraph::from_edges({{"x", "a", 2}, {"x", "b", 3}});
        auto d = degree_stats(g);
        CHECK(d[*g.find("x")].degree == 2);
        CHECK(d[*g.find("x")].weighted_degree == 5);
    }
    SUBCASE("random graphs match an adjacency scan of the edge list") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            auto edges = oracle::random_graph(rng, 8, 0.4, 5);
            auto g = CoocGraph::from_edges(edges);
            auto d = degree_stats(g);
            double total = 0;
            for (NodeId i = 0; i < g.node_count(); ++i) {
                std::size_t deg = 0;
                double wd = 0;
                for (const auto& [a, b, wt] : edges)
                    if (a == g.word(i) || b == g.word(i)) ++deg, wd += static_cast<double>(wt);
                CHECK(d[i].degree == deg);
                CHECK(d[i].weighted_degree == wd);
                total += d[i].weighted_degree;
            }
            CHECK(total == 2.0 * static_cast<double>(g.total_weight()));
        }
    }
}

TEST_CASE("from_edges validation") {
    CHECK_THROWS(CoocGraph::from_edges({{"a", "a", 1}}));
    CHECK_THROWS(CoocGraph::from_edges({{"a", "b", 0}}));
    auto g = CoocGraph::from_edges({{"a", "b", 1}, {"b", "a", 2}}, {"z"}, {{"a", 7}});
    CHECK(g.node_count() == 3);
    CHECK(g.weight(*g.find("a"), *g.find("b")) == 3);
    CHECK(g.neighbors(*g.find("z")).empty());
    CHECK(g.frequency("a") == 7);
    CHECK(g.frequency("b") == 1);
}

TEST_CASE("exports") {
    auto g = CoocGraph::from_edges({{"bag", "gucci", 5}, {"gucci", "kai", 9}, {"a,b", "kai", 1}}, {}, {{"gucci", 3}});
    std::ostringstream out;
    write_edge_csv(out, g);
    CHECK(out.str() == "source,target,weight\n\"a,b\",kai,1\nbag,gucci,5\ngucci,kai,9\n");
    auto nodes = nlohmann::json::parse(node_table_json(g));
    REQUIRE(nodes.size() == 4);
    CHECK(nodes[2]["word"] == "gucci");
    CHECK(nodes[2]["frequency"] == 3);
}
