#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sbs/cooc_graph.hpp"

namespace sbs {

struct Partition {
    std::vector<std::uint32_t> community;  // per node; ids 0..count-1 by first node
    std::size_t count = 0;
    double modularity = 0;
    // Modularity of the singleton start and after every local-moving sweep.
    std::vector<double> history;
};

struct LouvainOptions {
    std::uint64_t seed = 42;
    double resolution = 1.0;
};

// Q = sum_c [ e_c / m - resolution * (d_c / 2m)^2 ], e_c the edge weight inside
// c, d_c the summed weighted degree of c, m the total edge weight.
double modularity(const CoocGraph& g, const std::vector<std::uint32_t>& community, double resolution = 1.0);

// Greedy local moving plus aggregation until no move improves Q. The node
// visiting order of every level is shuffled by `seed`. An edgeless graph
// leaves every node in its own community with Q = 0.
Partition louvain(const CoocGraph& g, const LouvainOptions& options = {});

struct Keyword {
    std::string word;
    double score = 0;
};

// score(w) = weighted_degree(w) * internal_weight(w) / weighted_degree(w),
// where internal_weight counts edges into the cluster. Descending, ties by word.
std::vector<Keyword> keyword_rank(const CoocGraph& g, const std::vector<NodeId>& cluster, std::size_t top_k);

// Share of total weighted degree held by each community.
std::vector<double> topic_relevance(const CoocGraph& g, const Partition& p);

// Share of the brand's weighted degree going into each community. All zeros
// (with a warning when absent) if the brand has no edges.
std::vector<double> brand_topic_assoc(const CoocGraph& g, const std::string& brand, const Partition& p);

struct TopicCluster {
    std::uint32_t id = 0;
    std::vector<std::string> members;  // node order
    double relevance = 0;
    std::vector<Keyword> keywords;
    std::map<std::string, double> brand_assoc;
};

// Clusters ordered by relevance (descending, then id). Communities made of a
// single isolated node are left out.
std::vector<TopicCluster> build_topics(const CoocGraph& g, const Partition& p, const std::vector<std::string>& brands,
                                       std::size_t top_k_keywords);

}  // namespace sbs
