#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sbs/cooc_graph.hpp"

namespace sbs {

struct CentralityRow {
    std::string word;
    std::uint64_t prevalence = 0;  // occurrence count
    double diversity = 0;          // distinctiveness centrality
    double connectivity = 0;       // weighted betweenness
};

// Occurrence count of `word` in the slice; 0 when absent.
std::uint64_t prevalence(const CoocGraph& g, std::string_view word);

// D(i) = sum over neighbours j of w(i,j) * log10((n - 1) / g_j), n the node
// count and g_j the number of distinct neighbours of j. Warns and returns 0
// for a word not in the graph.
double distinctiveness(const CoocGraph& g, std::string_view word);
std::vector<double> distinctiveness_all(const CoocGraph& g);

enum class DistanceTransform { inverse_weight };

struct BetweennessOptions {
    DistanceTransform transform = DistanceTransform::inverse_weight;
    unsigned threads = 1;
};

// Brandes' algorithm on edge lengths 1/w. Undirected, each unordered pair
// counted once, unnormalized. Path lengths are compared exactly as rationals
// while numerator and denominator fit 64 bits, otherwise with a relative
// tolerance of 1e-12. Results do not depend on the thread count.
std::vector<double> weighted_betweenness(const CoocGraph& g, const BetweennessOptions& options = {});

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reference implementation: enumerates every simple path between every pair.
// Exponential; refuses graphs above max_nodes.
std::vector<double> brute_force_betweenness(const CoocGraph& g, std::size_t max_nodes = 10);

// One row per node, in node order.
std::vector<CentralityRow> centrality_table(const CoocGraph& g, unsigned threads = 1);

}  // namespace sbs
