#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sbs/corpus.hpp"

namespace sbs {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;

struct Edge {
    NodeId u;  // u < v
    NodeId v;
    Weight weight;
};

struct Neighbor {
    NodeId node;
    Weight weight;
};

struct DegreeStat {
    std::size_t degree = 0;
    double weighted_degree = 0;
};

// Undirected weighted word network. Nodes are sorted by word (byte order),
// edges by (u, v). Immutable once built.
class CoocGraph {
public:
    CoocGraph() = default;

    // Test and tooling entry point. Duplicate pairs accumulate; self-loops and
    // zero weights are rejected. Nodes listed in `isolated` are added without
    // edges. Frequencies default to 1 for nodes not present in `frequency`.
    static CoocGraph from_edges(const std::vector<std::tuple<std::string, std::string, Weight>>& edges,
                                const std::vector<std::string>& isolated = {},
                                std::unordered_map<std::string, std::uint64_t> frequency = {});

    std::size_t node_count() const { return words_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return words_.empty(); }

    const std::string& word(NodeId id) const { return words_[id]; }
    const std::vector<std::string>& words() const { return words_; }
    std::optional<NodeId> find(std::string_view word) const;

    std::span<const Neighbor> neighbors(NodeId id) const {
        return {adjacency_.data() + offsets_[id], adjacency_.data() + offsets_[id + 1]};
    }
    const std::vector<Edge>& edges() const { return edges_; }

    // 0 when there is no edge.
    Weight weight(NodeId a, NodeId b) const;

    // Occurrences in the slice's documents, counted before edge filtering and
    // pruning; 0 for words never seen.
    std::uint64_t frequency(std::string_view word) const;
    std::uint64_t frequency(NodeId id) const { return node_freq_[id]; }

    Weight total_weight() const { return total_weight_; }

private:
    friend class GraphAssembler;

    std::vector<std::string> words_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::uint64_t> node_freq_;
    std::unordered_map<std::string, std::uint64_t> all_freq_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    Weight total_weight_ = 0;
};

struct GraphOptions {
    std::size_t window = 7;     // positions i, j co-occur when |i - j| < window
    Weight min_edge_weight = 1;
};

// Pairs are counted per position pair inside each document; nothing crosses
// a document boundary. Edges under min_edge_weight are dropped and nodes left
// without edges are pruned. Throws std::invalid_argument on bad options.
CoocGraph build_graph(std::span<const Document> docs, const GraphOptions& options = {});

// Same, restricted to docs[i] for i in `subset`.
CoocGraph build_graph(std::span<const Document> docs, std::span<const std::size_t> subset,
                      const GraphOptions& options = {});

std::vector<DegreeStat> degree_stats(const CoocGraph& g);

// source,target,weight with header; rows in (u, v) order.
void write_edge_csv(std::ostream& out, const CoocGraph& g);

// [{"word": ..., "frequency": ...}, ...] in node order.
std::string node_table_json(const CoocGraph& g);

}  // namespace sbs
