#include "sbs/cooc_graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "sbs/csv.hpp"

namespace sbs {

// Turns a vocabulary with provisional ids plus raw pair counts into the
// sorted, pruned CSR form.
class GraphAssembler {
public:
    static CoocGraph assemble(std::vector<std::string> vocab, std::vector<std::uint64_t> freq,
                              std::vector<Edge> raw_edges, Weight min_edge_weight, std::vector<bool> keep_isolated) {
        CoocGraph g;
        for (std::size_t i = 0; i < vocab.size(); ++i) g.all_freq_[vocab[i]] += freq[i];

        std::erase_if(raw_edges, [&](const Edge& e) { return e.weight < min_edge_weight; });
        std::vector<bool> alive(vocab.size(), false);
        for (const auto& e : raw_edges) alive[e.u] = alive[e.v] = true;
        for (std::size_t i = 0; i < keep_isolated.size(); ++i)
            if (keep_isolated[i]) alive[i] = true;

        std::vector<NodeId> order;
        for (NodeId i = 0; i < vocab.size(); ++i)
            if (alive[i]) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return vocab[a] < vocab[b]; });

        std::vector<NodeId> remap(vocab.size(), 0);
        g.words_.reserve(order.size());
        g.node_freq_.reserve(order.size());
        for (NodeId rank = 0; rank < order.size(); ++rank) {
            remap[order[rank]] = rank;
            g.index_.emplace(vocab[order[rank]], rank);
            g.node_freq_.push_back(freq[order[rank]]);
            g.words_.push_back(std::move(vocab[order[rank]]));
        }

        for (auto& e : raw_edges) {
            NodeId a = remap[e.u], b = remap[e.v];
            if (a > b) std::swap(a, b);
            e.u = a;
            e.v = b;
        }
        std::sort(raw_edges.begin(), raw_edges.end(),
                  [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
        g.edges_ = std::move(raw_edges);

        const std::size_t n = g.words_.size();
        std::vector<std::size_t> deg(n, 0);
        for (const auto& e : g.edges_) {
            ++deg[e.u];
            ++deg[e.v];
            g.total_weight_ += e.weight;
        }
        g.offsets_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
        g.adjacency_.resize(g.offsets_[n]);
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        // Edges are sorted by (u, v), so each adjacency row comes out sorted.
        for (const auto& e : g.edges_) g.adjacency_[fill[e.u]++] = {e.v, e.weight};
        for (const auto& e : g.edges_) g.adjacency_[fill[e.v]++] = {e.u, e.weight};
        for (std::size_t i = 0; i < n; ++i)
            std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1],
                      [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
        return g;
    }
};

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<Edge> count_pairs(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        edges.push_back(Edge{static_cast<NodeId>(keys[i] >> 32), static_cast<NodeId>(keys[i] & 0xffffffffu),
                             static_cast<Weight>(j - i)});
        i = j;
    }
    return edges;
}

template <typename DocAt>
CoocGraph build_impl(std::size_t count, DocAt doc_at, const GraphOptions& options) {
    if (options.window < 2) throw std::invalid_argument("co-occurrence window must be >= 2");
    if (options.min_edge_weight < 1) throw std::invalid_argument("min_edge_weight must be >= 1");

    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> vocab;
    std::vector<std::uint64_t> freq;
    std::vector<std::uint64_t> keys;
    std::vector<NodeId> seq;
    for (std::size_t d = 0; d < count; ++d) {
        const auto& tokens = doc_at(d).tokens;
        seq.clear();
        for (const auto& t : tokens) {
            auto [it, inserted] = ids.try_emplace(t, static_cast<NodeId>(vocab.size()));
            if (inserted) {
                vocab.push_back(t);
                freq.push_back(0);
            }
            ++freq[it->second];
            seq.push_back(it->second);
        }
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const std::size_t end = std::min(seq.size(), i + options.window);
            for (std::size_t j = i + 1; j < end; ++j)
                if (seq[i] != seq[j]) keys.push_back(pair_key(seq[i], seq[j]));
        }
    }
    auto edges = count_pairs(keys);
    return GraphAssembler::assemble(std::move(vocab), std::move(freq), std::move(edges), options.min_edge_weight, {});
}

}  // namespace

CoocGraph CoocGraph::from_edges(const std::vector<std::tuple<std::string, std::string, Weight>>& edges,
                                const std::vector<std::string>& isolated,
                                std::unordered_map<std::string, std::uint64_t> frequency) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> vocab;
    auto id_of = [&](const std::string& w) {
        auto [it, inserted] = ids.try_emplace(w, static_cast<NodeId>(vocab.size()));
        if (inserted) vocab.push_back(w);
        return it->second;
    };
    std::unordered_map<std::uint64_t, Weight> acc;
    for (const auto& [a, b, w] : edges) {
        if (a == b) throw std::invalid_argument("self-loop on \"" + a + "\"");
        if (w == 0) throw std::invalid_argument("zero edge weight");
        acc[pair_key(id_of(a), id_of(b))] += w;
    }
    for (const auto& w : isolated) id_of(w);
    std::vector<Edge> raw;
    raw.reserve(acc.size());
    for (const auto& [key, w] : acc)
        raw.push_back(Edge{static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), w});
    std::vector<std::uint64_t> freq(vocab.size(), 1);
    std::vector<bool> keep(vocab.size(), true);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (auto it = frequency.find(vocab[i]); it != frequency.end()) {
            if (it->second == 0) throw std::invalid_argument("zero frequency for \"" + vocab[i] + "\"");
            freq[i] = it->second;
        }
    }
    return GraphAssembler::assemble(std::move(vocab), std::move(freq), std::move(raw), 1, std::move(keep));
}

std::optional<NodeId> CoocGraph::find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Weight CoocGraph::weight(NodeId a, NodeId b) const {
    auto row = neighbors(a);
    auto it = std::lower_bound(row.begin(), row.end(), b, [](const Neighbor& n, NodeId id) { return n.node < id; });
    return (it != row.end() && it->node == b) ? it->weight : 0;
}

std::uint64_t CoocGraph::frequency(std::string_view word) const {
    auto it = all_freq_.find(std::string(word));
    return it == all_freq_.end() ? 0 : it->second;
}

CoocGraph build_graph(std::span<const Document> docs, const GraphOptions& options) {
    return build_impl(docs.size(), [&](std::size_t i) -> const Document& { return docs[i]; }, options);
}

CoocGraph build_graph(std::span<const Document> docs, std::span<const std::size_t> subset,
                      const GraphOptions& options) {
    return build_impl(subset.size(), [&](std::size_t i) -> const Document& { return docs[subset[i]]; }, options);
}

std::vector<DegreeStat> degree_stats(const CoocGraph& g) {
    std::vector<DegreeStat> out(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        auto row = g.neighbors(i);
        out[i].degree = row.size();
        Weight sum = 0;
        for (const auto& nb : row) sum += nb.weight;
        out[i].weighted_degree = static_cast<double>(sum);
    }
    return out;
}

void write_edge_csv(std::ostream& out, const CoocGraph& g) {
    out << "source,target,weight\n";
    for (const auto& e : g.edges())
        out << csv::escape(g.word(e.u)) << ',' << csv::escape(g.word(e.v)) << ',' << e.weight << '\n';
}

std::string node_table_json(const CoocGraph& g) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (NodeId i = 0; i < g.node_count(); ++i)
        arr.push_back({{"word", g.word(i)}, {"frequency", g.frequency(i)}});
    return arr.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace sbs
