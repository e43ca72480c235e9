#include "sbs/topics.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "sbs/diagnostics.hpp"

namespace sbs {
namespace {

// Working graph for one Louvain level. Node i carries a self-loop of weight
// loop[i] (edges internal to the community it stands for, counted once).
struct LevelGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> loop;
    std::vector<double> strength;  // 2 * loop + sum of adjacent weights
    double total = 0;              // m

    std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const CoocGraph& g) {
    LevelGraph lg;
    const std::size_t n = g.node_count();
    lg.adj.resize(n);
    lg.loop.assign(n, 0.0);
    lg.strength.assign(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        for (const auto& nb : g.neighbors(i)) {
            lg.adj[i].push_back({nb.node, static_cast<double>(nb.weight)});
            lg.strength[i] += static_cast<double>(nb.weight);
        }
    }
    lg.total = static_cast<double>(g.total_weight());
    return lg;
}

// Fisher-Yates driven directly by mt19937_64 output so the order is the same
// on every standard library.
void seeded_shuffle(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

// One local-moving phase. Returns true if any node changed community.
bool local_moving(const LevelGraph& lg, std::vector<std::uint32_t>& comm, double resolution, std::mt19937_64& rng,
                  std::vector<double>& history, const std::vector<std::uint32_t>& level_of,
                  const CoocGraph& top, std::vector<std::uint32_t>& top_comm) {
    const std::size_t n = lg.size();
    const double m = lg.total;
    std::vector<double> tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += lg.strength[i];

    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    seeded_shuffle(order, rng);

    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    bool moved_any = false;
    constexpr double kMinGain = 1e-12;
    for (;;) {
        bool moved = false;
        for (std::uint32_t i : order) {
            const std::uint32_t own = comm[i];
            const double ki = lg.strength[i];
            touched.clear();
            for (const auto& [j, w] : lg.adj[i]) {
                const std::uint32_t c = comm[j];
                if (link[c] == 0.0) touched.push_back(c);
                link[c] += w;
            }
            tot[own] -= ki;
            auto gain = [&](std::uint32_t c) { return link[c] / m - resolution * tot[c] * ki / (2 * m * m); };
            const double stay = gain(own);
            std::uint32_t best = own;
            double best_gain = stay;
            for (std::uint32_t c : touched) {
                if (c == own) continue;
                const double g = gain(c);
                if (g > best_gain + kMinGain) {
                    best_gain = g;
                    best = c;
                }
            }
            tot[best] += ki;
            if (best != own) {
                comm[i] = best;
                moved = true;
            }
            for (std::uint32_t c : touched) link[c] = 0.0;
        }
        if (!moved) break;
        moved_any = true;
        for (std::size_t v = 0; v < top_comm.size(); ++v) top_comm[v] = comm[level_of[v]];
        history.push_back(modularity(top, top_comm, resolution));
    }
    return moved_any;
}

// Renumbers communities 0..k-1 in order of first appearance.
std::size_t compact(std::vector<std::uint32_t>& comm) {
    std::vector<std::uint32_t> remap(comm.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (auto& c : comm) {
        if (remap[c] == UINT32_MAX) remap[c] = next++;
        c = remap[c];
    }
    return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm, std::size_t k) {
    LevelGraph out;
    out.adj.resize(k);
    out.loop.assign(k, 0.0);
    out.strength.assign(k, 0.0);
    out.total = lg.total;
    std::vector<std::map<std::uint32_t, double>> acc(k);
    for (std::size_t i = 0; i < lg.size(); ++i) {
        const auto ci = comm[i];
        out.loop[ci] += lg.loop[i];
        out.strength[ci] += lg.strength[i];
        for (const auto& [j, w] : lg.adj[i]) {
            const auto cj = comm[j];
            if (cj == ci) {
                if (j > i) out.loop[ci] += w;
            } else {
                acc[ci][cj] += w;
            }
        }
    }
    for (std::size_t c = 0; c < k; ++c)
        for (const auto& [d, w] : acc[c]) out.adj[c].push_back({d, w});
    return out;
}

}  // namespace

double modularity(const CoocGraph& g, const std::vector<std::uint32_t>& community, double resolution) {
    if (community.size() != g.node_count()) throw std::invalid_argument("partition size does not match graph");
    const double m = static_cast<double>(g.total_weight());
    if (m <= 0) return 0.0;
    std::map<std::uint32_t, std::pair<double, double>> per;  // inside, degree
    for (NodeId i = 0; i < g.node_count(); ++i) {
        auto& [inside, degree] = per[community[i]];
        for (const auto& nb : g.neighbors(i)) {
            degree += static_cast<double>(nb.weight);
            if (nb.node > i && community[nb.node] == community[i]) inside += static_cast<double>(nb.weight);
        }
    }
    double q = 0;
    for (const auto& [c, v] : per) q += v.first / m - resolution * (v.second / (2 * m)) * (v.second / (2 * m));
    return q;
}

Partition louvain(const CoocGraph& g, const LouvainOptions& options) {
    if (!(options.resolution > 0)) throw std::invalid_argument("resolution must be > 0");
    const std::size_t n = g.node_count();
    Partition p;
    p.community.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) p.community[i] = i;
    p.count = n;
    if (g.total_weight() == 0) {
        p.history.push_back(0.0);
        return p;
    }

    std::mt19937_64 rng(options.seed);
    LevelGraph lg = level_from(g);
    // level_of[v]: the current-level node that original node v belongs to.
    std::vector<std::uint32_t> level_of(n);
    for (std::uint32_t i = 0; i < n; ++i) level_of[i] = i;
    p.history.push_back(modularity(g, p.community, options.resolution));

    for (;;) {
        std::vector<std::uint32_t> comm(lg.size());
        for (std::uint32_t i = 0; i < lg.size(); ++i) comm[i] = i;
        const bool moved = local_moving(lg, comm, options.resolution, rng, p.history, level_of, g, p.community);
        if (!moved) break;
        const std::size_t k = compact(comm);
        for (auto& v : level_of) v = comm[v];
        if (k == lg.size()) break;
        lg = aggregate(lg, comm, k);
        if (k == 1) break;
    }

    p.community = level_of;
    p.count = compact(p.community);
    p.modularity = modularity(g, p.community, options.resolution);
    return p;
}

std::vector<Keyword> keyword_rank(const CoocGraph& g, const std::vector<NodeId>& cluster, std::size_t top_k) {
    std::vector<bool> member(g.node_count(), false);
    for (NodeId v : cluster) member.at(v) = true;
    std::vector<Keyword> out;
    out.reserve(cluster.size());
    for (NodeId v : cluster) {
        double total = 0, internal = 0;
        for (const auto& nb : g.neighbors(v)) {
            total += static_cast<double>(nb.weight);
            if (member[nb.node]) internal += static_cast<double>(nb.weight);
        }
        const double score = total > 0 ? total * (internal / total) : 0.0;
        out.push_back({g.word(v), score});
    }
    std::sort(out.begin(), out.end(), [](const Keyword& a, const Keyword& b) {
        return a.score != b.score ? a.score > b.score : a.word < b.word;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

std::vector<double> topic_relevance(const CoocGraph& g, const Partition& p) {
    std::vector<double> mass(p.count, 0.0);
    double total = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        double wd = 0;
        for (const auto& nb : g.neighbors(i)) wd += static_cast<double>(nb.weight);
        mass[p.community[i]] += wd;
        total += wd;
    }
    if (total > 0)
        for (auto& x : mass) x /= total;
    return mass;
}

std::vector<double> brand_topic_assoc(const CoocGraph& g, const std::string& brand, const Partition& p) {
    std::vector<double> out(p.count, 0.0);
    auto id = g.find(brand);
    if (!id) {
        warn("brand_topic_assoc: brand \"" + brand + "\" is not in the graph");
        return out;
    }
    double total = 0;
    for (const auto& nb : g.neighbors(*id)) {
        out[p.community[nb.node]] += static_cast<double>(nb.weight);
        total += static_cast<double>(nb.weight);
    }
    if (total > 0)
        for (auto& x : out) x /= total;
    return out;
}

std::vector<TopicCluster> build_topics(const CoocGraph& g, const Partition& p, const std::vector<std::string>& brands,
                                       std::size_t top_k_keywords) {
    std::vector<std::vector<NodeId>> members(p.count);
    for (NodeId i = 0; i < g.node_count(); ++i) members[p.community[i]].push_back(i);
    const auto relevance = topic_relevance(g, p);
    std::vector<std::vector<double>> assoc;
    for (const auto& b : brands) assoc.push_back(brand_topic_assoc(g, b, p));

    std::vector<TopicCluster> out;
    for (std::uint32_t c = 0; c < p.count; ++c) {
        if (members[c].size() == 1 && g.neighbors(members[c][0]).empty()) continue;
        TopicCluster t;
        t.id = c;
        for (NodeId v : members[c]) t.members.push_back(g.word(v));
        t.relevance = relevance[c];
        t.keywords = keyword_rank(g, members[c], top_k_keywords);
        for (std::size_t b = 0; b < brands.size(); ++b) t.brand_assoc[brands[b]] = assoc[b][c];
        out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(), [](const TopicCluster& a, const TopicCluster& b) {
        return a.relevance != b.relevance ? a.relevance > b.relevance : a.id < b.id;
    });
    return out;
}

}  // namespace sbs
