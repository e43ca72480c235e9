#include "sbs/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>

#include "sbs/diagnostics.hpp"
#include "sbs/parallel.hpp"

namespace sbs {
namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kMax64 = std::numeric_limits<std::uint64_t>::max();

u128 gcd128(u128 a, u128 b) {
    if (a <= kMax64 && b <= kMax64) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Non-negative rational in lowest terms; den == 0 marks "not representable".
struct PathLength {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool exact() const { return den != 0; }

    PathLength plus_reciprocal(Weight w) const {
        if (!exact() || w == 0) return {0, 0};
        std::uint64_t n64, d64;
        if (!__builtin_mul_overflow(num, w, &n64) && !__builtin_add_overflow(n64, den, &n64) &&
            !__builtin_mul_overflow(den, w, &d64)) {
            const std::uint64_t g = std::gcd(n64, d64);
            return {n64 / g, d64 / g};
        }
        const u128 n = static_cast<u128>(num) * w + den;
        const u128 d = static_cast<u128>(den) * w;
        const u128 g = gcd128(n, d);
        const u128 rn = n / g, rd = d / g;
        if (rn > kMax64 || rd > kMax64) return {0, 0};
        return {static_cast<std::uint64_t>(rn), static_cast<std::uint64_t>(rd)};
    }
};

// -1, 0, 1. Exact when both sides are representable.
int compare(const PathLength& a, double a_approx, const PathLength& b, double b_approx) {
    if (a.exact() && b.exact()) {
        const u128 l = static_cast<u128>(a.num) * b.den;
        const u128 r = static_cast<u128>(b.num) * a.den;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    const double scale = std::max(std::abs(a_approx), std::abs(b_approx));
    if (std::abs(a_approx - b_approx) <= 1e-12 * scale) return 0;
    return a_approx < b_approx ? -1 : 1;
}

// Doubles farther apart than this (relative) are ordered without consulting
// the exact lengths; rounding error on short path sums is far below it.
constexpr double kNearTie = 1e-9;

// Flat adjacency with precomputed edge lengths, shared by all workers.
struct LengthGraph {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> target;
    std::vector<Weight> weight;
    std::vector<double> length;

    explicit LengthGraph(const CoocGraph& g) : offsets(g.node_count() + 1, 0) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            for (const auto& nb : g.neighbors(v)) {
                target.push_back(nb.node);
                weight.push_back(nb.weight);
                length.push_back(1.0 / static_cast<double>(nb.weight));
            }
            offsets[v + 1] = target.size();
        }
    }
    std::size_t size() const { return offsets.size() - 1; }
};

class SingleSource {
public:
    explicit SingleSource(const LengthGraph& g)
        : g_(g),
          n_(g.size()),
          dist_(n_),
          sigma_(n_),
          delta_(n_),
          parent_(n_),
          parent_weight_(n_),
          exact_(n_),
          exact_stamp_(n_, 0),
          settled_(n_, 0),
          pred_begin_(n_),
          pred_end_(n_) {}

    // Adds the dependency of every node on source s into acc (doubled
    // pair counts; the caller halves).
    void accumulate(NodeId s, std::vector<double>& acc) {
        run_dijkstra(s);
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            const NodeId w = *it;
            const double coeff = (1.0 + delta_[w]) / sigma_[w];
            for (std::size_t p = pred_begin_[w]; p < pred_end_[w]; ++p) {
                const NodeId v = preds_[p];
                delta_[v] += sigma_[v] * coeff;
            }
            if (w != s) acc[w] += delta_[w];
        }
    }

private:
    struct Item {
        double dist;
        NodeId node;
        bool operator>(const Item& o) const { return dist > o.dist || (dist == o.dist && node > o.node); }
    };

    const LengthGraph& g_;
    std::size_t n_;
    std::vector<double> dist_, sigma_, delta_;
    std::vector<NodeId> parent_;
    std::vector<Weight> parent_weight_;
    std::vector<PathLength> exact_;
    std::vector<std::uint32_t> exact_stamp_;
    std::uint32_t stamp_ = 0;
    std::vector<std::uint8_t> settled_;
    std::vector<NodeId> order_;
    std::vector<std::size_t> pred_begin_, pred_end_;
    std::vector<NodeId> preds_;
    std::vector<NodeId> chain_;
    std::vector<Item> heap_;
    NodeId source_ = 0;

    // Exact distance of a reached node, rebuilt along the parent chain and
    // memoized for the current source.
    const PathLength& exact_distance(NodeId v) {
        chain_.clear();
        NodeId cur = v;
        while (exact_stamp_[cur] != stamp_) {
            if (cur == source_) {
                exact_[cur] = PathLength{0, 1};
                exact_stamp_[cur] = stamp_;
                break;
            }
            chain_.push_back(cur);
            cur = parent_[cur];
        }
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
            exact_[*it] = exact_[parent_[*it]].plus_reciprocal(parent_weight_[*it]);
            exact_stamp_[*it] = stamp_;
        }
        return exact_[v];
    }

    // Compares dist(v) + len(e) against dist(target), e the edge at index e.
    int compare_via(NodeId v, std::size_t e, NodeId target) {
        const double cand = dist_[v] + g_.length[e];
        const double cur = dist_[target];
        if (std::abs(cand - cur) > kNearTie * std::max(cand, cur)) return cand < cur ? -1 : 1;
        const PathLength via = exact_distance(v).plus_reciprocal(g_.weight[e]);
        return compare(via, cand, exact_distance(target), cur);
    }

    // Dijkstra that also collects shortest-path predecessors and path counts.
    // A node's predecessors are strictly closer to the source, so they are all
    // settled (with final sigma) when the node itself is popped.
    void run_dijkstra(NodeId s) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        if (++stamp_ == 0) {
            std::fill(exact_stamp_.begin(), exact_stamp_.end(), 0);
            stamp_ = 1;
        }
        source_ = s;
        for (NodeId v : order_) {
            dist_[v] = inf;
            settled_[v] = 0;
        }
        if (order_.empty()) {
            std::fill(dist_.begin(), dist_.end(), inf);
            std::fill(settled_.begin(), settled_.end(), 0);
        }
        order_.clear();
        preds_.clear();
        heap_.clear();
        auto push = [&](double d, NodeId v) {
            heap_.push_back({d, v});
            std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
        };
        dist_[s] = 0;
        parent_[s] = s;
        push(0.0, s);
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
            const Item top = heap_.back();
            heap_.pop_back();
            const NodeId v = top.node;
            if (settled_[v] || top.dist != dist_[v]) continue;
            settled_[v] = 1;
            order_.push_back(v);
            delta_[v] = 0;
            pred_begin_[v] = preds_.size();
            double paths = v == s ? 1.0 : 0.0;
            const double dv = dist_[v];
            for (std::size_t e = g_.offsets[v]; e < g_.offsets[v + 1]; ++e) {
                const NodeId w = g_.target[e];
                if (settled_[w]) {
                    if (dist_[w] < dv && compare_via(w, e, v) == 0) {
                        preds_.push_back(w);
                        paths += sigma_[w];
                    }
                    continue;
                }
                if (dist_[w] == inf || compare_via(v, e, w) < 0) {
                    dist_[w] = dv + g_.length[e];
                    parent_[w] = v;
                    parent_weight_[w] = g_.weight[e];
                    exact_stamp_[w] = 0;
                    push(dist_[w], w);
                }
            }
            sigma_[v] = paths;
            pred_end_[v] = preds_.size();
        }
    }
};

}  // namespace

std::uint64_t prevalence(const CoocGraph& g, std::string_view word) { return g.frequency(word); }

std::vector<double> distinctiveness_all(const CoocGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    std::vector<double> penalty(n);
    for (NodeId j = 0; j < n; ++j) {
        const auto deg = g.neighbors(j).size();
        penalty[j] = deg ? std::log10(static_cast<double>(n - 1) / static_cast<double>(deg)) : 0.0;
    }
    for (NodeId i = 0; i < n; ++i) {
        double sum = 0;
        for (const auto& nb : g.neighbors(i)) sum += static_cast<double>(nb.weight) * penalty[nb.node];
        out[i] = sum;
    }
    return out;
}

double distinctiveness(const CoocGraph& g, std::string_view word) {
    auto id = g.find(word);
    if (!id) {
        warn("distinctiveness: \"" + std::string(word) + "\" is not in the graph");
        return 0.0;
    }
    const std::size_t n = g.node_count();
    double sum = 0;
    for (const auto& nb : g.neighbors(*id)) {
        const auto deg = g.neighbors(nb.node).size();
        sum += static_cast<double>(nb.weight) * std::log10(static_cast<double>(n - 1) / static_cast<double>(deg));
    }
    return sum;
}

std::vector<double> weighted_betweenness(const CoocGraph& g, const BetweennessOptions& options) {
    const std::size_t n = g.node_count();
    std::vector<double> total(n, 0.0);
    if (n < 3) return total;
    const LengthGraph lg(g);

    // Sources are processed in fixed-size blocks and the block partials are
    // summed in block order, so the result is independent of thread count.
    constexpr std::size_t kBlock = 16;
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> pending(blocks);
    std::size_t next_to_merge = 0;
    std::mutex merge_mutex;
    const unsigned threads = std::max(1u, options.threads);
    std::vector<std::unique_ptr<SingleSource>> workers;
    std::mutex worker_mutex;

    auto take_worker = [&]() -> std::unique_ptr<SingleSource> {
        std::lock_guard lock(worker_mutex);
        if (workers.empty()) return std::make_unique<SingleSource>(lg);
        auto w = std::move(workers.back());
        workers.pop_back();
        return w;
    };
    auto give_worker = [&](std::unique_ptr<SingleSource> w) {
        std::lock_guard lock(worker_mutex);
        workers.push_back(std::move(w));
    };

    parallel_for(blocks, threads, [&](std::size_t b) {
        auto worker = take_worker();
        std::vector<double> partial(n, 0.0);
        const std::size_t end = std::min(n, (b + 1) * kBlock);
        for (std::size_t s = b * kBlock; s < end; ++s) worker->accumulate(static_cast<NodeId>(s), partial);
        give_worker(std::move(worker));

        std::lock_guard lock(merge_mutex);
        pending[b] = std::move(partial);
        while (next_to_merge < blocks && !pending[next_to_merge].empty()) {
            const auto& p = pending[next_to_merge];
            for (std::size_t i = 0; i < n; ++i) total[i] += p[i];
            std::vector<double>().swap(pending[next_to_merge]);
            ++next_to_merge;
        }
    });
    for (auto& v : total) v /= 2.0;
    return total;
}

namespace {

// Independent exact fraction for the oracle: plain Euclid on 128 bits.
struct Fraction {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    Fraction add_unit_over(__int128 w) const {
        Fraction r{num * w + den, den * w};
        const __int128 g = gcd(r.num, r.den);
        r.num /= g;
        r.den /= g;
        return r;
    }
    bool operator==(const Fraction& o) const { return num * o.den == o.num * den; }
    bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
};

}  // namespace

std::vector<double> brute_force_betweenness(const CoocGraph& g, std::size_t max_nodes) {
    const std::size_t n = g.node_count();
    if (n > max_nodes)
        throw OracleRefused("brute-force betweenness refuses " + std::to_string(n) + " nodes (cap " +
                            std::to_string(max_nodes) + ")");
    std::vector<double> bc(n, 0.0);
    std::vector<bool> on_path(n, false);
    std::vector<NodeId> path;

    for (NodeId s = 0; s < n; ++s) {
        for (NodeId t = s + 1; t < n; ++t) {
            std::optional<Fraction> best;
            std::vector<std::vector<NodeId>> shortest;
            // Depth-first enumeration of simple s-t paths.
            std::function<void(NodeId, Fraction)> dfs = [&](NodeId v, Fraction len) {
                if (v == t) {
                    if (!best || len < *best) {
                        best = len;
                        shortest.clear();
                    }
                    if (len == *best) shortest.push_back(path);
                    return;
                }
                for (const auto& nb : g.neighbors(v)) {
                    if (on_path[nb.node]) continue;
                    on_path[nb.node] = true;
                    path.push_back(nb.node);
                    dfs(nb.node, len.add_unit_over(static_cast<__int128>(nb.weight)));
                    path.pop_back();
                    on_path[nb.node] = false;
                }
            };
            on_path[s] = true;
            dfs(s, Fraction{});
            on_path[s] = false;
            if (shortest.empty()) continue;
            const double share = 1.0 / static_cast<double>(shortest.size());
            for (const auto& p : shortest)
                for (std::size_t k = 0; k + 1 < p.size(); ++k) bc[p[k]] += share;
        }
    }
    return bc;
}

std::vector<CentralityRow> centrality_table(const CoocGraph& g, unsigned threads) {
    const auto diversity = distinctiveness_all(g);
    const auto connectivity = weighted_betweenness(g, {DistanceTransform::inverse_weight, threads});
    std::vector<CentralityRow> rows(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i)
        rows[i] = CentralityRow{g.word(i), g.frequency(i), diversity[i], connectivity[i]};
    return rows;
}

}  // namespace sbs
