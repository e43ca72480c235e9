#include "sbs/sbs_score.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sbs/diagnostics.hpp"

namespace sbs {

namespace {

struct Moments {
    double mean = 0;
    double sd = 0;  // 0 for constant input
};

Moments population_moments(std::span<const double> v) {
    Moments m;
    if (v.empty()) return m;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) return m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(v.size()));
    return m;
}

double zscore(double x, const Moments& m) { return m.sd > 0 ? (x - m.mean) / m.sd : 0.0; }

}  // namespace

std::vector<double> standardize(std::span<const double> values) {
    const Moments m = population_moments(values);
    std::vector<double> z(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = zscore(values[i], m);
    return z;
}

std::vector<BrandScore> score_slice(const CoocGraph& g, const std::vector<std::string>& brands,
                                    const std::string& slice_label, unsigned threads) {
    const auto table = centrality_table(g, threads);
    return score_slice(g, table, brands, slice_label);
}

std::vector<BrandScore> score_slice(const CoocGraph& g, std::span<const CentralityRow> table,
                                    const std::vector<std::string>& brands, const std::string& slice_label) {
    if (table.size() != g.node_count()) throw std::invalid_argument("centrality table does not match graph");
    if (g.empty()) warn("slice " + slice_label + ": empty graph, all scores are zero");

    const std::size_t n = g.node_count();
    std::vector<double> prev(n), div(n), conn(n);
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = static_cast<double>(table[i].prevalence);
        div[i] = table[i].diversity;
        conn[i] = table[i].connectivity;
    }
    const Moments mp = population_moments(prev), md = population_moments(div), mc = population_moments(conn);

    std::vector<BrandScore> out;
    out.reserve(brands.size());
    for (const auto& brand : brands) {
        BrandScore s{brand, slice_label, {}, {}, 0};
        if (auto id = g.find(brand)) {
            s.raw = {prev[*id], div[*id], conn[*id]};
        } else {
            s.raw = {static_cast<double>(prevalence(g, brand)), 0.0, 0.0};
            if (!g.empty()) warn("slice " + slice_label + ": brand \"" + brand + "\" is not in the graph");
        }
        s.z = {zscore(s.raw.prevalence, mp), zscore(s.raw.diversity, md), zscore(s.raw.connectivity, mc)};
        s.sbs = s.z.prevalence + s.z.diversity + s.z.connectivity;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<BrandTrend> trend(const std::vector<BrandScore>& scores) {
    std::vector<BrandTrend> out;
    std::map<std::string, std::size_t> index;
    for (const auto& s : scores) {
        auto [it, inserted] = index.try_emplace(s.brand, out.size());
        if (inserted) out.push_back(BrandTrend{s.brand, {}, 0});
        out[it->second].series.push_back({s.slice, s.sbs});
    }
    for (auto& t : out) {
        double sum = 0;
        for (const auto& p : t.series) sum += p.sbs;
        t.mean = t.series.empty() ? 0.0 : sum / static_cast<double>(t.series.size());
    }
    return out;
}

AssociationReport associations(const CoocGraph& g, const std::string& brand, std::size_t top_k,
                               const std::string& slice_label) {
    if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
    AssociationReport rep{brand, slice_label, {}};
    auto id = g.find(brand);
    if (!id) {
        warn("associations: brand \"" + brand + "\" is not in the graph" +
             (slice_label.empty() ? std::string() : " (slice " + slice_label + ")"));
        return rep;
    }
    for (const auto& nb : g.neighbors(*id)) rep.entries.push_back({g.word(nb.node), nb.weight, std::nullopt});
    auto by_strength = [](const Association& a, const Association& b) {
        return a.weight != b.weight ? a.weight > b.weight : a.word < b.word;
    };
    if (rep.entries.size() > top_k) {
        std::partial_sort(rep.entries.begin(), rep.entries.begin() + static_cast<std::ptrdiff_t>(top_k),
                          rep.entries.end(), by_strength);
        rep.entries.resize(top_k);
    } else {
        std::sort(rep.entries.begin(), rep.entries.end(), by_strength);
    }
    return rep;
}

void annotate_sentiment(AssociationReport& report, const SentimentLexicon& lex) {
    for (auto& e : report.entries) e.sentiment = lex.score(e.word);
}

SentimentResult association_sentiment(const AssociationReport& report, const SentimentLexicon& lex) {
    double num = 0, den = 0;
    for (const auto& e : report.entries) {
        if (auto s = lex.score(e.word)) {
            num += static_cast<double>(e.weight) * *s;
            den += static_cast<double>(e.weight);
        }
    }
    if (den == 0) return {0.0, false};
    return {num / den, true};
}

std::vector<double> dimension_profile(const CoocGraph& g, const std::string& brand,
                                      const std::vector<DimensionLexicon>& lexicons) {
    std::vector<double> out(lexicons.size(), 0.0);
    auto id = g.find(brand);
    if (!id) return out;
    Weight total = 0;
    std::vector<Weight> hits(lexicons.size(), 0);
    for (const auto& nb : g.neighbors(*id)) {
        total += nb.weight;
        for (std::size_t d = 0; d < lexicons.size(); ++d)
            if (lexicons[d].matches(g.word(nb.node))) hits[d] += nb.weight;
    }
    if (total == 0) return out;
    for (std::size_t d = 0; d < lexicons.size(); ++d)
        out[d] = static_cast<double>(hits[d]) / static_cast<double>(total);
    return out;
}

}  // namespace sbs
