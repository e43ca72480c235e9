#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbs/centrality.hpp"
#include "sbs/cooc_graph.hpp"
#include "sbs/lexicon.hpp"

namespace sbs {

struct Components {
    double prevalence = 0;
    double diversity = 0;
    double connectivity = 0;
};

struct BrandScore {
    std::string brand;
    std::string slice;
    Components raw;
    Components z;
    double sbs = 0;  // z.prevalence + z.diversity + z.connectivity
};

// (x - mean) / sd with population mean and SD. A constant input maps to all
// zeros.
std::vector<double> standardize(std::span<const double> values);

// Standardizes every component over all nodes of the slice graph. Brands
// missing from the graph keep their occurrence count as raw prevalence (zero
// when they never occur) and zero diversity and connectivity, and are
// standardized against the same node population.
std::vector<BrandScore> score_slice(const CoocGraph& g, const std::vector<std::string>& brands,
                                    const std::string& slice_label, unsigned threads = 1);

// Variant reusing an already computed centrality table of g.
std::vector<BrandScore> score_slice(const CoocGraph& g, std::span<const CentralityRow> table,
                                    const std::vector<std::string>& brands, const std::string& slice_label);

struct TrendPoint {
    std::string slice;
    double sbs = 0;
};

struct BrandTrend {
    std::string brand;
    std::vector<TrendPoint> series;  // input order
    double mean = 0;
};

// Groups scores by brand in order of first appearance.
std::vector<BrandTrend> trend(const std::vector<BrandScore>& scores);

struct Association {
    std::string word;
    Weight weight = 0;
    std::optional<double> sentiment;
};

struct AssociationReport {
    std::string brand;
    std::string slice;
    std::vector<Association> entries;  // weight descending, then word ascending
};

// Direct neighbours of the brand, strongest first, truncated to top_k.
AssociationReport associations(const CoocGraph& g, const std::string& brand, std::size_t top_k,
                               const std::string& slice_label = {});

void annotate_sentiment(AssociationReport& report, const SentimentLexicon& lex);

struct SentimentResult {
    double value = 0;
    bool covered = false;  // false when no association appears in the lexicon
};

// Weight-weighted mean of lexicon scores over the report's entries present in
// the lexicon.
SentimentResult association_sentiment(const AssociationReport& report, const SentimentLexicon& lex);

// Share of the brand's weighted degree that goes to words of each dimension.
std::vector<double> dimension_profile(const CoocGraph& g, const std::string& brand,
                                      const std::vector<DimensionLexicon>& lexicons);

}  // namespace sbs
