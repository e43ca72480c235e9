#pragma once

// Deterministic synthetic tweet-like corpus for load testing. Uses raw
// mt19937_64 output only, so a seed produces the same corpus everywhere.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sbs/corpus.hpp"

namespace sbs::synthetic {

struct CorpusSpec {
    std::size_t documents = 200000;
    std::size_t days = 8;
    std::size_t vocabulary = 20000;
    std::size_t topics = 6;
    std::size_t words_per_topic = 40;
    double zipf_exponent = 1.07;
    double mean_length = 19.0;
    double sd_length = 10.0;
    std::uint64_t seed = 7;
    std::chrono::sys_days first_day = std::chrono::sys_days{std::chrono::year{2021} / 3 / 5};
};

class Generator {
public:
    explicit Generator(const CorpusSpec& spec) : spec_(spec), rng_(spec.seed) {
        static const char* syllables[] = {"ka", "lo", "mi", "ven", "tor", "sa", "ri", "bel", "dun", "fe",
                                          "gor", "hil", "jas", "ne", "pra", "qui", "sol", "ta", "ux", "wen",
                                          "ya", "zel", "mor", "lin", "cas", "do", "er", "fi", "ga", "ho"};
        constexpr std::size_t ns = sizeof syllables / sizeof syllables[0];
        vocab_.reserve(spec.vocabulary);
        for (std::size_t i = 0; i < spec.vocabulary; ++i) {
            std::string w;
            std::size_t x = i + ns;  // at least two syllables
            while (x > 0) {
                w += syllables[x % ns];
                x /= ns;
            }
            vocab_.push_back(std::move(w));
        }
        cdf_.resize(spec.vocabulary);
        double acc = 0;
        for (std::size_t i = 0; i < spec.vocabulary; ++i) {
            acc += 1.0 / std::pow(static_cast<double>(i + 1), spec.zipf_exponent);
            cdf_[i] = acc;
        }
        for (auto& c : cdf_) c /= acc;
        for (std::size_t t = 0; t < spec.topics; ++t) {
            std::vector<std::size_t> words;
            for (std::size_t k = 0; k < spec.words_per_topic; ++k) words.push_back(pick(spec.vocabulary / 2) + 50);
            topics_.push_back(std::move(words));
        }
    }

    std::vector<Document> generate() {
        static const char* stop[] = {"the", "a", "and", "of", "to", "in", "is", "for", "on", "with", "this", "my"};
        static const char* brands[] = {"Aurelia", "Borvane", "Maison Castellan"};
        static const double brand_p[] = {0.70, 0.20, 0.12};
        std::vector<Document> docs;
        docs.reserve(spec_.documents);
        const std::int64_t span = static_cast<std::int64_t>(spec_.days) * 86400;
        for (std::size_t i = 0; i < spec_.documents; ++i) {
            const auto offset = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(span));
            const auto ts = Timestamp{std::chrono::sys_seconds{spec_.first_day}} + std::chrono::seconds{offset};
            const double len_d = spec_.mean_length + spec_.sd_length * normal();
            const std::size_t len = static_cast<std::size_t>(std::clamp(len_d, 3.0, 70.0));
            const auto& topic = topics_[rng_() % topics_.size()];
            std::string text;
            auto put = [&](const std::string& w) {
                if (!text.empty()) text += ' ';
                text += w;
            };
            for (std::size_t b = 0; b < 3; ++b)
                if (uniform() < brand_p[b]) put(brands[b]);
            for (std::size_t k = 0; k < len; ++k) {
                const double u = uniform();
                if (u < 0.28)
                    put(stop[rng_() % (sizeof stop / sizeof stop[0])]);
                else if (u < 0.55)
                    put(vocab_[topic[rng_() % topic.size()]]);
                else if (u < 0.57)
                    put("#" + vocab_[topic[rng_() % topic.size()]]);
                else
                    put(vocab_[zipf()]);
            }
            if (uniform() < 0.05) put("https://t.co/x" + std::to_string(i));
            docs.push_back(Document{"s" + std::to_string(i), ts, std::move(text), {}});
        }
        std::stable_sort(docs.begin(), docs.end(),
                         [](const Document& a, const Document& b) { return a.timestamp < b.timestamp; });
        return docs;
    }

private:
    CorpusSpec spec_;
    std::mt19937_64 rng_;
    std::vector<std::string> vocab_;
    std::vector<double> cdf_;
    std::vector<std::vector<std::size_t>> topics_;

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    double normal() {
        // Box-Muller; one value per call is enough here.
        const double u1 = std::max(uniform(), 1e-300);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    std::size_t pick(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }

    std::size_t zipf() {
        const double u = uniform();
        return static_cast<std::size_t>(std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()) %
               cdf_.size();
    }
};

}  // namespace sbs::synthetic
