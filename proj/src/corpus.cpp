#include "sbs/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "sbs/csv.hpp"
#include "sbs/diagnostics.hpp"

namespace sbs {
namespace {

using json = nlohmann::json;

bool is_letter(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Accepts strings and, for ids, integers.
std::optional<std::string> string_field(const json& obj, const char* key, bool allow_number) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (allow_number && it->is_number_integer()) return std::to_string(it->get<long long>());
    return std::nullopt;
}

struct Collector {
    LoadResult result;
    std::unordered_set<std::string> seen;

    void add(std::size_t line, std::optional<std::string> id, std::optional<std::string> ts,
             std::optional<std::string> text) {
        if (!id) return error(line, "missing field \"id\"");
        if (!ts) return error(line, "missing field \"timestamp\"");
        if (!text) return error(line, "missing field \"text\"");
        auto parsed = parse_timestamp(*ts);
        if (!parsed) return error(line, "unparseable timestamp \"" + *ts + "\"");
        if (!seen.insert(*id).second) return error(line, "duplicate id \"" + *id + "\"");
        result.documents.push_back(Document{std::move(*id), *parsed, std::move(*text), {}});
    }

    void error(std::size_t line, std::string msg) { result.errors.push_back({line, std::move(msg)}); }
};

void load_jsonl(std::istream& in, Collector& c) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            c.error(lineno, "malformed JSON object");
            continue;
        }
        c.add(lineno, string_field(obj, "id", true), string_field(obj, "timestamp", false),
              string_field(obj, "text", false));
    }
}

void load_csv(std::istream& in, Collector& c) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) return;
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::string name = row[i];
        if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);  // BOM
        column.emplace(name, i);
    }
    auto col = [&](const char* name) -> std::optional<std::size_t> {
        auto it = column.find(name);
        return it == column.end() ? std::nullopt : std::optional{it->second};
    };
    const auto id_col = col("id"), ts_col = col("timestamp"), text_col = col("text");
    for (;;) {
        try {
            if (!reader.next(row)) break;
        } catch (const std::runtime_error& e) {
            c.error(reader.record_line() + 1, e.what());
            break;
        }
        if (row.size() == 1 && row[0].empty()) continue;
        auto get = [&](std::optional<std::size_t> i) -> std::optional<std::string> {
            if (!i || *i >= row.size()) return std::nullopt;
            return row[*i];
        };
        c.add(reader.record_line(), get(id_col), get(ts_col), get(text_col));
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write " + path.string());
    return out;
}

}  // namespace

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read corpus file " + path.string());
    Collector c;
    if (format == CorpusFormat::jsonl)
        load_jsonl(in, c);
    else
        load_csv(in, c);
    if (in.bad()) throw CorpusError("I/O error while reading " + path.string());
    return std::move(c.result);
}

void write_corpus_csv(const std::filesystem::path& path, const std::vector<Document>& docs) {
    auto out = open_out(path);
    csv::write_row(out, {"id", "timestamp", "text"});
    for (const auto& d : docs) csv::write_row(out, {d.id, format_timestamp(d.timestamp), d.raw_text});
}

void write_corpus_jsonl(const std::filesystem::path& path, const std::vector<Document>& docs) {
    auto out = open_out(path);
    for (const auto& d : docs) {
        json obj = {{"id", d.id}, {"timestamp", format_timestamp(d.timestamp)}, {"text", d.raw_text}};
        out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
}

Granularity parse_granularity(std::string_view name) {
    if (name == "day") return Granularity::day;
    if (name == "week") return Granularity::week;
    if (name == "month") return Granularity::month;
    throw std::invalid_argument("unknown granularity \"" + std::string(name) + "\"");
}

std::string_view to_string(Granularity g) {
    switch (g) {
        case Granularity::day: return "day";
        case Granularity::week: return "week";
        case Granularity::month: return "month";
    }
    return "?";
}

std::vector<TimeSlice> slice_by_period(const std::vector<Document>& docs, Granularity granularity) {
    using namespace std::chrono;
    std::vector<TimeSlice> slices;
    if (docs.empty()) return slices;

    auto bucket_start = [granularity](Timestamp ts) -> sys_days {
        const auto d = floor<days>(ts);
        switch (granularity) {
            case Granularity::day: return d;
            case Granularity::week: return d - (weekday{d} - Monday);
            case Granularity::month: {
                const year_month_day ymd{d};
                return sys_days{ymd.year() / ymd.month() / 1};
            }
        }
        return d;
    };
    auto next_start = [granularity](sys_days s) -> sys_days {
        switch (granularity) {
            case Granularity::day: return s + days{1};
            case Granularity::week: return s + days{7};
            case Granularity::month: {
                const year_month_day ymd{s};
                return sys_days{(ymd.year() / ymd.month() + months{1}) / 1};
            }
        }
        return s + days{1};
    };
    auto label = [granularity](sys_days s) {
        std::string l = format_date(s);
        if (granularity == Granularity::month) l.resize(7);
        return l;
    };

    auto [lo, hi] = std::minmax_element(docs.begin(), docs.end(),
                                        [](const Document& a, const Document& b) { return a.timestamp < b.timestamp; });
    const sys_days first = bucket_start(lo->timestamp);
    const sys_days last = bucket_start(hi->timestamp);
    for (sys_days s = first; s <= last; s = next_start(s))
        slices.push_back(TimeSlice{label(s), s, next_start(s), {}});

    for (std::size_t i = 0; i < docs.size(); ++i) {
        const sys_days b = bucket_start(docs[i].timestamp);
        // Slices are ordered by start; locate by binary search.
        auto it = std::upper_bound(slices.begin(), slices.end(), Timestamp{b},
                                   [](Timestamp t, const TimeSlice& sl) { return t < sl.start; });
        (it - 1)->documents.push_back(i);
    }
    return slices;
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::vector<std::string> letter_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (is_letter(static_cast<unsigned char>(ch))) {
            cur += lower(ch);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

CorpusStats describe(const std::vector<Document>& docs) {
    // Welford; identical inputs leave m2 at exactly zero.
    struct Moments {
        double mean = 0, m2 = 0;
        std::size_t n = 0;
        void add(double x) {
            ++n;
            const double delta = x - mean;
            mean += delta / static_cast<double>(n);
            m2 += delta * (x - mean);
        }
        std::pair<double, double> mean_sd() const {
            if (n == 0) return {0.0, 0.0};
            return {mean, std::sqrt(std::max(0.0, m2 / static_cast<double>(n)))};
        }
    };
    Moments tokens, types, ttr, six;
    CorpusStats st;
    st.documents = docs.size();
    for (const auto& d : docs) {
        auto words = letter_tokens(d.raw_text);
        const double n = static_cast<double>(words.size());
        tokens.add(n);
        if (words.empty()) {
            types.add(0);
            ++st.empty_documents;
            continue;
        }
        std::size_t long_words = 0;
        for (const auto& w : words)
            if (utf8_length(w) >= 6) ++long_words;
        std::sort(words.begin(), words.end());
        const double t = static_cast<double>(std::unique(words.begin(), words.end()) - words.begin());
        types.add(t);
        ttr.add(t / n);
        six.add(static_cast<double>(long_words) / n);
    }
    std::tie(st.mean_tokens, st.sd_tokens) = tokens.mean_sd();
    std::tie(st.mean_types, st.sd_types) = types.mean_sd();
    std::tie(st.mean_ttr, st.sd_ttr) = ttr.mean_sd();
    std::tie(st.mean_six_letter_share, st.sd_six_letter_share) = six.mean_sd();
    if (!docs.empty() && st.empty_documents == docs.size()) warn("describe: every document is empty; statistics are zero");
    return st;
}

}  // namespace sbs
