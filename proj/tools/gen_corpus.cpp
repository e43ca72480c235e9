// Writes a deterministic synthetic corpus (JSONL or CSV) for load testing.
#include <iostream>

#include <CLI11.hpp>

#include "synthetic_corpus.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic timestamped corpus"};
    sbs::synthetic::CorpusSpec spec;
    std::string output;
    app.add_option("-n,--documents", spec.documents, "Number of documents")->capture_default_str();
    app.add_option("--days", spec.days, "Days covered, starting 2021-03-05")->capture_default_str();
    app.add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    app.add_option("-o,--output", output, "Output file (.jsonl or .csv)")->required();
    CLI11_PARSE(app, argc, argv);

    auto docs = sbs::synthetic::Generator(spec).generate();
    try {
        if (std::filesystem::path(output).extension() == ".csv")
            sbs::write_corpus_csv(output, docs);
        else
            sbs::write_corpus_jsonl(output, docs);
    } catch (const std::exception& e) {
        std::cerr << "sbs-gen-corpus: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "wrote " << docs.size() << " documents to " << output << '\n';
    return 0;
}
