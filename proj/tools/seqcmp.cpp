#include "seqcmp/affix.hpp"
#include "seqcmp/dataset.hpp"
#include "seqcmp/manifest.hpp"
#include "seqcmp/mining.hpp"
#include "seqcmp/serialize.hpp"

#include <CLI11.hpp>

#include <iostream>

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"Offline tools for event-sequence datasets"};
    app.require_subcommand(1);

    std::string manifest;
    std::size_t minLen = 1;
    std::optional<std::size_t> maxLen;

    auto* statsCmd = app.add_subcommand("stats", "Sequence count and average length");
    statsCmd->add_option("manifest", manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
    statsCmd->add_option("--min-len", minLen, "Keep sequences at least this long");
    statsCmd->add_option("--max-len", maxLen, "Keep sequences at most this long");

    std::size_t depth = 1;
    auto* matrixCmd = app.add_subcommand("matrix", "Print the prefix/suffix matrix with every node down to a depth");
    matrixCmd->add_option("manifest", manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
    matrixCmd->add_option("--min-len", minLen, "Keep sequences at least this long");
    matrixCmd->add_option("--max-len", maxLen, "Keep sequences at most this long");
    matrixCmd->add_option("--depth", depth, "Expand both trees to this level")->check(CLI::Range(1, 10));

    seqcmp::MiningConfig cfg;
    std::string mode = "maximal";
    auto* mineCmd = app.add_subcommand("mine", "Mine sequential patterns over a whole dataset");
    mineCmd->add_option("manifest", manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
    mineCmd->add_option("--min-len", minLen, "Keep sequences at least this long");
    mineCmd->add_option("--max-len", maxLen, "Keep sequences at most this long");
    mineCmd->add_option("--min-support", cfg.minSupportPct, "Minimum support percentage");
    mineCmd->add_option("--max-length", cfg.maxPatternLength, "Longest pattern");
    mineCmd->add_option("--mode", mode, "maximal or frequent")->check(CLI::IsMember({"maximal", "frequent"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const auto m = seqcmp::loadManifest(manifest);
        auto data = std::make_shared<const seqcmp::Dataset>(
            seqcmp::filterByLength(seqcmp::loadDataset(m), minLen, maxLen));

        if (statsCmd->parsed()) {
            json out = seqcmp::toJson(seqcmp::stats(*data));
            out["name"] = m.name;
            out["alphabetSize"] = data->alphabet().size();
            std::cout << out.dump(2) << '\n';
        } else if (matrixCmd->parsed()) {
            const auto prefix = seqcmp::buildPrefixTree(data);
            const auto suffix = seqcmp::buildSuffixTree(data);
            seqcmp::MatrixState state;
            state.lengthFilter = {minLen, maxLen};
            for (std::size_t level = 1; level < depth; ++level)
                state = seqcmp::expandAllNextLevel(state, prefix, suffix).state;
            std::cout << seqcmp::toJson(seqcmp::materializeMatrix(prefix, suffix, state)).dump(2) << '\n';
        } else if (mineCmd->parsed()) {
            cfg.mode = *seqcmp::parseMiningMode(mode);
            json out = json::array();
            const auto patterns = seqcmp::mine(*data, cfg);
            for (std::size_t i = 0; i < patterns.size(); ++i)
                out.push_back(seqcmp::toJson(patterns[i], "p" + std::to_string(i)));
            std::cout << out.dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
