#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/run_config.hpp"
#include "trustcf/trust_graph.hpp"
#include "trustcf/trust_inference.hpp"

namespace trustcf::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitData = 4,  ///< parse, range and integrity errors
};

int exit_code_for(const std::exception& e);

struct PrecomputeOptions {
    GraphVariant variant = GraphVariant::WithCommonTrustee;
    TrustFormula formula = TrustFormula::Attenuated;
};

struct PredictRequest {
    std::string user;
    std::string item;
    std::optional<std::size_t> k;  ///< first of cfg.ks when unset
};

/// Writes the trust store to cfg.trust_store (or <out>/trust_store.txt).
void cmd_precompute_trust(const RunConfig& cfg, const PrecomputeOptions& options, std::ostream& out);

/// Writes rounds.csv, summary.csv and run.manifest into cfg.out.
void cmd_evaluate(const RunConfig& cfg, std::ostream& out);

/// Predicts one rating with cfg.methods.front(), training on every rating.
void cmd_predict(const RunConfig& cfg, const PredictRequest& request, std::ostream& out);

/// Prints dataset counts; fails when cfg.expect_filmtrust and the counts differ.
void cmd_stats(const RunConfig& cfg, std::ostream& out);

/// Full command line (args[0] is the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trustcf::cli
