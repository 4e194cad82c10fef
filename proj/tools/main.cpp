#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tskstream/arff.hpp"
#include "tskstream/baselines.hpp"
#include "tskstream/config.hpp"
#include "tskstream/csv.hpp"
#include "tskstream/evaluation.hpp"
#include "tskstream/learner.hpp"
#include "tskstream/model_io.hpp"
#include "tskstream/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CliOptions {
    std::string input;
    std::string synthetic;
    std::string format;
    std::string target;
    std::string criterion = "vr";
    std::string strategy = "all";
    double delta = 0.01;
    double tau = 0.05;
    double eta = 0.01;
    std::uint64_t grace = 200;
    double adwinDelta = 0.002;
    std::string rhoFactors = "0.05,0.15";
    std::uint64_t seed = 1;
    std::string outMetrics;
    std::string outModel;
    std::string outSummary;
    std::string baseline = "none";
    std::string timing = "real";
    std::uint64_t maxRules = 0;
    double adwinCoverage = 0.1;
    bool ebstScaledTargets = false;
    std::string emitData;
};

std::pair<double, double> parseRhoFactors(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--rho-factors expects k1,k2");
    const double k1 = std::stod(s.substr(0, comma));
    const double k2 = std::stod(s.substr(comma + 1));
    if (!(k1 > 0.0 && k1 < k2))
        throw std::invalid_argument("--rho-factors requires 0 < k1 < k2");
    return {k1, k2};
}

std::string formatFor(const CliOptions& opt) {
    if (!opt.format.empty()) return opt.format;
    const auto dot = opt.input.rfind('.');
    if (dot != std::string::npos) {
        const std::string ext = opt.input.substr(dot + 1);
        if (ext == "arff") return "arff";
        if (ext == "csv") return "csv";
    }
    return "";
}

std::unique_ptr<tsk::StreamSource> openSource(const CliOptions& opt) {
    if (!opt.synthetic.empty()) {
        std::string spec = opt.synthetic;
        if (spec.find("seed=") == std::string::npos)
            spec += (spec.find(':') == std::string::npos ? ":" : ",") +
                    std::string("seed=") + std::to_string(opt.seed);
        return tsk::openSynthetic(spec);
    }
    const std::string fmt = formatFor(opt);
    if (fmt == "arff") return tsk::openArff(opt.input, opt.target);
    if (fmt == "csv") return tsk::openCsv(opt.input, opt.target);
    throw std::invalid_argument("cannot infer input format; pass --format arff|csv");
}

nlohmann::json configEcho(const CliOptions& opt) {
    return {{"input", opt.input},
            {"synthetic", opt.synthetic},
            {"format", opt.format},
            {"target", opt.target},
            {"criterion", opt.criterion},
            {"strategy", opt.strategy},
            {"delta", opt.delta},
            {"tau", opt.tau},
            {"eta", opt.eta},
            {"grace", opt.grace},
            {"adwin_delta", opt.adwinDelta},
            {"rho_factors", opt.rhoFactors},
            {"seed", opt.seed},
            {"baseline", opt.baseline},
            {"timing", opt.timing},
            {"max_rules", opt.maxRules},
            {"adwin_coverage", opt.adwinCoverage},
            {"ebst_scaled_targets", opt.ebstScaledTargets}};
}

int run(const CliOptions& opt) {
    if (!opt.input.empty() && !opt.synthetic.empty()) {
        std::cerr << "error: --input and --synthetic are mutually exclusive\n";
        return kExitConfig;
    }
    if (opt.input.empty() && opt.synthetic.empty()) {
        std::cerr << "error: one of --input or --synthetic is required\n";
        return kExitConfig;
    }
    if (opt.timing != "real" && opt.timing != "zero") {
        std::cerr << "error: --timing must be real|zero\n";
        return kExitConfig;
    }
    if (opt.baseline != "none" && opt.baseline != "mean" && opt.baseline != "linear") {
        std::cerr << "error: --baseline must be mean|linear|none\n";
        return kExitConfig;
    }

    tsk::LearnerConfig cfg;
    try {
        cfg.criterion = tsk::parseCriterion(opt.criterion);
        cfg.strategy = tsk::parseStrategy(opt.strategy);
        cfg.delta = opt.delta;
        cfg.tau = opt.tau;
        cfg.eta = opt.eta;
        cfg.gracePeriod = opt.grace;
        cfg.adwinDelta = opt.adwinDelta;
        std::tie(cfg.rhoFactor1, cfg.rhoFactor2) = parseRhoFactors(opt.rhoFactors);
        cfg.maxRules = opt.maxRules;
        cfg.adwinCoverage = opt.adwinCoverage;
        cfg.ebstScaleTargets = opt.ebstScaledTargets;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        auto source = openSource(opt);

        if (!opt.emitData.empty()) {
            const std::string fmt = opt.format.empty() ? "csv" : opt.format;
            if (fmt == "arff")
                tsk::writeArff(opt.emitData, "generated", *source);
            else
                tsk::writeCsv(opt.emitData, *source);
            return kExitOk;
        }

        const std::size_t d = source->dimension();
        std::unique_ptr<tsk::Regressor> model;
        tsk::Learner* learner = nullptr;
        if (opt.baseline == "mean") {
            model = std::make_unique<tsk::MeanPredictor>();
        } else if (opt.baseline == "linear") {
            model = std::make_unique<tsk::LinearSgd>(d, cfg.eta);
        } else {
            auto l = std::make_unique<tsk::Learner>(d, cfg);
            learner = l.get();
            model = std::move(l);
        }

        tsk::EvaluationOptions evalOpts;
        evalOpts.metricsPath = opt.outMetrics;
        evalOpts.measureTime = opt.timing == "real";
        const auto summary = tsk::evaluateStream(*model, *source, evalOpts);

        nlohmann::json events = nlohmann::json::array();
        for (const auto& ev : summary.driftEvents) {
            events.push_back(
                {{"index", ev.instanceIndex},
                 {"rule_id", ev.ruleId},
                 {"action",
                  ev.action == tsk::DriftEvent::Action::Merged ? "merged" : "removed"}});
        }
        const nlohmann::json out = {{"rmse", summary.rmse},
                                    {"rules", summary.rules},
                                    {"mean_micros", summary.meanMicros},
                                    {"drift_events", events},
                                    {"config_echo", configEcho(opt)}};
        std::cout << out.dump(2) << '\n';
        if (!opt.outSummary.empty()) {
            std::ofstream f(opt.outSummary, std::ios::trunc);
            if (!f) throw tsk::DataError("cannot open summary file: " + opt.outSummary);
            f << out.dump(2) << '\n';
        }
        if (!opt.outModel.empty() && learner) tsk::dumpModelJsonFile(*learner, opt.outModel);
        return kExitOk;
    } catch (const tsk::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incremental TSK fuzzy rule regression on data streams"};
    CliOptions opt;

    app.add_option("--input", opt.input, "Input data file (ARFF or CSV)");
    app.add_option("--synthetic", opt.synthetic,
                   "Synthetic stream spec, e.g. fried:n=40769 or "
                   "piecewise-linear:d=5,n=10000,noise=0.5,drift=5000:abrupt:10");
    app.add_option("--format", opt.format, "Input format: arff|csv (default: by extension)")
        ->check(CLI::IsMember({"arff", "csv"}));
    app.add_option("--target", opt.target, "Target column name (default: last column)");
    app.add_option("--criterion", opt.criterion, "Split criterion: vr|er")
        ->check(CLI::IsMember({"vr", "er"}));
    app.add_option("--strategy", opt.strategy, "Adoption strategy: single|all")
        ->check(CLI::IsMember({"single", "all"}));
    app.add_option("--delta", opt.delta, "Hoeffding confidence (default 0.01)");
    app.add_option("--tau", opt.tau, "Tie-breaking constant (default 0.05)");
    app.add_option("--eta", opt.eta, "Learning rate (default 0.01)");
    app.add_option("--grace", opt.grace, "Grace period in examples (default 200)");
    app.add_option("--adwin-delta", opt.adwinDelta, "ADWIN confidence (default 0.002)");
    app.add_option("--rho-factors", opt.rhoFactors,
                   "Overlap half-width factors k1,k2 of the feature spread (default 0.05,0.15)");
    app.add_option("--seed", opt.seed, "Seed for synthetic streams (default 1)");
    app.add_option("--out-metrics", opt.outMetrics, "Per-instance metrics CSV path");
    app.add_option("--out-model", opt.outModel, "Model dump JSON path");
    app.add_option("--out-summary", opt.outSummary, "Summary JSON path (always printed)");
    app.add_option("--baseline", opt.baseline, "Evaluate a baseline instead: mean|linear|none")
        ->check(CLI::IsMember({"mean", "linear", "none"}));
    app.add_option("--timing", opt.timing, "Per-instance timing: real|zero (default real)")
        ->check(CLI::IsMember({"real", "zero"}));
    app.add_option("--max-rules", opt.maxRules, "Hard cap on rule count (0 = unlimited)");
    app.add_option("--adwin-coverage", opt.adwinCoverage,
                   "Min activation for drift-detector updates (default 0.1)");
    app.add_flag("--ebst-scaled-targets", opt.ebstScaledTargets,
                 "Variance of weight-scaled targets in split statistics");
    app.add_option("--emit-data", opt.emitData,
                   "Write the opened stream to this file (per --format) and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    return run(opt);
}
