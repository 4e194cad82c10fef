#include "tskstream/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tsk {

namespace {

using nlohmann::json;

json membershipToJson(const MembershipFunction& mf) {
    using K = MembershipFunction::Kind;
    switch (mf.kind()) {
    case K::Void:
        return {{"variant", "void"}, {"params", json::array()}};
    case K::SShaped:
        return {{"variant", "s_shaped"}, {"params", {mf.a(), mf.b(), mf.c(), mf.d()}}};
    case K::LeftUnbounded:
        return {{"variant", "left_unbounded"}, {"params", {mf.a(), mf.b()}}};
    case K::RightUnbounded:
        return {{"variant", "right_unbounded"}, {"params", {mf.a(), mf.b()}}};
    }
    throw std::logic_error("membershipToJson: unreachable");
}

MembershipFunction membershipFromJson(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    const auto& p = j.at("params");
    if (variant == "void") return MembershipFunction::voidSet();
    if (variant == "s_shaped")
        return MembershipFunction::sShaped(p.at(0), p.at(1), p.at(2), p.at(3));
    if (variant == "left_unbounded") return MembershipFunction::leftUnbounded(p.at(0), p.at(1));
    if (variant == "right_unbounded")
        return MembershipFunction::rightUnbounded(p.at(0), p.at(1));
    throw std::invalid_argument("unknown membership variant: " + variant);
}

} // namespace

double FrozenModel::predict(std::span<const double> x) const {
    const auto z = standardizer_.standardize(x);
    if (auto p = rules_.predict(z)) return *p;
    return rules_.meanOutput(z);
}

std::string dumpModelJson(const Learner& learner) {
    json out;
    out["dimension"] = learner.rules().dimension();
    out["criterion"] = toString(learner.config().criterion);
    out["strategy"] = toString(learner.config().strategy);

    json rules = json::array();
    learner.rules().forEach([&](RuleId, const Rule& r) {
        json jr;
        json ants = json::array();
        for (const auto& mf : r.antecedents) ants.push_back(membershipToJson(mf));
        jr["antecedents"] = std::move(ants);
        jr["consequent"] = r.consequent;
        rules.push_back(std::move(jr));
    });
    out["rules"] = std::move(rules);

    json feats = json::array();
    const auto& st = learner.standardizer();
    for (std::size_t j = 0; j < st.dimension(); ++j) {
        const auto& s = st.featureStats(j);
        feats.push_back({{"n", s.n}, {"mean", s.mean}, {"m2", s.m2}});
    }
    out["standardizer"] = {{"features", std::move(feats)}};
    return out.dump(2);
}

void dumpModelJsonFile(const Learner& learner, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open model file: " + path);
    out << dumpModelJson(learner) << '\n';
}

FrozenModel loadModelJson(const std::string& text) {
    const json in = json::parse(text);
    const std::size_t d = in.at("dimension").get<std::size_t>();

    RuleSet rules(d);
    const RuleId placeholder = *rules.defaultRuleId();
    for (const auto& jr : in.at("rules")) {
        Rule r;
        for (const auto& ja : jr.at("antecedents")) r.antecedents.push_back(membershipFromJson(ja));
        r.consequent = jr.at("consequent").get<std::vector<double>>();
        rules.add(std::move(r));
    }
    if (rules.size() < 2) throw std::invalid_argument("model dump holds no rules");
    rules.remove(placeholder);
    rules.refreshDefaultId();

    OnlineStandardizer st(d);
    const auto& feats = in.at("standardizer").at("features");
    for (std::size_t j = 0; j < d; ++j) {
        auto& s = st.featureStats(j);
        s.n = feats.at(j).at("n").get<std::uint64_t>();
        s.mean = feats.at(j).at("mean").get<double>();
        s.m2 = feats.at(j).at("m2").get<double>();
    }
    return {std::move(rules), std::move(st)};
}

FrozenModel loadModelJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return loadModelJson(text);
}

} // namespace tsk
