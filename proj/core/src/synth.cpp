#include "tskstream/synth.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tsk {

namespace {

using Rng = std::mt19937_64;

class GeneratedSource final : public StreamSource {
public:
    using RowFn = std::function<Instance(Rng&, std::uint64_t)>;

    GeneratedSource(std::size_t d, std::uint64_t n, std::uint64_t seed, RowFn fn)
        : n_(n), rng_(seed), fn_(std::move(fn)) {
        for (std::size_t j = 1; j <= d; ++j) features_.push_back("x" + std::to_string(j));
    }

    const std::vector<std::string>& featureNames() const override { return features_; }
    const std::string& targetName() const override { return target_; }

    std::optional<Instance> next() override {
        if (i_ >= n_) return std::nullopt;
        return fn_(rng_, i_++);
    }

private:
    std::uint64_t n_;
    std::uint64_t i_ = 0;
    Rng rng_;
    RowFn fn_;
    std::vector<std::string> features_;
    std::string target_ = "y";
};

double driftOffset(const std::vector<DriftPoint>& drifts, std::uint64_t i) {
    double off = 0.0;
    for (const auto& dp : drifts) {
        if (i < dp.index) break;
        if (dp.kind == DriftPoint::Kind::Abrupt) {
            off += dp.magnitude;
        } else {
            const double t =
                std::min(1.0, static_cast<double>(i - dp.index) / 1000.0);
            off += t * dp.magnitude;
        }
    }
    return off;
}

std::unique_ptr<StreamSource> makePiecewiseLinear(const DriftStreamConfig& cfg) {
    Rng init(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> wDist(-2.0, 2.0);
    std::vector<double> w(cfg.d + 1);
    for (auto& v : w) v = wDist(init);

    auto fn = [cfg, w](Rng& rng, std::uint64_t i) {
        std::uniform_real_distribution<double> xDist(-1.0, 1.0);
        std::normal_distribution<double> nDist(0.0, 1.0);
        Instance inst;
        inst.x.resize(cfg.d);
        double y = w[0];
        for (std::size_t j = 0; j < cfg.d; ++j) {
            inst.x[j] = xDist(rng);
            y += w[j + 1] * inst.x[j];
        }
        inst.y = y + driftOffset(cfg.drifts, i) + cfg.noise * nDist(rng);
        return inst;
    };
    return std::make_unique<GeneratedSource>(cfg.d, cfg.n, cfg.seed, std::move(fn));
}

std::unique_ptr<StreamSource> makeFriedmanLike(const DriftStreamConfig& cfg) {
    if (cfg.d < 5)
        throw std::invalid_argument("friedman-like generator needs d >= 5");
    auto fn = [cfg](Rng& rng, std::uint64_t i) {
        std::uniform_real_distribution<double> xDist(0.0, 1.0);
        std::normal_distribution<double> nDist(0.0, 1.0);
        Instance inst;
        inst.x.resize(cfg.d);
        for (auto& v : inst.x) v = xDist(rng);
        inst.y = 10.0 * std::sin(std::numbers::pi * inst.x[0] * inst.x[1]) +
                 20.0 * (inst.x[2] - 0.5) * (inst.x[2] - 0.5) + 10.0 * inst.x[3] +
                 5.0 * inst.x[4] + driftOffset(cfg.drifts, i) + cfg.noise * nDist(rng);
        return inst;
    };
    return std::make_unique<GeneratedSource>(cfg.d, cfg.n, cfg.seed, std::move(fn));
}

// 2dplanes (Breiman et al.): x1 in {-1,1}, x2..x10 in {-1,0,1},
// two axis-aligned hyperplanes selected by x1, unit noise.
Instance plane2dRow(Rng& rng, std::uint64_t) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> tri(-1, 1);
    std::normal_distribution<double> nDist(0.0, 1.0);
    Instance inst;
    inst.x.resize(10);
    inst.x[0] = coin(rng) ? 1.0 : -1.0;
    for (std::size_t j = 1; j < 10; ++j) inst.x[j] = static_cast<double>(tri(rng));
    if (inst.x[0] > 0)
        inst.y = 3.0 + 3.0 * inst.x[1] + 2.0 * inst.x[2] + inst.x[3];
    else
        inst.y = -3.0 + 3.0 * inst.x[4] + 2.0 * inst.x[5] + inst.x[6];
    inst.y += nDist(rng);
    return inst;
}

// fried (Friedman #1): five informative uniform features, five noise ones.
Instance friedRow(Rng& rng, std::uint64_t) {
    std::uniform_real_distribution<double> xDist(0.0, 1.0);
    std::normal_distribution<double> nDist(0.0, 1.0);
    Instance inst;
    inst.x.resize(10);
    for (auto& v : inst.x) v = xDist(rng);
    inst.y = 10.0 * std::sin(std::numbers::pi * inst.x[0] * inst.x[1]) +
             20.0 * (inst.x[2] - 0.5) * (inst.x[2] - 0.5) + 10.0 * inst.x[3] +
             5.0 * inst.x[4] + nDist(rng);
    return inst;
}

// kin8nm-style: forward kinematics of an eight-link planar arm; target is
// the end-effector distance to a fixed point, medium noise.
Instance kin8nmRow(Rng& rng, std::uint64_t) {
    std::uniform_real_distribution<double> aDist(-1.0, 1.0);
    std::normal_distribution<double> nDist(0.0, 1.0);
    Instance inst;
    inst.x.resize(8);
    double phi = 0.0, px = 0.0, py = 0.0;
    for (std::size_t j = 0; j < 8; ++j) {
        inst.x[j] = 0.25 * std::numbers::pi * aDist(rng);
        phi += inst.x[j];
        px += 0.125 * std::cos(phi);
        py += 0.125 * std::sin(phi);
    }
    const double dx = px - 0.4, dy = py - 0.4;
    inst.y = std::sqrt(dx * dx + dy * dy) + 0.16 * nDist(rng);
    return inst;
}

// bank8fm-style: queue pressure vs. service capacity mapped to a rejection
// fraction, moderate noise.
Instance bank8fmRow(Rng& rng, std::uint64_t) {
    std::uniform_real_distribution<double> uDist(0.0, 1.0);
    std::normal_distribution<double> nDist(0.0, 1.0);
    Instance inst;
    inst.x.resize(8);
    for (auto& v : inst.x) v = uDist(rng);
    const double load = 0.6 * inst.x[0] + 0.4 * inst.x[1] + 0.25 * inst.x[2] * inst.x[3];
    const double capacity = 0.5 * inst.x[4] + 0.3 * inst.x[5];
    const double pressure = load - capacity;
    inst.y = 0.12 + 0.22 * pressure + 0.10 * std::tanh(4.0 * pressure) +
             0.04 * inst.x[6] - 0.03 * inst.x[7] + 0.03 * nDist(rng);
    return inst;
}

// puma8nh-style: torque-driven angular acceleration of a robot arm link,
// trigonometric couplings, high noise.
Instance puma8nhRow(Rng& rng, std::uint64_t) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2.0,
                                                 std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> vel(-2.0, 2.0);
    std::uniform_real_distribution<double> torque(-4.0, 4.0);
    std::normal_distribution<double> nDist(0.0, 1.0);
    Instance inst;
    inst.x.resize(8);
    inst.x[0] = angle(rng);
    inst.x[1] = angle(rng);
    inst.x[2] = angle(rng);
    inst.x[3] = vel(rng);
    inst.x[4] = vel(rng);
    inst.x[5] = vel(rng);
    inst.x[6] = torque(rng);
    inst.x[7] = torque(rng);
    inst.y = 1.1 * inst.x[6] - 0.6 * inst.x[7] * std::cos(inst.x[1]) +
             0.9 * inst.x[3] * inst.x[4] * std::sin(inst.x[2]) -
             0.4 * inst.x[5] * std::abs(inst.x[5]) +
             2.2 * (inst.x[6] > 0.0 ? 1.0 : -1.0) + 3.0 * nDist(rng);
    return inst;
}

} // namespace

void DriftStreamConfig::validate() const {
    if (d == 0) throw std::invalid_argument("drift stream: d must be positive");
    if (n == 0) throw std::invalid_argument("drift stream: n must be positive");
    if (noise < 0.0) throw std::invalid_argument("drift stream: noise must be >= 0");
    std::uint64_t prev = 0;
    bool first = true;
    for (const auto& dp : drifts) {
        if (dp.index >= n) throw std::invalid_argument("drift index out of range");
        if (!first && dp.index <= prev)
            throw std::invalid_argument("drift indices must be strictly increasing");
        prev = dp.index;
        first = false;
    }
}

std::unique_ptr<StreamSource> genDriftStream(const DriftStreamConfig& cfg) {
    cfg.validate();
    if (cfg.generator == "piecewise-linear") return makePiecewiseLinear(cfg);
    if (cfg.generator == "friedman-like") return makeFriedmanLike(cfg);
    throw std::invalid_argument("unknown drift generator '" + cfg.generator + "'");
}

std::unique_ptr<StreamSource> genBenchmark(const std::string& name, std::uint64_t n,
                                           std::uint64_t seed) {
    if (name == "plane2d")
        return std::make_unique<GeneratedSource>(10, n, seed, plane2dRow);
    if (name == "fried") return std::make_unique<GeneratedSource>(10, n, seed, friedRow);
    if (name == "kin8nm") return std::make_unique<GeneratedSource>(8, n, seed, kin8nmRow);
    if (name == "bank8fm") return std::make_unique<GeneratedSource>(8, n, seed, bank8fmRow);
    if (name == "puma8nh") return std::make_unique<GeneratedSource>(8, n, seed, puma8nhRow);
    throw std::invalid_argument("unknown benchmark generator '" + name + "'");
}

namespace {

std::vector<std::string> splitOn(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

DriftPoint parseDriftPoint(const std::string& s) {
    const auto parts = splitOn(s, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("drift point must be index:kind:magnitude, got '" + s + "'");
    DriftPoint dp;
    dp.index = std::stoull(parts[0]);
    if (parts[1] == "abrupt")
        dp.kind = DriftPoint::Kind::Abrupt;
    else if (parts[1] == "gradual")
        dp.kind = DriftPoint::Kind::Gradual;
    else
        throw std::invalid_argument("drift kind must be abrupt|gradual");
    dp.magnitude = std::stod(parts[2]);
    return dp;
}

} // namespace

std::unique_ptr<StreamSource> openSynthetic(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::uint64_t n = 10000, seed = 1;
    DriftStreamConfig cfg;
    cfg.generator = name;

    if (colon != std::string::npos && colon + 1 < spec.size()) {
        for (const auto& kv : splitOn(spec.substr(colon + 1), ',')) {
            if (kv.empty()) continue;
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("synthetic spec entries must be key=value, got '" +
                                            kv + "'");
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            if (key == "n") {
                n = std::stoull(value);
                cfg.n = n;
            } else if (key == "seed") {
                seed = std::stoull(value);
                cfg.seed = seed;
            } else if (key == "d") {
                cfg.d = std::stoul(value);
            } else if (key == "noise") {
                cfg.noise = std::stod(value);
            } else if (key == "drift") {
                for (const auto& p : splitOn(value, ';')) cfg.drifts.push_back(parseDriftPoint(p));
            } else {
                throw std::invalid_argument("unknown synthetic spec key '" + key + "'");
            }
        }
    }

    if (name == "piecewise-linear" || name == "friedman-like") return genDriftStream(cfg);
    return genBenchmark(name, n, seed);
}

} // namespace tsk
