#include "tskstream/membership.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rising half of the S transition on [a,b]: 0 at a, 0.5 at the midpoint, 1 at b.
double risingRamp(double a, double b, double x) noexcept {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    const double mid = 0.5 * (a + b);
    if (x < mid) {
        const double t = (x - a) / (b - a);
        return 2.0 * t * t;
    }
    const double t = (b - x) / (b - a);
    return 1.0 - 2.0 * t * t;
}

// Minimum half-width of the split overlap, relative to the local scale.
double rhoFloor(double q) noexcept {
    return 1e-6 * std::max(1.0, std::abs(q));
}

} // namespace

MembershipFunction MembershipFunction::voidSet() noexcept {
    return {Kind::Void, 0.0, 0.0, 0.0, 0.0};
}

MembershipFunction MembershipFunction::sShaped(double a, double b, double c, double d) {
    if (!(a <= b && b <= c && c <= d))
        throw std::invalid_argument("sShaped: parameters must satisfy a <= b <= c <= d");
    return {Kind::SShaped, a, b, c, d};
}

MembershipFunction MembershipFunction::leftUnbounded(double a, double b) {
    if (!(a <= b))
        throw std::invalid_argument("leftUnbounded: parameters must satisfy a <= b");
    return {Kind::LeftUnbounded, a, b, 0.0, 0.0};
}

MembershipFunction MembershipFunction::rightUnbounded(double a, double b) {
    if (!(a <= b))
        throw std::invalid_argument("rightUnbounded: parameters must satisfy a <= b");
    return {Kind::RightUnbounded, a, b, 0.0, 0.0};
}

double MembershipFunction::eval(double x) const noexcept {
    switch (kind_) {
    case Kind::Void:
        return 1.0;
    case Kind::LeftUnbounded:
        // 1 on (-inf,a], falling ramp on [a,b], 0 past b.
        return x <= a_ ? 1.0 : 1.0 - risingRamp(a_, b_, x);
    case Kind::RightUnbounded:
        return risingRamp(a_, b_, x);
    case Kind::SShaped:
        if (x < a_ || x > d_) return 0.0;
        if (x >= b_ && x <= c_) return 1.0;
        if (x < b_) return risingRamp(a_, b_, x);
        return 1.0 - risingRamp(c_, d_, x);
    }
    return 0.0;
}

double MembershipFunction::supportLo() const noexcept {
    switch (kind_) {
    case Kind::Void:
    case Kind::LeftUnbounded: return -kInf;
    case Kind::RightUnbounded:
    case Kind::SShaped: return a_;
    }
    return -kInf;
}

double MembershipFunction::supportHi() const noexcept {
    switch (kind_) {
    case Kind::Void:
    case Kind::RightUnbounded: return kInf;
    case Kind::LeftUnbounded: return b_;
    case Kind::SShaped: return d_;
    }
    return kInf;
}

double MembershipFunction::coreLo() const noexcept {
    switch (kind_) {
    case Kind::Void:
    case Kind::LeftUnbounded: return -kInf;
    case Kind::RightUnbounded: return b_;
    case Kind::SShaped: return b_;
    }
    return -kInf;
}

double MembershipFunction::coreHi() const noexcept {
    switch (kind_) {
    case Kind::Void:
    case Kind::RightUnbounded: return kInf;
    case Kind::LeftUnbounded: return a_;
    case Kind::SShaped: return c_;
    }
    return kInf;
}

double MembershipFunction::clampToCore(double q) const noexcept {
    return std::min(std::max(q, coreLo()), coreHi());
}

std::pair<MembershipFunction, MembershipFunction>
splitMembership(const MembershipFunction& mf, double q, double rho1, double rho2) {
    if (!(rho1 > 0.0 && rho1 < rho2))
        throw std::invalid_argument("splitMembership: need 0 < rho1 < rho2");
    if (!std::isfinite(q))
        throw std::invalid_argument("splitMembership: q must be finite");

    q = mf.clampToCore(q);

    // Keep the overlap window inside the finite part of the support,
    // shrinking both rhos proportionally but never below the local floor.
    double room = kInf;
    const double hi = mf.supportHi();
    const double lo = mf.supportLo();
    if (std::isfinite(hi)) room = std::min(room, hi - q);
    if (std::isfinite(lo)) room = std::min(room, q - lo);
    if (room < rho2) {
        const double scale = std::max(room, rhoFloor(q)) / rho2;
        rho1 *= scale;
        rho2 *= scale;
    }

    const double upLo = q + rho1, upHi = q + rho2;
    const double dnLo = q - rho2, dnHi = q - rho1;

    using K = MembershipFunction::Kind;
    switch (mf.kind()) {
    case K::Void:
        return {MembershipFunction::leftUnbounded(upLo, upHi),
                MembershipFunction::rightUnbounded(dnLo, dnHi)};
    case K::LeftUnbounded:
        return {MembershipFunction::leftUnbounded(upLo, upHi),
                MembershipFunction::sShaped(dnLo, dnHi, mf.a(), mf.b())};
    case K::RightUnbounded:
        return {MembershipFunction::sShaped(mf.a(), mf.b(), upLo, upHi),
                MembershipFunction::rightUnbounded(dnLo, dnHi)};
    case K::SShaped:
        return {MembershipFunction::sShaped(mf.a(), mf.b(), upLo, upHi),
                MembershipFunction::sShaped(dnLo, dnHi, mf.c(), mf.d())};
    }
    throw std::logic_error("splitMembership: unreachable");
}

namespace {

struct Ramp {
    double lo, hi;
};

// Falling ramp of the lower sibling (membership 1 before lo, 0 after hi).
std::optional<Ramp> fallingEdge(const MembershipFunction& mf) noexcept {
    using K = MembershipFunction::Kind;
    switch (mf.kind()) {
    case K::LeftUnbounded: return Ramp{mf.a(), mf.b()};
    case K::SShaped: return Ramp{mf.c(), mf.d()};
    default: return std::nullopt;
    }
}

// Rising ramp of the upper sibling (membership 0 before lo, 1 after hi).
std::optional<Ramp> risingEdge(const MembershipFunction& mf) noexcept {
    using K = MembershipFunction::Kind;
    switch (mf.kind()) {
    case K::RightUnbounded:
    case K::SShaped: return Ramp{mf.a(), mf.b()};
    default: return std::nullopt;
    }
}

// The lower child falls on (q+rho1, q+rho2) while the upper child rises
// on (q-rho2, q-rho1); siblings iff the two ramps mirror around one q.
bool rampsMirror(const Ramp& fall, const Ramp& rise) noexcept {
    const double twoQa = fall.lo + rise.hi;   // 2q from the inner pair
    const double twoQb = fall.hi + rise.lo;   // 2q from the outer pair
    const double scale = std::max({1.0, std::abs(fall.lo), std::abs(fall.hi),
                                   std::abs(rise.lo), std::abs(rise.hi)});
    if (std::abs(twoQa - twoQb) > 1e-9 * scale) return false;
    const double rho1 = 0.5 * (fall.lo - rise.hi);
    const double rho2 = 0.5 * (fall.hi - rise.lo);
    return rho1 > 0.0 && rho2 >= rho1;
}

std::optional<MembershipFunction>
joinSiblings(const MembershipFunction& lower, const MembershipFunction& upper) noexcept {
    const auto fall = fallingEdge(lower);
    const auto rise = risingEdge(upper);
    if (!fall || !rise || !rampsMirror(*fall, *rise)) return std::nullopt;

    // A split keeps the overlap window inside the parent's support, so a
    // pairing whose window pokes past the recombined support is the
    // reversed (non-sibling) reading of the same two sets.
    const double q = 0.5 * (fall->lo + rise->hi);
    const double rho2 = 0.5 * (fall->hi - rise->lo);
    const double tol = 2e-6 * std::max(1.0, std::abs(q));

    using K = MembershipFunction::Kind;
    const bool openLeft = lower.kind() == K::LeftUnbounded;
    const bool openRight = upper.kind() == K::RightUnbounded;
    if (!openLeft && q - rho2 < lower.a() - tol) return std::nullopt;
    if (!openRight && q + rho2 > upper.d() + tol) return std::nullopt;

    if (openLeft && openRight) return MembershipFunction::voidSet();
    if (openLeft) return MembershipFunction::leftUnbounded(upper.c(), upper.d());
    if (openRight) return MembershipFunction::rightUnbounded(lower.a(), lower.b());
    // Mirrored ramps alone do not rule out an inverted pair; the
    // recombined quadruple must still be ordered.
    if (!(lower.b() <= upper.c())) return std::nullopt;
    return MembershipFunction::sShaped(lower.a(), lower.b(), upper.c(), upper.d());
}

} // namespace

std::optional<MembershipFunction>
unionMembership(const MembershipFunction& p, const MembershipFunction& q) noexcept {
    if (auto r = joinSiblings(p, q)) return r;
    return joinSiblings(q, p);
}

} // namespace tsk
