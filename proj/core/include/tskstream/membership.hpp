#ifndef TSKSTREAM_MEMBERSHIP_HPP
#define TSKSTREAM_MEMBERSHIP_HPP

#include <limits>
#include <optional>
#include <utility>

namespace tsk {

/// Piecewise-quadratic membership function with S-shaped transitions.
///
/// Four variants:
///   Void           -- no constraint, degree 1 everywhere
///   SShaped        -- support [a,d], core [b,c], quadratic ramps on both sides
///   LeftUnbounded  -- degree 1 on (-inf,a], ramps down to 0 at b
///   RightUnbounded -- degree 0 below a, ramps up to 1 at b
///
/// Values are immutable once constructed. Evaluation is total and always
/// lands in [0,1]; the quadratic half-ramps join continuously with value
/// 0.5 at the ramp midpoint.
class MembershipFunction {
public:
    enum class Kind { Void, SShaped, LeftUnbounded, RightUnbounded };

    /// The all-covering void constraint.
    static MembershipFunction voidSet() noexcept;
    /// Requires a <= b <= c <= d; throws std::invalid_argument otherwise.
    static MembershipFunction sShaped(double a, double b, double c, double d);
    /// Requires a <= b.
    static MembershipFunction leftUnbounded(double a, double b);
    /// Requires a <= b.
    static MembershipFunction rightUnbounded(double a, double b);

    MembershipFunction() noexcept : MembershipFunction(voidSet()) {}

    Kind kind() const noexcept { return kind_; }
    bool isVoid() const noexcept { return kind_ == Kind::Void; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }

    /// Membership degree of x, always in [0,1].
    double eval(double x) const noexcept;

    /// Lower end of the support (membership > 0), -inf when unbounded.
    double supportLo() const noexcept;
    /// Upper end of the support, +inf when unbounded.
    double supportHi() const noexcept;
    /// Lower end of the core (membership == 1), -inf when unbounded.
    double coreLo() const noexcept;
    double coreHi() const noexcept;

    /// Clamp a splitting value into the core, where a split is well defined.
    double clampToCore(double q) const noexcept;

    bool operator==(const MembershipFunction& o) const noexcept = default;

private:
    MembershipFunction(Kind k, double a, double b, double c, double d) noexcept
        : kind_(k), a_(a), b_(b), c_(c), d_(d) {}

    Kind kind_;
    double a_, b_, c_, d_;
};

/// Bisect a membership function at splitting value q into a lower and an
/// upper child overlapping on [q-rho2, q+rho2].
///
/// Requires 0 < rho1 < rho2. q is clamped into the core; the rhos are
/// shrunk (preserving their ratio, with a small floor) when the overlap
/// window would leave a finite support. The children keep the parent's
/// outer ramps verbatim, so a later union reconstructs the parent exactly.
std::pair<MembershipFunction, MembershipFunction>
splitMembership(const MembershipFunction& mf, double q, double rho1, double rho2);

/// Inverse of splitMembership: recombine two sibling sets into the parent.
///
/// Accepts the two children in either order. Returns nullopt when the
/// arguments do not face each other across a common splitting value
/// (NotSiblings). On success the parent parameters are taken verbatim
/// from the children's outer ramps.
std::optional<MembershipFunction>
unionMembership(const MembershipFunction& p, const MembershipFunction& q) noexcept;

} // namespace tsk

#endif
