#ifndef TSKSTREAM_INDUCTION_HPP
#define TSKSTREAM_INDUCTION_HPP

namespace tsk {

/// Hoeffding expansion gate: accept when the quality ratio of the
/// runner-up to the winner stays below 1 - eps, or when eps itself has
/// shrunk under the tie-breaking constant.
inline bool hoeffdingGate(double ratio, double eps, double tau) noexcept {
    return (ratio + eps < 1.0) || (eps < tau);
}

/// Signed splitting-value update of the error-reduction heuristic. The
/// value moves only on an inconsistency, i.e. when the child covering the
/// example more strongly also errs more; the signed difference then
/// shifts q away from the worse child.
inline double shiftSplitValue(double q, double eta, double psi, double lowerDegree,
                              double upperDegree, double lowerSqError,
                              double upperSqError) noexcept {
    const bool lowerWorse = lowerDegree > upperDegree && lowerSqError > upperSqError;
    const bool upperWorse = lowerDegree < upperDegree && lowerSqError < upperSqError;
    if (lowerWorse || upperWorse) return q - eta * psi * (lowerSqError - upperSqError);
    return q;
}

} // namespace tsk

#endif
