#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ifcr/model.hpp"

namespace ifcr::discrete {

// ---------------------------------------------------------------------------
// Dense joint distributions
// ---------------------------------------------------------------------------

/// Dense probability tensor over named finite variables, row-major with the
/// first name slowest. Axis names are free-form; the channel evaluators use
/// Q, U1, U2, X1, X2, Xc, Y1, Y2.
struct JointPmf {
    std::vector<std::string> names;
    std::vector<int> sizes;
    std::vector<double> p;

    int axis(const std::string& name) const;  // throws VARIABLE_NOT_PRESENT
};

JointPmf validate(const JointPmf& j);

/// Entropy of the marginal over the named variables, in the configured base.
double entropy(const JointPmf& j, const std::vector<std::string>& vars);

/// I(left; right | given). The three sets must be disjoint; empty left or
/// right gives 0. Clamped at 0 from below (round-off only).
double mutual_information(const JointPmf& j, const std::vector<std::string>& left,
                          const std::vector<std::string>& right,
                          const std::vector<std::string>& given);

/// Joint over (X1, X2, Xc, Y1, Y2):
///   p = p1(x1) p2(x2) pc(xc|x1,x2) t(y1,y2|x1,x2,xc).
JointPmf joint_from(const DiscreteChannel& ch, const ProductInputDistribution& d);

// ---------------------------------------------------------------------------
// Region evaluators (per fixed input distribution)
// ---------------------------------------------------------------------------

/// Strong-interference outer pentagon at one input distribution:
///   R1 <= I(Y1; X1, Xc | X2), R2 <= I(Y2; X2, Xc | X1), R1+R2 <= I(Y1; X1, X2, Xc).
Pentagon strong_outer_at(const DiscreteChannel& ch, const ProductInputDistribution& d);

/// Superposition inner bound with the common messages set to the inputs
/// themselves:
///   R1 <= I(Y1; X1 | X2), R2 <= I(Y2; X2 | X1),
///   R1+R2 <= I(Y1; X1, X2) and R1+R2 <= I(Y2; X1, X2).
Pentagon inner_region_at(const DiscreteChannel& ch, const ProductInputDistribution& d);

/// The nine general outer-bound values evaluated on the joint over
/// (Q, U1, U2, X1, X2, Xc, Y1, Y2). sumCross follows the derivation
/// (I(Y1;U2|Q) + I(Y2;U1|Q)); the as-printed variant swapping the auxiliaries
/// is reported alongside it.
struct GeneralOuterBounds {
    double r1Direct = 0.0;         // I(Y1; X1, Xc | X2, Q)
    double r1Common = 0.0;         // I(Y1; U2, X1 | Q)
    double r2Direct = 0.0;         // I(Y2; X2, Xc | X1, Q)
    double r2Common = 0.0;         // I(Y2; U1, X2 | Q)
    double sumSplit1 = 0.0;        // I(Y1; X1, Xc | U1, X2, Q) + I(Y2; U1, X2 | Q)
    double sumSplit2 = 0.0;        // I(Y2; X2, Xc | U2, X1, Q) + I(Y1; U2, X1 | Q)
    double sumCross = 0.0;         // I(Y1; U2 | Q) + I(Y2; U1 | Q)
    double sumCrossPrinted = 0.0;  // I(Y1; U1 | Q) + I(Y2; U2 | Q)
    double sumGenie1 = 0.0;        // I(Y1; X1, X2, Xc | Q) + I(Y2; X2, Xc | Y1, X1, Q)
    double sumGenie2 = 0.0;        // I(Y2; X1, X2, Xc | Q) + I(Y1; X1, Xc | Y2, X2, Q)

    Pentagon pentagon() const;
};

GeneralOuterBounds general_outer_at(const DiscreteChannel& ch, const AuxiliaryDistribution& d);

/// Joint over (Q, U1, U2, X1, X2, Xc, Y1, Y2) for the general outer bound.
JointPmf joint_from_aux(const DiscreteChannel& ch, const AuxiliaryDistribution& d);

// ---------------------------------------------------------------------------
// Condition sampling and proof-machinery checks
// ---------------------------------------------------------------------------

/// Minimum observed margins of the two regime conditions over sampled product
/// input distributions. Nonnegative minima are evidence, never proof, that the
/// conditions hold for all distributions.
struct ConditionReport {
    double eq5Min = 0.0;   // min of I(Y1; X2, Xc | X1) - I(Y2; X2, Xc | X1)
    double eq10Min = 0.0;  // min of I(Y2; X1, X2, Xc) - I(Y1; X1, X2, Xc)
    ProductInputDistribution eq5Witness;
    ProductInputDistribution eq10Witness;
    int nSamples = 0;
    std::uint64_t seed = 0;
};

/// Draws nSamples product distributions (uniform and point-mass corner cases
/// first, then symmetric-Dirichlet) and reports the minimum condition margins
/// with the distributions attaining them. Reproducible from the seed.
ConditionReport check_conditions_sampled(const DiscreteChannel& ch, int nSamples,
                                         std::uint64_t seed);

/// Residual the genie-aided sum bound adds on top of the plain sum bound:
///   residual = I(Y2; X2, Xc | X1, Y1)
/// and the observed gap between the genie-aided sum bound (evaluated through
/// the general outer-bound path with trivial auxiliaries) and the strong-
/// interference sum bound. Both vanish when the strong condition holds.
struct GenieResidual {
    double residual = 0.0;
    double sumGap = 0.0;
};

GenieResidual genie_residual_at(const DiscreteChannel& ch, const ProductInputDistribution& d);

/// Noiseless reference channels for capacity-equality testing.
///   VERY_STRONG: y1 = (x2, xc), y2 = (x1, x2, xc) — both conditions hold for
///                every input distribution.
///   STRONG_ONLY: y1 = (x1, x2, xc), y2 = (x1, x2) — the first condition holds
///                but the second fails for any nondegenerate relay input.
enum class FixtureKind { VERY_STRONG, STRONG_ONLY };

FixtureKind fixture_from_name(const std::string& name);  // throws UNKNOWN_KIND
const char* fixture_name(FixtureKind kind) noexcept;

DiscreteChannel degraded_fixture(FixtureKind kind, int n1 = 2, int n2 = 2, int nc = 2);

/// Residual of the telescoping sum identity
///   sum_i I(Y1_i; Y2_{i+1..N} | Y1_{1..i-1}) = sum_i I(Y2_i; Y1_{1..i-1} | Y2_{i+1..N})
/// on a joint whose first N axes are the Y1 sequence and last N the Y2
/// sequence. Exactly zero for every joint; computed residual is round-off.
double csiszar_sum_residual(const JointPmf& j);

// ---------------------------------------------------------------------------
// Seed-reproducible samplers (portable: raw 53-bit uniforms, no libstdc++
// distribution objects)
// ---------------------------------------------------------------------------

double uniform01(std::mt19937_64& rng);

/// Dirichlet(1, ..., 1) vector of the given length (uniform on the simplex).
std::vector<double> sample_simplex(int n, std::mt19937_64& rng);

ProductInputDistribution sample_product(int n1, int n2, int nc, std::mt19937_64& rng);

/// Random p1, p2 with a uniformly drawn deterministic map xc = f(x1, x2).
ProductInputDistribution sample_product_deterministic_xc(int n1, int n2, int nc,
                                                         std::mt19937_64& rng);

}  // namespace ifcr::discrete
