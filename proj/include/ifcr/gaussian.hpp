#pragma once

#include <string>

#include <Eigen/Dense>

#include "ifcr/model.hpp"

namespace ifcr::gaussian {

/// C(s) = log(1 + s) in the configured rate base. Throws NEGATIVE_SNR for s < 0.
double capacity_fn(double s);

/// Rewrites a physically-parameterized channel into standard form: unit
/// powers, unit noise, real nonnegative direct/relay gains. Receivers rotate
/// by the relay-link phase and transmitters pre-rotate so that their direct
/// link comes out real; the cross gains absorb the leftover phases:
///   |h11| = sqrt(p1)|g11|/s1        h12 = sqrt(p2) g12 e^{j(ang g2c - ang g22 - ang g1c)}/s1
///   |h22| = sqrt(p2)|g22|/s2        h21 = sqrt(p1) g21 e^{j(ang g1c - ang g11 - ang g2c)}/s2
///   |h1c| = sqrt(pc)|g1c|/s1, |h2c| = sqrt(pc)|g2c|/s2,  s_k = sqrt(noiseVar_k)
/// The map is an exact channel equivalence: mutual informations computed on
/// either side with matched input covariances agree.
GaussianChannel standard_form(const RawGaussianChannel& raw);

/// Unit-power input transformation used by standard_form: maps standard-form
/// inputs (x1, x2, xc) to raw inputs. Exposed so the raw channel can be
/// evaluated under the covariance matching a given standard-form input.
Eigen::Matrix3cd input_transform(const RawGaussianChannel& raw);

/// Covariance of (x1, x2, xc) for unit-power inputs with xc = b1c x1 + b2c x2.
Eigen::Matrix3cd input_covariance(const BetaSplit& beta);

/// 3x3 complex PSD covariance over the inputs (x1, x2, xc) with unit-power
/// diagonal, as produced by a relay amplitude split.
struct InputCovariance {
    Eigen::Matrix3cd m;

    static InputCovariance from_beta(const BetaSplit& beta);
};

InputCovariance validate(const InputCovariance& cov);

/// Mutual informations the closed forms are checked against.
enum class MiExpr {
    y1_x1xc_given_x2,  // I(Y1; X1, Xc | X2)
    y2_x2xc_given_x1,  // I(Y2; X2, Xc | X1)
    y1_all,            // I(Y1; X1, X2, Xc)
    y2_all,            // I(Y2; X1, X2, Xc)
    y1_x2xc_given_x1,  // I(Y1; X2, Xc | X1)
};

/// Log-determinant evaluation of the requested mutual information for jointly
/// Gaussian unit-power inputs with xc = b1c x1 + b2c x2. Independent of the
/// closed-form pentagon expressions.
double mi_oracle(const GaussianChannel& ch, const BetaSplit& beta, MiExpr expr);

/// Same computation for an arbitrary 2x3 gain matrix (rows = receivers,
/// columns = x1, x2, xc), noise variances and input covariance. Conditional
/// variances are taken through eigenvalue pseudo-inverses so singular input
/// covariances (deterministic xc) are handled exactly.
double mi_general(const Eigen::Matrix<cplx, 2, 3>& gains, double noiseVar1, double noiseVar2,
                  const Eigen::Matrix3cd& cov, MiExpr expr);

/// Closed-form outer-bound pentagon at one relay split on the unit sphere:
///   R1 <= C(| h11 + h1c b1c |^2)
///   R2 <= C(| h22 + h2c b2c |^2)
///   R1 + R2 <= C(| h11 + h1c b1c |^2 + | h12 + h1c b2c |^2)
/// Requires |b1c|^2 + |b2c|^2 = 1 within 1e-12.
Pentagon outer_pentagon(const GaussianChannel& ch, const BetaSplit& beta);

/// Sampling density for the relay-split sphere: b1c = sin(t), b2c =
/// cos(t) e^{j phi2}. Aligned b1c dominates every pentagon bound, so only the
/// b2c phase is swept, and only when h12 carries a phase; for real nonnegative
/// h12 the whole family collapses to the t axis.
struct BetaGrid {
    int tCount = 64;
    int phiCount = 64;
};

/// Union of outer pentagons over the sampled relay-split sphere.
RegionFamily outer_region(const GaussianChannel& ch, const BetaGrid& grid);

/// Result of one interference-regime condition check.
struct ConditionCheck {
    bool holds = false;
    bool boundary = false;  // margin within (-tol, tol]
    double margin = 0.0;    // max of the condition objective; holds iff <= tol
    BetaSplit worstBeta;    // attains the max
};

/// Strong-interference condition: the non-intended receiver must see the
/// (x2, xc) coalition at least as well as receiver 2 for every relay split.
///   margin = max_{|b| <= 1}  | h22 + h2c b |^2 - | h12 + h1c b |^2
/// Grid search over (|b|, ang b) with golden-section refinement.
ConditionCheck check_strong(const GaussianChannel& ch, double tol = 1e-9, int gridN = 64);

/// Very-strong-interference condition, checked in addition to check_strong:
///   margin = max_{|b1c|^2+|b2c|^2 = 1}  | h11 + h1c b1c |^2 + | h12 + h1c b2c |^2
///                                     - | h21 + h2c b1c |^2 - | h22 + h2c b2c |^2
ConditionCheck check_very_strong(const GaussianChannel& ch, double tol = 1e-9, int gridN = 64);

/// Closed forms for symmetric relay links (h1c = h2c) and real nonnegative
/// cross gains: strongMargin = h22 - |h12|; veryStrongMargin is the exact
/// maximum of the very-strong objective. Throws NOT_SYMMETRIC outside the
/// precondition.
struct SymmetricMargins {
    double strongMargin = 0.0;
    double veryStrongMargin = 0.0;
};

SymmetricMargins symmetric_margins(const GaussianChannel& ch);

/// Applies both condition checks to the channel as seen by the given user
/// (user 2 swaps roles first). VERY_STRONG requires both conditions.
RegimeLabel classify(const GaussianChannel& ch, int user, double tol = 1e-9);

/// Sweep specification for a regime map over the (h12, h21) plane. The fixed
/// gains come from `base`; its cross gains are overwritten per cell.
struct RegimeMapSpec {
    GaussianChannel base;
    double h12Lo = 0.0, h12Hi = 10.0;
    int h12Count = 2;
    double h21Lo = 0.0, h21Hi = 10.0;
    int h21Count = 2;
    int user = 1;
};

struct RegimeMap {
    RegimeMapSpec spec;
    std::vector<RegimeLabel> cells;  // row-major: [h12 index][h21 index]

    const RegimeLabel& at(int i, int j) const { return cells[static_cast<std::size_t>(i) * spec.h21Count + j]; }
};

/// Per-cell classification; cells are independent and evaluated with `jobs`
/// worker threads into preallocated slots, so the result does not depend on
/// the parallelism degree.
RegimeMap regime_map(const RegimeMapSpec& spec, double tol = 1e-9, int jobs = 1);

/// CSV "h12,h21,label,strongMargin,veryStrongMargin" with 12 significant digits.
std::string to_csv(const RegimeMap& map);

}  // namespace ifcr::gaussian
