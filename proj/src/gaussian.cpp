#include "ifcr/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>
#include <vector>

#include "ifcr/rate_units.hpp"

namespace ifcr::gaussian {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBetaSphereTol = 1e-12;

cplx polar1(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

/// Golden-section maximization of a unimodal (or monotone) function on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double xtol = 1e-10) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

bool real_nonneg(const cplx& z) { return z.imag() == 0.0 && z.real() >= 0.0; }

}  // namespace

double capacity_fn(double s) {
    if (std::isnan(s)) raise(errc::nonfinite, "capacity argument is NaN");
    if (s < 0.0) raise(errc::negative_snr, "capacity argument must be >= 0");
    return rate_base() == RateBase::bits ? std::log2(1.0 + s) : std::log1p(s);
}

GaussianChannel standard_form(const RawGaussianChannel& raw) {
    validate(raw);
    const double s1 = std::sqrt(raw.noiseVar1);
    const double s2 = std::sqrt(raw.noiseVar2);
    const double a11 = std::arg(raw.h11);
    const double a22 = std::arg(raw.h22);
    const double a1c = std::arg(raw.h1c);
    const double a2c = std::arg(raw.h2c);

    GaussianChannel out;
    out.h11 = std::sqrt(raw.p1) * std::abs(raw.h11) / s1;
    out.h22 = std::sqrt(raw.p2) * std::abs(raw.h22) / s2;
    out.h1c = std::sqrt(raw.pc) * std::abs(raw.h1c) / s1;
    out.h2c = std::sqrt(raw.pc) * std::abs(raw.h2c) / s2;
    out.h12 = std::sqrt(raw.p2) / s1 * raw.h12 * polar1(a2c - a22 - a1c);
    out.h21 = std::sqrt(raw.p1) / s2 * raw.h21 * polar1(a1c - a11 - a2c);
    return validate(out);
}

Eigen::Matrix3cd input_transform(const RawGaussianChannel& raw) {
    const double a11 = std::arg(raw.h11);
    const double a22 = std::arg(raw.h22);
    const double a1c = std::arg(raw.h1c);
    const double a2c = std::arg(raw.h2c);
    Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
    t(0, 0) = std::sqrt(raw.p1) * polar1(a1c - a11);
    t(1, 1) = std::sqrt(raw.p2) * polar1(a2c - a22);
    t(2, 2) = std::sqrt(raw.pc);
    return t;
}

Eigen::Matrix3cd input_covariance(const BetaSplit& beta) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = std::norm(beta.b1c) + std::norm(beta.b2c);
    m(0, 2) = std::conj(beta.b1c);
    m(2, 0) = beta.b1c;
    m(1, 2) = std::conj(beta.b2c);
    m(2, 1) = beta.b2c;
    return m;
}

InputCovariance InputCovariance::from_beta(const BetaSplit& beta) {
    validate(beta);
    return validate(InputCovariance{input_covariance(beta)});
}

InputCovariance validate(const InputCovariance& cov) {
    const Eigen::Matrix3cd& m = cov.m;
    if (!m.allFinite()) raise(errc::nonfinite, "covariance entries");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        raise(errc::bad_value, "covariance is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        raise(errc::bad_value, "covariance is not positive semidefinite");
    for (int i = 0; i < 3; ++i)
        if (m(i, i).real() > 1.0 + 1e-12)
            raise(errc::bad_value, "covariance diagonal exceeds unit power");
    return cov;
}

namespace {

/// Conditional variance of y = g x + z given the input subset S, via an
/// eigenvalue pseudo-inverse so rank-deficient covariances are exact.
double conditional_var(const Eigen::Matrix<cplx, 1, 3>& g, double noiseVar,
                       const Eigen::Matrix3cd& cov, const std::vector<int>& subset) {
    const double total = (g * cov * g.adjoint())(0, 0).real() + noiseVar;
    if (subset.empty()) return total;
    const int k = static_cast<int>(subset.size());
    Eigen::MatrixXcd sigma(k, k);
    Eigen::VectorXcd c(k);
    for (int i = 0; i < k; ++i) {
        c(i) = (g * cov.col(subset[i]))(0, 0);
        for (int j = 0; j < k; ++j) sigma(i, j) = cov(subset[i], subset[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
    const auto& vals = es.eigenvalues();
    const double cutoff = std::max(vals.maxCoeff(), 0.0) * 1e-13;
    // c(i) = E[y conj(x_i)], so the explained power is sum |v_i^T c|^2 / lambda_i
    Eigen::VectorXcd w = es.eigenvectors().transpose() * c;
    double explained = 0.0;
    for (int i = 0; i < k; ++i)
        if (vals(i) > cutoff) explained += std::norm(w(i)) / vals(i);
    // independent noise keeps the conditional variance at or above the noise floor
    return std::max(total - explained, noiseVar);
}

struct MiSets {
    int receiver;          // 0 -> y1, 1 -> y2
    std::vector<int> rhs;  // inputs on the information side
    std::vector<int> given;
};

MiSets expr_sets(MiExpr expr) {
    switch (expr) {
        case MiExpr::y1_x1xc_given_x2: return {0, {0, 2}, {1}};
        case MiExpr::y2_x2xc_given_x1: return {1, {1, 2}, {0}};
        case MiExpr::y1_all: return {0, {0, 1, 2}, {}};
        case MiExpr::y2_all: return {1, {0, 1, 2}, {}};
        case MiExpr::y1_x2xc_given_x1: return {0, {1, 2}, {0}};
    }
    raise(errc::unknown_expression, "unrecognized mutual-information tag");
}

}  // namespace

double mi_general(const Eigen::Matrix<cplx, 2, 3>& gains, double noiseVar1, double noiseVar2,
                  const Eigen::Matrix3cd& cov, MiExpr expr) {
    const MiSets sets = expr_sets(expr);
    const Eigen::Matrix<cplx, 1, 3> g = gains.row(sets.receiver);
    const double v = sets.receiver == 0 ? noiseVar1 : noiseVar2;
    std::vector<int> all = sets.given;
    all.insert(all.end(), sets.rhs.begin(), sets.rhs.end());
    const double varGiven = conditional_var(g, v, cov, sets.given);
    const double varFull = conditional_var(g, v, cov, all);
    return std::max(0.0, rate_log(varGiven / varFull));
}

double mi_oracle(const GaussianChannel& ch, const BetaSplit& beta, MiExpr expr) {
    validate(ch);
    validate(beta);
    Eigen::Matrix<cplx, 2, 3> gains;
    gains << cplx(ch.h11), ch.h12, cplx(ch.h1c), ch.h21, cplx(ch.h22), cplx(ch.h2c);
    return mi_general(gains, 1.0, 1.0, input_covariance(beta), expr);
}

Pentagon outer_pentagon(const GaussianChannel& ch, const BetaSplit& beta) {
    validate(ch);
    validate(beta);
    if (std::abs(beta.norm_sq() - 1.0) > kBetaSphereTol)
        raise(errc::invalid_beta, "outer pentagon requires |b1c|^2 + |b2c|^2 = 1");
    const double direct1 = std::norm(ch.h11 + ch.h1c * beta.b1c);
    const double direct2 = std::norm(ch.h22 + ch.h2c * beta.b2c);
    const double cross1 = std::norm(ch.h12 + ch.h1c * beta.b2c);
    Pentagon p;
    p.r1Max = capacity_fn(direct1);
    p.r2Max = capacity_fn(direct2);
    p.sumMax = capacity_fn(direct1 + cross1);
    return p;
}

RegionFamily outer_region(const GaussianChannel& ch, const BetaGrid& grid) {
    validate(ch);
    if (grid.tCount < 2) raise(errc::empty_grid, "tCount must be >= 2");
    // The b1c phase only appears in | h11 + h1c b1c |^2 with h11, h1c >= 0, so
    // phase 0 dominates every pentagon bound and the union is unchanged by
    // pinning it. The b2c phase trades R2 against the sum bound whenever h12
    // carries a phase, so that axis is swept.
    const bool sweepPhi2 = !real_nonneg(ch.h12);
    if (sweepPhi2 && grid.phiCount < 1) raise(errc::empty_grid, "phiCount must be >= 1");

    std::vector<double> phis = {0.0};
    if (sweepPhi2) {
        phis.clear();
        phis.reserve(grid.phiCount);
        for (int k = 0; k < grid.phiCount; ++k) phis.push_back(2.0 * kPi * k / grid.phiCount);
    }

    RegionFamily fam;
    fam.pentagons.reserve(static_cast<std::size_t>(grid.tCount) * phis.size());
    for (int i = 0; i < grid.tCount; ++i) {
        const double t = (kPi / 2.0) * i / (grid.tCount - 1);
        const double st = std::sin(t), ct = std::cos(t);
        for (double phi2 : phis) {
            BetaSplit beta{cplx(st), ct * polar1(phi2)};
            // sin^2 + cos^2 lands on the sphere within round-off
            fam.pentagons.push_back(outer_pentagon(ch, beta));
            fam.betas.push_back(beta);
        }
    }
    return fam;
}

namespace {

struct Refined {
    double value;
    double x;
};

/// Grid best followed by golden refinement on a bracket of +-1 grid cell.
template <typename F>
Refined grid_refine(F&& f, double lo, double hi, int gridN, bool bracketFull = false) {
    double bestX = lo, bestV = f(lo);
    for (int i = 1; i < gridN; ++i) {
        const double x = lo + (hi - lo) * i / (gridN - 1);
        const double v = f(x);
        if (v > bestV) {
            bestV = v;
            bestX = x;
        }
    }
    const double cell = (hi - lo) / (gridN - 1);
    const double a = bracketFull ? lo : std::max(lo, bestX - cell);
    const double b = bracketFull ? hi : std::min(hi, bestX + cell);
    const double xr = golden_max(f, a, b);
    const double vr = f(xr);
    if (vr > bestV) return {vr, xr};
    return {bestV, bestX};
}

void ensure_finite(double v) {
    if (!std::isfinite(v))
        raise(errc::optimizer_failure, "condition objective produced a non-finite value");
}

}  // namespace

ConditionCheck check_strong(const GaussianChannel& ch, double tol, int gridN) {
    validate(ch);
    if (gridN < 2) raise(errc::bad_value, "gridN must be >= 2");
    auto obj = [&](double r, double theta) {
        const cplx b = r * polar1(theta);
        return std::norm(ch.h22 + ch.h2c * b) - std::norm(ch.h12 + ch.h1c * b);
    };

    double bestV = -std::numeric_limits<double>::infinity();
    double bestR = 0.0, bestTheta = 0.0;
    if (ch.h12.imag() == 0.0) {
        // Real cross gain: the phase optimum is a sign choice.
        for (double theta : {0.0, kPi}) {
            auto fr = [&](double r) { return obj(r, theta); };
            const Refined res = grid_refine(fr, 0.0, 1.0, gridN, /*bracketFull=*/true);
            if (res.value > bestV) {
                bestV = res.value;
                bestR = res.x;
                bestTheta = theta;
            }
        }
    } else {
        const double cell = 2.0 * kPi / gridN;
        for (int k = 0; k < gridN; ++k) {
            const double theta = cell * k;
            for (int i = 0; i < gridN; ++i) {
                const double r = static_cast<double>(i) / (gridN - 1);
                const double v = obj(r, theta);
                if (v > bestV) {
                    bestV = v;
                    bestR = r;
                    bestTheta = theta;
                }
            }
        }
        for (int sweep = 0; sweep < 4; ++sweep) {
            const double prev = bestV;
            bestTheta = golden_max([&](double th) { return obj(bestR, th); }, bestTheta - cell,
                                   bestTheta + cell);
            bestR = golden_max([&](double r) { return obj(r, bestTheta); }, 0.0, 1.0);
            bestV = obj(bestR, bestTheta);
            if (bestV - prev < 1e-15) break;
        }
        // The radial profile is quadratic; its maximum may sit on an endpoint.
        for (double r : {0.0, 1.0}) {
            const double v = obj(r, bestTheta);
            if (v > bestV) {
                bestV = v;
                bestR = r;
            }
        }
    }
    ensure_finite(bestV);

    ConditionCheck res;
    res.margin = bestV;
    res.holds = bestV <= tol;
    res.boundary = res.holds && bestV > -tol;
    res.worstBeta = BetaSplit{cplx(0.0), bestR * polar1(bestTheta)};
    return res;
}

ConditionCheck check_very_strong(const GaussianChannel& ch, double tol, int gridN) {
    validate(ch);
    if (gridN < 2) raise(errc::bad_value, "gridN must be >= 2");
    auto obj = [&](double t, double phi1, double phi2) {
        const cplx b1 = std::sin(t) * polar1(phi1);
        const cplx b2 = std::cos(t) * polar1(phi2);
        return std::norm(ch.h11 + ch.h1c * b1) + std::norm(ch.h12 + ch.h1c * b2) -
               std::norm(ch.h21 + ch.h2c * b1) - std::norm(ch.h22 + ch.h2c * b2);
    };

    double bestV = -std::numeric_limits<double>::infinity();
    double bestT = 0.0, bestP1 = 0.0, bestP2 = 0.0;
    if (ch.h12.imag() == 0.0 && ch.h21.imag() == 0.0) {
        // Real cross gains: each phase optimum is a sign choice; the sine/cosine
        // profile over t is unimodal on the quarter period.
        for (double p1 : {0.0, kPi})
            for (double p2 : {0.0, kPi}) {
                auto ft = [&](double t) { return obj(t, p1, p2); };
                const Refined res = grid_refine(ft, 0.0, kPi / 2.0, gridN, /*bracketFull=*/true);
                if (res.value > bestV) {
                    bestV = res.value;
                    bestT = res.x;
                    bestP1 = p1;
                    bestP2 = p2;
                }
            }
    } else {
        const double cell = 2.0 * kPi / gridN;
        for (int i = 0; i < gridN; ++i) {
            const double t = (kPi / 2.0) * i / (gridN - 1);
            for (int k1 = 0; k1 < gridN; ++k1)
                for (int k2 = 0; k2 < gridN; ++k2) {
                    const double v = obj(t, cell * k1, cell * k2);
                    if (v > bestV) {
                        bestV = v;
                        bestT = t;
                        bestP1 = cell * k1;
                        bestP2 = cell * k2;
                    }
                }
        }
        for (int sweep = 0; sweep < 6; ++sweep) {
            const double prev = bestV;
            bestP1 = golden_max([&](double p) { return obj(bestT, p, bestP2); }, bestP1 - cell,
                                bestP1 + cell);
            bestP2 = golden_max([&](double p) { return obj(bestT, bestP1, p); }, bestP2 - cell,
                                bestP2 + cell);
            bestT = golden_max([&](double t) { return obj(t, bestP1, bestP2); }, 0.0, kPi / 2.0);
            bestV = obj(bestT, bestP1, bestP2);
            if (bestV - prev < 1e-15) break;
        }
    }
    ensure_finite(bestV);

    ConditionCheck res;
    res.margin = bestV;
    res.holds = bestV <= tol;
    res.boundary = res.holds && bestV > -tol;
    res.worstBeta = BetaSplit{std::sin(bestT) * polar1(bestP1), std::cos(bestT) * polar1(bestP2)};
    return res;
}

SymmetricMargins symmetric_margins(const GaussianChannel& ch) {
    validate(ch);
    if (std::abs(ch.h1c - ch.h2c) > 1e-12)
        raise(errc::not_symmetric, "requires h1c = h2c");
    if (!real_nonneg(ch.h12) || !real_nonneg(ch.h21))
        raise(errc::not_symmetric, "requires real nonnegative cross gains");
    const double hc = ch.h1c;
    const double h12 = ch.h12.real(), h21 = ch.h21.real();
    SymmetricMargins m;
    m.strongMargin = ch.h22 - h12;
    m.veryStrongMargin =
        2.0 * hc * std::hypot(h12 - ch.h22, ch.h11 - h21) +
        ch.h11 * ch.h11 + h12 * h12 - ch.h22 * ch.h22 - h21 * h21;
    return m;
}

RegimeLabel classify(const GaussianChannel& ch, int user, double tol) {
    if (user != 1 && user != 2) raise(errc::bad_value, "user must be 1 or 2");
    const GaussianChannel c = user == 2 ? swap_roles(ch) : ch;
    const ConditionCheck strong = check_strong(c, tol);
    const ConditionCheck very = check_very_strong(c, tol);
    RegimeLabel label;
    label.user = user;
    label.strongMargin = strong.margin;
    label.veryStrongMargin = very.margin;
    label.strongBoundary = strong.boundary;
    label.veryStrongBoundary = very.boundary;
    label.regime = !strong.holds ? Regime::NEITHER
                   : very.holds  ? Regime::VERY_STRONG
                                 : Regime::STRONG;
    return label;
}

RegimeMap regime_map(const RegimeMapSpec& spec, double tol, int jobs) {
    validate(spec.base);
    if (spec.h12Count < 2 || spec.h21Count < 2) raise(errc::bad_value, "sweep counts must be >= 2");
    if (!(spec.h12Lo <= spec.h12Hi) || !(spec.h21Lo <= spec.h21Hi))
        raise(errc::bad_value, "sweep range is reversed");
    if (spec.user != 1 && spec.user != 2) raise(errc::bad_value, "user must be 1 or 2");

    RegimeMap map;
    map.spec = spec;
    const std::size_t total = static_cast<std::size_t>(spec.h12Count) * spec.h21Count;
    map.cells.resize(total);

    auto cellValue = [&](std::size_t k) {
        const int i = static_cast<int>(k) / spec.h21Count;
        const int j = static_cast<int>(k) % spec.h21Count;
        GaussianChannel ch = spec.base;
        ch.h12 = spec.h12Lo + (spec.h12Hi - spec.h12Lo) * i / (spec.h12Count - 1);
        ch.h21 = spec.h21Lo + (spec.h21Hi - spec.h21Lo) * j / (spec.h21Count - 1);
        return classify(ch, spec.user, tol);
    };

    const int workers = std::max(1, jobs);
    if (workers == 1) {
        for (std::size_t k = 0; k < total; ++k) map.cells[k] = cellValue(k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < total; k += workers) map.cells[k] = cellValue(k);
            });
        for (auto& th : pool) th.join();
    }
    return map;
}

std::string to_csv(const RegimeMap& map) {
    std::string out = "h12,h21,label,strongMargin,veryStrongMargin\n";
    char buf[160];
    const auto& s = map.spec;
    for (int i = 0; i < s.h12Count; ++i) {
        const double h12 = s.h12Lo + (s.h12Hi - s.h12Lo) * i / (s.h12Count - 1);
        for (int j = 0; j < s.h21Count; ++j) {
            const double h21 = s.h21Lo + (s.h21Hi - s.h21Lo) * j / (s.h21Count - 1);
            const RegimeLabel& cell = map.at(i, j);
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%s,%.12g,%.12g\n", h12, h21,
                          regime_name(cell.regime), cell.strongMargin, cell.veryStrongMargin);
            out += buf;
        }
    }
    return out;
}

}  // namespace ifcr::gaussian
