#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ifcr/errors.hpp"

namespace ifcr {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Gaussian channel types
// ---------------------------------------------------------------------------

/// Gaussian channel as physically parameterized: arbitrary complex gains,
/// per-transmitter power budgets and per-receiver noise variances.
///   y1 = h11 x1 + h1c xc + h12 x2 + z1,   E|xj|^2 <= pj,  E|zk|^2 = noiseVar_k
///   y2 = h22 x2 + h2c xc + h21 x1 + z2
struct RawGaussianChannel {
    cplx h11{1.0}, h12{1.0}, h1c{1.0};
    cplx h21{1.0}, h22{1.0}, h2c{1.0};
    double p1 = 1.0, p2 = 1.0, pc = 1.0;
    double noiseVar1 = 1.0, noiseVar2 = 1.0;
};

/// Gaussian channel in standard form: unit powers, unit noise, real
/// nonnegative direct and relay gains, complex cross gains.
///   y1 = h11 x1 + h1c xc + h12 x2 + z1
///   y2 = h22 x2 + h2c xc + h21 x1 + z2
struct GaussianChannel {
    double h11 = 1.0, h22 = 1.0;  // direct gains, real >= 0
    double h1c = 1.0, h2c = 1.0;  // relay gains, real >= 0
    cplx h12{1.0}, h21{1.0};      // cross gains, complex
};

/// Relay amplitude split: xc = b1c * x1 + b2c * x2 with |b1c|^2 + |b2c|^2 <= 1.
/// The family with equality traces the outer-bound region boundary.
struct BetaSplit {
    cplx b1c{0.0};
    cplx b2c{0.0};

    double norm_sq() const { return std::norm(b1c) + std::norm(b2c); }
};

RawGaussianChannel validate(const RawGaussianChannel& ch);
GaussianChannel validate(const GaussianChannel& ch);
BetaSplit validate(const BetaSplit& beta);

/// Exchanges the two user indices: 11<->22, 12<->21, 1c<->2c.
GaussianChannel swap_roles(const GaussianChannel& ch);

// ---------------------------------------------------------------------------
// Discrete channel types
// ---------------------------------------------------------------------------

/// Finite-alphabet memoryless channel P(y1, y2 | x1, x2, xc) stored as a dense
/// tensor, row-major over [y1][y2][x1][x2][xc].
struct DiscreteChannel {
    int n1 = 1, n2 = 1, nc = 1;  // input alphabet sizes (x1, x2, xc)
    int m1 = 1, m2 = 1;          // output alphabet sizes (y1, y2)
    std::vector<double> t;

    std::size_t index(int y1, int y2, int x1, int x2, int xc) const {
        return ((((static_cast<std::size_t>(y1) * m2 + y2) * n1 + x1) * n2 + x2) * nc + xc);
    }
    double operator()(int y1, int y2, int x1, int x2, int xc) const {
        return t[index(y1, y2, x1, x2, xc)];
    }
};

DiscreteChannel validate(const DiscreteChannel& ch);
DiscreteChannel swap_roles(const DiscreteChannel& ch);

/// Input law P(x1) P(x2) P(xc | x1, x2). pc is row-major over [x1][x2][xc].
struct ProductInputDistribution {
    std::vector<double> p1, p2;
    std::vector<double> pc;

    int n1() const { return static_cast<int>(p1.size()); }
    int n2() const { return static_cast<int>(p2.size()); }
    int nc() const {
        return p1.empty() || p2.empty() ? 0 : static_cast<int>(pc.size() / (p1.size() * p2.size()));
    }
    double pc_at(int x1, int x2, int xc) const {
        return pc[(static_cast<std::size_t>(x1) * n2() + x2) * nc() + xc];
    }
};

ProductInputDistribution validate(const ProductInputDistribution& d);

/// Input law with a time-sharing variable Q and auxiliaries (U1, U2):
///   P(q) P(x1|q) P(x2|q) P(xc|x1,x2,q) P(u1,u2|x1,x2,xc,q).
/// The factorization holds by construction; alphabet sizes for Q, U1, U2 are
/// caller-declared (no optimality claim is attached to any particular size).
struct AuxiliaryDistribution {
    int nq = 1, nu1 = 1, nu2 = 1;
    std::vector<double> q;                            // size nq
    std::vector<ProductInputDistribution> inputs;     // one per q
    std::vector<double> u;                            // [q][x1][x2][xc][u1][u2] row-major

    double u_at(int qi, int x1, int x2, int xc, int u1, int u2) const {
        const auto& d = inputs[0];
        std::size_t i = qi;
        i = i * d.n1() + x1;
        i = i * d.n2() + x2;
        i = i * d.nc() + xc;
        i = i * nu1 + u1;
        i = i * nu2 + u2;
        return u[i];
    }

    /// Wraps a plain product distribution with singleton Q, U1, U2.
    static AuxiliaryDistribution trivial(const ProductInputDistribution& d);
};

AuxiliaryDistribution validate(const AuxiliaryDistribution& d);

// ---------------------------------------------------------------------------
// Rate regions
// ---------------------------------------------------------------------------

/// Rate region {(R1, R2) : 0 <= R1 <= r1Max, 0 <= R2 <= r2Max,
///                         R1 + R2 <= min(sumMax, sumMax2)}.
struct Pentagon {
    double r1Max = 0.0;
    double r2Max = 0.0;
    double sumMax = 0.0;
    std::optional<double> sumMax2;

    double effective_sum() const { return sumMax2 ? std::min(sumMax, *sumMax2) : sumMax; }
};

Pentagon validate(const Pentagon& p);

/// Union of pentagons indexed by the relay splits that generated them.
struct RegionFamily {
    std::vector<Pentagon> pentagons;
    std::vector<BetaSplit> betas;  // parallel to pentagons; empty if not beta-indexed
};

// ---------------------------------------------------------------------------
// Regime classification
// ---------------------------------------------------------------------------

enum class Regime { NEITHER, STRONG, VERY_STRONG };

const char* regime_name(Regime r) noexcept;

/// Classification of one user's interference regime, with the optimizer
/// margins behind the verdict. A margin within (-tol, tol] counts as holding
/// and sets the corresponding boundary flag.
struct RegimeLabel {
    Regime regime = Regime::NEITHER;
    int user = 1;
    double strongMargin = 0.0;
    double veryStrongMargin = 0.0;
    bool strongBoundary = false;
    bool veryStrongBoundary = false;
};

}  // namespace ifcr
