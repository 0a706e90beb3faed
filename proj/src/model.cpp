#include "ifcr/model.hpp"

#include <cmath>
#include <sstream>

namespace ifcr {

namespace {

constexpr double kNormTol = 1e-12;

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_magnitude(double v, const char* name) {
    if (!std::isfinite(v)) raise(errc::nonfinite, std::string(name) + " is not finite");
    if (v < 0.0) raise(errc::negative_magnitude, std::string(name) + " must be >= 0");
}

void check_finite(const cplx& z, const char* name) {
    if (!finite(z)) raise(errc::nonfinite, std::string(name) + " is not finite");
}

void check_positive(double v, const char* name) {
    if (!std::isfinite(v)) raise(errc::nonfinite, std::string(name) + " is not finite");
    if (v <= 0.0) raise(errc::bad_value, std::string(name) + " must be > 0");
}

}  // namespace

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::negative_magnitude: return "NEGATIVE_MAGNITUDE";
        case errc::nonfinite: return "NONFINITE";
        case errc::not_normalized: return "NOT_NORMALIZED";
        case errc::negative_probability: return "NEGATIVE_PROBABILITY";
        case errc::shape_mismatch: return "SHAPE_MISMATCH";
        case errc::missing_field: return "MISSING_FIELD";
        case errc::bad_value: return "BAD_VALUE";
        case errc::empty_family: return "EMPTY_FAMILY";
        case errc::empty_grid: return "EMPTY_GRID";
        case errc::negative_snr: return "NEGATIVE_SNR";
        case errc::invalid_beta: return "INVALID_BETA";
        case errc::unknown_expression: return "UNKNOWN_EXPRESSION";
        case errc::optimizer_failure: return "OPTIMIZER_FAILURE";
        case errc::not_symmetric: return "NOT_SYMMETRIC";
        case errc::variable_not_present: return "VARIABLE_NOT_PRESENT";
        case errc::overlapping_sets: return "OVERLAPPING_SETS";
        case errc::bad_sequence_shape: return "BAD_SEQUENCE_SHAPE";
        case errc::unknown_kind: return "UNKNOWN_KIND";
        case errc::factorization_violated: return "FACTORIZATION_VIOLATED";
    }
    return "UNKNOWN";
}

const char* regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::NEITHER: return "NEITHER";
        case Regime::STRONG: return "STRONG";
        case Regime::VERY_STRONG: return "VERY_STRONG";
    }
    return "UNKNOWN";
}

RawGaussianChannel validate(const RawGaussianChannel& ch) {
    check_finite(ch.h11, "h11");
    check_finite(ch.h12, "h12");
    check_finite(ch.h1c, "h1c");
    check_finite(ch.h21, "h21");
    check_finite(ch.h22, "h22");
    check_finite(ch.h2c, "h2c");
    check_positive(ch.p1, "p1");
    check_positive(ch.p2, "p2");
    check_positive(ch.pc, "pc");
    check_positive(ch.noiseVar1, "noiseVar1");
    check_positive(ch.noiseVar2, "noiseVar2");
    return ch;
}

GaussianChannel validate(const GaussianChannel& ch) {
    check_magnitude(ch.h11, "h11");
    check_magnitude(ch.h22, "h22");
    check_magnitude(ch.h1c, "h1c");
    check_magnitude(ch.h2c, "h2c");
    check_finite(ch.h12, "h12");
    check_finite(ch.h21, "h21");
    return ch;
}

BetaSplit validate(const BetaSplit& beta) {
    check_finite(beta.b1c, "b1c");
    check_finite(beta.b2c, "b2c");
    if (beta.norm_sq() > 1.0 + kNormTol)
        raise(errc::invalid_beta, "|b1c|^2 + |b2c|^2 exceeds 1");
    return beta;
}

GaussianChannel swap_roles(const GaussianChannel& ch) {
    GaussianChannel out;
    out.h11 = ch.h22;
    out.h22 = ch.h11;
    out.h12 = ch.h21;
    out.h21 = ch.h12;
    out.h1c = ch.h2c;
    out.h2c = ch.h1c;
    return out;
}

DiscreteChannel validate(const DiscreteChannel& ch) {
    if (ch.n1 < 1 || ch.n2 < 1 || ch.nc < 1 || ch.m1 < 1 || ch.m2 < 1)
        raise(errc::shape_mismatch, "alphabet sizes must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(ch.m1) * ch.m2 * ch.n1 * ch.n2 * ch.nc;
    if (ch.t.size() != expected) {
        std::ostringstream os;
        os << "tensor has " << ch.t.size() << " entries, expected " << expected;
        raise(errc::shape_mismatch, os.str());
    }
    double worstDev = 0.0;
    int wx1 = 0, wx2 = 0, wxc = 0;
    for (int x1 = 0; x1 < ch.n1; ++x1)
        for (int x2 = 0; x2 < ch.n2; ++x2)
            for (int xc = 0; xc < ch.nc; ++xc) {
                double sum = 0.0;
                for (int y1 = 0; y1 < ch.m1; ++y1)
                    for (int y2 = 0; y2 < ch.m2; ++y2) {
                        const double v = ch(y1, y2, x1, x2, xc);
                        if (!std::isfinite(v)) raise(errc::nonfinite, "tensor entry not finite");
                        if (v < 0.0) {
                            std::ostringstream os;
                            os << "t(y1=" << y1 << ",y2=" << y2 << "|x1=" << x1 << ",x2=" << x2
                               << ",xc=" << xc << ") = " << v;
                            raise(errc::negative_probability, os.str());
                        }
                        if (v > 1.0 + kNormTol) {
                            std::ostringstream os;
                            os << "entry " << v << " exceeds 1";
                            raise(errc::bad_value, os.str());
                        }
                        sum += v;
                    }
                const double dev = std::abs(sum - 1.0);
                if (dev > worstDev) {
                    worstDev = dev;
                    wx1 = x1;
                    wx2 = x2;
                    wxc = xc;
                }
            }
    if (worstDev > kNormTol) {
        std::ostringstream os;
        os << "worst slice (x1=" << wx1 << ",x2=" << wx2 << ",xc=" << wxc << ") deviates by "
           << worstDev;
        raise(errc::not_normalized, os.str());
    }
    return ch;
}

DiscreteChannel swap_roles(const DiscreteChannel& ch) {
    DiscreteChannel out;
    out.n1 = ch.n2;
    out.n2 = ch.n1;
    out.nc = ch.nc;
    out.m1 = ch.m2;
    out.m2 = ch.m1;
    out.t.resize(ch.t.size());
    for (int y1 = 0; y1 < out.m1; ++y1)
        for (int y2 = 0; y2 < out.m2; ++y2)
            for (int x1 = 0; x1 < out.n1; ++x1)
                for (int x2 = 0; x2 < out.n2; ++x2)
                    for (int xc = 0; xc < out.nc; ++xc)
                        out.t[out.index(y1, y2, x1, x2, xc)] = ch(y2, y1, x2, x1, xc);
    return out;
}

namespace {

void check_pmf(const std::vector<double>& v, std::size_t offset, std::size_t len,
               const char* what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double p = v[offset + i];
        if (!std::isfinite(p)) raise(errc::nonfinite, std::string(what) + " entry not finite");
        if (p < 0.0) raise(errc::negative_probability, std::string(what) + " has a negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol) {
        std::ostringstream os;
        os << what << " sums to " << sum;
        raise(errc::not_normalized, os.str());
    }
}

}  // namespace

ProductInputDistribution validate(const ProductInputDistribution& d) {
    if (d.p1.empty() || d.p2.empty() || d.pc.empty())
        raise(errc::shape_mismatch, "empty distribution component");
    if (d.pc.size() % (d.p1.size() * d.p2.size()) != 0)
        raise(errc::shape_mismatch, "pc size is not a multiple of |X1|*|X2|");
    check_pmf(d.p1, 0, d.p1.size(), "p1");
    check_pmf(d.p2, 0, d.p2.size(), "p2");
    const std::size_t nc = d.pc.size() / (d.p1.size() * d.p2.size());
    for (std::size_t s = 0; s < d.p1.size() * d.p2.size(); ++s)
        check_pmf(d.pc, s * nc, nc, "pc slice");
    return d;
}

AuxiliaryDistribution AuxiliaryDistribution::trivial(const ProductInputDistribution& d) {
    AuxiliaryDistribution a;
    a.nq = 1;
    a.nu1 = 1;
    a.nu2 = 1;
    a.q = {1.0};
    a.inputs = {d};
    a.u.assign(static_cast<std::size_t>(d.n1()) * d.n2() * d.nc(), 1.0);
    return a;
}

AuxiliaryDistribution validate(const AuxiliaryDistribution& d) {
    if (d.nq < 1 || d.nu1 < 1 || d.nu2 < 1)
        raise(errc::shape_mismatch, "auxiliary alphabet sizes must be >= 1");
    if (static_cast<int>(d.q.size()) != d.nq || static_cast<int>(d.inputs.size()) != d.nq)
        raise(errc::shape_mismatch, "q / per-q input count does not match nq");
    check_pmf(d.q, 0, d.q.size(), "q");
    const auto& first = d.inputs[0];
    for (const auto& in : d.inputs) {
        validate(in);
        if (in.n1() != first.n1() || in.n2() != first.n2() || in.nc() != first.nc())
            raise(errc::shape_mismatch, "per-q input alphabets differ");
    }
    const std::size_t slices =
        static_cast<std::size_t>(d.nq) * first.n1() * first.n2() * first.nc();
    if (d.u.size() != slices * d.nu1 * d.nu2)
        raise(errc::factorization_violated, "u table size does not match declared alphabets");
    for (std::size_t s = 0; s < slices; ++s)
        check_pmf(d.u, s * d.nu1 * d.nu2, static_cast<std::size_t>(d.nu1) * d.nu2, "u slice");
    return d;
}

Pentagon validate(const Pentagon& p) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v)) raise(errc::nonfinite, std::string(name) + " is not finite");
        if (v < 0.0) raise(errc::bad_value, std::string(name) + " must be >= 0");
    };
    check(p.r1Max, "r1Max");
    check(p.r2Max, "r2Max");
    check(p.sumMax, "sumMax");
    if (p.sumMax2) check(*p.sumMax2, "sumMax2");
    return p;
}

}  // namespace ifcr
