#include "ifcr/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ifcr/rate_units.hpp"

namespace ifcr::discrete {

namespace {

constexpr double kNormTol = 1e-12;
constexpr int kMaxAlphabet = 8;

std::vector<int> axis_list(const JointPmf& j, const std::vector<std::string>& vars) {
    std::vector<int> axes;
    axes.reserve(vars.size());
    for (const auto& v : vars) axes.push_back(j.axis(v));
    std::sort(axes.begin(), axes.end());
    return axes;
}

/// Marginal over the given (sorted) axes, output row-major in that axis order.
std::vector<double> marginal(const JointPmf& j, const std::vector<int>& axes) {
    const std::size_t nAxes = j.sizes.size();
    std::vector<std::size_t> subStride(nAxes, 0);
    std::size_t outSize = 1;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
        subStride[*it] = outSize;
        outSize *= j.sizes[*it];
    }
    std::vector<double> out(outSize, 0.0);
    std::vector<int> digits(nAxes, 0);
    std::size_t subIdx = 0;
    for (std::size_t flat = 0; flat < j.p.size(); ++flat) {
        out[subIdx] += j.p[flat];
        for (int a = static_cast<int>(nAxes) - 1; a >= 0; --a) {
            subIdx += subStride[a];
            if (++digits[a] < j.sizes[a]) break;
            digits[a] = 0;
            subIdx -= subStride[a] * j.sizes[a];
        }
    }
    return out;
}

double entropy_axes(const JointPmf& j, const std::vector<int>& axes) {
    const std::vector<double> m = marginal(j, axes);
    double h = 0.0;
    for (double v : m)
        if (v > 0.0) h -= v * rate_log(v);
    return h;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

double mi_axes(const JointPmf& j, const std::vector<int>& left, const std::vector<int>& right,
               const std::vector<int>& given) {
    if (left.empty() || right.empty()) return 0.0;
    const auto lg = sorted_union(left, given);
    const auto rg = sorted_union(right, given);
    const auto lrg = sorted_union(lg, right);
    const double v =
        entropy_axes(j, lg) + entropy_axes(j, rg) - entropy_axes(j, lrg) - entropy_axes(j, given);
    return std::max(0.0, v);
}

}  // namespace

int JointPmf::axis(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    raise(errc::variable_not_present, "variable '" + name + "' not in joint");
}

JointPmf validate(const JointPmf& j) {
    if (j.names.size() != j.sizes.size())
        raise(errc::shape_mismatch, "axis name/size count mismatch");
    std::size_t total = 1;
    for (std::size_t i = 0; i < j.sizes.size(); ++i) {
        if (j.sizes[i] < 1 || j.sizes[i] > kMaxAlphabet)
            raise(errc::bad_value, "axis '" + j.names[i] + "' size outside [1, 8]");
        total *= j.sizes[i];
    }
    if (j.p.size() != total) raise(errc::shape_mismatch, "tensor size does not match axes");
    double sum = 0.0;
    for (double v : j.p) {
        if (!std::isfinite(v)) raise(errc::nonfinite, "joint entry not finite");
        if (v < 0.0) raise(errc::negative_probability, "joint entry negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "joint sums to " << sum;
        raise(errc::not_normalized, os.str());
    }
    for (std::size_t i = 0; i < j.names.size(); ++i)
        for (std::size_t k = i + 1; k < j.names.size(); ++k)
            if (j.names[i] == j.names[k])
                raise(errc::shape_mismatch, "duplicate axis name '" + j.names[i] + "'");
    return j;
}

double entropy(const JointPmf& j, const std::vector<std::string>& vars) {
    return entropy_axes(j, axis_list(j, vars));
}

double mutual_information(const JointPmf& j, const std::vector<std::string>& left,
                          const std::vector<std::string>& right,
                          const std::vector<std::string>& given) {
    const auto l = axis_list(j, left);
    const auto r = axis_list(j, right);
    const auto g = axis_list(j, given);
    auto overlaps = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> tmp;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
        return !tmp.empty();
    };
    if (overlaps(l, r) || overlaps(l, g) || overlaps(r, g))
        raise(errc::overlapping_sets, "left/right/given must be disjoint");
    return mi_axes(j, l, r, g);
}

JointPmf joint_from(const DiscreteChannel& ch, const ProductInputDistribution& d) {
    validate(ch);
    validate(d);
    if (d.n1() != ch.n1 || d.n2() != ch.n2 || d.nc() != ch.nc)
        raise(errc::shape_mismatch, "distribution alphabets do not match channel");
    JointPmf j;
    j.names = {"X1", "X2", "Xc", "Y1", "Y2"};
    j.sizes = {ch.n1, ch.n2, ch.nc, ch.m1, ch.m2};
    j.p.reserve(static_cast<std::size_t>(ch.n1) * ch.n2 * ch.nc * ch.m1 * ch.m2);
    for (int x1 = 0; x1 < ch.n1; ++x1)
        for (int x2 = 0; x2 < ch.n2; ++x2)
            for (int xc = 0; xc < ch.nc; ++xc) {
                const double base = (d.p1[x1] * d.p2[x2]) * d.pc_at(x1, x2, xc);
                for (int y1 = 0; y1 < ch.m1; ++y1)
                    for (int y2 = 0; y2 < ch.m2; ++y2) j.p.push_back(base * ch(y1, y2, x1, x2, xc));
            }
    return validate(j);
}

Pentagon strong_outer_at(const DiscreteChannel& ch, const ProductInputDistribution& d) {
    const JointPmf j = joint_from(ch, d);
    Pentagon p;
    p.r1Max = mutual_information(j, {"Y1"}, {"X1", "Xc"}, {"X2"});
    p.r2Max = mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"X1"});
    p.sumMax = mutual_information(j, {"Y1"}, {"X1", "X2", "Xc"}, {});
    return validate(p);
}

Pentagon inner_region_at(const DiscreteChannel& ch, const ProductInputDistribution& d) {
    const JointPmf j = joint_from(ch, d);
    Pentagon p;
    p.r1Max = mutual_information(j, {"Y1"}, {"X1"}, {"X2"});
    p.r2Max = mutual_information(j, {"Y2"}, {"X2"}, {"X1"});
    p.sumMax = mutual_information(j, {"Y1"}, {"X1", "X2"}, {});
    p.sumMax2 = mutual_information(j, {"Y2"}, {"X1", "X2"}, {});
    return validate(p);
}

JointPmf joint_from_aux(const DiscreteChannel& ch, const AuxiliaryDistribution& d) {
    validate(ch);
    validate(d);
    const auto& in0 = d.inputs[0];
    if (in0.n1() != ch.n1 || in0.n2() != ch.n2 || in0.nc() != ch.nc)
        raise(errc::shape_mismatch, "distribution alphabets do not match channel");
    JointPmf j;
    j.names = {"Q", "U1", "U2", "X1", "X2", "Xc", "Y1", "Y2"};
    j.sizes = {d.nq, d.nu1, d.nu2, ch.n1, ch.n2, ch.nc, ch.m1, ch.m2};
    std::size_t total = 1;
    for (int s : j.sizes) total *= s;
    j.p.assign(total, 0.0);
    std::size_t idx = 0;
    for (int qi = 0; qi < d.nq; ++qi)
        for (int u1 = 0; u1 < d.nu1; ++u1)
            for (int u2 = 0; u2 < d.nu2; ++u2)
                for (int x1 = 0; x1 < ch.n1; ++x1)
                    for (int x2 = 0; x2 < ch.n2; ++x2)
                        for (int xc = 0; xc < ch.nc; ++xc) {
                            const auto& in = d.inputs[qi];
                            const double base = (in.p1[x1] * in.p2[x2]) * in.pc_at(x1, x2, xc);
                            const double w = (d.q[qi] * base) * d.u_at(qi, x1, x2, xc, u1, u2);
                            for (int y1 = 0; y1 < ch.m1; ++y1)
                                for (int y2 = 0; y2 < ch.m2; ++y2)
                                    j.p[idx++] = w * ch(y1, y2, x1, x2, xc);
                        }
    return validate(j);
}

Pentagon GeneralOuterBounds::pentagon() const {
    Pentagon p;
    p.r1Max = std::min(r1Direct, r1Common);
    p.r2Max = std::min(r2Direct, r2Common);
    p.sumMax = std::min({sumSplit1, sumSplit2, sumCross, sumGenie1, sumGenie2});
    return p;
}

GeneralOuterBounds general_outer_at(const DiscreteChannel& ch, const AuxiliaryDistribution& d) {
    const JointPmf j = joint_from_aux(ch, d);
    GeneralOuterBounds b;
    b.r1Direct = mutual_information(j, {"Y1"}, {"X1", "Xc"}, {"X2", "Q"});
    b.r1Common = mutual_information(j, {"Y1"}, {"U2", "X1"}, {"Q"});
    b.r2Direct = mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"X1", "Q"});
    b.r2Common = mutual_information(j, {"Y2"}, {"U1", "X2"}, {"Q"});
    b.sumSplit1 = mutual_information(j, {"Y1"}, {"X1", "Xc"}, {"U1", "X2", "Q"}) +
                  mutual_information(j, {"Y2"}, {"U1", "X2"}, {"Q"});
    b.sumSplit2 = mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"U2", "X1", "Q"}) +
                  mutual_information(j, {"Y1"}, {"U2", "X1"}, {"Q"});
    b.sumCross = mutual_information(j, {"Y1"}, {"U2"}, {"Q"}) +
                 mutual_information(j, {"Y2"}, {"U1"}, {"Q"});
    b.sumCrossPrinted = mutual_information(j, {"Y1"}, {"U1"}, {"Q"}) +
                        mutual_information(j, {"Y2"}, {"U2"}, {"Q"});
    b.sumGenie1 = mutual_information(j, {"Y1"}, {"X1", "X2", "Xc"}, {"Q"}) +
                  mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"Y1", "X1", "Q"});
    b.sumGenie2 = mutual_information(j, {"Y2"}, {"X1", "X2", "Xc"}, {"Q"}) +
                  mutual_information(j, {"Y1"}, {"X1", "Xc"}, {"Y2", "X2", "Q"});
    return b;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> sample_simplex(int n, std::mt19937_64& rng) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = -std::log(1.0 - uniform01(rng));
        sum += v[i];
    }
    if (sum <= 0.0) {
        std::fill(v.begin(), v.end(), 1.0 / n);
        return v;
    }
    for (double& x : v) x /= sum;
    return v;
}

ProductInputDistribution sample_product(int n1, int n2, int nc, std::mt19937_64& rng) {
    ProductInputDistribution d;
    d.p1 = sample_simplex(n1, rng);
    d.p2 = sample_simplex(n2, rng);
    d.pc.reserve(static_cast<std::size_t>(n1) * n2 * nc);
    for (int s = 0; s < n1 * n2; ++s) {
        const auto slice = sample_simplex(nc, rng);
        d.pc.insert(d.pc.end(), slice.begin(), slice.end());
    }
    return d;
}

ProductInputDistribution sample_product_deterministic_xc(int n1, int n2, int nc,
                                                         std::mt19937_64& rng) {
    ProductInputDistribution d;
    d.p1 = sample_simplex(n1, rng);
    d.p2 = sample_simplex(n2, rng);
    d.pc.assign(static_cast<std::size_t>(n1) * n2 * nc, 0.0);
    for (int s = 0; s < n1 * n2; ++s) {
        const int xc = static_cast<int>(rng() % static_cast<std::uint64_t>(nc));
        d.pc[static_cast<std::size_t>(s) * nc + xc] = 1.0;
    }
    return d;
}

namespace {

ProductInputDistribution corner_point_mass(int n1, int n2, int nc, bool last) {
    ProductInputDistribution d;
    d.p1.assign(n1, 0.0);
    d.p2.assign(n2, 0.0);
    d.pc.assign(static_cast<std::size_t>(n1) * n2 * nc, 0.0);
    d.p1[last ? n1 - 1 : 0] = 1.0;
    d.p2[last ? n2 - 1 : 0] = 1.0;
    for (int s = 0; s < n1 * n2; ++s) d.pc[static_cast<std::size_t>(s) * nc + (last ? nc - 1 : 0)] = 1.0;
    return d;
}

ProductInputDistribution corner_uniform(int n1, int n2, int nc) {
    ProductInputDistribution d;
    d.p1.assign(n1, 1.0 / n1);
    d.p2.assign(n2, 1.0 / n2);
    d.pc.assign(static_cast<std::size_t>(n1) * n2 * nc, 1.0 / nc);
    return d;
}

}  // namespace

ConditionReport check_conditions_sampled(const DiscreteChannel& ch, int nSamples,
                                         std::uint64_t seed) {
    validate(ch);
    if (nSamples < 1) raise(errc::bad_value, "nSamples must be >= 1");
    std::mt19937_64 rng(seed);
    ConditionReport rep;
    rep.nSamples = nSamples;
    rep.seed = seed;
    rep.eq5Min = std::numeric_limits<double>::infinity();
    rep.eq10Min = std::numeric_limits<double>::infinity();

    for (int k = 0; k < nSamples; ++k) {
        ProductInputDistribution d;
        if (k == 0)
            d = corner_uniform(ch.n1, ch.n2, ch.nc);
        else if (k == 1)
            d = corner_point_mass(ch.n1, ch.n2, ch.nc, false);
        else if (k == 2)
            d = corner_point_mass(ch.n1, ch.n2, ch.nc, true);
        else
            d = sample_product(ch.n1, ch.n2, ch.nc, rng);
        const JointPmf j = joint_from(ch, d);
        const double eq5 = mutual_information(j, {"Y1"}, {"X2", "Xc"}, {"X1"}) -
                           mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"X1"});
        const double eq10 = mutual_information(j, {"Y2"}, {"X1", "X2", "Xc"}, {}) -
                            mutual_information(j, {"Y1"}, {"X1", "X2", "Xc"}, {});
        if (eq5 < rep.eq5Min) {
            rep.eq5Min = eq5;
            rep.eq5Witness = d;
        }
        if (eq10 < rep.eq10Min) {
            rep.eq10Min = eq10;
            rep.eq10Witness = d;
        }
    }
    return rep;
}

GenieResidual genie_residual_at(const DiscreteChannel& ch, const ProductInputDistribution& d) {
    const JointPmf j = joint_from(ch, d);
    GenieResidual out;
    out.residual = mutual_information(j, {"Y2"}, {"X2", "Xc"}, {"X1", "Y1"});
    const GeneralOuterBounds bounds =
        general_outer_at(ch, AuxiliaryDistribution::trivial(d));
    const Pentagon strong = strong_outer_at(ch, d);
    out.sumGap = std::abs(bounds.sumGenie1 - strong.sumMax);
    return out;
}

FixtureKind fixture_from_name(const std::string& name) {
    if (name == "VERY_STRONG") return FixtureKind::VERY_STRONG;
    if (name == "STRONG_ONLY") return FixtureKind::STRONG_ONLY;
    raise(errc::unknown_kind, "unknown fixture '" + name + "'");
}

const char* fixture_name(FixtureKind kind) noexcept {
    return kind == FixtureKind::VERY_STRONG ? "VERY_STRONG" : "STRONG_ONLY";
}

DiscreteChannel degraded_fixture(FixtureKind kind, int n1, int n2, int nc) {
    if (n1 < 2 || n2 < 2 || nc < 2)
        raise(errc::bad_value, "fixture alphabet sizes must be >= 2");
    DiscreteChannel ch;
    ch.n1 = n1;
    ch.n2 = n2;
    ch.nc = nc;
    if (kind == FixtureKind::VERY_STRONG) {
        ch.m1 = n2 * nc;       // y1 = (x2, xc)
        ch.m2 = n1 * n2 * nc;  // y2 = (x1, x2, xc)
    } else {
        ch.m1 = n1 * n2 * nc;  // y1 = (x1, x2, xc)
        ch.m2 = n1 * n2;       // y2 = (x1, x2)
    }
    if (ch.m1 > kMaxAlphabet || ch.m2 > kMaxAlphabet)
        raise(errc::bad_value, "fixture output alphabet exceeds the dense-tensor cap of 8");
    ch.t.assign(static_cast<std::size_t>(ch.m1) * ch.m2 * n1 * n2 * nc, 0.0);
    for (int x1 = 0; x1 < n1; ++x1)
        for (int x2 = 0; x2 < n2; ++x2)
            for (int xc = 0; xc < nc; ++xc) {
                int y1, y2;
                if (kind == FixtureKind::VERY_STRONG) {
                    y1 = x2 * nc + xc;
                    y2 = (x1 * n2 + x2) * nc + xc;
                } else {
                    y1 = (x1 * n2 + x2) * nc + xc;
                    y2 = x1 * n2 + x2;
                }
                ch.t[ch.index(y1, y2, x1, x2, xc)] = 1.0;
            }
    return validate(ch);
}

double csiszar_sum_residual(const JointPmf& j) {
    validate(j);
    const std::size_t nAxes = j.names.size();
    if (nAxes % 2 != 0 || nAxes < 2 || nAxes > 6)
        raise(errc::bad_sequence_shape, "joint must declare 2N axes with N in {1, 2, 3}");
    const int n = static_cast<int>(nAxes / 2);
    auto y1 = [&](int i) { return i; };          // axes 0..n-1
    auto y2 = [&](int i) { return n + i; };      // axes n..2n-1

    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> future2, past1;
        for (int k = i + 1; k < n; ++k) future2.push_back(y2(k));
        for (int k = 0; k < i; ++k) past1.push_back(y1(k));
        lhs += mi_axes(j, {y1(i)}, future2, past1);
        rhs += mi_axes(j, {y2(i)}, past1, future2);
    }
    return std::abs(lhs - rhs);
}

}  // namespace ifcr::discrete
