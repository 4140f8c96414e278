#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvic/ldic.hpp"

namespace lvic {

struct UndefinedGap : std::runtime_error {
    explicit UndefinedGap(const std::string& what) : std::runtime_error(what) {}
};

/// Complex link gains of the Gaussian IC. Phases are carried but no region
/// depends on them; all computed quantities are magnitude-only. Inputs given
/// directly as |h|^2 keep their exact double values instead of round-tripping
/// through a square root.
struct GaussianGains {
    std::complex<double> h_aa, h_ab, h_ba, h_bb;
    std::array<double, 4> exact_mag2{-1, -1, -1, -1};

    static GaussianGains from_mag2(double saa, double sab, double sba, double sbb) {
        GaussianGains g{std::sqrt(saa), std::sqrt(sab), std::sqrt(sba), std::sqrt(sbb)};
        g.exact_mag2 = {saa, sab, sba, sbb};
        return g;
    }

    double mag2_aa() const { return exact_mag2[0] >= 0 ? exact_mag2[0] : std::norm(h_aa); }
    double mag2_ab() const { return exact_mag2[1] >= 0 ? exact_mag2[1] : std::norm(h_ab); }
    double mag2_ba() const { return exact_mag2[2] >= 0 ? exact_mag2[2] : std::norm(h_ba); }
    double mag2_bb() const { return exact_mag2[3] >= 0 ? exact_mag2[3] : std::norm(h_bb); }
    double phase_aa() const { return std::arg(h_aa); }
    double phase_ab() const { return std::arg(h_ab); }
    double phase_ba() const { return std::arg(h_ba); }
    double phase_bb() const { return std::arg(h_bb); }
};

namespace detail {

// floor(log2(m))^+ with a 1e-12 snap so power-of-two magnitudes land
// exactly on their integer exponent.
inline long long floor_log2_clamped(double mag2) {
    if (!(mag2 > 1.0)) return 0;
    double l = std::log2(mag2);
    double nearest = std::round(l);
    if (std::fabs(l - nearest) < 1e-12) return static_cast<long long>(nearest);
    return static_cast<long long>(std::floor(l));
}

}  // namespace detail

/// Quantize Gaussian gains to the analogous deterministic state.
inline DeterministicGains gauss_to_ldic(const GaussianGains& h) {
    return {detail::floor_log2_clamped(h.mag2_aa()), detail::floor_log2_clamped(h.mag2_ab()),
            detail::floor_log2_clamped(h.mag2_ba()), detail::floor_log2_clamped(h.mag2_bb())};
}

/// Halfspace with double coefficients; always of <= sense.
struct NumericConstraint {
    std::map<std::string, double> coefficients;
    double bound = 0;
};

/// Float-coefficient constraint system. Never run through FM elimination;
/// queried only by membership and LP support values, with the doubles
/// treated as the exact rationals they are.
struct NumericPolytope {
    std::vector<std::string> variables;
    std::vector<NumericConstraint> constraints;

    bool contains_point(const std::map<std::string, double>& pt, double tol = 1e-9) const {
        for (const auto& c : constraints) {
            double lhs = 0;
            for (const auto& [v, coef] : c.coefficients) {
                auto it = pt.find(v);
                if (it != pt.end()) lhs += coef * it->second;
            }
            if (lhs > c.bound + tol) return false;
        }
        return true;
    }

    /// Exact support value in a coordinate direction (doubles are dyadic
    /// rationals, so the LP below is exact).
    double support(const std::map<std::string, double>& direction) const {
        LinearProgram lp;
        std::map<std::string, int> index;
        for (const auto& v : variables) index[v] = lp.add_var(true);
        for (const auto& c : constraints) {
            std::vector<Rational> row(lp.num_vars(), Rational(0));
            for (const auto& [v, coef] : c.coefficients) row[index.at(v)] = rat_from_double(coef);
            lp.add_row(std::move(row), Sense::LE, rat_from_double(c.bound));
        }
        for (const auto& [v, coef] : direction) lp.objective[index.at(v)] = rat_from_double(coef);
        auto r = lp_solve(lp);
        if (r.status != LpStatus::Optimal) throw std::runtime_error("numeric support query failed");
        return rat_double(r.value);
    }
};

struct NumericRegion {
    std::vector<NumericPolytope> pieces;

    bool contains_point(double ra, double rb, double tol = 1e-9) const {
        for (const auto& p : pieces)
            if (p.contains_point({{"r_a", ra}, {"r_b", rb}}, tol)) return true;
        return false;
    }
};

/// Gaussian TDM hull at capacities C_i = log2(1 + |h_ii|^2), no power
/// scaling.
inline NumericRegion gaussian_tdm_region(const GaussianGains& h) {
    double ca = std::log2(1.0 + h.mag2_aa());
    double cb = std::log2(1.0 + h.mag2_bb());
    NumericPolytope p;
    p.variables = {"r_a", "r_b"};
    p.constraints.push_back({{{"r_a", -1.0}}, 0.0});
    p.constraints.push_back({{{"r_b", -1.0}}, 0.0});
    if (ca > 0 && cb > 0) {
        p.constraints.push_back({{{"r_a", 1.0 / ca}, {"r_b", 1.0 / cb}}, 1.0});
    } else {
        p.constraints.push_back({{{"r_a", 1.0}}, ca});
        p.constraints.push_back({{{"r_b", 1.0}}, cb});
    }
    return NumericRegion{{p}};
}

inline double gaussian_capacity_a(const GaussianGains& h) { return std::log2(1.0 + h.mag2_aa()); }
inline double gaussian_capacity_b(const GaussianGains& h) { return std::log2(1.0 + h.mag2_bb()); }

/// Simple-HK component region for the Gaussian IC: private power set so the
/// private signal arrives at the unintended receiver at the noise floor,
/// each receiver decoding a virtual three-user MAC.
inline NumericPolytope gaussian_hk_component_polytope(const GaussianGains& h) {
    double saa = h.mag2_aa(), sab = h.mag2_ab(), sba = h.mag2_ba(), sbb = h.mag2_bb();
    double na = 1.0 + std::min(sba, 1.0);
    double nb = 1.0 + std::min(sab, 1.0);
    // Received private powers; an absent cross link leaves the whole direct
    // power private.
    double pa = sab > 0 ? std::min(saa / sab, saa) : saa;
    double pb = sba > 0 ? std::min(sbb / sba, sbb) : sbb;
    auto lg = [](double x) { return std::log2(1.0 + x); };

    NumericPolytope p;
    p.variables = {"r_ap", "r_ac", "r_bp", "r_bc"};
    auto le = [&](std::map<std::string, double> lhs, double bound) {
        p.constraints.push_back({std::move(lhs), bound});
    };
    le({{"r_ap", 1.0}}, lg(pa / na));
    le({{"r_ac", 1.0}}, std::min(lg((saa - pa) / na), lg((sab - std::min(1.0, sab)) / nb)));
    le({{"r_ap", 1.0}, {"r_ac", 1.0}}, lg(saa / na));
    le({{"r_ap", 1.0}, {"r_bc", 1.0}}, lg((pa + sba - std::min(1.0, sba)) / na));
    le({{"r_ap", 1.0}, {"r_ac", 1.0}, {"r_bc", 1.0}}, lg((saa + sba - std::min(1.0, sba)) / na));
    le({{"r_bp", 1.0}}, lg(pb / nb));
    le({{"r_bc", 1.0}}, std::min(lg((sbb - pb) / nb), lg((sba - std::min(1.0, sba)) / na)));
    le({{"r_bp", 1.0}, {"r_bc", 1.0}}, lg(sbb / nb));
    le({{"r_bp", 1.0}, {"r_ac", 1.0}}, lg((pb + sab - std::min(1.0, sab)) / nb));
    le({{"r_bp", 1.0}, {"r_bc", 1.0}, {"r_ac", 1.0}}, lg((sbb + sab - std::min(1.0, sab)) / nb));
    le({{"r_ac", 1.0}, {"r_bc", 1.0}},
       std::min(lg((saa - pa + sba - std::min(1.0, sba)) / na),
                lg((sbb - pb + sab - std::min(1.0, sab)) / nb)));
    return p;
}

/// Largest per-component support deviation between the Gaussian simple-HK
/// polytope and the deterministic one at the quantized state. The code-gap
/// lemma caps this at 2 bits per component (4 per user rate).
inline double codegap_check(const GaussianGains& h) {
    NumericPolytope gauss = gaussian_hk_component_polytope(h);
    Polytope det = hk_component_polytope(gauss_to_ldic(h));
    double worst = 0;
    for (const std::string dir : {"r_ap", "r_ac", "r_bp", "r_bc"}) {
        double gs = gauss.support({{dir, 1.0}});
        auto ds = det.maximize({{dir, Rational(1)}});
        if (ds.status != LpStatus::Optimal) throw std::runtime_error("deterministic support query failed");
        worst = std::max(worst, std::fabs(gs - rat_double(ds.value)));
    }
    return worst;
}

/// Per-user gap between the Gaussian and deterministic TDM-dominating
/// regions, with the exact term breakdown.
struct GapReport {
    ViewId view;
    double delta_bits = 0;
    // delta_bits = log6*log2(6) + log3*log2(3) + log9*log2(9) + constant
    std::map<std::string, Rational> formula_terms;
};

inline GapReport gap_delta(const ViewId& view, const DeterministicGains& gains) {
    DeterministicGains g = gains.g_aa >= gains.g_bb ? gains : gains.swapped();
    Rational log6_coef(0), log3_coef(0), log9_coef(0), constant(0);
    auto ceil_div = [](long long num, long long den) { return (num + den - 1) / den; };
    switch (view.id) {
        case 1:
            if (g.g_aa == g.g_bb) {
                log6_coef = 1;
                constant = 4;
            } else {
                long long d = g.delta();
                long long chain = std::max(2 * ceil_div(g.g_bb, d) + 1,
                                           ceil_div(g.g_ba, d) + ceil_div(ipos(g.g_bb - g.g_ba), d));
                log9_coef = 1;
                constant = 2 * chain + 4;
            }
            break;
        case 2:
            log6_coef = 2;
            log3_coef = 1;
            constant = 4;
            break;
        case 3:
        case 5: {
            if (g.g_aa == 0 || g.g_bb == 0)
                throw UndefinedGap("lcm gap formula needs both direct gains nonzero");
            long long l = std::lcm(g.g_aa, g.g_bb);
            log6_coef = Rational(l, g.g_aa) + Rational(l, g.g_bb) - 1;
            break;
        }
        case 4:
        case 6:
        case 7:
            log6_coef = 1;
            break;
        default:
            throw UndefinedGap("no per-user gap formula for view " + std::to_string(view.id));
    }
    GapReport report;
    report.view = view;
    report.formula_terms = {{"log6_coefficient", log6_coef},
                            {"log3_coefficient", log3_coef},
                            {"log9_coefficient", log9_coef},
                            {"constant", constant}};
    report.delta_bits = rat_double(log6_coef) * std::log2(6.0) + rat_double(log3_coef) * std::log2(3.0) +
                        rat_double(log9_coef) * std::log2(9.0) + rat_double(constant);
    return report;
}

/// High-SNR gain-exponent ratios; all strictly positive rationals.
struct GdofAlpha {
    Rational a1, a2, a3;  // g_bb/g_aa, g_ba/g_aa, g_ab/g_aa
};

/// Smallest integer state realizing the exponent ratios.
inline DeterministicGains gdof_integer_state(const GdofAlpha& alpha) {
    if (alpha.a1 <= 0 || alpha.a2 <= 0 || alpha.a3 <= 0)
        throw std::invalid_argument("alpha components must be positive");
    Integer l = lcm(lcm(rat_den(alpha.a1), rat_den(alpha.a2)), rat_den(alpha.a3));
    long long gaa = l.convert_to<long long>();
    auto scaled = [&](const Rational& a) {
        Rational v = a * gaa;
        return rat_num(v).convert_to<long long>();
    };
    return {gaa, scaled(alpha.a3), scaled(alpha.a2), scaled(alpha.a1)};
}

/// GDoF region: the deterministic region of the minimal integer state,
/// normalized per axis by the direct gains.
inline RateRegion gdof_region(const ViewId& view, const GdofAlpha& alpha) {
    DeterministicGains g = gdof_integer_state(alpha);
    RateRegion region = tdm_dominating_region(view, g);
    return scale_region(region, Rational(1, g.g_aa), Rational(1, g.g_bb));
}

}  // namespace lvic
