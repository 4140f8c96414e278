#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvic/geometry.hpp"
#include "lvic/rational.hpp"

namespace lvic {

struct WidthMismatch : std::runtime_error {
    explicit WidthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroCapacityViolation : std::runtime_error {
    explicit ZeroCapacityViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateInterference : std::runtime_error {
    explicit DegenerateInterference(const std::string& what) : std::runtime_error(what) {}
};

/// Channel state of the linear deterministic IC: four signal-level gains.
struct DeterministicGains {
    long long g_aa = 0, g_ab = 0, g_ba = 0, g_bb = 0;

    long long delta() const { return g_aa - g_bb; }
    long long q_a() const { return std::max(g_aa, g_ba); }
    long long q_b() const { return std::max(g_bb, g_ab); }
    long long u_a_plus() const { return ipos(g_aa - g_ba); }
    long long u_a_minus() const { return ipos(g_ba - g_aa); }
    long long u_b_plus() const { return ipos(g_bb - g_ab); }
    long long u_b_minus() const { return ipos(g_ab - g_bb); }

    /// Relabel the two users (a <-> b). Cross links swap with each other.
    DeterministicGains swapped() const { return {g_bb, g_ba, g_ab, g_aa}; }

    DeterministicGains scaled(long long c) const { return {c * g_aa, c * g_ab, c * g_ba, c * g_bb}; }

    auto operator<=>(const DeterministicGains&) const = default;
};

enum LinkBit : unsigned { kLinkAA = 1, kLinkAB = 2, kLinkBA = 4, kLinkBB = 8 };

/// One of the eight knowledge structures. Masks record which of the four
/// links each transmitter knows exactly; unknown links are known by support
/// only.
struct ViewId {
    int id = 0;
    unsigned known_to_a = 0;
    unsigned known_to_b = 0;

    static ViewId of(int id) {
        switch (id) {
            case 0: return {0, kLinkAA | kLinkAB | kLinkBA | kLinkBB, kLinkAA | kLinkAB | kLinkBA | kLinkBB};
            case 1: return {1, kLinkAA | kLinkAB | kLinkBB, kLinkAA | kLinkBA | kLinkBB};
            case 2: return {2, kLinkAA | kLinkAB | kLinkBA, kLinkAB | kLinkBA | kLinkBB};
            case 3: return {3, kLinkAA | kLinkBA | kLinkBB, kLinkAA | kLinkAB | kLinkBB};
            case 4: return {4, kLinkAA | kLinkAB, kLinkBA | kLinkBB};
            case 5: return {5, kLinkAA | kLinkBB, kLinkAA | kLinkBB};
            case 6: return {6, kLinkAA | kLinkBA, kLinkAB | kLinkBB};
            case 7: return {7, kLinkAA, kLinkBB};
            default: throw std::invalid_argument("view id must be in 0..7");
        }
    }

    unsigned common_mask() const { return known_to_a & known_to_b; }
};

inline std::array<long long, 4> link_values(const DeterministicGains& g) {
    return {g.g_aa, g.g_ab, g.g_ba, g.g_bb};
}

/// Gains visible under a mask, in fixed aa,ab,ba,bb order; hidden links are
/// reported as -1. Two states give the same key exactly when the holder of
/// the mask cannot tell them apart.
inline std::array<long long, 4> masked_key(const DeterministicGains& g, unsigned mask) {
    auto vals = link_values(g);
    std::array<long long, 4> key{};
    for (int i = 0; i < 4; ++i) key[i] = (mask & (1u << i)) ? vals[i] : -1;
    return key;
}

/// Per-user message split of the Han-Kobayashi scheme.
struct ComponentRates {
    Rational r_ap, r_ac, r_bp, r_bc;
    Rational r_a() const { return r_ap + r_ac; }
    Rational r_b() const { return r_bp + r_bc; }
};

/// Fixed-width word of signal levels, most significant level first.
struct BitVectorWord {
    std::vector<int> levels;

    static BitVectorWord from_string(const std::string& bits) {
        BitVectorWord w;
        for (char c : bits) {
            if (c != '0' && c != '1') throw std::invalid_argument("bit vector must be over {0,1}");
            w.levels.push_back(c - '0');
        }
        return w;
    }

    std::size_t width() const { return levels.size(); }

    std::string to_string() const {
        std::string s;
        for (int b : levels) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    BitVectorWord operator^(const BitVectorWord& o) const {
        if (width() != o.width()) throw WidthMismatch("xor of words with different widths");
        BitVectorWord r = *this;
        for (std::size_t i = 0; i < levels.size(); ++i) r.levels[i] ^= o.levels[i];
        return r;
    }

    bool operator==(const BitVectorWord& o) const { return levels == o.levels; }
};

/// One use of the deterministic channel: shift-matrix attenuation and
/// mod-2 superposition. Input widths are max over each transmitter's
/// outgoing gains; output widths are q_a, q_b.
inline std::pair<BitVectorWord, BitVectorWord> ldic_transmit(const DeterministicGains& g,
                                                             const BitVectorWord& x_a,
                                                             const BitVectorWord& x_b) {
    long long w_a = std::max(g.g_aa, g.g_ab);
    long long w_b = std::max(g.g_bb, g.g_ba);
    if (static_cast<long long>(x_a.width()) != w_a)
        throw WidthMismatch("x_a must have width max{g_aa,g_ab} = " + std::to_string(w_a));
    if (static_cast<long long>(x_b.width()) != w_b)
        throw WidthMismatch("x_b must have width max{g_bb,g_ba} = " + std::to_string(w_b));

    auto receive = [](const BitVectorWord& x, long long gain, long long q, BitVectorWord& y) {
        // Top `gain` levels of x land on the lowest `gain` levels of y.
        for (long long i = 0; i < q; ++i) {
            long long j = i - (q - gain);
            if (j >= 0 && j < gain) y.levels[static_cast<std::size_t>(i)] ^= x.levels[static_cast<std::size_t>(j)];
        }
    };
    BitVectorWord y_a, y_b;
    y_a.levels.assign(static_cast<std::size_t>(g.q_a()), 0);
    y_b.levels.assign(static_cast<std::size_t>(g.q_b()), 0);
    receive(x_a, g.g_aa, g.q_a(), y_a);
    receive(x_b, g.g_ba, g.q_a(), y_a);
    receive(x_b, g.g_bb, g.q_b(), y_b);
    receive(x_a, g.g_ab, g.q_b(), y_b);
    return {y_a, y_b};
}

namespace detail {

inline Polytope rate_piece() {
    Polytope p({"r_a", "r_b"});
    p.add({{{"r_a", Rational(1)}}, Sense::GE, Rational(0)});
    p.add({{{"r_b", Rational(1)}}, Sense::GE, Rational(0)});
    return p;
}

inline RateRegion swap_region_axes(const RateRegion& region) {
    RateRegion out;
    for (const auto& piece : region.pieces) {
        Polytope q({"r_a", "r_b"});
        for (const auto& c : piece.constraints) {
            LinearConstraint s;
            s.sense = c.sense;
            s.bound = c.bound;
            for (const auto& [v, coef] : c.coefficients)
                s.coefficients[v == "r_a" ? "r_b" : (v == "r_b" ? "r_a" : v)] = coef;
            q.add(s);
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

/// Project a polytope over rates plus auxiliary variables down to (r_a, r_b).
/// Intermediate systems are pruned when elimination lets them grow.
inline Polytope project_to_rates(Polytope poly) {
    std::vector<std::string> aux;
    for (const auto& v : poly.variables)
        if (v != "r_a" && v != "r_b") aux.push_back(v);
    for (const auto& v : aux) {
        poly = fm_eliminate(poly, v);
        if (poly.constraints.size() > 80) poly = remove_redundant(poly);
    }
    return remove_redundant(poly);
}

}  // namespace detail

/// Boundary point ((1-tau) g_aa, tau g_bb) of the time-division segment.
inline std::pair<Rational, Rational> tdm_boundary(long long g_aa, long long g_bb, const Rational& tau) {
    return {(Rational(1) - tau) * g_aa, tau * g_bb};
}

/// Lower-left hull of the TDM segment: r_a/g_aa + r_b/g_bb <= 1 in the
/// non-negative quadrant, with zero-gain axes collapsing accordingly.
inline RateRegion tdm_region(long long g_aa, long long g_bb) {
    Polytope p = detail::rate_piece();
    if (g_aa > 0 && g_bb > 0) {
        p.add({{{"r_a", Rational(1, g_aa)}, {"r_b", Rational(1, g_bb)}}, Sense::LE, Rational(1)});
    } else {
        p.add({{{"r_a", Rational(1)}}, Sense::LE, Rational(g_aa)});
        p.add({{{"r_b", Rational(1)}}, Sense::LE, Rational(g_bb)});
    }
    return RateRegion(std::move(p));
}

/// r_a/C_a + r_b/C_b with C_i = g_ii; the caller compares against 1. A user
/// with zero capacity must carry zero rate and contributes nothing.
inline Rational min_performance(const std::pair<Rational, Rational>& r, const DeterministicGains& g) {
    Rational acc(0);
    if (g.g_aa == 0) {
        if (r.first > 0) throw ZeroCapacityViolation("r_a > 0 with g_aa = 0");
    } else {
        acc += r.first / g.g_aa;
    }
    if (g.g_bb == 0) {
        if (r.second > 0) throw ZeroCapacityViolation("r_b > 0 with g_bb = 0");
    } else {
        acc += r.second / g.g_bb;
    }
    return acc;
}

/// The deterministic HK component region: each receiver decodes a virtual
/// three-user MAC over its private message and both common messages.
inline Polytope hk_component_polytope(const DeterministicGains& g) {
    Polytope p({"r_ap", "r_ac", "r_bp", "r_bc"});
    auto R = [](long long v) { return Rational(v); };
    for (const auto& v : p.variables) p.add({{{v, Rational(1)}}, Sense::GE, Rational(0)});
    auto le = [&](std::map<std::string, Rational> lhs, long long bound) {
        p.add(std::move(lhs), Sense::LE, R(bound));
    };
    Rational one(1);
    le({{"r_ap", one}}, ipos(g.g_aa - g.g_ab));
    le({{"r_ac", one}}, std::min(g.g_aa, g.g_ab));
    le({{"r_ap", one}, {"r_ac", one}}, g.g_aa);
    le({{"r_ap", one}, {"r_bc", one}}, std::max(g.g_aa - g.g_ab, g.g_ba));
    le({{"r_ap", one}, {"r_ac", one}, {"r_bc", one}}, std::max(g.g_aa, g.g_ba));
    le({{"r_bp", one}}, ipos(g.g_bb - g.g_ba));
    le({{"r_bc", one}}, std::min(g.g_bb, g.g_ba));
    le({{"r_bp", one}, {"r_bc", one}}, g.g_bb);
    le({{"r_bp", one}, {"r_ac", one}}, std::max(g.g_bb - g.g_ba, g.g_ab));
    le({{"r_bp", one}, {"r_bc", one}, {"r_ac", one}}, std::max(g.g_bb, g.g_ab));
    le({{"r_ac", one}, {"r_bc", one}}, std::min(std::max(g.g_aa, g.g_ba), std::max(g.g_bb, g.g_ab)));
    return p;
}

inline bool in_hk_polytope(const DeterministicGains& g, const ComponentRates& c) {
    return hk_component_polytope(g).contains_point(
        {{"r_ap", c.r_ap}, {"r_ac", c.r_ac}, {"r_bp", c.r_bp}, {"r_bc", c.r_bc}});
}

/// HK region in rate space: component polytope with r_i <= r_ip + r_ic,
/// components projected out.
inline RateRegion hk_region_ldic(const DeterministicGains& g) {
    Polytope p({"r_a", "r_b", "r_ap", "r_ac", "r_bp", "r_bc"});
    for (const auto& c : hk_component_polytope(g).constraints) p.add(c);
    Rational one(1);
    p.add({{{"r_a", one}, {"r_ap", -one}, {"r_ac", -one}}, Sense::LE, Rational(0)});
    p.add({{{"r_b", one}, {"r_bp", -one}, {"r_bc", -one}}, Sense::LE, Rational(0)});
    p.add({{{"r_a", one}}, Sense::GE, Rational(0)});
    p.add({{{"r_b", one}}, Sense::GE, Rational(0)});
    return RateRegion(detail::project_to_rates(std::move(p)));
}

/// Full-view capacity region, the concise seven-inequality form. The printed
/// single-user bound on r_b uses g_aa in the source; the g_bb form is the
/// intended one and is the default, with strict_paper reproducing the
/// printed text for audits.
inline RateRegion fullview_region(const DeterministicGains& g, bool strict_paper = false) {
    Polytope p = detail::rate_piece();
    Rational one(1), two(2);
    auto le = [&](std::map<std::string, Rational> lhs, long long bound) {
        p.add(std::move(lhs), Sense::LE, Rational(bound));
    };
    le({{"r_a", one}}, g.g_aa);
    le({{"r_b", one}}, strict_paper ? g.g_aa : g.g_bb);
    le({{"r_a", one}, {"r_b", one}}, ipos(g.g_aa - g.g_ba) + std::max(g.g_bb, g.g_ba));
    le({{"r_a", one}, {"r_b", one}}, ipos(g.g_bb - g.g_ab) + std::max(g.g_aa, g.g_ab));
    le({{"r_a", one}, {"r_b", one}},
       std::max(g.g_ab, ipos(g.g_aa - g.g_ba)) + std::max(g.g_ba, ipos(g.g_bb - g.g_ab)));
    le({{"r_a", two}, {"r_b", one}},
       std::max(g.g_aa, g.g_ab) + ipos(g.g_aa - g.g_ba) + std::max(g.g_ba, ipos(g.g_bb - g.g_ab)));
    le({{"r_a", one}, {"r_b", two}},
       std::max(g.g_bb, g.g_ba) + ipos(g.g_bb - g.g_ab) + std::max(g.g_ab, ipos(g.g_aa - g.g_ba)));
    return RateRegion(remove_redundant(p));
}

namespace detail {

// Bound of the form c0 + c1 * tau. In symbolic mode tau is a polytope
// variable; otherwise it is substituted with a fixed rational.
struct TauBound {
    Rational c0, c1;
};

inline void add_tau_row(Polytope& p, std::map<std::string, Rational> lhs, const TauBound& b,
                        const Rational* tau_value, const std::string& tau_var) {
    if (tau_value) {
        p.add(std::move(lhs), Sense::LE, b.c0 + b.c1 * (*tau_value));
    } else {
        if (b.c1 != 0) lhs[tau_var] = -b.c1;
        p.add(std::move(lhs), Sense::LE, b.c0);
    }
}

// One minimized-over-l constraint family: lhs <= max(A - l*delta, C) +
// (tau_base + l*delta - maybe g_bb) * tau, for l = 0..cap. Past the cap
// every branch is non-decreasing in l, so the conjunction over 0..cap is
// exactly the min over all l >= 0.
struct EllFamily {
    std::map<std::string, Rational> lhs;
    long long A = 0;
    long long C = 0;
    long long tau_base = 0;        // tau coefficient at l = 0, excluding l*delta
    bool shift_minus_gbb = false;  // subtract g_bb * tau (rows 3 and 12)
};

// The View-1 constraint system over rates and HK components, assuming
// g_aa >= g_bb. Fixed row order regardless of tau.
inline Polytope view1_system_impl(const DeterministicGains& g, const Rational* tau_value) {
    if (g.g_aa < g.g_bb) throw std::logic_error("view1_system requires g_aa >= g_bb");
    const std::string tau = "tau_b";
    long long d = g.delta();
    Polytope p({"r_a", "r_b", "r_ap", "r_ac", "r_bp", "r_bc"});
    if (!tau_value) p.variables.push_back(tau);
    Rational one(1);
    for (const auto& v : std::vector<std::string>{"r_a", "r_b", "r_ap", "r_ac", "r_bp", "r_bc"})
        p.add({{{v, one}}, Sense::GE, Rational(0)});
    p.add({{{"r_a", one}, {"r_ap", -one}, {"r_ac", -one}}, Sense::LE, Rational(0)});
    p.add({{{"r_b", one}, {"r_bp", -one}, {"r_bc", -one}}, Sense::LE, Rational(0)});

    auto row = [&](std::map<std::string, Rational> lhs, TauBound b) {
        add_tau_row(p, std::move(lhs), b, tau_value, tau);
    };
    row({{"r_a", one}}, {Rational(g.g_aa), Rational(-g.g_bb)});
    row({{"r_b", one}}, {Rational(0), Rational(g.g_aa)});
    row({{"r_ac", one}}, {Rational(g.g_ab), Rational(0)});
    row({{"r_bc", one}}, {Rational(0), Rational(g.g_aa)});
    row({{"r_bc", one}, {"r_a", one}}, {Rational(std::max(g.g_ba, g.g_aa)), Rational(0)});
    row({{"r_ap", one}}, {Rational(ipos(g.g_aa - g.g_ab)), Rational(0)});

    std::vector<EllFamily> fams;
    fams.push_back({{{"r_ac", one}}, g.g_bb, g.g_ab, 0, true});
    fams.push_back({{{"r_bc", one}}, g.g_ba, ipos(g.g_ba - g.g_aa), 0, false});
    fams.push_back({{{"r_ac", one}, {"r_b", one}}, g.g_bb, g.g_ab, 0, false});
    fams.push_back({{{"r_bc", one}, {"r_b", one}}, g.g_ba - d, ipos(g.g_ba - g.g_aa), g.g_aa, false});
    fams.push_back({{{"r_ac", one}, {"r_bp", one}}, g.g_bb - g.g_ba, g.g_ab, 0, false});
    fams.push_back({{{"r_bc", one}, {"r_ap", one}}, g.g_ba,
                    std::max({ipos(g.g_aa - g.g_ab), g.g_ba - g.g_ab, g.g_ba - g.g_aa}), 0, false});
    fams.push_back({{{"r_ap", one}}, g.g_bb, ipos(g.g_aa - g.g_ab), 0, true});
    fams.push_back({{{"r_bp", one}}, g.g_bb - g.g_ba, 0, 0, false});
    for (const auto& f : fams) {
        long long cap = 0;
        if (d > 0 && f.A > f.C) cap = (f.A - f.C + d - 1) / d;
        for (long long l = 0; l <= cap; ++l) {
            Rational c0(std::max(f.A - l * d, f.C));
            Rational c1(f.tau_base + l * d - (f.shift_minus_gbb ? g.g_bb : 0));
            row(f.lhs, {c0, c1});
        }
    }
    // Achievability side: component codebooks must also form
    // a decodable HK code, which the bound list alone does not imply for
    // every gain pattern.
    for (const auto& c : hk_component_polytope(g).constraints) p.add(c);
    if (!tau_value) {
        p.add({{{tau, one}}, Sense::GE, Rational(0)});
        p.add({{{tau, one}}, Sense::LE, Rational(1)});
    }
    return p;
}

inline Polytope view1_system(const DeterministicGains& g, const Rational& tau_b) {
    return view1_system_impl(g, &tau_b);
}

inline Polytope view2_system(const DeterministicGains& g, const Rational& tau_a) {
    Polytope p = rate_piece();
    Rational tau_b = Rational(1) - tau_a;
    auto user = [&](const std::string& var, long long dir, long long in1, long long in2,
                    const Rational& tau) {
        Rational one(1);
        p.add({{{var, one}}, Sense::LE, Rational(dir)});
        p.add({{{var, one}}, Sense::LE, Rational(ipos(dir - in1)) + Rational(in1) * tau});
        p.add({{{var, one}}, Sense::LE, Rational(ipos(dir - in2)) + Rational(in2) * tau});
        p.add({{{var, one}}, Sense::LE, Rational(ipos(dir - in1 - in2)) + Rational(in1 + in2) * tau});
    };
    user("r_a", g.g_aa, g.g_ab, g.g_ba, tau_a);
    user("r_b", g.g_bb, g.g_ba, g.g_ab, tau_b);
    return p;
}

}  // namespace detail

/// View-1 region at a fixed tau_b, projected to rate space.
inline Polytope view1_region(const DeterministicGains& g, const Rational& tau_b) {
    if (g.g_aa >= g.g_bb)
        return detail::project_to_rates(detail::view1_system(g, tau_b));
    RateRegion flipped(detail::project_to_rates(detail::view1_system(g.swapped(), tau_b)));
    return detail::swap_region_axes(flipped).pieces.front();
}

/// Union of the View-1 family over tau_b in [0,1]. Every min-over-l branch
/// is materialized as its own row, so each bound is affine in tau_b, there
/// are no interior breakpoints, and the union is the lifted system with the
/// components and then tau_b projected out.
inline RateRegion view1_union(const DeterministicGains& g) {
    if (g.g_aa < g.g_bb) return detail::swap_region_axes(view1_union(g.swapped()));
    return RateRegion(detail::project_to_rates(detail::view1_system_impl(g, nullptr)));
}

/// View-2 region at a fixed tau_a (tau_b = 1 - tau_a).
inline Polytope view2_region(const DeterministicGains& g, const Rational& tau_a) {
    return remove_redundant(detail::view2_system(g, tau_a));
}

inline RateRegion view2_union(const DeterministicGains& g) {
    auto family = [&](const Rational& t) { return detail::view2_system(g, t); };
    return union_over_parameter(family, Rational(0), Rational(1), {}, "tau_a");
}

/// The Fourier-Motzkin corollary form of the View-2 region. Needs both
/// interference gains nonzero; fall back to view2_union otherwise.
inline RateRegion view2_fm(const DeterministicGains& g) {
    if (g.g_ab == 0 || g.g_ba == 0)
        throw DegenerateInterference("view2_fm needs g_ab > 0 and g_ba > 0");
    Polytope p = detail::rate_piece();
    Rational one(1);
    Rational ab(g.g_ab), ba(g.g_ba);
    auto le = [&](Rational ca, Rational cb, Rational bound) {
        p.add({{{"r_a", std::move(ca)}, {"r_b", std::move(cb)}}, Sense::LE, std::move(bound)});
    };
    le(one, Rational(0), Rational(g.g_aa));
    le(Rational(0), one, Rational(g.g_bb));
    le(one, one, Rational(ipos(g.g_aa - g.g_ba) + std::max(g.g_bb, g.g_ba)));
    le(one, one, Rational(ipos(g.g_bb - g.g_ab) + std::max(g.g_aa, g.g_ab)));
    le(one, one,
       Rational(std::max(g.g_ab, g.g_aa - g.g_ba) + std::max(g.g_ba, g.g_bb - g.g_ab)));
    le((ab + ba) / ba, one,
       ab / ba * std::max(g.g_aa, g.g_ba) + ipos(g.g_aa - g.g_ba) + std::max(g.g_ba, g.g_bb - g.g_ab));
    le(one, (ab + ba) / ba,
       ab / ba * std::max(g.g_bb, g.g_ba) + ipos(g.g_bb - g.g_ba) + std::max(g.g_ba, g.g_aa - g.g_ab));
    le((ab + ba) / ab, one,
       ba / ab * std::max(g.g_aa, g.g_ab) + ipos(g.g_aa - g.g_ab) + std::max(g.g_ab, g.g_bb - g.g_ba));
    le(one, (ab + ba) / ab,
       ba / ab * std::max(g.g_bb, g.g_ab) + ipos(g.g_bb - g.g_ab) + std::max(g.g_ab, g.g_aa - g.g_ba));
    return RateRegion(remove_redundant(p));
}

namespace detail {

inline RateRegion tdm_rectangle_union(const DeterministicGains& g) {
    auto family = [&](const Rational& t) {
        Polytope p = rate_piece();
        p.add({{{"r_a", Rational(1)}}, Sense::LE, Rational(g.g_aa) * t});
        p.add({{{"r_b", Rational(1)}}, Sense::LE, Rational(g.g_bb) * (Rational(1) - t)});
        return p;
    };
    return union_over_parameter(family, Rational(0), Rational(1), {}, "tau_a");
}

}  // namespace detail

/// Views 3 and 5: TDM with the time share allowed to depend on the common
/// direct gains. The region is the TDM hull.
inline RateRegion views35_region(const DeterministicGains& g) {
    return detail::tdm_rectangle_union(g);
}

/// Views 4, 6 and 7: TDM with one global time share. Same region.
inline RateRegion views467_region(const DeterministicGains& g) {
    return detail::tdm_rectangle_union(g);
}

/// Dispatch over the per-view theorems.
inline RateRegion tdm_dominating_region(const ViewId& view, const DeterministicGains& g) {
    switch (view.id) {
        case 0: return fullview_region(g);
        case 1: return view1_union(g);
        case 2: return view2_union(g);
        case 3:
        case 5: return views35_region(g);
        case 4:
        case 6:
        case 7: return views467_region(g);
        default: throw std::invalid_argument("view id must be in 0..7");
    }
}

inline RateRegion tdm_dominating_region(int view_id, const DeterministicGains& g) {
    return tdm_dominating_region(ViewId::of(view_id), g);
}

/// Deterministic MAC capacity region: per-user bounds plus, for every subset
/// of users, sum rate at most the best gain in the subset.
inline Polytope lvmac_capacity(const std::vector<long long>& gains) {
    std::size_t k = gains.size();
    if (k < 2) throw std::invalid_argument("lvmac_capacity needs at least 2 users");
    std::vector<std::string> vars;
    if (k == 2) {
        vars = {"r_a", "r_b"};
    } else {
        for (std::size_t i = 1; i <= k; ++i) vars.push_back("r_" + std::to_string(i));
    }
    Polytope p(vars);
    Rational one(1);
    for (std::size_t i = 0; i < k; ++i) {
        p.add({{{vars[i], one}}, Sense::GE, Rational(0)});
        p.add({{{vars[i], one}}, Sense::LE, Rational(gains[i])});
    }
    for (unsigned subset = 1; subset < (1u << k); ++subset) {
        if (__builtin_popcount(subset) < 2) continue;
        std::map<std::string, Rational> lhs;
        long long best = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (subset & (1u << i)) {
                lhs[vars[i]] = one;
                best = std::max(best, gains[i]);
            }
        }
        p.add(std::move(lhs), Sense::LE, Rational(best));
    }
    return p;
}

}  // namespace lvic
