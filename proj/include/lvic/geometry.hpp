#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvic/rational.hpp"
#include "lvic/simplex.hpp"

namespace lvic {

struct UnboundedRegion : std::runtime_error {
    UnboundedRegion() : std::runtime_error("polytope has a recession direction") {}
};

struct BreakpointMiss : std::runtime_error {
    explicit BreakpointMiss(const std::string& what) : std::runtime_error(what) {}
};

/// One halfspace (or hyperplane): sum of coefficient*variable  sense  bound.
struct LinearConstraint {
    std::map<std::string, Rational> coefficients;
    Rational bound;
    Sense sense = Sense::LE;

    LinearConstraint() = default;
    LinearConstraint(std::map<std::string, Rational> coeffs, Sense s, Rational b)
        : coefficients(std::move(coeffs)), bound(std::move(b)), sense(s) {
        prune_zeros();
    }

    Rational coefficient(const std::string& var) const {
        auto it = coefficients.find(var);
        return it == coefficients.end() ? Rational(0) : it->second;
    }

    bool is_constant() const { return coefficients.empty(); }

    bool constant_holds() const {
        if (sense == Sense::LE) return bound >= 0;
        if (sense == Sense::GE) return bound <= 0;
        return bound == 0;
    }

    Rational evaluate(const std::map<std::string, Rational>& point) const {
        Rational acc(0);
        for (const auto& [var, c] : coefficients) {
            auto it = point.find(var);
            if (it != point.end()) acc += c * it->second;
        }
        return acc;
    }

    bool satisfied(const std::map<std::string, Rational>& point) const {
        Rational lhs = evaluate(point);
        if (sense == Sense::LE) return lhs <= bound;
        if (sense == Sense::GE) return lhs >= bound;
        return lhs == bound;
    }

    void prune_zeros() {
        for (auto it = coefficients.begin(); it != coefficients.end();) {
            if (it->second == 0) it = coefficients.erase(it);
            else ++it;
        }
    }

    /// Canonical form: sense LE or EQ, integer coprime coefficients, and for
    /// equalities a positive leading coefficient.
    LinearConstraint normalized() const {
        LinearConstraint r = *this;
        r.prune_zeros();
        if (r.sense == Sense::GE) {
            for (auto& [v, c] : r.coefficients) c = -c;
            r.bound = -r.bound;
            r.sense = Sense::LE;
        }
        if (r.coefficients.empty()) return r;
        Integer l(1), g(0);
        for (const auto& [v, c] : r.coefficients) {
            l = lcm(l, rat_den(c));
            g = gcd(g, rat_num(c));
        }
        Rational scale = Rational(l) / Rational(abs(g));
        for (auto& [v, c] : r.coefficients) c *= scale;
        r.bound *= scale;
        if (r.sense == Sense::EQ && r.coefficients.begin()->second < 0) {
            for (auto& [v, c] : r.coefficients) c = -c;
            r.bound = -r.bound;
        }
        return r;
    }

    bool operator==(const LinearConstraint& o) const {
        return sense == o.sense && bound == o.bound && coefficients == o.coefficients;
    }
    bool operator<(const LinearConstraint& o) const {
        if (sense != o.sense) return sense < o.sense;
        if (coefficients != o.coefficients) return coefficients < o.coefficients;
        return bound < o.bound;
    }
};

using RationalVector = std::vector<Rational>;

/// Intersection of rational halfspaces over a named, ordered variable list.
struct Polytope {
    std::vector<std::string> variables;
    std::vector<LinearConstraint> constraints;
    mutable std::optional<std::vector<RationalVector>> cached_vertices;

    Polytope() = default;
    explicit Polytope(std::vector<std::string> vars) : variables(std::move(vars)) {}

    bool has_variable(const std::string& v) const {
        return std::find(variables.begin(), variables.end(), v) != variables.end();
    }

    void add(LinearConstraint c) {
        cached_vertices.reset();
        constraints.push_back(std::move(c));
    }

    void add(std::map<std::string, Rational> coeffs, Sense sense, Rational bound) {
        add(LinearConstraint(std::move(coeffs), sense, std::move(bound)));
    }

    std::map<std::string, Rational> as_point(const RationalVector& vec) const {
        std::map<std::string, Rational> pt;
        for (std::size_t i = 0; i < variables.size(); ++i) pt[variables[i]] = vec[i];
        return pt;
    }

    bool contains_point(const std::map<std::string, Rational>& pt) const {
        for (const auto& c : constraints)
            if (!c.satisfied(pt)) return false;
        return true;
    }

    bool contains_point(const RationalVector& vec) const { return contains_point(as_point(vec)); }

    /// Exact LP over the constraint system; variables are unrestricted in
    /// sign (regions carry their own quadrant rows).
    SimplexResult maximize(const std::map<std::string, Rational>& objective) const {
        LinearProgram lp;
        std::map<std::string, int> index;
        for (const auto& v : variables) index[v] = lp.add_var(false);
        for (const auto& c : constraints) {
            std::vector<Rational> row(lp.num_vars(), Rational(0));
            for (const auto& [v, coef] : c.coefficients) {
                auto it = index.find(v);
                if (it == index.end()) throw std::logic_error("constraint uses unknown variable " + v);
                row[it->second] = coef;
            }
            if (c.coefficients.empty() && !c.constant_holds()) {
                // Constant-false row: force infeasibility.
                lp.add_row(std::vector<Rational>(lp.num_vars(), Rational(0)), Sense::EQ, Rational(1));
                continue;
            }
            lp.add_row(std::move(row), c.sense, c.bound);
        }
        for (const auto& [v, coef] : objective) {
            auto it = index.find(v);
            if (it == index.end()) throw std::logic_error("objective uses unknown variable " + v);
            lp.objective[it->second] = coef;
        }
        return lp_solve(lp);
    }

    bool is_empty() const { return maximize({}).status == LpStatus::Infeasible; }
};

namespace detail {

inline Polytope canonicalized(const Polytope& p) {
    Polytope out(p.variables);
    std::map<std::pair<int, std::map<std::string, Rational>>, Rational> best_le;
    std::set<LinearConstraint> eqs;
    bool infeasible = false;
    for (const auto& raw : p.constraints) {
        LinearConstraint c = raw.normalized();
        if (c.is_constant()) {
            if (!c.constant_holds()) infeasible = true;
            continue;
        }
        if (c.sense == Sense::EQ) {
            eqs.insert(c);
        } else {
            auto key = std::make_pair(0, c.coefficients);
            auto it = best_le.find(key);
            if (it == best_le.end()) best_le.emplace(key, c.bound);
            else it->second = rat_min(it->second, c.bound);
        }
    }
    if (infeasible) {
        out.add(LinearConstraint({}, Sense::LE, Rational(-1)));
        return out;
    }
    for (const auto& c : eqs) out.add(c);
    for (const auto& [key, bound] : best_le)
        out.add(LinearConstraint(key.second, Sense::LE, bound));
    return out;
}

inline bool is_infeasible_marker(const Polytope& p) {
    for (const auto& c : p.constraints)
        if (c.is_constant() && !c.constant_holds()) return true;
    return false;
}

// Solve the d x d system picked out by `rows` over the polytope variables.
// Returns the unique solution, or nothing when the system is singular.
inline std::optional<RationalVector> solve_square(
    const std::vector<const LinearConstraint*>& rows, const std::vector<std::string>& vars) {
    std::size_t d = vars.size();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m[i][j] = rows[i]->coefficient(vars[j]);
        m[i][d] = rows[i]->bound;
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) return std::nullopt;
        std::swap(m[col], m[piv]);
        Rational inv = Rational(1) / m[col][col];
        for (auto& x : m[col]) x *= inv;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j <= d; ++j) m[i][j] -= f * m[col][j];
        }
    }
    RationalVector sol(d);
    for (std::size_t i = 0; i < d; ++i) sol[i] = m[i][d];
    return sol;
}

}  // namespace detail

/// Drop constraints that the rest of the system already implies. The test is
/// an exact LP: maximize the row's left side over the others.
inline Polytope remove_redundant(const Polytope& p) {
    Polytope work = detail::canonicalized(p);
    if (detail::is_infeasible_marker(work)) return work;
    for (std::size_t i = 0; i < work.constraints.size();) {
        if (work.constraints[i].sense != Sense::LE) {
            ++i;
            continue;
        }
        Polytope rest(work.variables);
        for (std::size_t j = 0; j < work.constraints.size(); ++j)
            if (j != i) rest.add(work.constraints[j]);
        SimplexResult r = rest.maximize(work.constraints[i].coefficients);
        if (r.status == LpStatus::Optimal && r.value <= work.constraints[i].bound)
            work.constraints.erase(work.constraints.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    work.cached_vertices.reset();
    return work;
}

/// Exact Fourier-Motzkin projection of one variable. Equalities touching the
/// variable are substituted first; an empty shadow comes back as the
/// constant-false system.
inline Polytope fm_eliminate(const Polytope& system, const std::string& var) {
    std::vector<std::string> rest_vars;
    for (const auto& v : system.variables)
        if (v != var) rest_vars.push_back(v);
    if (rest_vars.size() == system.variables.size()) {
        // Variable absent from the list: projection is the identity.
        Polytope same = detail::canonicalized(system);
        return same;
    }

    Polytope work = detail::canonicalized(system);
    Polytope out(rest_vars);
    if (detail::is_infeasible_marker(work)) {
        out.add(LinearConstraint({}, Sense::LE, Rational(-1)));
        return out;
    }

    // Equality substitution: var = (bound - rest) / coeff.
    for (std::size_t e = 0; e < work.constraints.size(); ++e) {
        const LinearConstraint& eq = work.constraints[e];
        if (eq.sense != Sense::EQ || eq.coefficient(var) == 0) continue;
        Rational cv = eq.coefficient(var);
        for (std::size_t i = 0; i < work.constraints.size(); ++i) {
            if (i == e) continue;
            LinearConstraint& row = work.constraints[i];
            Rational rv = row.coefficient(var);
            if (rv == 0) continue;
            Rational f = rv / cv;
            for (const auto& [u, c] : eq.coefficients)
                if (u != var) row.coefficients[u] -= f * c;
            row.coefficients.erase(var);
            row.bound -= f * eq.bound;
            row.prune_zeros();
        }
        for (std::size_t i = 0; i < work.constraints.size(); ++i)
            if (i != e) out.add(work.constraints[i]);
        return detail::canonicalized(out);
    }

    std::vector<const LinearConstraint*> pos, neg;
    for (const auto& c : work.constraints) {
        Rational cv = c.coefficient(var);
        if (cv == 0) out.add(c);
        else if (cv > 0) pos.push_back(&c);
        else neg.push_back(&c);
    }
    for (const auto* p : pos) {
        for (const auto* n : neg) {
            Rational pv = p->coefficient(var), nv = n->coefficient(var);
            LinearConstraint combo;
            combo.sense = Sense::LE;
            combo.bound = p->bound * (-nv) + n->bound * pv;
            for (const auto& [u, c] : p->coefficients)
                if (u != var) combo.coefficients[u] += c * (-nv);
            for (const auto& [u, c] : n->coefficients)
                if (u != var) combo.coefficients[u] += c * pv;
            combo.prune_zeros();
            out.add(combo);
        }
    }
    return detail::canonicalized(out);
}

/// Every vertex of a bounded polytope: feasible intersections of d
/// independent constraint boundaries, deduplicated, in lexicographic order.
inline const std::vector<RationalVector>& vertices(const Polytope& poly) {
    if (poly.cached_vertices) return *poly.cached_vertices;
    Polytope work = detail::canonicalized(poly);
    std::vector<RationalVector> found;
    if (!detail::is_infeasible_marker(work)) {
        for (const auto& v : work.variables) {
            for (int dir : {1, -1}) {
                SimplexResult s = work.maximize({{v, Rational(dir)}});
                if (s.status == LpStatus::Unbounded) throw UnboundedRegion();
                if (s.status == LpStatus::Infeasible) goto done;
            }
        }
        {
            std::size_t d = work.variables.size();
            std::size_t m = work.constraints.size();
            std::vector<const LinearConstraint*> pick(d);
            std::vector<std::size_t> idx(d);
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t k) {
                if (k == d) {
                    auto sol = detail::solve_square(pick, work.variables);
                    if (sol && work.contains_point(*sol)) found.push_back(*sol);
                    return;
                }
                for (std::size_t i = from; i + (d - k) <= m; ++i) {
                    pick[k] = &work.constraints[i];
                    rec(i + 1, k + 1);
                }
            };
            if (m >= d && d > 0) rec(0, 0);
        }
    }
done:
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    poly.cached_vertices = std::move(found);
    return *poly.cached_vertices;
}

/// Finite union of convex rational pieces over {r_a, r_b}. Pieces may
/// overlap; degenerate (empty or flat) pieces are kept.
struct RateRegion {
    std::vector<Polytope> pieces;

    RateRegion() = default;
    explicit RateRegion(Polytope piece) { pieces.push_back(std::move(piece)); }

    bool contains_point(const std::map<std::string, Rational>& pt) const {
        for (const auto& p : pieces)
            if (p.contains_point(pt)) return true;
        return false;
    }

    bool contains_point(const Rational& ra, const Rational& rb) const {
        return contains_point({{"r_a", ra}, {"r_b", rb}});
    }

    /// Sorted union of the piece vertex sets.
    std::vector<RationalVector> all_vertices() const {
        std::vector<RationalVector> out;
        for (const auto& p : pieces) {
            const auto& vs = vertices(p);
            out.insert(out.end(), vs.begin(), vs.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

/// 0 for a point, 1 for a segment, 2 for a full-dimensional piece; -1 when
/// the piece is empty.
inline int piece_dimension(const Polytope& piece) {
    const auto& vs = vertices(piece);
    if (vs.empty()) return piece.is_empty() ? -1 : 2;  // no vertices but feasible: unbounded guard
    if (vs.size() == 1) return 0;
    if (vs.size() == 2) return 1;
    const RationalVector& a = vs[0];
    for (std::size_t i = 2; i < vs.size(); ++i) {
        Rational cross = (vs[1][0] - a[0]) * (vs[i][1] - a[1]) - (vs[1][1] - a[1]) * (vs[i][0] - a[0]);
        if (cross != 0) return 2;
    }
    return 1;
}

namespace detail {

// Convex hull of exact 2-D points (monotone chain), counterclockwise.
inline std::vector<RationalVector> hull2d(std::vector<RationalVector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RationalVector> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline std::vector<std::pair<RationalVector, RationalVector>> piece_edges(const Polytope& piece) {
    std::vector<std::pair<RationalVector, RationalVector>> edges;
    auto hull = hull2d(vertices(piece));
    if (hull.size() == 2) {
        edges.emplace_back(hull[0], hull[1]);
    } else if (hull.size() > 2) {
        for (std::size_t i = 0; i < hull.size(); ++i)
            edges.emplace_back(hull[i], hull[(i + 1) % hull.size()]);
    }
    return edges;
}

}  // namespace detail

/// Set containment of one union of pieces in another. Vertices of the inner
/// region must land in the outer one, and every inner edge is checked at the
/// rational midpoints of the sub-segments cut out by the outer constraint
/// lines, which decides coverage exactly.
inline bool contains(const RateRegion& outer, const RateRegion& inner,
                     RationalVector* witness = nullptr) {
    auto fail = [&](const RationalVector& pt) {
        if (witness) *witness = pt;
        return false;
    };
    for (const auto& piece : inner.pieces) {
        const auto& vs = vertices(piece);
        for (const auto& v : vs)
            if (!outer.contains_point(piece.as_point(v))) return fail(v);
        for (const auto& [p, q] : detail::piece_edges(piece)) {
            std::vector<Rational> cuts = {Rational(0), Rational(1)};
            RationalVector dir = {q[0] - p[0], q[1] - p[1]};
            for (const auto& opiece : outer.pieces) {
                for (const auto& c : opiece.constraints) {
                    Rational ca = c.coefficient("r_a"), cb = c.coefficient("r_b");
                    Rational denom = ca * dir[0] + cb * dir[1];
                    if (denom == 0) continue;
                    Rational t = (c.bound - ca * p[0] - cb * p[1]) / denom;
                    if (t > 0 && t < 1) cuts.push_back(t);
                }
            }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                Rational tm = (cuts[i] + cuts[i + 1]) / 2;
                RationalVector mid = {p[0] + tm * dir[0], p[1] + tm * dir[1]};
                if (!outer.contains_point(piece.as_point(mid))) return fail(mid);
            }
        }
    }
    return true;
}

inline bool region_equal(const RateRegion& a, const RateRegion& b) {
    return contains(a, b) && contains(b, a);
}

/// Exact union of a polytope family over one parameter. On each breakpoint
/// subinterval the family must be affine in the parameter (verified by a
/// three-point sample); the subinterval union is the lifted system with the
/// parameter projected back out.
inline RateRegion union_over_parameter(
    const std::function<Polytope(const Rational&)>& family, const Rational& lo, const Rational& hi,
    const std::vector<Rational>& breakpoints, const std::string& param = "tau") {
    std::vector<Rational> pts = {lo, hi};
    for (const auto& b : breakpoints)
        if (b > lo && b < hi) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    RateRegion region;
    auto push_unique = [&](Polytope piece) {
        Polytope canon = detail::canonicalized(piece);
        std::set<LinearConstraint> key(canon.constraints.begin(), canon.constraints.end());
        for (const auto& existing : region.pieces) {
            std::set<LinearConstraint> ekey(existing.constraints.begin(), existing.constraints.end());
            if (ekey == key) return;
        }
        region.pieces.push_back(std::move(canon));
    };

    if (pts.size() == 1) {
        push_unique(remove_redundant(family(pts[0])));
        return region;
    }

    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const Rational& t0 = pts[s];
        const Rational& t1 = pts[s + 1];
        Rational tm = (t0 + t1) / 2;
        Polytope p0 = family(t0), p1 = family(t1), pm = family(tm);
        if (p0.variables != p1.variables || p0.variables != pm.variables ||
            p0.constraints.size() != p1.constraints.size() ||
            p0.constraints.size() != pm.constraints.size())
            throw BreakpointMiss("family shape changes inside a subinterval");
        if (std::find(p0.variables.begin(), p0.variables.end(), param) != p0.variables.end())
            throw BreakpointMiss("parameter name collides with a family variable");

        Polytope lifted(p0.variables);
        lifted.variables.push_back(param);
        for (std::size_t k = 0; k < p0.constraints.size(); ++k) {
            const LinearConstraint& c0 = p0.constraints[k];
            const LinearConstraint& c1 = p1.constraints[k];
            const LinearConstraint& cm = pm.constraints[k];
            if (c0.sense != c1.sense || c0.sense != cm.sense ||
                c0.coefficients != c1.coefficients || c0.coefficients != cm.coefficients)
                throw BreakpointMiss("constraint coefficients vary inside a subinterval");
            Rational slope = (c1.bound - c0.bound) / (t1 - t0);
            if (c0.bound + slope * (tm - t0) != cm.bound)
                throw BreakpointMiss("bound is not affine inside a subinterval");
            LinearConstraint row = c0;
            if (slope != 0) row.coefficients[param] = -slope;
            row.bound = c0.bound - slope * t0;
            lifted.add(row);
        }
        lifted.add({{{param, Rational(1)}}, Sense::GE, t0});
        lifted.add({{{param, Rational(1)}}, Sense::LE, t1});

        Polytope shadow = remove_redundant(fm_eliminate(lifted, param));
        push_unique(std::move(shadow));
    }
    return region;
}

/// Region scaled per axis: point (x, y) maps to (sa*x, sb*y).
inline RateRegion scale_region(const RateRegion& region, const Rational& sa, const Rational& sb) {
    RateRegion out;
    for (const auto& piece : region.pieces) {
        Polytope q(piece.variables);
        for (const auto& c : piece.constraints) {
            LinearConstraint s = c;
            for (auto& [v, coef] : s.coefficients) {
                if (v == "r_a") coef /= sa;
                else if (v == "r_b") coef /= sb;
            }
            q.add(s);
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

}  // namespace lvic
