#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvic/ldic.hpp"

namespace lvic {

struct GridTooLarge : std::runtime_error {
    explicit GridTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct GridNotClosed : std::runtime_error {
    explicit GridNotClosed(const std::string& what) : std::runtime_error(what) {}
};

struct LPSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational optimal_slack;
    std::map<std::string, Rational> witness;
};

using RealizationKey = std::array<long long, 4>;

inline std::string key_to_string(const RealizationKey& key) {
    static const char* names[4] = {"aa", "ab", "ba", "bb"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += names[i];
        s += "=";
        s += key[i] < 0 ? "*" : std::to_string(key[i]);
    }
    return s;
}

/// Exact LP asking whether any globally-known deterministic policy can beat
/// TDM. Policy consistency is encoded by sharing, per view realization, one
/// rate and one vector of per-signal-level entropies; achievability at each
/// state is the level-by-level decomposition bound of the mutual
/// information at each receiver (a bound family that pure
/// TDM satisfies with equality); the TDM floors bind every state to a time
/// share indexed by the view's common knowledge; the maximized slack is the
/// minimum-performance excess at the target state(s).
struct DominanceLP {
    ViewId view;
    std::vector<DeterministicGains> gain_grid;
    std::vector<DeterministicGains> targets;
    LinearProgram lp;
    std::vector<std::string> names;
    std::map<RealizationKey, int> rate_a, rate_b;                 // policy rate per realization
    std::map<RealizationKey, std::vector<int>> levels_a, levels_b;  // entropies, msb first
    std::map<RealizationKey, std::array<int, 2>> taus;            // [tau_a, tau_b]
    int slack = -1;
};

inline DominanceLP build_dominance_lp(const ViewId& view, std::vector<DeterministicGains> grid,
                                      std::vector<DeterministicGains> targets = {},
                                      std::size_t var_cap = 5000) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) throw std::invalid_argument("dominance LP needs a non-empty grid");
    if (targets.empty()) targets.push_back(grid.front());
    for (const auto& t : targets)
        if (std::find(grid.begin(), grid.end(), t) == grid.end())
            throw std::invalid_argument("target state must lie in the grid");

    DominanceLP d;
    d.view = view;
    d.gain_grid = grid;
    d.targets = targets;

    // Input width per realization: enough levels for every sibling state.
    std::map<RealizationKey, long long> width_a, width_b;
    for (const auto& g : grid) {
        auto& wa = width_a[masked_key(g, view.known_to_a)];
        wa = std::max(wa, std::max(g.g_aa, g.g_ab));
        auto& wb = width_b[masked_key(g, view.known_to_b)];
        wb = std::max(wb, std::max(g.g_bb, g.g_ba));
    }

    auto new_var = [&](const std::string& name) {
        d.names.push_back(name);
        return d.lp.add_var(true);
    };
    auto realization = [&](std::map<RealizationKey, int>& rates,
                           std::map<RealizationKey, std::vector<int>>& levels,
                           const std::map<RealizationKey, long long>& widths,
                           const RealizationKey& key, long long direct, const char* user) {
        auto it = rates.find(key);
        if (it != rates.end()) return it->second;
        std::string suffix = std::string("[") + key_to_string(key) + "]";
        int r = new_var(std::string("r_") + user + suffix);
        rates.emplace(key, r);
        auto& lv = levels[key];
        for (long long i = 1; i <= widths.at(key); ++i) {
            int v = new_var(std::string("L_") + user + std::to_string(i) + suffix);
            lv.push_back(v);
            std::vector<Rational> cap(d.lp.num_vars(), Rational(0));
            cap[v] = 1;
            d.lp.add_row(std::move(cap), Sense::LE, Rational(1));
        }
        // Point-to-point: the rate fits in the direct link's levels.
        std::vector<Rational> p2p(d.lp.num_vars(), Rational(0));
        p2p[r] = 1;
        for (long long i = 0; i < direct; ++i) p2p[lv[static_cast<std::size_t>(i)]] = -1;
        d.lp.add_row(std::move(p2p), Sense::LE, Rational(0));
        return r;
    };
    auto taus_for = [&](const DeterministicGains& g) {
        RealizationKey key = masked_key(g, view.common_mask());
        auto it = d.taus.find(key);
        if (it == d.taus.end()) {
            std::string suffix = std::string("[") + key_to_string(key) + "]";
            int ta = new_var("tau_a" + suffix);
            int tb = new_var("tau_b" + suffix);
            it = d.taus.emplace(key, std::array<int, 2>{ta, tb}).first;
            std::vector<Rational> row(d.lp.num_vars(), Rational(0));
            row[ta] = 1;
            row[tb] = 1;
            d.lp.add_row(std::move(row), Sense::EQ, Rational(1));
        }
        return it->second;
    };

    d.slack = new_var("slack");
    d.lp.objective[d.slack] = 1;

    for (const auto& g : grid) {
        RealizationKey ka = masked_key(g, view.known_to_a);
        RealizationKey kb = masked_key(g, view.known_to_b);
        int ra = realization(d.rate_a, d.levels_a, width_a, ka, g.g_aa, "a");
        int rb = realization(d.rate_b, d.levels_b, width_b, kb, g.g_bb, "b");
        auto t = taus_for(g);
        if (d.lp.num_vars() > var_cap) throw GridTooLarge("dominance LP exceeds the variable cap");
        const auto& la = d.levels_a.at(ka);
        const auto& lb = d.levels_b.at(kb);

        // Decomposition of the mutual information at each receiver: the
        // uncontested top levels carry their own entropy; the contested
        // span cedes the interferer's level entropies.
        auto decomposition = [&](int rate, const std::vector<int>& own,
                                 const std::vector<int>& other, long long direct, long long cross,
                                 long long up, long long um) {
            std::vector<Rational> row(d.lp.num_vars(), Rational(0));
            row[rate] = 1;
            for (long long k = 0; k < cross; ++k) row[other[static_cast<std::size_t>(k)]] += 1;
            for (long long i = 0; i < up; ++i) row[own[static_cast<std::size_t>(i)]] -= 1;
            for (long long j = 0; j < um; ++j) row[other[static_cast<std::size_t>(j)]] -= 1;
            d.lp.add_row(std::move(row), Sense::LE, Rational(std::min(direct, cross)));
        };
        decomposition(ra, la, lb, g.g_aa, g.g_ba, g.u_a_plus(), g.u_a_minus());
        decomposition(rb, lb, la, g.g_bb, g.g_ab, g.u_b_plus(), g.u_b_minus());

        // TDM floors: r_i >= C_i * tau_i.
        std::vector<Rational> fa(d.lp.num_vars(), Rational(0));
        fa[ra] = 1;
        fa[t[0]] = Rational(-g.g_aa);
        d.lp.add_row(std::move(fa), Sense::GE, Rational(0));
        std::vector<Rational> fb(d.lp.num_vars(), Rational(0));
        fb[rb] = 1;
        fb[t[1]] = Rational(-g.g_bb);
        d.lp.add_row(std::move(fb), Sense::GE, Rational(0));
    }

    // Strictness at the targets: minimum-performance excess of at least s.
    for (const auto& g : targets) {
        int ra = d.rate_a.at(masked_key(g, view.known_to_a));
        int rb = d.rate_b.at(masked_key(g, view.known_to_b));
        std::vector<Rational> row(d.lp.num_vars(), Rational(0));
        bool any = false;
        if (g.g_aa > 0) {
            row[ra] = Rational(1, g.g_aa);
            any = true;
        } else {
            std::vector<Rational> zero(d.lp.num_vars(), Rational(0));
            zero[ra] = 1;
            d.lp.add_row(std::move(zero), Sense::EQ, Rational(0));
        }
        if (g.g_bb > 0) {
            row[rb] = Rational(1, g.g_bb);
            any = true;
        } else {
            std::vector<Rational> zero(d.lp.num_vars(), Rational(0));
            zero[rb] = 1;
            d.lp.add_row(std::move(zero), Sense::EQ, Rational(0));
        }
        row[d.slack] = -1;
        d.lp.add_row(std::move(row), any ? Sense::GE : Sense::LE, Rational(any ? 1 : 0));
    }
    return d;
}

inline LPSolution solve_lp(const DominanceLP& d) {
    SimplexResult r = lp_solve(d.lp);
    LPSolution sol;
    sol.status = r.status;
    if (r.status != LpStatus::Optimal) return sol;
    sol.optimal_slack = r.x[static_cast<std::size_t>(d.slack)];
    for (std::size_t i = 0; i < d.names.size(); ++i) sol.witness[d.names[i]] = r.x[i];
    return sol;
}

/// Policy rates the witness assigns at a particular state.
inline std::pair<Rational, Rational> witness_rates(const DominanceLP& d, const LPSolution& sol,
                                                   const DeterministicGains& g) {
    auto val = [&](int idx) { return sol.witness.at(d.names[static_cast<std::size_t>(idx)]); };
    return {val(d.rate_a.at(masked_key(g, d.view.known_to_a))),
            val(d.rate_b.at(masked_key(g, d.view.known_to_b)))};
}

/// Re-derive every claim of the witness outside the solver: level-entropy
/// ranges, the per-state decomposition bounds, the TDM floors, time shares
/// summing to one, and the target excess.
inline bool verify_dominance_witness(const DominanceLP& d, const LPSolution& sol) {
    if (sol.status != LpStatus::Optimal) return false;
    auto val = [&](int idx) { return sol.witness.at(d.names[static_cast<std::size_t>(idx)]); };
    for (const auto& [key, pair] : d.taus)
        if (val(pair[0]) + val(pair[1]) != 1 || val(pair[0]) < 0 || val(pair[1]) < 0) return false;
    for (const auto& table : {d.levels_a, d.levels_b})
        for (const auto& [key, levels] : table)
            for (int v : levels)
                if (val(v) < 0 || val(v) > 1) return false;

    auto level_sum = [&](const std::vector<int>& levels, long long count) {
        Rational acc(0);
        for (long long i = 0; i < count && i < static_cast<long long>(levels.size()); ++i)
            acc += val(levels[static_cast<std::size_t>(i)]);
        return acc;
    };
    for (const auto& g : d.gain_grid) {
        RealizationKey ka = masked_key(g, d.view.known_to_a);
        RealizationKey kb = masked_key(g, d.view.known_to_b);
        auto t = d.taus.at(masked_key(g, d.view.common_mask()));
        Rational ra = val(d.rate_a.at(ka)), rb = val(d.rate_b.at(kb));
        const auto& la = d.levels_a.at(ka);
        const auto& lb = d.levels_b.at(kb);
        if (ra < 0 || rb < 0) return false;
        if (ra > level_sum(la, g.g_aa)) return false;
        if (rb > level_sum(lb, g.g_bb)) return false;
        if (ra > Rational(std::min(g.g_aa, g.g_ba)) - level_sum(lb, g.g_ba) +
                     level_sum(la, g.u_a_plus()) + level_sum(lb, g.u_a_minus()))
            return false;
        if (rb > Rational(std::min(g.g_bb, g.g_ab)) - level_sum(la, g.g_ab) +
                     level_sum(lb, g.u_b_plus()) + level_sum(la, g.u_b_minus()))
            return false;
        if (ra < Rational(g.g_aa) * val(t[0])) return false;
        if (rb < Rational(g.g_bb) * val(t[1])) return false;
    }
    for (const auto& g : d.targets) {
        auto [ra, rb] = witness_rates(d, sol, g);
        if (g.g_aa == 0 && ra != 0) return false;
        if (g.g_bb == 0 && rb != 0) return false;
        if (g.g_aa > 0 || g.g_bb > 0) {
            if (min_performance({ra, rb}, g) < 1 + sol.optimal_slack) return false;
        }
    }
    return true;
}

/// Close a seed set of states over the view's per-transmitter uncertainty:
/// for every state and transmitter, all sibling states that share the
/// transmitter's realization with unknown links drawn from `values`.
inline std::vector<DeterministicGains> close_grid(const ViewId& view,
                                                  const std::vector<DeterministicGains>& seeds,
                                                  const std::vector<long long>& values,
                                                  std::size_t max_states = 20000) {
    std::set<DeterministicGains> grid(seeds.begin(), seeds.end());
    std::vector<DeterministicGains> work(seeds.begin(), seeds.end());
    while (!work.empty()) {
        DeterministicGains g = work.back();
        work.pop_back();
        for (unsigned mask : {view.known_to_a, view.known_to_b}) {
            std::vector<int> unknown;
            for (int i = 0; i < 4; ++i)
                if (!(mask & (1u << i))) unknown.push_back(i);
            std::vector<DeterministicGains> frontier = {g};
            for (int link : unknown) {
                std::vector<DeterministicGains> next;
                for (const auto& base : frontier) {
                    for (long long v : values) {
                        DeterministicGains alt = base;
                        (link == 0 ? alt.g_aa : link == 1 ? alt.g_ab : link == 2 ? alt.g_ba : alt.g_bb) = v;
                        next.push_back(alt);
                    }
                }
                frontier = std::move(next);
            }
            for (const auto& alt : frontier) {
                if (grid.insert(alt).second) {
                    work.push_back(alt);
                    if (grid.size() > max_states)
                        throw GridNotClosed("closure exceeds the state cap");
                }
            }
        }
    }
    return {grid.begin(), grid.end()};
}

/// Oracle entry point: close the grid around the base state, solve, and
/// re-check any strictly dominating witness independently.
inline LPSolution ic_dominance(const ViewId& view, const DeterministicGains& base,
                               const std::vector<long long>& unknown_values,
                               DominanceLP* out_lp = nullptr) {
    auto grid = close_grid(view, {base}, unknown_values);
    DominanceLP d = build_dominance_lp(view, grid, {base});
    LPSolution sol = solve_lp(d);
    if (sol.status == LpStatus::Optimal && sol.optimal_slack > 0 && !verify_dominance_witness(d, sol))
        throw std::logic_error("dominance witness failed the independent re-check");
    if (out_lp) *out_lp = std::move(d);
    return sol;
}

inline LPSolution ic_dominance(const ViewId& view, const std::vector<DeterministicGains>& grid,
                               DominanceLP* out_lp = nullptr) {
    DominanceLP d = build_dominance_lp(view, grid);
    LPSolution sol = solve_lp(d);
    if (sol.status == LpStatus::Optimal && sol.optimal_slack > 0 && !verify_dominance_witness(d, sol))
        throw std::logic_error("dominance witness failed the independent re-check");
    if (out_lp) *out_lp = std::move(d);
    return sol;
}

/// K-user local-view MAC: each transmitter knows only its own gain. The LP
/// carries one rate per (user, gain value), the MAC capacity rows for every
/// gain tuple, and the per-tuple minimum-performance criterion with a shared
/// slack.
struct LvmacLP {
    std::size_t users = 0;
    std::vector<long long> values;
    LinearProgram lp;
    std::vector<std::string> names;
    std::map<std::pair<std::size_t, long long>, int> rate;  // (user, gain) -> var
    int slack = -1;
};

inline LvmacLP build_lvmac_lp(std::size_t users, const std::vector<long long>& gain_values) {
    if (users < 2) throw std::invalid_argument("LV-MAC needs at least 2 users");
    std::vector<long long> values = gain_values;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty() || values.front() <= 0)
        throw std::invalid_argument("gain values must be positive");

    LvmacLP m;
    m.users = users;
    m.values = values;
    for (std::size_t k = 0; k < users; ++k) {
        for (long long v : values) {
            m.names.push_back("r[" + std::to_string(k + 1) + "|g=" + std::to_string(v) + "]");
            m.rate[{k, v}] = m.lp.add_var(true);
        }
    }
    m.slack = m.lp.add_var(true);
    m.names.push_back("slack");
    m.lp.objective[m.slack] = 1;

    // All gain tuples; capacity rows are deduplicated across tuples.
    std::set<std::pair<std::map<int, Rational>, Rational>> seen;
    std::vector<std::size_t> idx(users, 0);
    for (;;) {
        std::vector<long long> tuple(users);
        for (std::size_t k = 0; k < users; ++k) tuple[k] = values[idx[k]];

        for (unsigned subset = 1; subset < (1u << users); ++subset) {
            std::map<int, Rational> lhs;
            long long best = 0;
            for (std::size_t k = 0; k < users; ++k) {
                if (subset & (1u << k)) {
                    lhs[m.rate.at({k, tuple[k]})] = 1;
                    best = std::max(best, tuple[k]);
                }
            }
            if (!seen.insert({lhs, Rational(best)}).second) continue;
            std::vector<Rational> row(m.lp.num_vars(), Rational(0));
            for (const auto& [var, coef] : lhs) row[var] = coef;
            m.lp.add_row(std::move(row), Sense::LE, Rational(best));
        }

        std::vector<Rational> crit(m.lp.num_vars(), Rational(0));
        for (std::size_t k = 0; k < users; ++k) crit[m.rate.at({k, tuple[k]})] = Rational(1, tuple[k]);
        crit[m.slack] = -1;
        m.lp.add_row(std::move(crit), Sense::GE, Rational(1));

        std::size_t k = 0;
        while (k < users && ++idx[k] == values.size()) idx[k++] = 0;
        if (k == users) break;
    }
    return m;
}

inline LPSolution lvmac_dominance(std::size_t users, const std::vector<long long>& gain_values,
                                  LvmacLP* out_lp = nullptr) {
    LvmacLP m = build_lvmac_lp(users, gain_values);
    SimplexResult r = lp_solve(m.lp);
    LPSolution sol;
    sol.status = r.status;
    if (r.status == LpStatus::Optimal) {
        sol.optimal_slack = r.x[static_cast<std::size_t>(m.slack)];
        for (std::size_t i = 0; i < m.names.size(); ++i) sol.witness[m.names[i]] = r.x[i];
    }
    if (out_lp) *out_lp = std::move(m);
    return sol;
}

/// LV-MAC witness structure: every state ties to one time division,
/// i.e. r_k(d)/d is the same for all gain values d.
inline bool lvmac_witness_pinned(const LvmacLP& m, const LPSolution& sol) {
    if (sol.status != LpStatus::Optimal) return false;
    for (std::size_t k = 0; k < m.users; ++k) {
        Rational share(-1);
        for (long long v : m.values) {
            Rational r = sol.witness.at("r[" + std::to_string(k + 1) + "|g=" + std::to_string(v) + "]");
            Rational s = r / v;
            if (share < 0) share = s;
            else if (share != s) return false;
        }
    }
    return true;
}

}  // namespace lvic
