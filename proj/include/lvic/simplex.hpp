#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

#include "lvic/rational.hpp"

namespace lvic {

enum class Sense { LE, EQ, GE };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
    std::vector<Rational> coeffs;
    Sense sense = Sense::LE;
    Rational rhs;
};

/// maximize objective . x  subject to rows; variables are free unless
/// flagged non-negative.
struct LinearProgram {
    std::vector<bool> nonneg;
    std::vector<LpRow> rows;
    std::vector<Rational> objective;

    int add_var(bool nonnegative) {
        nonneg.push_back(nonnegative);
        objective.emplace_back(0);
        return static_cast<int>(nonneg.size()) - 1;
    }

    std::size_t num_vars() const { return nonneg.size(); }

    void add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
        coeffs.resize(nonneg.size());
        rows.push_back(LpRow{std::move(coeffs), sense, std::move(rhs)});
    }
};

struct SimplexResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

namespace detail {

// Dense rational tableau, two phases, Bland's rule throughout (smallest
// eligible column enters; ratio ties broken by smallest basic index).
class SimplexTableau {
public:
    explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
        // Free variables are split into a positive and a negative part.
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            plus_col_.push_back(next_col_++);
            minus_col_.push_back(lp.nonneg[j] ? -1 : next_col_++);
        }
        struct_cols_ = next_col_;

        std::size_t m = lp.rows.size();
        rows_.assign(m, {});
        basis_.assign(m, -1);
        for (std::size_t i = 0; i < m; ++i) {
            const LpRow& r = lp.rows[i];
            rows_[i].assign(struct_cols_, Rational(0));
            // Rows may predate later-added variables; absent coefficients are zero.
            for (std::size_t j = 0; j < lp.num_vars() && j < r.coeffs.size(); ++j) {
                rows_[i][plus_col_[j]] = r.coeffs[j];
                if (minus_col_[j] >= 0) rows_[i][minus_col_[j]] = -r.coeffs[j];
            }
            rhs_.push_back(r.rhs);
            sense_.push_back(r.sense);
            if (rhs_.back() < 0) {
                for (auto& c : rows_[i]) c = -c;
                rhs_.back() = -rhs_.back();
                sense_.back() = flip(sense_.back());
            }
        }
        // Slack / surplus / artificial columns.
        for (std::size_t i = 0; i < m; ++i) {
            if (sense_[i] == Sense::LE) {
                int s = add_col();
                rows_[i][s] = 1;
                basis_[i] = s;
            } else if (sense_[i] == Sense::GE) {
                int s = add_col();
                rows_[i][s] = -1;
            }
        }
        first_artificial_ = next_col_;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis_[i] < 0) {
                int a = add_col();
                rows_[i][a] = 1;
                basis_[i] = a;
            }
        }
    }

    SimplexResult solve() {
        SimplexResult sol;
        if (first_artificial_ < next_col_) {
            // Phase 1: maximize -sum(artificials).
            std::vector<Rational> cost(next_col_, Rational(0));
            for (int j = first_artificial_; j < next_col_; ++j) cost[j] = -1;
            reduce_cost(cost);
            // Artificials never re-enter; the phase-1 objective is bounded.
            run(cost, first_artificial_);
            Rational infeas(0);
            for (std::size_t i = 0; i < rows_.size(); ++i)
                if (basis_[i] >= first_artificial_) infeas += rhs_[i];
            if (infeas != 0) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            purge_artificials();
        }

        std::vector<Rational> cost(next_col_, Rational(0));
        for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
            cost[plus_col_[j]] = lp_.objective[j];
            if (minus_col_[j] >= 0) cost[minus_col_[j]] = -lp_.objective[j];
        }
        reduce_cost(cost);
        bool bounded = run(cost, first_artificial_);
        if (!bounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }

        sol.status = LpStatus::Optimal;
        sol.x.assign(lp_.num_vars(), Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
                if (basis_[i] == plus_col_[j]) sol.x[j] += rhs_[i];
                if (basis_[i] == minus_col_[j]) sol.x[j] -= rhs_[i];
            }
        }
        sol.value = 0;
        for (std::size_t j = 0; j < lp_.num_vars(); ++j) sol.value += lp_.objective[j] * sol.x[j];
        return sol;
    }

private:
    static Sense flip(Sense s) {
        if (s == Sense::LE) return Sense::GE;
        if (s == Sense::GE) return Sense::LE;
        return Sense::EQ;
    }

    int add_col() {
        for (auto& row : rows_) row.emplace_back(0);
        return next_col_++;
    }

    // cost becomes the reduced-cost row for the current basis.
    void reduce_cost(std::vector<Rational>& cost) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j < next_col_; ++j) cost[j] -= cb * rows_[i][j];
        }
    }

    // Pivot until no reduced cost is positive. Steepest reduced cost with
    // lowest-index tie breaking by default; a run of degenerate pivots
    // switches to Bland's rule (smallest eligible index) until progress
    // resumes, which rules out cycling. Columns at or past col_limit never
    // enter. Returns false on unboundedness.
    bool run(std::vector<Rational>& cost, int col_limit) {
        int degenerate_streak = 0;
        for (;;) {
            bool bland = degenerate_streak >= 32;
            int enter = -1;
            for (int j = 0; j < col_limit; ++j) {
                if (cost[j] <= 0) continue;
                if (enter < 0 || (!bland && cost[j] > cost[enter])) enter = j;
                if (bland) break;
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rational ratio = rhs_[i] / rows_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            degenerate_streak = best == 0 ? degenerate_streak + 1 : 0;
            pivot(static_cast<std::size_t>(leave), enter, &cost);
        }
    }

    void pivot(std::size_t row, int col, std::vector<Rational>* cost) {
        Rational inv = Rational(1) / rows_[row][col];
        if (inv != 1) {
            for (auto& c : rows_[row]) c *= inv;
            rhs_[row] *= inv;
        }
        rows_[row][col] = 1;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            Rational f = rows_[i][col];
            for (int j = 0; j < next_col_; ++j) rows_[i][j] -= f * rows_[row][j];
            rows_[i][col] = 0;
            rhs_[i] -= f * rhs_[row];
        }
        if (cost && (*cost)[col] != 0) {
            Rational f = (*cost)[col];
            for (int j = 0; j < next_col_; ++j) (*cost)[j] -= f * rows_[row][j];
            (*cost)[col] = 0;
        }
        basis_[row] = col;
    }

    // After a zero-infeasibility phase 1, pivot artificials out of the basis;
    // rows that cannot release one are linearly dependent and get dropped.
    void purge_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_artificial_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(i, col, nullptr);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        for (auto& row : rows_) row.resize(first_artificial_);
        next_col_ = first_artificial_;
    }

    const LinearProgram& lp_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<Sense> sense_;
    std::vector<int> basis_;
    std::vector<int> plus_col_;
    std::vector<int> minus_col_;
    int next_col_ = 0;
    int struct_cols_ = 0;
    int first_artificial_ = 0;
};

}  // namespace detail

inline SimplexResult lp_solve(const LinearProgram& lp) {
    detail::SimplexTableau tableau(lp);
    return tableau.solve();
}

}  // namespace lvic
