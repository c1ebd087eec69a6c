#include "hmt/lp.hpp"

#include <algorithm>

namespace hmt::lp {

namespace {

class Tableau {
public:
    std::vector<std::vector<Rational>> rows;  // each of width cols + 1 (rhs last)
    std::vector<Rational> obj;                // reduced costs, rhs slot holds objective value
    std::vector<std::size_t> basis;
    std::size_t cols = 0;

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = rows[r];
        Rational inv = 1 / pr[c];
        for (auto& v : pr)
            if (v != 0) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            eliminate(rows[i], pr, c);
        }
        eliminate(obj, pr, c);
        basis[r] = c;
    }

    // Bland's rule. Returns false when the objective is unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (allowed[j] && obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Rational& a = rows[i][enter];
                if (a <= 0) continue;
                Rational ratio = rows[i][cols] / a;
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }

private:
    static void eliminate(std::vector<Rational>& row, const std::vector<Rational>& pr, std::size_t c) {
        if (row[c] == 0) return;
        Rational f = row[c];
        for (std::size_t j = 0; j < row.size(); ++j)
            if (pr[j] != 0) row[j] -= f * pr[j];
    }
};

}  // namespace

Result maximize(std::size_t nv, const std::vector<Constraint>& constraints, const std::vector<Rational>& objective) {
    if (objective.size() != nv) throw Error("lp: objective size mismatch");
    std::size_t slack_count = 0;
    for (const auto& c : constraints) {
        if (c.coeffs.size() != nv) throw Error("lp: constraint size mismatch");
        if (c.relation == Relation::Less) throw Error("lp: strict constraint passed to maximize");
        if (c.relation == Relation::LessEq) ++slack_count;
    }
    const std::size_t m = constraints.size();
    const std::size_t art0 = 2 * nv + slack_count;
    Tableau t;
    t.cols = art0 + m;
    t.rows.assign(m, std::vector<Rational>(t.cols + 1));
    t.basis.resize(m);
    std::size_t slack = 2 * nv;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        auto& row = t.rows[i];
        for (std::size_t j = 0; j < nv; ++j) {
            row[2 * j] = c.coeffs[j];
            row[2 * j + 1] = -c.coeffs[j];
        }
        if (c.relation == Relation::LessEq) row[slack++] = 1;
        row[t.cols] = c.rhs;
        if (c.rhs < 0)
            for (auto& v : row) v = -v;
        row[art0 + i] = 1;
        t.basis[i] = art0 + i;
    }

    // Phase I: maximize -(sum of artificials).
    t.obj.assign(t.cols + 1, 0);
    for (const auto& row : t.rows)
        for (std::size_t j = 0; j <= t.cols; ++j)
            if (j < art0 || j == t.cols) t.obj[j] -= row[j];
    std::vector<bool> allowed(t.cols, true);
    t.optimize(allowed);
    Result res;
    if (t.obj[t.cols] != 0) {
        res.status = Status::Infeasible;
        return res;
    }
    // Drive artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < art0) {
            ++i;
            continue;
        }
        std::size_t j = 0;
        while (j < art0 && t.rows[i][j] == 0) ++j;
        if (j < art0) {
            t.pivot(i, j);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
        }
    }
    for (std::size_t j = art0; j < t.cols; ++j) allowed[j] = false;

    // Phase II.
    t.obj.assign(t.cols + 1, 0);
    for (std::size_t j = 0; j < nv; ++j) {
        t.obj[2 * j] = -objective[j];
        t.obj[2 * j + 1] = objective[j];
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Rational f = t.obj[t.basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= t.cols; ++j)
            if (t.rows[i][j] != 0) t.obj[j] -= f * t.rows[i][j];
    }
    if (!t.optimize(allowed)) {
        res.status = Status::Unbounded;
        return res;
    }
    std::vector<Rational> vals(t.cols);
    for (std::size_t i = 0; i < t.rows.size(); ++i) vals[t.basis[i]] = t.rows[i][t.cols];
    res.status = Status::Optimal;
    res.point.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) res.point[j] = vals[2 * j] - vals[2 * j + 1];
    res.value = t.obj[t.cols];
    return res;
}

std::optional<std::vector<Rational>> relative_interior_point(std::size_t nv, const std::vector<Constraint>& constraints) {
    bool any_strict = std::any_of(constraints.begin(), constraints.end(),
                                  [](const Constraint& c) { return c.relation == Relation::Less; });
    if (!any_strict) {
        Result r = maximize(nv, constraints, std::vector<Rational>(nv));
        if (r.status == Status::Infeasible) return std::nullopt;
        return r.point;
    }
    std::vector<Constraint> ext;
    ext.reserve(constraints.size() + 1);
    for (const auto& c : constraints) {
        Constraint e{c.coeffs, c.relation, c.rhs};
        e.coeffs.push_back(c.relation == Relation::Less ? 1 : 0);
        if (e.relation == Relation::Less) e.relation = Relation::LessEq;
        ext.push_back(std::move(e));
    }
    Constraint cap{std::vector<Rational>(nv + 1), Relation::LessEq, 1};
    cap.coeffs[nv] = 1;
    ext.push_back(std::move(cap));
    std::vector<Rational> obj(nv + 1);
    obj[nv] = 1;
    Result r = maximize(nv + 1, ext, obj);
    if (r.status != Status::Optimal || r.value <= 0) return std::nullopt;
    r.point.pop_back();
    return r.point;
}

bool feasible(std::size_t nv, const std::vector<Constraint>& constraints) {
    return relative_interior_point(nv, constraints).has_value();
}

}  // namespace hmt::lp
