#include "hmt/linalg.hpp"

#include <algorithm>

namespace hmt {

RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots) {
    std::size_t lead = 0;
    std::vector<std::size_t> piv;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t sel = lead;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(sel, lead);
        Rational inv = 1 / m(lead, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(lead, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead, j);
        }
        piv.push_back(col);
        ++lead;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t rank(const RatMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<std::vector<Rational>> nullspace(const RatMatrix& m) {
    std::vector<std::size_t> piv;
    RatMatrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw Error("solve: dimension mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, m.cols());
    return x;
}

std::vector<Integer> primitive(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
    }
    return primitive(out);
}

std::vector<Integer> primitive(const std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    std::vector<Integer> out(v);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

Integer determinant(const IntMatrix& m0) {
    if (m0.rows() != m0.cols()) throw Error("determinant of non-square matrix");
    std::size_t n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.swap_rows(s, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

struct SmithState {
    IntMatrix a, u, ui, v, vi;

    void row_addmul(std::size_t i, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += q * a(t, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) += q * u(t, j);
        for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, t) -= q * ui(r, i);
    }
    void row_swap(std::size_t x, std::size_t y) {
        if (x == y) return;
        a.swap_rows(x, y);
        u.swap_rows(x, y);
        ui.swap_cols(x, y);
    }
    void row_neg(std::size_t i) {
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
        for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, i) = -ui(r, i);
    }
    void col_addmul(std::size_t j, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) += q * a(i, t);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) += q * v(i, t);
        for (std::size_t c = 0; c < vi.cols(); ++c) vi(t, c) -= q * vi(j, c);
    }
    void col_swap(std::size_t x, std::size_t y) {
        if (x == y) return;
        a.swap_cols(x, y);
        v.swap_cols(x, y);
        vi.swap_rows(x, y);
    }
};

}  // namespace

SmithDecomposition smith_decompose(const IntMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    SmithState s{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c),
                 IntMatrix::identity(c)};
    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        bool exhausted = false;
        while (true) {
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (s.a(i, j) == 0) continue;
                    if (bi == r || abs(s.a(i, j)) < abs(s.a(bi, bj))) bi = i, bj = j;
                }
            if (bi == r) {
                exhausted = true;
                break;
            }
            s.row_swap(t, bi);
            s.col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                s.row_addmul(i, t, -floor_div(s.a(i, t), s.a(t, t)));
                if (s.a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                s.col_addmul(j, t, -floor_div(s.a(t, j), s.a(t, t)));
                if (s.a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (s.a(i, j) % s.a(t, t) != 0) {
                        s.row_addmul(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (exhausted) break;
        if (s.a(t, t) < 0) s.row_neg(t);
    }
    SmithDecomposition out;
    out.diag.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diag[t] = s.a(t, t);
    out.left = std::move(s.u);
    out.left_inverse = std::move(s.ui);
    out.right = std::move(s.v);
    out.right_inverse = std::move(s.vi);
    return out;
}

IntMatrix column_hermite(const IntMatrix& m) {
    IntMatrix b = m;
    const std::size_t n = b.rows(), r = b.cols();
    auto col_addmul = [&](std::size_t j, std::size_t t, const Integer& q) {
        for (std::size_t i = 0; i < n; ++i) b(i, j) += q * b(i, t);
    };
    std::size_t p = 0;
    for (std::size_t i = 0; i < n && p < r; ++i) {
        while (true) {
            std::size_t best = r;
            for (std::size_t j = p; j < r; ++j)
                if (b(i, j) != 0 && (best == r || abs(b(i, j)) < abs(b(i, best)))) best = j;
            if (best == r) break;
            b.swap_cols(p, best);
            bool clean = true;
            for (std::size_t j = p + 1; j < r; ++j) {
                col_addmul(j, p, -floor_div(b(i, j), b(i, p)));
                if (b(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (b(i, p) == 0) continue;
        if (b(i, p) < 0)
            for (std::size_t l = 0; l < n; ++l) b(l, p) = -b(l, p);
        for (std::size_t l = 0; l < p; ++l) col_addmul(l, p, -floor_div(b(i, l), b(i, p)));
        ++p;
    }
    IntMatrix out(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) out(i, j) = b(i, j);
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return IntMatrix::identity(n);
    SmithDecomposition s = smith_decompose(m);
    std::size_t rk = 0;
    for (const auto& d : s.diag)
        if (d != 0) ++rk;
    IntMatrix k(n, n - rk);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = rk; j < n; ++j) k(i, j - rk) = s.right(i, j);
    return column_hermite(k);
}

std::optional<std::vector<Integer>> integer_solve(const IntMatrix& m, const std::vector<Integer>& b) {
    if (b.size() != m.rows()) throw Error("integer_solve: dimension mismatch");
    SmithDecomposition s = smith_decompose(m);
    std::vector<Integer> ub = s.left.apply(b);
    std::vector<Integer> y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const Integer d = i < s.diag.size() ? s.diag[i] : Integer(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
            continue;
        }
        if (ub[i] % d != 0) return std::nullopt;
        y[i] = ub[i] / d;
    }
    return s.right.apply(y);
}

IntMatrix integer_left_inverse(const IntMatrix& m) {
    const std::size_t r = m.cols();
    IntMatrix p(r, m.rows());
    if (r == 0) return p;
    SmithDecomposition s = smith_decompose(m);
    for (std::size_t a = 0; a < r; ++a)
        if (s.diag[a] != 1) throw Error("left inverse: lattice is not saturated");
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < m.rows(); ++b)
            for (std::size_t c = 0; c < r; ++c) p(a, b) += s.right(a, c) * s.left(c, b);
    return p;
}

}  // namespace hmt
