#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> reduce(std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t s = r;
        while (s < rows.size() && rows[s][c] == 0) ++s;
        if (s == rows.size()) continue;
        std::swap(rows[s], rows[r]);
        Rational p = rows[r][c];
        for (auto& v : rows[r]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    auto piv = reduce(rows, cols);
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][f];
        out.push_back(v);
    }
    return out;
}

std::size_t rank_of(std::vector<std::vector<Rational>> rows, std::size_t cols) { return reduce(rows, cols).size(); }

std::vector<std::vector<Integer>> brute_force_circuits(const hmt::TorusDatum& d) {
    const std::size_t n = d.n(), k = d.k();
    const auto& e = d.embedding();
    std::vector<std::vector<Integer>> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) continue;
            std::vector<Rational> row(k);
            for (std::size_t j = 0; j < k; ++j) row[j] = e(i, j);
            rows.push_back(row);
        }
        auto ker = kernel(rows, k);
        if (ker.size() != 1) continue;
        std::vector<Rational> sigma(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) sigma[i] += e(i, j) * ker[0][j];
        bool full = true;
        for (std::size_t i = 0; i < n; ++i)
            if ((sigma[i] != 0) != bool(mask >> i & 1)) full = false;
        if (!full) continue;
        Integer l = 1;
        for (auto& s : sigma) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.get_den_mpz_t());
        std::vector<Integer> v(n);
        Integer g = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = sigma[i] * l;
            v[i] = s.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
        }
        for (auto& x : v) x /= g;
        auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
        if (*first < 0)
            for (auto& x : v) x = -x;
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        std::vector<std::size_t> sa, sb;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != 0) sa.push_back(i);
            if (b[i] != 0) sb.push_back(i);
        }
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

Integer zonotope_volume(const hmt::TorusDatum& d) {
    const std::size_t n = d.n(), k = d.k();
    if (k == 0) return 1;
    Integer total = 0;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<std::vector<Rational>> m;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) {
                std::vector<Rational> row(k);
                for (std::size_t j = 0; j < k; ++j) row[j] = d.embedding()(i, j);
                m.push_back(row);
            }
        // determinant by elimination with sign tracking
        Rational det = 1;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t s = c;
            while (s < k && m[s][c] == 0) ++s;
            if (s == k) {
                det = 0;
                break;
            }
            if (s != c) {
                std::swap(m[s], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (std::size_t i = c + 1; i < k; ++i) {
                Rational f = m[i][c] / m[c][c];
                for (std::size_t j = c; j < k; ++j) m[i][j] -= f * m[c][j];
            }
        }
        total += Rational(abs(det)).get_num();
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return total;
}

hmt::TorusDatum random_datum(std::mt19937_64& rng, std::size_t max_n, std::size_t max_k) {
    std::uniform_int_distribution<int> entry(-2, 2);
    while (true) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min(max_k, n - 1))(rng);
        std::vector<std::vector<long>> cols(k, std::vector<long>(n));
        for (auto& c : cols)
            for (auto& v : c) v = entry(rng);
        try {
            return hmt::TorusDatum::create(n, cols);
        } catch (const hmt::InvalidDatum&) {
        }
    }
}

hmt::TorusDatum random_datum_of_shape(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::uniform_int_distribution<int> entry(-2, 2);
    while (true) {
        std::vector<std::vector<long>> cols(k, std::vector<long>(n));
        for (auto& c : cols)
            for (auto& v : c) v = entry(rng);
        try {
            return hmt::TorusDatum::create(n, cols);
        } catch (const hmt::InvalidDatum&) {
        }
    }
}

}  // namespace oracle

namespace oracle {

bool probe_degenerate(const hmt::TorusDatum& d, const std::vector<Rational>& gamma) {
    const std::size_t n = d.n(), k = d.k();
    const auto& e = d.embedding();
    // restriction rows
    std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) rows[j][i] = e(i, j);
    auto dirs = kernel(rows, n);
    const std::size_t r = dirs.size();
    // integer generators of a sublattice of the deck lattice
    for (auto& v : dirs) {
        Integer l = 1;
        for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (auto& x : v) x *= l;
    }
    // a point of the slice
    std::vector<std::vector<Rational>> aug = rows;
    for (std::size_t j = 0; j < k; ++j) aug[j].push_back(gamma[j]);
    std::vector<Rational> base(n);
    {
        auto sys = aug;
        std::vector<std::size_t> piv;
        std::size_t rr = 0;
        for (std::size_t c = 0; c < n && rr < sys.size(); ++c) {
            std::size_t s = rr;
            while (s < sys.size() && sys[s][c] == 0) ++s;
            if (s == sys.size()) continue;
            std::swap(sys[s], sys[rr]);
            Rational p = sys[rr][c];
            for (auto& v : sys[rr]) v /= p;
            for (std::size_t i = 0; i < sys.size(); ++i) {
                if (i == rr || sys[i][c] == 0) continue;
                Rational f = sys[i][c];
                for (std::size_t jj = 0; jj <= n; ++jj) sys[i][jj] -= f * sys[rr][jj];
            }
            piv.push_back(c);
            ++rr;
        }
        for (std::size_t i = 0; i < piv.size(); ++i) base[piv[i]] = sys[i][n];
    }
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational a = base[i], b = base[i];
        for (std::size_t j = 0; j < r; ++j) {
            if (dirs[j][i] < 0) a += dirs[j][i];
            else b += dirs[j][i];
        }
        mpz_cdiv_q(lo[i].get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        mpz_fdiv_q(hi[i].get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (s.size() > r + 1) continue;
        bool empty_range = false;
        for (auto i : s) empty_range = empty_range || lo[i] > hi[i];
        if (empty_range) continue;
        std::vector<std::vector<Rational>> coeff = rows;
        for (auto i : s) {
            std::vector<Rational> row(n);
            row[i] = 1;
            coeff.push_back(row);
        }
        if (rank_of(coeff, n) == coeff.size()) continue;
        std::vector<Integer> m(s.size());
        for (std::size_t t = 0; t < s.size(); ++t) m[t] = lo[s[t]];
        while (true) {
            auto sys = aug;
            for (std::size_t t = 0; t < s.size(); ++t) {
                std::vector<Rational> row(n + 1);
                row[s[t]] = 1;
                row[n] = m[t];
                sys.push_back(row);
            }
            if (rank_of(sys, n + 1) == rank_of(coeff, n)) return true;
            std::size_t t = 0;
            while (t < s.size() && m[t] == hi[s[t]]) {
                m[t] = lo[s[t]];
                ++t;
            }
            if (t == s.size()) break;
            ++m[t];
        }
    }
    return false;
}

}  // namespace oracle
