#include "hmt/lattice.hpp"

#include <algorithm>

namespace hmt {

namespace {

QuotientData build_quotient(const IntMatrix& e) {
    QuotientData q;
    q.restriction = e.transpose();
    if (q.restriction.rows() == 0) {
        q.char_lattice = IntMatrix::identity(e.rows());
    } else {
        q.char_lattice = integer_kernel(q.restriction);
    }
    for (std::size_t i = 0; i < e.rows(); ++i) q.coord_chars.push_back(q.char_lattice.row(i));
    q.char_left_inverse = integer_left_inverse(q.char_lattice);
    return q;
}

}  // namespace

TorusDatum TorusDatum::create(std::size_t n, const std::vector<std::vector<Integer>>& columns) {
    if (n == 0) throw InvalidDatum("n must be positive");
    if (columns.size() > n) throw InvalidDatum("more columns than coordinates");
    for (const auto& c : columns)
        if (c.size() != n) throw InvalidDatum("column length differs from n");
    TorusDatum d;
    d.n_ = n;
    d.embedding_ = IntMatrix::from_columns(columns, n);
    const std::size_t k = columns.size();
    if (k > 0) {
        SmithDecomposition s = smith_decompose(d.embedding_);
        for (std::size_t i = 0; i < k; ++i) {
            if (s.diag[i] == 0) throw InvalidDatum("columns are linearly dependent");
            if (s.diag[i] != 1) throw InvalidDatum("image is not saturated (elementary divisor " + s.diag[i].get_str() + ")");
        }
    }
    d.quotient_ = build_quotient(d.embedding_);
    // k == n is the degenerate zero-dimensional slice; every axis is in the span there.
    if (k < n) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& q = d.quotient_.coord_chars[i];
            if (std::all_of(q.begin(), q.end(), [](const Integer& v) { return v == 0; }))
                throw InvalidDatum("coordinate axis e_" + std::to_string(i + 1) + " lies in the column span");
        }
    }
    return d;
}

TorusDatum TorusDatum::create(std::size_t n, const std::vector<std::vector<long>>& columns) {
    std::vector<std::vector<Integer>> cols;
    for (const auto& c : columns) {
        std::vector<Integer> v;
        for (long x : c) v.emplace_back(x);
        cols.push_back(std::move(v));
    }
    return create(n, cols);
}

std::vector<std::vector<Integer>> TorusDatum::columns() const {
    std::vector<std::vector<Integer>> out;
    for (std::size_t j = 0; j < k(); ++j) out.push_back(embedding_.column(j));
    return out;
}

std::vector<Integer> TorusDatum::restrict(const std::vector<Integer>& x) const {
    return quotient_.restriction.apply(x);
}

std::vector<Integer> TorusDatum::restrict(const Label& x) const { return restrict(to_integer(x)); }

std::vector<Rational> TorusDatum::restrict(const std::vector<Rational>& a) const {
    return to_rational(quotient_.restriction).apply(a);
}

std::vector<Integer> canonical_sign(std::vector<Integer> v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

std::vector<Circuit> circuits(const TorusDatum& d) {
    const std::size_t n = d.n(), r = d.rank_g();
    const IntMatrix& l = d.quotient().char_lattice;
    RatMatrix emb = to_rational(d.embedding());
    std::vector<Circuit> out;
    const std::size_t max_size = std::min(n, r + 1);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) support.push_back(i);
        if (support.size() > max_size) continue;
        // dependencies among the characters q_i, i in support
        RatMatrix m(r, support.size());
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < support.size(); ++b) m(a, b) = l(support[b], a);
        auto ns = nullspace(m);
        if (ns.size() != 1) continue;
        if (std::any_of(ns[0].begin(), ns[0].end(), [](const Rational& v) { return v == 0; })) continue;
        std::vector<Integer> small = primitive(ns[0]);
        std::vector<Integer> full(n);
        for (std::size_t b = 0; b < support.size(); ++b) full[support[b]] = small[b];
        full = canonical_sign(full);
        auto coeff = solve(emb, to_rational(full));
        if (!coeff) throw Error("circuit outside the embedding span");
        out.push_back({full, support, *coeff});
    }
    std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) {
        if (a.support != b.support) return a.support < b.support;
        return a.vector < b.vector;
    });
    return out;
}

const QuotientData& quotient_data(const TorusDatum& d) { return d.quotient(); }

bool is_unimodular(const TorusDatum& d) {
    const std::size_t n = d.n(), r = d.rank_g();
    const IntMatrix& l = d.quotient().char_lattice;
    if (r == 0) return true;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + r, true);
    do {
        IntMatrix minor(r, r);
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!pick[i]) continue;
            for (std::size_t j = 0; j < r; ++j) minor(row, j) = l(i, j);
            ++row;
        }
        Integer det = determinant(minor);
        if (det > 1 || det < -1) return false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return true;
}

namespace {

Integer json_integer(const nlohmann::json& v) {
    if (v.is_number_integer()) return Integer(v.get<long>());
    if (v.is_string()) {
        Rational r = parse_rational(v.get<std::string>());
        if (!is_integer(r)) throw SchemaError("expected integer, got " + v.dump());
        return r.get_num();
    }
    throw SchemaError("expected integer, got " + v.dump());
}

}  // namespace

TorusDatum torus_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("columns"))
        throw SchemaError("torus datum needs \"n\" and \"columns\"");
    if (!j["n"].is_number_integer() || j["n"].get<long>() <= 0) throw SchemaError("\"n\" must be a positive integer");
    if (!j["columns"].is_array()) throw SchemaError("\"columns\" must be an array");
    std::vector<std::vector<Integer>> cols;
    for (const auto& c : j["columns"]) {
        if (!c.is_array()) throw SchemaError("each column must be an array");
        std::vector<Integer> v;
        for (const auto& e : c) v.push_back(json_integer(e));
        cols.push_back(std::move(v));
    }
    return TorusDatum::create(j["n"].get<std::size_t>(), cols);
}

nlohmann::json to_json(const TorusDatum& d) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : d.columns()) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& v : c) {
            if (v.fits_slong_p())
                col.push_back(v.get_si());
            else
                col.push_back(v.get_str());
        }
        cols.push_back(col);
    }
    return {{"n", d.n()}, {"columns", cols}};
}

}  // namespace hmt
