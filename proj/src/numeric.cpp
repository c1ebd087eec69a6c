#include "hmt/numeric.hpp"

#include <cctype>
#include <sstream>

namespace hmt {

std::int64_t to_int64(const Integer& v) {
    if (!v.fits_slong_p()) throw OverflowError("integer " + v.get_str() + " exceeds 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("label addition overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("label multiplication overflow");
    return r;
}

Label add(const Label& a, const Label& b) {
    if (a.size() != b.size()) throw Error("label length mismatch");
    Label r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

Label sub(const Label& a, const Label& b) {
    if (a.size() != b.size()) throw Error("label length mismatch");
    Label r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (__builtin_sub_overflow(a[i], b[i], &r[i])) throw OverflowError("label subtraction overflow");
    }
    return r;
}

Label scale(const Label& a, std::int64_t s) {
    Label r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], s);
    return r;
}

std::int64_t l1_norm(const Label& a) {
    std::int64_t s = 0;
    for (auto x : a) s = checked_add(s, x < 0 ? checked_mul(x, -1) : x);
    return s;
}

std::int64_t linf_norm(const Label& a) {
    std::int64_t s = 0;
    for (auto x : a) {
        std::int64_t ax = x < 0 ? checked_mul(x, -1) : x;
        if (ax > s) s = ax;
    }
    return s;
}

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw SchemaError("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw SchemaError("malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw SchemaError("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

std::string to_string(const Label& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

bool is_integer(const Rational& v) { return v.get_den() == 1; }

Integer floor_of(const Rational& v) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational& v) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

std::vector<Rational> to_rational(const std::vector<Integer>& v) {
    return std::vector<Rational>(v.begin(), v.end());
}

std::vector<Integer> to_integer(const Label& v) {
    std::vector<Integer> r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(static_cast<long>(x));
    return r;
}

Label to_label(const std::vector<Integer>& v) {
    Label r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(to_int64(x));
    return r;
}

}  // namespace hmt
