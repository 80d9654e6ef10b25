#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace knotoid {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse Laurent polynomial in one variable with exact integer coefficients.
/// Invariant: no stored coefficient is zero.
template <char Var>
class Laurent {
public:
    using Terms = std::map<int, BigInt>;

    Laurent() = default;
    Laurent(long long c) { add_term(0, BigInt(c)); }  // NOLINT(google-explicit-constructor)

    static Laurent monomial(const BigInt& c, int exponent) {
        Laurent p;
        p.add_term(exponent, c);
        return p;
    }
    static Laurent var(int exponent = 1) { return monomial(1, exponent); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    BigInt coeff(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? BigInt(0) : it->second;
    }
    std::optional<int> max_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first;
    }
    std::optional<int> min_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    void add_term(int exponent, const BigInt& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(exponent, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator-(const Laurent& a) {
        Laurent r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const Laurent&, const Laurent&) = default;

    /// Multiplies by c * Var^k.
    Laurent scale_by_monomial(const BigInt& c, int k) const {
        Laurent r;
        if (c == 0) return r;
        for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v * c);
        return r;
    }

    /// Var -> Var^-1.
    Laurent inverted() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
        return r;
    }

    Laurent pow(unsigned k) const {
        Laurent r(1);
        for (unsigned i = 0; i < k; ++i) r *= *this;
        return r;
    }

    /// Descending powers; in t the constant goes last ("t^2+2t+2t^-1+t^-2-6"). Zero is "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<int, BigInt>> order(terms_.rbegin(), terms_.rend());
        if constexpr (Var == 't')
            std::stable_partition(order.begin(), order.end(), [](const auto& t) { return t.first != 0; });
        std::string out;
        bool first = true;
        for (const auto& [e, c] : order) {
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (c < 0) out += '-';
            else if (!first) out += '+';
            first = false;
            if (mag != 1 || e == 0) out += mag.str();
            if (e != 0) {
                out += Var;
                if (e != 1) out += '^' + std::to_string(e);
            }
        }
        return out;
    }

    static constexpr char variable = Var;

private:
    Terms terms_;
};

using LaurentA = Laurent<'A'>;
using AffinePoly = Laurent<'t'>;

/// The loop value d = -A^2 - A^-2.
inline const LaurentA& loop_value() {
    static const LaurentA d = LaurentA::monomial(-1, 2) + LaurentA::monomial(-1, -2);
    return d;
}

/// d^k for k >= 0, memoized per thread.
inline const LaurentA& loop_power(int k) {
    thread_local std::vector<LaurentA> cache{LaurentA(1)};
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * loop_value());
    return cache[static_cast<std::size_t>(k)];
}

/// (-A^3)^{-w} p.
inline LaurentA writhe_normalize(const LaurentA& p, int w) { return p.scale_by_monomial(w % 2 ? -1 : 1, -3 * w); }

inline int max_degree(const AffinePoly& p) { return p.max_exponent().value_or(0); }

inline bool is_symmetric(const AffinePoly& p) { return p == p.inverted(); }

// ---------------------------------------------------------------------------
// arrow ring

/// Product of K_i^j factors and Lambda_i factors; lambda is kept sorted.
struct ArrowMonomial {
    std::map<int, int> k;
    std::vector<int> lambda;

    bool is_one() const { return k.empty() && lambda.empty(); }

    int k_degree() const {
        int s = 0;
        for (const auto& [i, j] : k) s += i * j;
        return s;
    }
    int lambda_degree() const { return lambda.empty() ? 0 : *std::max_element(lambda.begin(), lambda.end()); }

    void mul_k(int i, int times = 1) {
        if (i > 0 && times > 0) k[i] += times;
    }
    void mul_lambda(int i) {
        if (i <= 0) return;
        lambda.insert(std::upper_bound(lambda.begin(), lambda.end(), i), i);
    }

    friend ArrowMonomial operator*(ArrowMonomial a, const ArrowMonomial& b) {
        for (const auto& [i, j] : b.k) a.mul_k(i, j);
        for (int i : b.lambda) a.mul_lambda(i);
        return a;
    }

    /// "K_1^2K_3L_1"; empty for the unit monomial.
    std::string to_string() const {
        std::string out;
        for (const auto& [i, j] : k) {
            out += "K_" + std::to_string(i);
            if (j != 1) out += '^' + std::to_string(j);
        }
        for (int i : lambda) out += "L_" + std::to_string(i);
        return out;
    }

    friend bool operator==(const ArrowMonomial&, const ArrowMonomial&) = default;
    friend auto operator<=>(const ArrowMonomial&, const ArrowMonomial&) = default;
};

class ArrowPoly {
public:
    using Terms = std::map<ArrowMonomial, LaurentA>;

    ArrowPoly() = default;
    explicit ArrowPoly(const LaurentA& scalar) { add(ArrowMonomial{}, scalar); }
    ArrowPoly(const ArrowMonomial& m, const LaurentA& c) { add(m, c); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    LaurentA coeff(const ArrowMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? LaurentA{} : it->second;
    }
    LaurentA scalar() const { return coeff(ArrowMonomial{}); }

    void add(const ArrowMonomial& m, const LaurentA& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ArrowPoly& operator+=(const ArrowPoly& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    ArrowPoly& operator-=(const ArrowPoly& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend ArrowPoly operator+(ArrowPoly a, const ArrowPoly& b) { return a += b; }
    friend ArrowPoly operator-(ArrowPoly a, const ArrowPoly& b) { return a -= b; }
    friend ArrowPoly operator-(const ArrowPoly& a) {
        ArrowPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend ArrowPoly operator*(const ArrowPoly& a, const ArrowPoly& b) {
        ArrowPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
        return r;
    }
    friend bool operator==(const ArrowPoly&, const ArrowPoly&) = default;

    /// Multiplies every coefficient by c * A^k.
    ArrowPoly scale_by_monomial(const BigInt& c, int k) const {
        ArrowPoly r;
        for (const auto& [m, v] : terms_) r.add(m, v.scale_by_monomial(c, k));
        return r;
    }

    int k_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.k_degree());
        return d;
    }
    int lambda_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.lambda_degree());
        return d;
    }

    /// Every Lambda_i becomes K_i.
    ArrowPoly lambda_to_k() const {
        ArrowPoly r;
        for (const auto& [m, c] : terms_) {
            ArrowMonomial n;
            n.k = m.k;
            for (int i : m.lambda) n.mul_k(i);
            r.add(n, c);
        }
        return r;
    }

    /// All K_i and Lambda_i set to 1.
    LaurentA at_unit_variables() const {
        LaurentA s;
        for (const auto& [m, c] : terms_) s += c;
        return s;
    }

    /// Scalar part first, then "(coefficient)monomial" blocks in monomial order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (m.is_one()) {
                out += c.to_string();
            } else {
                if (!out.empty()) out += '+';
                out += '(' + c.to_string() + ')' + m.to_string();
            }
        }
        return out;
    }

private:
    Terms terms_;
};

inline ArrowPoly writhe_normalize(const ArrowPoly& p, int w) { return p.scale_by_monomial(w % 2 ? -1 : 1, -3 * w); }

// ---------------------------------------------------------------------------
// parsing of the rendered forms (round-trips to_string)

namespace detail {

class PolyReader {
public:
    explicit PolyReader(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }

    bool done() const { return i_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[i_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::Syntax, "polynomial '" + s_ + "': " + why + " at offset " + std::to_string(i_));
    }

    std::optional<BigInt> digits() {
        std::size_t a = i_;
        while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (a == i_) return std::nullopt;
        return BigInt(s_.substr(a, i_ - a));
    }
    int integer() {
        bool neg = accept('-');
        if (!neg) accept('+');
        auto d = digits();
        if (!d) fail("expected integer");
        int v = static_cast<int>(*d);
        return neg ? -v : v;
    }

    /// One signed term "[+-][n][X[^e]]"; returns false at a '(' or end.
    template <char Var>
    bool term(Laurent<Var>& into, bool leading) {
        std::size_t save = i_;
        int sign = 1;
        if (accept('-')) sign = -1;
        else if (!accept('+') && !leading) fail("expected sign");
        if (peek() == '(' || done()) {
            i_ = save;
            return false;
        }
        const std::size_t after_sign = i_;
        BigInt c = digits().value_or(BigInt(1));
        const bool has_digits = i_ > after_sign;
        int e = 0;
        if (accept(Var)) {
            e = 1;
            if (accept('^')) e = integer();
        } else if (!has_digits) {
            fail("expected coefficient or variable");
        }
        into.add_term(e, sign * c);
        return true;
    }

    template <char Var>
    Laurent<Var> laurent_until(char stop) {
        Laurent<Var> p;
        bool leading = true;
        while (!done() && peek() != stop) {
            if (!term(p, leading)) fail("unexpected '('");
            leading = false;
        }
        return p;
    }

    /// Integer multiplier directly in front of '(', as in "2(A-A^5)"; 1 when absent.
    BigInt factor_before_paren() {
        const std::size_t save = i_;
        auto d = digits();
        if (d && peek() == '(') return *d;
        i_ = save;
        return BigInt(1);
    }

    ArrowMonomial monomial() {
        ArrowMonomial m;
        while (peek() == 'K' || peek() == 'L') {
            char v = s_[i_++];
            expect('_');
            auto idx = digits();
            if (!idx) fail("expected index");
            int j = 1;
            if (v == 'K' && accept('^')) j = integer();
            if (v == 'K') m.mul_k(static_cast<int>(*idx), j);
            else m.mul_lambda(static_cast<int>(*idx));
        }
        return m;
    }

private:
    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace detail

template <class P>
P parse_poly(std::string_view text);

template <>
inline LaurentA parse_poly<LaurentA>(std::string_view text) {
    detail::PolyReader r(text);
    if (r.accept('0') && r.done()) return {};
    detail::PolyReader r2(text);
    return r2.laurent_until<'A'>('\0');
}

template <>
inline AffinePoly parse_poly<AffinePoly>(std::string_view text) {
    detail::PolyReader r(text);
    if (r.accept('0') && r.done()) return {};
    detail::PolyReader r2(text);
    return r2.laurent_until<'t'>('\0');
}

template <>
inline ArrowPoly parse_poly<ArrowPoly>(std::string_view text) {
    detail::PolyReader r(text);
    if (r.accept('0') && r.done()) return {};
    detail::PolyReader rd(text);
    ArrowPoly out;
    bool leading = true;
    while (!rd.done()) {
        int sign = 1;
        if (rd.accept('-')) sign = -1;
        else if (!rd.accept('+') && !leading) rd.fail("expected sign");
        leading = false;
        LaurentA coeff;
        const BigInt factor = rd.factor_before_paren();
        if (rd.accept('(')) {
            coeff = rd.laurent_until<'A'>(')') * LaurentA::monomial(factor, 0);
            rd.expect(')');
        } else {
            if (!rd.term(coeff, true)) rd.fail("expected term");
        }
        ArrowMonomial m = rd.monomial();
        out.add(m, sign > 0 ? coeff : -coeff);
    }
    return out;
}

}  // namespace knotoid
