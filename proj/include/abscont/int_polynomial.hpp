#pragma once

#include <abscont/errors.hpp>
#include <abscont/precision.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace abscont {

/// Integer-coefficient polynomial, coefficients stored in ascending degree
/// order.  The zero polynomial is represented by an empty coefficient list;
/// any non-zero polynomial keeps a non-zero leading coefficient.
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<Int> ascending) : c_(std::move(ascending)) { trim(); }

    static IntPolynomial zero() { return IntPolynomial(); }

    static IntPolynomial constant(Int v) {
        IntPolynomial p;
        if (v != 0) p.c_.push_back(std::move(v));
        return p;
    }

    /// X^k
    static IntPolynomial monomial(int k, Int coeff = 1) {
        IntPolynomial p;
        if (coeff != 0) {
            p.c_.assign(static_cast<size_t>(k) + 1, Int(0));
            p.c_.back() = std::move(coeff);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& lead() const { return c_.back(); }
    Int coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Int(0);
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }
    bool operator<(const IntPolynomial& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        for (size_t i = c_.size(); i-- > 0;)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

    /// Horner evaluation; exact for Int arguments, rounded at the precision
    /// of T otherwise.
    template <class T>
    T eval(const T& z) const {
        T acc(0);
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * z + T(c_[i]);
        }
        return acc;
    }

    // Complex types cannot be constructed from cpp_int directly.
    template <unsigned Bits>
    ComplexBits<Bits> eval(const ComplexBits<Bits>& z) const {
        ComplexBits<Bits> acc(0);
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * z + ComplexBits<Bits>(RealBits<Bits>(c_[i]));
        }
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Int> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return IntPolynomial(std::move(d));
    }

    IntPolynomial operator-() const {
        std::vector<Int> r(c_);
        for (auto& x : r) x = -x;
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
        if (s == 0) return zero();
        std::vector<Int> r(a.c_);
        for (auto& x : r) x *= s;
        return IntPolynomial(std::move(r));
    }

    /// gcd of absolute coefficient values; 0 for the zero polynomial.
    Int content() const {
        Int g = 0;
        for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
        return g < 0 ? Int(-g) : g;
    }

    IntPolynomial primitive_part() const {
        Int g = content();
        if (g == 0 || g == 1) return *this;
        std::vector<Int> r(c_);
        for (auto& x : r) x /= g;
        return IntPolynomial(std::move(r));
    }

    /// Exact quotient if `d` divides *this over the rationals with an
    /// integer quotient; nullopt otherwise.
    std::optional<IntPolynomial> divide_exact(const IntPolynomial& d) const {
        if (d.is_zero()) return std::nullopt;
        if (is_zero()) return zero();
        if (d.degree() > degree()) return std::nullopt;
        std::vector<Rational> rem(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) rem[i] = Rational(c_[i]);
        const Rational dl(d.lead());
        std::vector<Rational> q(static_cast<size_t>(degree() - d.degree()) + 1);
        for (int k = degree() - d.degree(); k >= 0; --k) {
            Rational t = rem[static_cast<size_t>(k + d.degree())] / dl;
            q[static_cast<size_t>(k)] = t;
            for (int j = 0; j <= d.degree(); ++j)
                rem[static_cast<size_t>(k + j)] -= t * Rational(d.coeff(j));
        }
        for (const auto& r : rem)
            if (r != 0) return std::nullopt;
        std::vector<Int> qi(q.size());
        for (size_t i = 0; i < q.size(); ++i) {
            if (denominator(q[i]) != 1) return std::nullopt;
            qi[i] = numerator(q[i]);
        }
        return IntPolynomial(std::move(qi));
    }

    /// Primitive gcd via rational Euclid.  Fine at the degrees this library
    /// handles (<= 64).
    static IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
        auto to_rat = [](const IntPolynomial& p) {
            std::vector<Rational> v(p.c_.size());
            for (size_t i = 0; i < p.c_.size(); ++i) v[i] = Rational(p.c_[i]);
            return v;
        };
        std::vector<Rational> x = to_rat(a), y = to_rat(b);
        auto deg = [](const std::vector<Rational>& v) { return static_cast<int>(v.size()) - 1; };
        auto trim = [](std::vector<Rational>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        trim(x);
        trim(y);
        while (!y.empty()) {
            // x mod y
            for (int k = deg(x) - deg(y); k >= 0; --k) {
                Rational t = x[static_cast<size_t>(k + deg(y))] / y.back();
                for (int j = 0; j <= deg(y); ++j)
                    x[static_cast<size_t>(k + j)] -= t * y[static_cast<size_t>(j)];
            }
            trim(x);
            std::swap(x, y);
        }
        if (x.empty()) return zero();
        // clear denominators, return primitive part with positive lead
        Int den = 1;
        for (const auto& r : x) den = boost::multiprecision::lcm(den, denominator(r));
        std::vector<Int> g(x.size());
        for (size_t i = 0; i < x.size(); ++i) g[i] = numerator(x[i]) * (den / denominator(x[i]));
        IntPolynomial out = IntPolynomial(std::move(g)).primitive_part();
        if (!out.is_zero() && out.lead() < 0) out = -out;
        return out;
    }

    /// Yun's squarefree decomposition: returns factors f_i with
    /// p = content * prod f_i^i and each f_i squarefree (f_i may be 1).
    std::vector<IntPolynomial> squarefree_decomposition() const {
        std::vector<IntPolynomial> out;
        if (degree() < 1) return out;
        IntPolynomial f = primitive_part();
        IntPolynomial fp = f.derivative();
        IntPolynomial a = gcd(f, fp);
        IntPolynomial b = f.divide_exact(a).value();
        IntPolynomial c = fp.divide_exact(a).value();
        IntPolynomial d = c - b.derivative();
        while (!(b.degree() == 0)) {
            IntPolynomial g = gcd(b, d);
            out.push_back(g);
            b = b.divide_exact(g).value();
            c = d.divide_exact(g).value();
            d = c - b.derivative();
        }
        return out;
    }

    bool is_squarefree() const {
        if (degree() < 1) return true;
        return gcd(*this, derivative()).degree() == 0;
    }

    std::string to_csv() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += c_[i].str();
        }
        return s;
    }

    std::string to_human() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Int& a = c_[static_cast<size_t>(i)];
            if (a == 0) continue;
            const bool first = s.empty();
            if (a < 0)
                s += first ? "-" : "-";
            else if (!first)
                s += "+";
            Int mag = a < 0 ? Int(-a) : a;
            if (i == 0) {
                s += mag.str();
            } else {
                if (mag != 1) s += mag.str();
                s += "X";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    /// Accepts both the comma-separated ascending form ("1,-1,0,...,1") and
    /// the human form ("X^9-2X^8-X+1").
    static IntPolynomial parse(const std::string& text) {
        if (text.find(',') != std::string::npos) return parse_csv(text);
        if (text.find('X') != std::string::npos || text.find('x') != std::string::npos)
            return parse_human(text);
        // bare integer constant
        return parse_csv(text);
    }

    static IntPolynomial parse_csv(const std::string& text) {
        std::vector<Int> v;
        std::string cur;
        auto flush = [&]() {
            std::string t;
            for (char ch : cur)
                if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
            if (t.empty()) throw PreconditionError("empty coefficient in polynomial list");
            v.emplace_back(t);
            cur.clear();
        };
        for (char ch : text) {
            if (ch == ',')
                flush();
            else
                cur += ch;
        }
        flush();
        return IntPolynomial(std::move(v));
    }

    static IntPolynomial parse_human(const std::string& text) {
        std::vector<Int> v;
        size_t i = 0;
        const size_t n = text.size();
        auto skip_ws = [&]() {
            while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        auto set_coeff = [&](int exp, const Int& val) {
            if (exp >= static_cast<int>(v.size())) v.resize(static_cast<size_t>(exp) + 1, Int(0));
            v[static_cast<size_t>(exp)] += val;
        };
        skip_ws();
        bool expect_term = true;
        int sign = 1;
        while (i < n) {
            skip_ws();
            if (i >= n) break;
            char ch = text[i];
            if (ch == '+' || ch == '-') {
                if (expect_term && ch == '-')
                    sign = -sign;
                else if (!expect_term)
                    sign = (ch == '-') ? -1 : 1;
                expect_term = true;
                ++i;
                continue;
            }
            // term: [digits] [*] [X [^digits]]
            std::string digits;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
            skip_ws();
            if (i < n && text[i] == '*') {
                ++i;
                skip_ws();
            }
            Int coef = digits.empty() ? Int(1) : Int(digits);
            int exp = 0;
            if (i < n && (text[i] == 'X' || text[i] == 'x')) {
                ++i;
                exp = 1;
                skip_ws();
                if (i < n && text[i] == '^') {
                    ++i;
                    skip_ws();
                    std::string e;
                    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) e += text[i++];
                    if (e.empty()) throw PreconditionError("missing exponent in polynomial text");
                    exp = std::stoi(e);
                }
            } else if (digits.empty()) {
                throw PreconditionError("unexpected character in polynomial text: " +
                                        std::string(1, ch));
            }
            set_coeff(exp, sign * coef);
            sign = 1;
            expect_term = false;
        }
        if (expect_term) throw PreconditionError("dangling sign in polynomial text");
        return IntPolynomial(std::move(v));
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) {
        return os << p.to_human();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_; // ascending; empty means the zero polynomial
};

} // namespace abscont
