#include "anisolat/quad_scalar.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace anisolat {

namespace {

void check_radicand(long d) {
    if (d < 0) throw std::invalid_argument("radicand must be nonnegative");
    for (long f = 2; f * f <= d; ++f) {
        if (d % (f * f) == 0) throw std::invalid_argument("radicand must be squarefree");
    }
}

}  // namespace

QuadScalar::QuadScalar(const Rat& a, const Rat& b, long d) : a_(a), b_(b), d_(d) {
    check_radicand(d);
    a_.canonicalize();  // callers may pass literals in non-lowest terms
    b_.canonicalize();
    if (d_ == 0) {
        b_ = 0;  // sqrt(0) == 0
        d_ = 1;
    } else if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (b_ == 0) d_ = 1;
}

const Rat& QuadScalar::rational_value() const {
    if (!is_rational()) throw std::domain_error("value is irrational");
    return a_;
}

int QuadScalar::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b|sqrt(d) decided by squaring.
    Rat lhs = a_ * a_;
    Rat rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;  // impossible for squarefree d >= 2
    return lhs > rhs ? sa : sb;
}

void QuadScalar::merge_radicand(const QuadScalar& y) {
    if (b_ == 0) {
        d_ = y.d_;
    } else if (y.b_ != 0 && d_ != y.d_) {
        throw std::invalid_argument("mixed radicands in quadratic field arithmetic");
    }
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& y) {
    merge_radicand(y);
    a_ += y.a_;
    b_ += y.b_;
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& y) {
    merge_radicand(y);
    a_ -= y.a_;
    b_ -= y.b_;
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& y) {
    merge_radicand(y);
    Rat na = a_ * y.a_ + b_ * y.b_ * d_;
    Rat nb = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& y) {
    if (y.is_zero()) throw std::domain_error("division by zero");
    merge_radicand(y);
    // Multiply by the conjugate; the field norm a^2 - b^2 d is nonzero.
    Rat norm = y.a_ * y.a_ - y.b_ * y.b_ * d_;
    Rat na = (a_ * y.a_ - b_ * y.b_ * d_) / norm;
    Rat nb = (b_ * y.a_ - a_ * y.b_) / norm;
    a_ = std::move(na);
    b_ = std::move(nb);
    if (b_ == 0) d_ = 1;
    return *this;
}

double QuadScalar::to_double(int precision_bits) const {
    mpfr_t m;
    if (is_rational()) {
        mpfr_init2(m, 64);
        mpfr_set_q(m, a_.get_mpq_t(), MPFR_RNDN);
        double r = mpfr_get_d(m, MPFR_RNDN);
        mpfr_clear(m);
        return r;
    }
    // Escalate working precision until a forward error bound certifies the
    // requested relative error.  Three roundings enter the computed value,
    // so (|a| + |b sqrt(d)| + |m|) * 2^(3-prec) bounds the absolute error.
    for (mpfr_prec_t prec = precision_bits + 32; prec <= (1 << 22); prec *= 2) {
        mpfr_t sd, t, aa, mag, bound, target;
        mpfr_init2(m, prec);
        mpfr_init2(sd, prec);
        mpfr_init2(t, prec);
        mpfr_init2(aa, prec);
        mpfr_init2(mag, prec);
        mpfr_init2(bound, prec);
        mpfr_init2(target, prec);

        mpfr_set_si(sd, d_, MPFR_RNDN);
        mpfr_sqrt(sd, sd, MPFR_RNDN);
        mpfr_set_q(t, b_.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(t, t, sd, MPFR_RNDN);
        mpfr_set_q(m, a_.get_mpq_t(), MPFR_RNDN);
        mpfr_add(m, m, t, MPFR_RNDN);

        mpfr_abs(mag, t, MPFR_RNDU);
        mpfr_set_q(aa, a_.get_mpq_t(), MPFR_RNDU);
        mpfr_abs(aa, aa, MPFR_RNDU);
        mpfr_add(mag, mag, aa, MPFR_RNDU);
        mpfr_abs(aa, m, MPFR_RNDU);
        mpfr_add(mag, mag, aa, MPFR_RNDU);
        mpfr_mul_2si(bound, mag, 3 - static_cast<long>(prec), MPFR_RNDU);
        mpfr_mul_2si(target, aa, -precision_bits - 1, MPFR_RNDD);

        bool ok = !mpfr_zero_p(m) && mpfr_cmp(bound, target) <= 0;
        double r = mpfr_get_d(m, MPFR_RNDN);
        mpfr_clear(m);
        mpfr_clear(sd);
        mpfr_clear(t);
        mpfr_clear(aa);
        mpfr_clear(mag);
        mpfr_clear(bound);
        mpfr_clear(target);
        if (ok) return r;
    }
    throw std::runtime_error("to_double: precision escalation exhausted");
}

std::string QuadScalar::to_string() const {
    if (is_rational()) return rat_to_string(a_);
    std::string rad;
    Rat ab = abs(b_);
    if (ab == 1) {
        rad = "sqrt(" + std::to_string(d_) + ")";
    } else {
        rad = rat_to_string(ab) + "*sqrt(" + std::to_string(d_) + ")";
    }
    std::string sign_str = sgn(b_) < 0 ? "-" : "";
    if (a_ == 0) return sign_str + rad;
    return rat_to_string(a_) + (sgn(b_) < 0 ? "-" : "+") + rad;
}

Int quad_floor(const QuadScalar& x) {
    if (x.is_rational()) return rat_floor(x.rational_value());
    double approx = x.to_double();
    Int f;
    mpz_set_d(f.get_mpz_t(), std::floor(approx));
    // The approximation is within one unit; fix up with exact comparisons.
    while (QuadScalar(Rat(f)) > x) f -= 1;
    while (QuadScalar(Rat(f + 1)) <= x) f += 1;
    return f;
}

Int quad_ceil(const QuadScalar& x) { return -quad_floor(-x); }

Rat rat_below(const QuadScalar& x) {
    if (x.is_rational()) return x.rational_value();
    double v = x.to_double();
    double margin = std::max(std::abs(v), 1.0) * 1e-12;
    for (int i = 0; i < 80; ++i) {
        Rat r(v - margin);
        if (QuadScalar(r) <= x) return r;
        margin *= 2;
    }
    throw std::runtime_error("rat_below: certification failed");
}

Rat rat_above(const QuadScalar& x) { return -rat_below(-x); }

Rat ceil_sqrt_quad(const QuadScalar& v) {
    if (v.sign() < 0) throw std::invalid_argument("ceil_sqrt_quad of negative value");
    if (v.is_rational()) return ceil_sqrt(v.rational_value());
    Rat u(std::sqrt(v.to_double()) * (1.0 + 1e-9));
    if (sgn(u) < 0) u = 0;
    while (QuadScalar(u * u) < v) {
        u = u * make_rat(1048577, 1048576) + make_rat(1, 1 << 20);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Text syntax
// ---------------------------------------------------------------------------

namespace {

// One term: rational literal, "sqrt(D)", or "C*sqrt(D)".
QuadScalar parse_term(const std::string& s) {
    auto pos = s.find("sqrt(");
    if (pos == std::string::npos) return QuadScalar(parse_rat(s));
    if (s.back() != ')') throw std::invalid_argument("bad radical literal: '" + s + "'");
    std::string inner = s.substr(pos + 5, s.size() - pos - 6);
    long d = 0;
    try {
        size_t used = 0;
        d = std::stol(inner, &used);
        if (used != inner.size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("bad radicand: '" + inner + "'");
    }
    Rat coeff(1);
    if (pos == 1 && (s[0] == '-' || s[0] == '+')) {
        if (s[0] == '-') coeff = -1;
    } else if (pos > 0) {
        if (s[pos - 1] != '*') throw std::invalid_argument("expected '*' before sqrt: '" + s + "'");
        coeff = parse_rat(s.substr(0, pos - 1));
    }
    return QuadScalar(Rat(0), coeff, d);
}

}  // namespace

QuadScalar parse_quad(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    // Split at the first top-level +/- following a digit or ')'.
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') &&
            (std::isdigit(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == ')')) {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return parse_term(s);
    QuadScalar lhs = parse_term(s.substr(0, split));
    QuadScalar rhs = parse_term(s.substr(split + 1));
    return s[split] == '+' ? lhs + rhs : lhs - rhs;
}

}  // namespace anisolat
