#include "anisolat/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace anisolat {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
}

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int ceil_isqrt(const Int& v) {
    if (v < 0) throw std::invalid_argument("ceil_isqrt of negative value");
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());  // floor sqrt
    if (r * r < v) r += 1;
    return r;
}

Rat ceil_sqrt(const Rat& v) {
    if (v < 0) throw std::invalid_argument("ceil_sqrt of negative value");
    // sqrt(n/d) = sqrt(n*d*4^k) / (d*2^k): scaling by 4^k before the integer
    // square root keeps the upper bound within 2^-k of the true value.
    Int nd = (v.get_num() * v.get_den()) << 32;
    return make_rat(ceil_isqrt(nd), v.get_den() << 16);
}

double rat_to_double(const Rat& x) { return x.get_d(); }

Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    Rat base = x;
    bool inv = e < 0;
    unsigned long a = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv) {
        if (base == 0) throw std::domain_error("zero to negative power");
        base = Rat(1) / base;
    }
    Rat acc(1);
    while (a) {
        if (a & 1) acc *= base;
        base *= base;
        a >>= 1;
    }
    return acc;
}

}  // namespace anisolat
