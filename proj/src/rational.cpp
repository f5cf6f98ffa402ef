#include "genericlab/rational.hpp"

#include <cctype>

#include "genericlab/errors.hpp"

namespace genericlab {

Rat make_rat(long num, long den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat pow2(long k) {
    Int big = 1;
    mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
    Rat r;
    if (k >= 0) {
        r = Rat(big);
    } else {
        r = Rat(1);
        r /= Rat(big);
    }
    r.canonicalize();
    return r;
}

namespace {

bool valid_int_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rat parse_rat(const std::string& text) {
    std::string s = text;
    // strip surrounding whitespace
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    const auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!valid_int_text(num) || !valid_int_text(den))
        throw ParseError("bad rational literal: '" + text + "'");
    Int n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in rational: '" + text + "'");
    Rat r(n);
    r /= Rat(d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rat_decimal(const Rat& q, int sig) {
    if (sig < 1) sig = 1;
    if (q == 0) return "0.0";
    const bool neg = q < 0;
    Int a = abs(q.get_num());
    Int b = q.get_den();

    // Find exponent e with 10^e <= a/b < 10^{e+1}.
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
    auto pow10 = [](long k) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
        return p;
    };
    auto cmp_pow = [&](long k) {
        // compare a/b against 10^k
        if (k >= 0) return cmp(a, b * pow10(k));
        return cmp(a * pow10(-k), b);
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;

    // scaled = round(a/b * 10^{sig-1-e}), half up
    long shift = sig - 1 - e;
    Int num = a, den = b;
    if (shift >= 0) num *= pow10(shift); else den *= pow10(-shift);
    Int scaled = (2 * num + den) / (2 * den);
    Int upper = pow10(sig);
    if (scaled >= upper) { scaled /= 10; ++e; }

    std::string digits = scaled.get_str();
    while (static_cast<int>(digits.size()) < sig) digits.insert(digits.begin(), '0');

    std::string out = neg ? "-" : "";
    if (e >= 0 && e < sig + 3 && e < 18) {
        if (e + 1 >= sig) {
            out += digits + std::string(static_cast<std::size_t>(e + 1 - sig), '0');
            out += ".0";
        } else {
            out += digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
                   digits.substr(static_cast<std::size_t>(e + 1));
        }
    } else if (e < 0 && e > -7) {
        out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    } else {
        out += digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(e);
    }
    return out;
}

Int rat_ceil(const Rat& q) {
    Int quo, rem;
    mpz_cdiv_q(quo.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    (void)rem;
    return quo;
}

std::uint64_t rat_ceil_u64(const Rat& q) {
    Int c = rat_ceil(q);
    if (c < 0) return 0;
    if (!c.fits_ulong_p()) throw BudgetError("value too large for 64-bit length: " + rat_str(q));
    return static_cast<std::uint64_t>(c.get_ui());
}

} // namespace genericlab
