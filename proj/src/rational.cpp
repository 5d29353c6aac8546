#include "rigkit/rational.hpp"

#include <cctype>

namespace rigkit {

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    auto parse_int = [](const std::string& s) -> std::optional<BigInt> {
        if (s.empty()) return std::nullopt;
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) return std::nullopt;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        return BigInt(s);
    };
    if (slash == std::string::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
}

std::string rational_to_string(const Rational& q) {
    std::string s = rational_num(q).str();
    if (rational_den(q) != 1) s += "/" + rational_den(q).str();
    return s;
}

static BigInt integer_root(const BigInt& x, unsigned k) {
    if (x <= 1 || k == 1) return x;
    // Newton iteration with an over-estimate start; terminates at floor root.
    BigInt r = BigInt(1) << static_cast<unsigned>(msb(x) / k + 1);
    while (true) {
        BigInt rk1 = 1;
        for (unsigned i = 0; i + 1 < k; ++i) rk1 *= r;
        BigInt next = ((k - 1) * r + x / rk1) / k;
        if (next >= r) break;
        r = next;
    }
    while (true) {
        BigInt rk = 1;
        for (unsigned i = 0; i < k; ++i) rk *= r;
        if (rk <= x) break;
        --r;
    }
    return r;
}

BigInt floor_pow(BigInt base, const Rational& exponent) {
    if (base < 1) throw std::invalid_argument("floor_pow: base must be >= 1");
    if (exponent <= 0) throw std::invalid_argument("floor_pow: exponent must be > 0");
    BigInt a = rational_num(exponent);
    BigInt b = rational_den(exponent);
    if (a > 64 * b) throw std::invalid_argument("floor_pow: exponent too large");
    BigInt powa = 1;
    for (BigInt i = 0; i < a; ++i) powa *= base;
    return integer_root(powa, b.convert_to<unsigned>());
}

}  // namespace rigkit
