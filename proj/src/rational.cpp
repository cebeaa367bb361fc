#include "nilpencil/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "nilpencil/errors.hpp"

namespace nilpencil {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("rational with zero denominator: " + s);
        return Rat(num, den);  // the (num, den) constructor canonicalizes
    } catch (const std::runtime_error&) {
        throw Error("malformed rational: " + s);
    }
}

std::string rat_str(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw Error("non-finite double");
    if (x == 0.0) return Rat(0);
    int exp;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    Int m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(m);
    Int two(2);
    if (exp >= 0)
        r *= Rat(boost::multiprecision::pow(two, exp));
    else
        r /= Rat(boost::multiprecision::pow(two, -exp));
    return r;
}

std::optional<Rat> rat_reconstruct(double x, double reltol, long max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    double scale = std::max(1.0, std::fabs(x));
    // continued fraction convergents
    long long p0 = 1, q0 = 0;  // h_{-1}/k_{-1}
    long long p1 = 0, q1 = 1;  // seeded so first step yields floor(x)/1
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fa = std::floor(v);
        if (fa > 9e17 || fa < -9e17) break;
        long long a = static_cast<long long>(fa);
        long long p2 = a * p0 + p1, q2 = a * q0 + q1;
        if (q2 > max_den || q2 < 0) break;
        p1 = p0; q1 = q0; p0 = p2; q0 = q2;
        if (q0 > 0 && std::fabs(x - double(p0) / double(q0)) <= reltol * scale)
            return Rat(Int(p0), Int(q0));
        double frac = v - fa;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q0 > 0 && std::fabs(x - double(p0) / double(q0)) <= reltol * scale)
        return Rat(Int(p0), Int(q0));
    return std::nullopt;
}

std::optional<Rat> rat_sqrt_exact(const Rat& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rat(0);
    Int num = numerator(r), den = denominator(r);
    Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

int rat_sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace nilpencil
