#include "nucleoq/specfun.hpp"

#include "nucleoq/errors.hpp"
#include "nucleoq/units.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace nucleoq {

namespace mp = boost::multiprecision;

HalfInt HalfInt::from_double(double v) {
    double t = 2.0 * v;
    double r = std::round(t);
    if (std::abs(t - r) > 1e-9) throw DomainError("not a half-integer: " + std::to_string(v));
    return HalfInt(static_cast<int>(r));
}

AngularMomentum::AngularMomentum(int twice_value) : twice_(twice_value) {
    if (twice_value < 0) throw DomainError("angular momentum must be non-negative");
}

AngularMomentum AngularMomentum::from_double(double v) {
    return AngularMomentum(HalfInt::from_double(v).twice);
}

AngularMomentum AngularMomentum::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            size_t pos = 0;
            double v = std::stod(text, &pos);
            if (pos != text.size()) throw DomainError("trailing characters");
            return from_double(v);
        }
        size_t p1 = 0, p2 = 0;
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        int n = std::stoi(num, &p1);
        int d = std::stoi(den, &p2);
        if (p1 != num.size() || p2 != den.size() || d != 2)
            throw DomainError("denominator must be 2");
        return AngularMomentum(n);
    } catch (const std::logic_error&) {
        throw DomainError("invalid angular momentum '" + text + "'");
    }
}

std::vector<HalfInt> AngularMomentum::projections() const {
    std::vector<HalfInt> out;
    for (int m = -twice_; m <= twice_; m += 2) out.emplace_back(m);
    return out;
}

std::string AngularMomentum::to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

bool triangle(AngularMomentum a, AngularMomentum b, AngularMomentum c) {
    int ta = a.twice(), tb = b.twice(), tc = c.twice();
    if ((ta + tb + tc) % 2 != 0) return false;
    return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

namespace {

using Rational = mp::cpp_rational;

mp::cpp_int factorial(int n) {
    mp::cpp_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

void check_projection(AngularMomentum j, HalfInt m) {
    if (std::abs(m.twice) > j.twice() || (j.twice() - m.twice) % 2 != 0)
        throw DomainError("invalid projection " + std::to_string(m.twice) + "/2 for j=" +
                          j.to_string());
}

}  // namespace

double clebsch_gordan(AngularMomentum j1, HalfInt m1, AngularMomentum j2, HalfInt m2,
                      AngularMomentum j, HalfInt m) {
    check_projection(j1, m1);
    check_projection(j2, m2);
    check_projection(j, m);
    if (m1.twice + m2.twice != m.twice) return 0.0;
    if (!triangle(j1, j2, j)) return 0.0;

    // All combinations below are integers because of the parity checks above.
    const int a = j1.twice(), b = j2.twice(), c = j.twice();
    const int jpj1mj2 = (c + a - b) / 2;
    const int jmj1pj2 = (c - a + b) / 2;
    const int j1pj2mj = (a + b - c) / 2;
    const int sum = (a + b + c) / 2;
    const int jpm = (c + m.twice) / 2, jmm = (c - m.twice) / 2;
    const int j1pm1 = (a + m1.twice) / 2, j1mm1 = (a - m1.twice) / 2;
    const int j2pm2 = (b + m2.twice) / 2, j2mm2 = (b - m2.twice) / 2;

    Rational radicand(mp::cpp_int((c + 1)) * factorial(jpj1mj2) * factorial(jmj1pj2) *
                          factorial(j1pj2mj) * factorial(jpm) * factorial(jmm) *
                          factorial(j1pm1) * factorial(j1mm1) * factorial(j2pm2) *
                          factorial(j2mm2),
                      factorial(sum + 1));

    const int t1 = (c - b + m1.twice) / 2;  // j - j2 + m1
    const int t2 = (c - a - m2.twice) / 2;  // j - j1 - m2
    const int kmin = std::max({0, -t1, -t2});
    const int kmax = std::min({j1pj2mj, j1mm1, j2pm2});

    Rational s = 0;
    for (int k = kmin; k <= kmax; ++k) {
        mp::cpp_int den = factorial(k) * factorial(j1pj2mj - k) * factorial(j1mm1 - k) *
                          factorial(j2pm2 - k) * factorial(t1 + k) * factorial(t2 + k);
        Rational term(mp::cpp_int(1), den);
        if (k % 2) s -= term;
        else s += term;
    }
    if (s == 0) return 0.0;

    Rational sq = s * s * radicand;
    using Big = mp::cpp_bin_float_50;
    Big v = mp::sqrt(Big(mp::numerator(sq)) / Big(mp::denominator(sq)));
    double out = static_cast<double>(v);
    return s < 0 ? -out : out;
}

namespace {

constexpr double kJ1AsymptoticThreshold = 17.0;

double j1_series(double x) {
    long double half = 0.5L * x;
    long double q = -half * half;
    long double term = half;
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

double j1_asymptotic(double x) {
    // Hankel expansion, truncated at the smallest term.
    const double mu = 4.0;
    double p = 1.0, q = 0.0;
    double ak = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        double odd = 2.0 * k - 1.0;
        ak *= (mu - odd * odd) / (k * 8.0 * x);
        double mag = std::abs(ak);
        if (mag >= prev) break;
        prev = mag;
        // a_k contributes to P for even k, to Q for odd k, with alternating signs.
        int r = k % 4;
        if (r == 1) q += ak;
        else if (r == 2) p -= ak;
        else if (r == 3) q -= ak;
        else p += ak;
        if (mag < 1e-18) break;
    }
    const double s = std::sin(x), c = std::cos(x);
    const double inv_sqrt2 = 0.70710678118654752440;
    double cos_chi = (s - c) * inv_sqrt2;
    double sin_chi = -(s + c) * inv_sqrt2;
    return std::sqrt(2.0 / (constants::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j1(double x) {
    if (x == 0.0) return 0.0;
    double ax = std::abs(x);
    double v = ax < kJ1AsymptoticThreshold ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0 ? -v : v;
}

double debye_integral(double upper) {
    if (std::isnan(upper) || upper < 0) throw DomainError("debye_integral: negative upper limit");
    if (upper == 0.0) return 0.0;
    auto f = [](double x) {
        if (x < 1e-8) return 1.0 - 0.5 * x;
        return x / std::expm1(x);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err = 0.0;
    if (upper <= 2.0) return GK::integrate(f, 0.0, upper, 20, 1e-14, &err);
    // Beyond x = 2 subtract the tail from the complete integral so the result never
    // overshoots pi^2/6.
    const double full = constants::pi * constants::pi / 6.0;
    if (std::isinf(upper)) return full;
    return full - GK::integrate(f, upper, std::numeric_limits<double>::infinity(), 20, 1e-14, &err);
}

std::uint64_t double_factorial(int n) {
    if (n < 0) throw DomainError("double_factorial: negative argument");
    if (n > 33) throw DomainError("double_factorial: result exceeds 64 bits");
    std::uint64_t r = 1;
    for (int k = n; k > 1; k -= 2) r *= static_cast<std::uint64_t>(k);
    return r;
}

}  // namespace nucleoq
