#include "nucleoq/cooperative.hpp"

#include "nucleoq/errors.hpp"
#include "nucleoq/photonics.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <vector>

namespace nucleoq {

namespace k = constants;

const char* to_string(ThicknessLimit kind) {
    switch (kind) {
        case ThicknessLimit::FocalLength: return "focal_length";
        case ThicknessLimit::PhotoAbsorption: return "photo_absorption";
        case ThicknessLimit::UserThickness: return "user_thickness";
    }
    return "?";
}

Energy recoil_energy(Energy E_gamma, Mass M) {
    return Energy(E_gamma.si() * E_gamma.si() / (2.0 * M.si() * k::c * k::c));
}

double lamb_moessbauer(Energy E_R, Temperature theta_D, Temperature T) {
    if (!(theta_D.si() > 0)) throw DomainError("lamb_moessbauer: Debye temperature must be positive");
    if (T.si() < 0) throw DomainError("lamb_moessbauer: negative temperature");
    if (E_R.si() < 0) throw DomainError("lamb_moessbauer: negative recoil energy");
    const double td = theta_D.si();
    double thermal = 0.0;
    if (T.si() > 0) {
        const double t = T.si();
        thermal = 4.0 * t * t / (td * td) * debye_integral(td / t);
    }
    return std::exp(-2.0 * E_R.si() / (k::kB * td) * (1.0 + thermal));
}

double lamb_moessbauer(const NuclearTransition& t, const TargetMaterial& mat) {
    if (!(mat.M.si() > 0)) throw DomainError("lamb_moessbauer: mass must be positive");
    return lamb_moessbauer(recoil_energy(t.E_gamma, mat.M), mat.theta_D, mat.T);
}

Area resonance_cross_section(const NuclearTransition& t, double f_LM) {
    if (!(f_LM >= 0 && f_LM <= 1)) throw DomainError("resonance_cross_section: f_LM outside [0, 1]");
    if (std::isinf(t.alpha_IC)) return Area(0.0);
    const double reduced_wavelength = k::hbar * k::c / t.E_gamma.si();
    const double g = static_cast<double>(t.Ie.multiplicity()) / t.Ig.multiplicity();
    return Area(2.0 * k::pi * g * reduced_wavelength * reduced_wavelength * f_LM /
                (1.0 + t.alpha_IC));
}

double effective_thickness(Area sigma_R, const TargetMaterial& mat, Length d) {
    if (d.si() < 0) throw DomainError("effective_thickness: negative thickness");
    return sigma_R.si() * mat.N.si() * mat.enrichment * d.si() / 4.0;
}

Energy width_enhancement(double xi, Energy Gamma0) {
    if (!(xi >= 0)) throw DomainError("width_enhancement: negative thickness parameter");
    return Gamma0 * (xi + 1.0);
}

ThicknessChoice used_thickness(Length L_foc, Length inv_mu, std::optional<Length> user) {
    ThicknessChoice c{L_foc, ThicknessLimit::FocalLength};
    if (inv_mu <= c.d) c = {inv_mu, ThicknessLimit::PhotoAbsorption};
    if (user && *user < c.d) c = {*user, ThicknessLimit::UserThickness};
    return c;
}

CollectiveContext collective_context(const NuclearTransition& t, const TargetMaterial& mat,
                                     Length d_foc, std::optional<Length> user_thickness) {
    if (user_thickness && user_thickness->si() < 0)
        throw DomainError("sample thickness must be non-negative");
    CollectiveContext ctx;
    ctx.f_LM = lamb_moessbauer(t, mat);
    ctx.sigma_R = resonance_cross_section(t, ctx.f_LM);
    ctx.L_foc = focal_length(wavelength(t.E_gamma), d_foc);
    auto choice = used_thickness(ctx.L_foc, mat.inv_mu, user_thickness);
    ctx.d_used = choice.d;
    ctx.limit_kind = choice.kind;
    ctx.xi = effective_thickness(ctx.sigma_R, mat, ctx.d_used);
    ctx.Gamma_enhanced = width_enhancement(ctx.xi, total_width(t));
    return ctx;
}

double nfs_intensity_closed(double xi, double tau) {
    if (xi < 0 || tau < 0) throw DomainError("nfs_intensity_closed: xi and tau must be non-negative");
    if (xi == 0) return 0.0;
    if (tau < 1e-8) {
        // xi e^{-tau} (J1(2 sqrt(x))/sqrt(x))^2 * xi with x = xi tau, expanded in x.
        const double x = xi * tau;
        const double s = 1.0 - x / 2.0 + x * x / 12.0;
        return xi * xi * std::exp(-tau) * s * s;
    }
    const double j = bessel_j1(std::sqrt(4.0 * xi * tau));
    return xi * std::exp(-tau) / tau * j * j;
}

double nfs_intensity_early(double xi, double tau) {
    if (tau < 0) throw DomainError("nfs_intensity_early: negative tau");
    return xi * xi * std::exp(-(xi + 1.0) * tau);
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Big levin_t(const std::vector<Big>& terms, const std::vector<Big>& sums, size_t count) {
    const size_t n = count - 1;
    Big num = 0, den = 0;
    const Big beta = 1;
    Big binom = 1;
    for (size_t j = 0; j <= n; ++j) {
        if (j > 0) binom = binom * Big(n - j + 1) / Big(j);
        Big w = binom;
        Big ratio = (beta + j) / (beta + n);
        if (n >= 1) w *= pow(ratio, static_cast<int>(n - 1));
        if (j % 2) w = -w;
        num += w * sums[j] / terms[j];
        den += w / terms[j];
    }
    return num / den;
}

}  // namespace

SeriesResult nfs_intensity_series(double xi, double tau, int orders, bool accelerate, double tol) {
    if (orders < 1) throw DomainError("nfs_intensity_series: orders must be >= 1");
    if (xi < 0 || tau < 0) throw DomainError("nfs_intensity_series: xi and tau must be non-negative");
    SeriesResult r;
    r.orders = orders;
    if (xi == 0) {
        r.converged = true;
        return r;
    }

    const Big x = Big(xi) * Big(tau);
    std::vector<Big> terms, sums;
    terms.reserve(orders);
    sums.reserve(orders);
    Big term = 1, sum = 0;
    for (int kk = 0; kk < orders; ++kk) {
        terms.push_back(term);
        sum += term;
        sums.push_back(sum);
        term *= -x / Big((kk + 1) * (kk + 2));
    }

    auto square = [&](const Big& s) {
        return static_cast<double>(Big(xi) * Big(xi) * exp(-Big(tau)) * s * s);
    };

    bool raw_converged = x == 0 || abs(terms.back()) <= Big(1e-40) * abs(sums.back());
    if (!accelerate || raw_converged || orders < 3) {
        r.value = square(sums.back());
        if (orders >= 2) {
            double prev = square(sums[orders - 2]);
            r.change = r.value != 0 ? std::abs(r.value - prev) / std::abs(r.value) : 0.0;
        }
        r.converged = raw_converged || r.change <= tol;
        return r;
    }

    Big est = levin_t(terms, sums, orders);
    Big prev = levin_t(terms, sums, orders - 1);
    r.value = square(est);
    double pv = square(prev);
    r.change = r.value != 0 ? std::abs(r.value - pv) / std::abs(r.value) : std::abs(pv);
    r.converged = r.change <= tol;
    return r;
}

}  // namespace nucleoq
