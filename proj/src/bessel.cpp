#include "shellwave/bessel.hpp"

#include <cmath>
#include <limits>

namespace shellwave {

namespace {

constexpr real tiny_eps = 1e-17;

// K_0, K_1 from the ascending series; accurate for |w| <= 2.
void k01_series(cplx w, cplx& k0, cplx& k1)
{
    const cplx y = 0.25 * w * w;
    const cplx lg = std::log(0.5 * w);
    cplx term0 = 1.0;   // y^k / (k!)^2
    cplx term1 = 1.0;   // y^k / (k! (k+1)!)
    real harmonic = 0.0;
    cplx i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            term0 *= y / (real(k) * k);
            term1 *= y / (real(k) * (k + 1));
            harmonic += 1.0 / k;
        }
        const real psi1 = -euler_gamma + harmonic;              // psi(k+1)
        const real psi2 = psi1 + 1.0 / (k + 1);                  // psi(k+2)
        i0 += term0;
        i1 += term1;
        s0 += psi1 * term0;
        s1 += (psi1 + psi2) * term1;
        if (std::abs(term0) < tiny_eps * std::abs(i0) && k > 2) break;
    }
    i1 *= 0.5 * w;
    k0 = -lg * i0 + s0;
    k1 = 1.0 / w + lg * i1 - 0.25 * w * s1;
}

// exp(w) K_0(w), exp(w) K_1(w) by Steed's method on Temme's CF2.
void k01_cf2_scaled(cplx x, cplx& k0, cplx& k1)
{
    const real a1 = 0.25;
    cplx b = 2.0 * (1.0 + x);
    cplx d = 1.0 / b;
    cplx h = d, delh = d;
    cplx q1 = 0.0, q2 = 1.0;
    cplx q = a1, c = a1;
    real a = -a1;
    cplx s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-17 * std::abs(s)) break;
    }
    h = a1 * h;
    k0 = std::sqrt(pi / (2.0 * x)) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

// exp(w) K_nu(w) from the asymptotic expansion, nu in {0, 1}.
cplx k_asymptotic_scaled(int nu, cplx w)
{
    const real mu = 4.0 * nu * nu;
    cplx term = 1.0, sum = 1.0;
    real last = std::numeric_limits<real>::max();
    for (int k = 1; k < 60; ++k) {
        term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * w);
        const real mag = std::abs(term);
        if (mag > last) break;
        sum += term;
        last = mag;
        if (mag < tiny_eps) break;
    }
    return std::sqrt(pi / (2.0 * w)) * sum;
}

cplx i_asymptotic_scaled(int nu, cplx w)
{
    const real mu = 4.0 * nu * nu;
    cplx term = 1.0, sum = 1.0;
    real last = std::numeric_limits<real>::max();
    for (int k = 1; k < 60; ++k) {
        term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * w);
        const real mag = std::abs(term);
        if (mag > last) break;
        sum += term;
        last = mag;
        if (mag < tiny_eps) break;
    }
    return sum / std::sqrt(2.0 * pi * w);
}

void i01_series(cplx w, cplx& i0, cplx& i1)
{
    const cplx y = 0.25 * w * w;
    cplx t0 = 1.0, t1 = 1.0;
    i0 = 1.0;
    i1 = 1.0;
    for (int k = 1; k < 200; ++k) {
        t0 *= y / (real(k) * k);
        t1 *= y / (real(k) * (k + 1));
        i0 += t0;
        i1 += t1;
        if (std::abs(t0) < tiny_eps * std::abs(i0) && std::abs(t1) < tiny_eps * std::abs(i1)) break;
    }
    i1 *= 0.5 * w;
}

void check_k_domain(cplx w)
{
    if (!(w.real() > 0.0) || !std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw DomainError("bessel_k: argument must satisfy Re w > 0");
}

}  // namespace

void bessel_k01_scaled(cplx w, cplx& k0, cplx& k1)
{
    check_k_domain(w);
    const real r = std::abs(w);
    if (r <= 2.0) {
        k01_series(w, k0, k1);
        const cplx e = std::exp(w);
        k0 *= e;
        k1 *= e;
    } else if (r < 20.0) {
        k01_cf2_scaled(w, k0, k1);
    } else {
        k0 = k_asymptotic_scaled(0, w);
        k1 = k_asymptotic_scaled(1, w);
    }
}

cplx bessel_k0(cplx w)
{
    check_k_domain(w);
    cplx k0, k1;
    if (std::abs(w) <= 2.0) {
        k01_series(w, k0, k1);
        return k0;
    }
    bessel_k01_scaled(w, k0, k1);
    return k0 * std::exp(-w);
}

cplx bessel_k1(cplx w)
{
    check_k_domain(w);
    cplx k0, k1;
    if (std::abs(w) <= 2.0) {
        k01_series(w, k0, k1);
        return k1;
    }
    bessel_k01_scaled(w, k0, k1);
    return k1 * std::exp(-w);
}

cplx bessel_k(int order, cplx w)
{
    if (order == 0) return bessel_k0(w);
    if (order == 1) return bessel_k1(w);
    throw DomainError("bessel_k: only orders 0 and 1 are supported");
}

void bessel_i01_scaled(cplx w, cplx& i0, cplx& i1)
{
    if (w.real() < 0.0) throw DomainError("bessel_i: argument must satisfy Re w >= 0");
    if (std::abs(w) <= 25.0) {
        i01_series(w, i0, i1);
        const cplx e = std::exp(-w);
        i0 *= e;
        i1 *= e;
    } else {
        i0 = i_asymptotic_scaled(0, w);
        i1 = i_asymptotic_scaled(1, w);
    }
}

cplx bessel_i0(cplx w)
{
    cplx i0, i1;
    if (std::abs(w) <= 25.0 && w.real() >= 0.0) {
        i01_series(w, i0, i1);
        return i0;
    }
    bessel_i01_scaled(w, i0, i1);
    return i0 * std::exp(w);
}

cplx bessel_i1(cplx w)
{
    cplx i0, i1;
    if (std::abs(w) <= 25.0 && w.real() >= 0.0) {
        i01_series(w, i0, i1);
        return i1;
    }
    bessel_i01_scaled(w, i0, i1);
    return i1 * std::exp(w);
}

}  // namespace shellwave
