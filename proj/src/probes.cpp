#include "shellwave/probes.hpp"

#include <algorithm>
#include <cmath>

#include "shellwave/bessel.hpp"
#include "shellwave/quadrature.hpp"

namespace shellwave {

Vec2c Probe::value(const Vec2& x) const
{
    Vec2c v = Vec2c::Zero();
    v[comp] = envelope(x);
    return v;
}

std::vector<Probe> default_probes(int count, real width)
{
    static const real radii[4] = {0.55, 1.0, 1.45, 1.9};
    const real golden = pi * (3.0 - std::sqrt(5.0));
    std::vector<Probe> out;
    for (int a = 0; a < count; ++a) {
        const real r = radii[a % 4], phi = golden * a;
        out.push_back({Vec2(r * std::cos(phi), r * std::sin(phi)), width, (a / 4) % 2});
    }
    return out;
}

CMat probe_gram(const std::vector<Probe>& probes)
{
    const int P = static_cast<int>(probes.size());
    CMat g = CMat::Zero(P, P);
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            if (probes[a].comp != probes[b].comp) continue;
            const real wa = probes[a].width * probes[a].width, wb = probes[b].width * probes[b].width;
            const real s = wa + wb;
            g(a, b) = pi * wa * wb / s * std::exp(-(probes[a].center - probes[b].center).squaredNorm() / s);
        }
    return g;
}

RadialResolvent::RadialResolvent(cplx kappa, real width) : kappa_(kappa), width_(width)
{
    const real R = 7.0 * width;
    edges_.push_back(0.0);
    for (real e = width * std::ldexp(1.0, -34); e < 0.25 * width; e *= 2.0) edges_.push_back(e);
    const int uniform = 28;
    const real start = edges_.back();
    for (int k = 1; k <= uniform; ++k) edges_.push_back(start + (R - start) * k / uniform);

    const int P = static_cast<int>(edges_.size()) - 1;
    const QuadRule& gl = gauss_legendre(16);
    std::vector<cplx> a(P), b(P);
    for (int p = 0; p < P; ++p) {
        const real lo = edges_[p], hi = edges_[p + 1];
        const real half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        cplx sa = 0.0, sb = 0.0;
        for (std::size_t q = 0; q < gl.size(); ++q) {
            const real rho = mid + half * gl.nodes[q];
            const real g = std::exp(-rho * rho / (width * width)) * rho * gl.weights[q] * half;
            sa += bessel_i0(kappa * rho) * g;
            sb += bessel_k0(kappa * rho) * g;
        }
        a[p] = sa;
        b[p] = sb;
    }
    cumA_.assign(P + 1, 0.0);
    tailB_.assign(P + 1, 0.0);
    for (int p = 0; p < P; ++p) cumA_[p + 1] = cumA_[p] + a[p];
    for (int p = P - 1; p >= 0; --p) tailB_[p] = tailB_[p + 1] + b[p];
}

cplx RadialResolvent::partialA(int p, real r) const
{
    const QuadRule& gl = gauss_legendre(16);
    const real lo = edges_[p];
    const real half = 0.5 * (r - lo), mid = 0.5 * (r + lo);
    cplx s = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const real rho = mid + half * gl.nodes[q];
        s += bessel_i0(kappa_ * rho) * std::exp(-rho * rho / (width_ * width_)) * rho * gl.weights[q];
    }
    return s * half;
}

cplx RadialResolvent::partialB(int p, real r) const
{
    const QuadRule& gl = gauss_legendre(16);
    const real hi = edges_[p + 1];
    const real half = 0.5 * (hi - r), mid = 0.5 * (hi + r);
    cplx s = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const real rho = mid + half * gl.nodes[q];
        s += bessel_k0(kappa_ * rho) * std::exp(-rho * rho / (width_ * width_)) * rho * gl.weights[q];
    }
    return s * half;
}

void RadialResolvent::eval(real r, cplx& u, cplx& du) const
{
    const int P = static_cast<int>(edges_.size()) - 1;
    if (r <= edges_[1]) {
        // K_1(kappa r) int_0^r ~ r/2 g(0) -> 0; the inner sliver of B is below double resolution
        u = tailB_[0];
        du = 0.0;
        if (r > 0.0) {
            const cplx A = 0.5 * r * r;
            u = bessel_k0(kappa_ * r) * A + bessel_i0(kappa_ * r) * tailB_[0];
            du = kappa_ * (-bessel_k1(kappa_ * r) * A + bessel_i1(kappa_ * r) * tailB_[0]);
        }
        return;
    }
    cplx A, B;
    if (r >= edges_[P]) {
        A = cumA_[P];
        B = 0.0;
    } else {
        const int p = static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), r) - edges_.begin()) - 1;
        A = cumA_[p] + partialA(p, r);
        B = partialB(p, r) + tailB_[p + 1];
    }
    const cplx w = kappa_ * r;
    cplx k0, k1;
    bessel_k01_scaled(w, k0, k1);
    const cplx e = std::exp(-w);
    k0 *= e;
    k1 *= e;
    cplx i0 = 0.0, i1 = 0.0;
    if (B != 0.0) {
        i0 = bessel_i0(w);
        i1 = bessel_i1(w);
    }
    u = k0 * A + i0 * B;
    du = kappa_ * (-k1 * A + i1 * B);
}

namespace {

Vec2c apply_radial(const SpectralParam& sp, const Probe& v, const RadialResolvent& tab, const Vec2& x)
{
    const Vec2 d = x - v.center;
    const real r = d.norm();
    cplx u, du;
    tab.eval(r, u, du);
    Vec2c e = Vec2c::Zero();
    e[v.comp] = 1.0;
    Mat2c h = (sp.m * beta2() + sp.z * Mat2c::Identity()) * u;
    if (r > 0.0) h += -I * du * alpha_dot2(d.x() / r, d.y() / r);
    return h * e;
}

}  // namespace

Vec2c volume_resolvent(const SpectralParam& sp, const Probe& v, const Vec2& x)
{
    RadialResolvent tab(sp.kappa, v.width);
    return apply_radial(sp, v, tab, x);
}

ProbeResolvent::ProbeResolvent(const SpectralParam& sp, const std::vector<Probe>& probes)
    : sp_(sp), probes_(probes)
{
    std::vector<std::pair<real, std::shared_ptr<RadialResolvent>>> seen;
    for (const auto& p : probes_) {
        std::shared_ptr<RadialResolvent> t;
        for (auto& s : seen)
            if (s.first == p.width) t = s.second;
        if (!t) {
            t = std::make_shared<RadialResolvent>(sp.kappa, p.width);
            seen.emplace_back(p.width, t);
        }
        tables_.push_back(t);
    }
}

Vec2c ProbeResolvent::apply(int b, const Vec2& x) const { return apply_radial(sp_, probes_[b], *tables_[b], x); }

Vec2c volume_resolvent_polar(const SpectralParam& sp, const std::function<Vec2c(const Vec2&)>& v,
                             const Vec2& center, real support, const Vec2& x, real tol)
{
    auto ray = [&](real phi) -> Vec2c {
        const Vec2 e(std::cos(phi), std::sin(phi));
        // |x + rho e - center| <= support
        const Vec2 d = x - center;
        const real bq = d.dot(e), cq = d.squaredNorm() - support * support;
        const real disc = bq * bq - cq;
        if (disc <= 0.0) return Vec2c::Zero();
        const real sq = std::sqrt(disc);
        const real lo = std::max(0.0, -bq - sq), hi = -bq + sq;
        if (hi <= 0.0) return Vec2c::Zero();
        auto f = [&](real rho) -> Vec2c {
            if (rho <= 0.0) return Vec2c::Zero();
            return green_2d_fast(sp, -rho * e.x(), -rho * e.y()) * v(x + rho * e) * rho;
        };
        // the integrand has rho log rho terms at rho = 0; the adaptive rule resolves them
        return adaptive_gauss(f, lo, hi, 0.1 * tol);
    };
    // trapezoid in phi, doubling and reusing the previous rays
    Vec2c sum = Vec2c::Zero();
    const int M0 = 32;
    for (int q = 0; q < M0; ++q) sum += ray(2.0 * pi * q / M0);
    Vec2c prev = sum * (2.0 * pi / M0);
    for (int M = 2 * M0; M <= 8192; M *= 2) {
        for (int q = 1; q < M; q += 2) sum += ray(2.0 * pi * q / M);
        const Vec2c s = sum * (2.0 * pi / M);
        if ((s - prev).norm() <= tol) return s;
        prev = s;
    }
    throw NumericalError("volume_resolvent_polar: angular refinement did not converge");
}

}  // namespace shellwave
