#include "shellwave/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "shellwave/quadrature.hpp"

namespace shellwave {

std::string CurveSpec::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case CurveKind::circle: os << "circle(" << a << ")"; break;
    case CurveKind::ellipse: os << "ellipse(" << a << "," << b << ")"; break;
    case CurveKind::star: os << "star(" << a << "," << amp << "," << freq << ")"; break;
    }
    return os.str();
}

namespace {

// radial profile of the star family and its derivatives
void star_r(const CurveSpec& c, real s, real& r, real& r1, real& r2)
{
    const real f = c.freq;
    r = c.a * (1.0 + c.amp * std::cos(f * s));
    r1 = -c.a * c.amp * f * std::sin(f * s);
    r2 = -c.a * c.amp * f * f * std::cos(f * s);
}

real cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2)
{
    const real d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
    const real d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
    return d1 * d2 < 0.0 && d3 * d4 < 0.0;
}

}  // namespace

PlanarCurve::PlanarCurve(const CurveSpec& spec, int n) : spec_(spec), n_(n)
{
    if (n < 16 || n % 2 != 0) throw DomainError("make_curve: n must be even and >= 16");
    if (!(spec.a > 0.0) || !(spec.b > 0.0)) throw DomainError("make_curve: shape parameters must be positive");
    if (spec.kind == CurveKind::star) {
        if (spec.freq < 0) throw DomainError("make_curve: star frequency must be >= 0");
        if (std::abs(spec.amp) >= 1.0) throw DomainError("make_curve: star amplitude must satisfy |amp| < 1");
    }
    check_simple();

    s_.resize(n);
    x_.resize(n);
    nu_.resize(n);
    sp_.resize(n);
    kap_.resize(n);
    w_.resize(n);
    for (int i = 0; i < n; ++i) {
        const real s = h() * i;
        s_[i] = s;
        x_[i] = point(s);
        nu_[i] = normal(s);
        sp_[i] = speed(s);
        kap_[i] = curvature(s);
        w_[i] = h() * sp_[i];
    }
    const int fine = 4096;
    for (int i = 0; i < fine; ++i)
        max_kappa_ = std::max(max_kappa_, std::abs(curvature(2.0 * pi * i / fine)));
    inj_bound_ = compute_injectivity_bound();
}

Vec2 PlanarCurve::point(real s) const
{
    switch (spec_.kind) {
    case CurveKind::circle: return spec_.a * Vec2(std::cos(s), std::sin(s));
    case CurveKind::ellipse: return Vec2(spec_.a * std::cos(s), spec_.b * std::sin(s));
    case CurveKind::star: {
        real r, r1, r2;
        star_r(spec_, s, r, r1, r2);
        return r * Vec2(std::cos(s), std::sin(s));
    }
    }
    return Vec2::Zero();
}

Vec2 PlanarCurve::d1(real s) const
{
    switch (spec_.kind) {
    case CurveKind::circle: return spec_.a * Vec2(-std::sin(s), std::cos(s));
    case CurveKind::ellipse: return Vec2(-spec_.a * std::sin(s), spec_.b * std::cos(s));
    case CurveKind::star: {
        real r, r1, r2;
        star_r(spec_, s, r, r1, r2);
        const Vec2 e(std::cos(s), std::sin(s)), et(-std::sin(s), std::cos(s));
        return r1 * e + r * et;
    }
    }
    return Vec2::Zero();
}

Vec2 PlanarCurve::d2(real s) const
{
    switch (spec_.kind) {
    case CurveKind::circle: return -spec_.a * Vec2(std::cos(s), std::sin(s));
    case CurveKind::ellipse: return Vec2(-spec_.a * std::cos(s), -spec_.b * std::sin(s));
    case CurveKind::star: {
        real r, r1, r2;
        star_r(spec_, s, r, r1, r2);
        const Vec2 e(std::cos(s), std::sin(s)), et(-std::sin(s), std::cos(s));
        return (r2 - r) * e + 2.0 * r1 * et;
    }
    }
    return Vec2::Zero();
}

Vec2 PlanarCurve::normal(real s) const
{
    const Vec2 t = d1(s);
    return Vec2(t.y(), -t.x()) / t.norm();
}

Vec2 PlanarCurve::normal_d1(real s) const
{
    const Vec2 t = d1(s), tt = d2(s);
    const real g = t.norm();
    return Vec2(tt.y(), -tt.x()) / g - Vec2(t.y(), -t.x()) * (t.dot(tt) / (g * g * g));
}

real PlanarCurve::curvature(real s) const
{
    const Vec2 t = d1(s), tt = d2(s);
    const real g = t.norm();
    return cross(t, tt) / (g * g * g);
}

real PlanarCurve::length() const
{
    real l = 0.0;
    for (real w : w_) l += w;
    return l;
}

Vec2 PlanarCurve::centroid() const
{
    Vec2 c = Vec2::Zero();
    for (int i = 0; i < n_; ++i) c += w_[i] * x_[i];
    return c / length();
}

void PlanarCurve::check_simple() const
{
    const int m = 1024;
    std::vector<Vec2> p(m);
    for (int i = 0; i < m; ++i) p[i] = point(2.0 * pi * i / m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            if (segments_cross(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]))
                throw DomainError("make_curve: curve " + spec_.describe() + " self-intersects");
        }
}

real PlanarCurve::compute_injectivity_bound() const
{
    // Pairs whose arc distance exceeds pi / max|kappa| cannot both lie on one osculating
    // half-circle, so half their distance bounds the normal segments from crossing.
    const int m = 1024;
    std::vector<Vec2> p(m);
    std::vector<real> arc(m + 1, 0.0);
    for (int i = 0; i < m; ++i) p[i] = point(2.0 * pi * i / m);
    for (int i = 0; i < m; ++i) arc[i + 1] = arc[i] + (p[(i + 1) % m] - p[i]).norm();
    const real total = arc[m];
    const real rho = 1.0 / std::max(max_kappa_, 1e-300);
    const real sep = std::min(pi * rho, 0.5 * total) * (1.0 - 1e-9);
    real chord = std::numeric_limits<real>::max();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const real a = arc[j] - arc[i];
            if (std::min(a, total - a) < sep) continue;
            chord = std::min(chord, (p[i] - p[j]).norm());
        }
    return 0.9 * std::min(rho, 0.5 * chord);
}

PlanarCurve make_curve(const CurveSpec& spec, int n) { return PlanarCurve(spec, n); }

Vec2 tube_point(const PlanarCurve& c, real s, real t)
{
    if (std::abs(t) >= c.injectivity_bound())
        throw DomainError("tube_point: |t| exceeds the injectivity bound");
    return c.point(s) + t * c.normal(s);
}

real tube_jacobian(const PlanarCurve& c, real s, real t) { return 1.0 - t * c.weingarten(s); }

RVec TubeGrid::area_weights() const
{
    RVec w(size());
    for (int i = 0; i < curve->size(); ++i)
        for (int j = 0; j < K; ++j) w[index(i, j)] = eps * curve->weights()[i] * g[j] * jac[index(i, j)];
    return w;
}

RVec TubeGrid::flat_weights() const
{
    RVec w(size());
    for (int i = 0; i < curve->size(); ++i)
        for (int j = 0; j < K; ++j) w[index(i, j)] = curve->weights()[i] * g[j];
    return w;
}

TubeGrid make_tube_grid(const PlanarCurve& c, real eps, int K)
{
    if (!(eps > 0.0) || eps >= c.injectivity_bound())
        throw DomainError("make_tube_grid: eps must lie in (0, injectivity bound)");
    if (K < 1) throw DomainError("make_tube_grid: K must be positive");
    TubeGrid tg;
    tg.curve = &c;
    tg.eps = eps;
    tg.K = K;
    const QuadRule& gl = gauss_legendre(K);
    tg.t = gl.nodes;
    tg.g = gl.weights;
    tg.x.resize(c.size() * K);
    tg.jac.resize(c.size() * K);
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < K; ++j) {
            tg.x[i * K + j] = c.points()[i] + eps * tg.t[j] * c.normals()[i];
            tg.jac[i * K + j] = 1.0 + eps * tg.t[j] * c.curvatures()[i];
        }
    return tg;
}

}  // namespace shellwave
