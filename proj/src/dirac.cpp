#include "shellwave/dirac.hpp"

#include <cmath>

#include "shellwave/quadrature.hpp"

namespace shellwave {

namespace {

CMat pauli(int j)
{
    CMat s(2, 2);
    switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    default: s << 1, 0, 0, -1; break;
    }
    return s;
}

// Unnormalized mass of exp(-1/(1-t^2)) on (-1,1), to 40 digits.
constexpr real bump_mass = 0.4439938161680794378230489211705526637612;

real bump_raw(real t)
{
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

}  // namespace

DiracRep make_dirac_rep(int theta)
{
    DiracRep rep;
    rep.theta = theta;
    if (theta == 2) {
        rep.n = 2;
        rep.alphas = {pauli(1), pauli(2)};
        rep.beta = pauli(3);
        return rep;
    }
    if (theta == 3) {
        rep.n = 4;
        for (int j = 1; j <= 3; ++j) {
            CMat a = CMat::Zero(4, 4);
            a.block(0, 2, 2, 2) = pauli(j);
            a.block(2, 0, 2, 2) = pauli(j);
            rep.alphas.push_back(a);
        }
        rep.beta = CMat::Zero(4, 4);
        rep.beta.block(0, 0, 2, 2) = CMat::Identity(2, 2);
        rep.beta.block(2, 2, 2, 2) = -CMat::Identity(2, 2);
        return rep;
    }
    throw DomainError("make_dirac_rep: space dimension must be 2 or 3");
}

CMat alpha_dot(const DiracRep& rep, std::span<const real> x)
{
    if (static_cast<int>(x.size()) != rep.theta)
        throw std::invalid_argument("alpha_dot: vector length does not match the dimension");
    CMat out = CMat::Zero(rep.n, rep.n);
    for (int j = 0; j < rep.theta; ++j) out += x[j] * rep.alphas[j];
    return out;
}

CMat alpha_dot(const DiracRep& rep, const Vec2& x)
{
    return alpha_dot(rep, std::span<const real>(x.data(), 2));
}

cplx sqrt_upper(cplx w)
{
    if (w.imag() == 0.0 && w.real() >= 0.0) return {std::sqrt(w.real()), 0.0};
    return I * std::sqrt(-w);
}

cplx tanc(cplx w)
{
    if (std::abs(std::cos(w)) < 1e-14) throw DomainError("tanc: argument is a pole of tan");
    if (std::abs(w) < 1e-3) {
        const cplx w2 = w * w;
        return 1.0 + w2 * (1.0 / 3.0 + w2 * (2.0 / 15.0 + w2 * (17.0 / 315.0)));
    }
    return std::tan(w) / w;
}

ScalingLaw::ScalingLaw(ScalingFamily family, real amplitude, real rho, real gamma)
    : family_(family), amplitude_(amplitude), rho_(rho), gamma_(gamma)
{
    if (!(amplitude > 0.0)) throw std::invalid_argument("ScalingLaw: amplitude must be positive");
    if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("ScalingLaw: gamma must lie in (0, 1/2)");
    if (family == ScalingFamily::power) {
        if (!(rho > 0.0)) throw std::invalid_argument("ScalingLaw: power exponent must be positive");
        if (!(rho < 2.0 * gamma / 3.0))
            throw std::invalid_argument("ScalingLaw: power exponent must satisfy rho < 2 gamma / 3");
    }
}

ScalingLaw ScalingLaw::logarithmic(real amplitude, real gamma)
{
    return ScalingLaw(ScalingFamily::logarithmic, amplitude, 0.0, gamma);
}

ScalingLaw ScalingLaw::power(real amplitude, real rho, real gamma)
{
    return ScalingLaw(ScalingFamily::power, amplitude, rho, gamma);
}

real ScalingLaw::operator()(real eps) const
{
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("ScalingLaw: eps must lie in (0, 1)");
    if (family_ == ScalingFamily::logarithmic) return amplitude_ * std::log(1.0 / eps);
    return amplitude_ * std::pow(eps, -rho_);
}

real ScalingLaw::envelope(real eps) const
{
    return std::pow((*this)(eps), 1.5) * std::pow(eps, gamma_);
}

ProfileQ::ProfileQ(ProfileKind kind, real inner) : kind_(kind), inner_(inner)
{
    if (kind == ProfileKind::bump) bump_norm_ = 1.0 / bump_mass;
}

ProfileQ ProfileQ::uniform() { return ProfileQ(ProfileKind::uniform); }
ProfileQ ProfileQ::bump() { return ProfileQ(ProfileKind::bump); }

ProfileQ ProfileQ::two_step(real inner)
{
    if (!(inner >= 0.0 && inner <= 1.0)) throw std::invalid_argument("ProfileQ: step height must lie in [0, 1]");
    return ProfileQ(ProfileKind::two_step, inner);
}

ProfileQ ProfileQ::from_name(const std::string& name)
{
    if (name == "uniform") return uniform();
    if (name == "bump") return bump();
    if (name == "two_step" || name == "two-step") return two_step();
    throw std::invalid_argument("unknown profile '" + name + "' (expected uniform, bump or two_step)");
}

std::string ProfileQ::name() const
{
    switch (kind_) {
    case ProfileKind::uniform: return "uniform";
    case ProfileKind::bump: return "bump";
    default: return "two_step";
    }
}

real ProfileQ::q(real t) const
{
    if (t <= -1.0 || t >= 1.0) return 0.0;
    switch (kind_) {
    case ProfileKind::uniform: return 0.5;
    case ProfileKind::bump: return bump_norm_ * bump_raw(t);
    default: return std::abs(t) < 0.5 ? inner_ : 1.0 - inner_;
    }
}

real ProfileQ::Q(real t) const
{
    if (t <= -1.0) return -0.5;
    if (t >= 1.0) return 0.5;
    switch (kind_) {
    case ProfileKind::uniform: return 0.5 * t;
    case ProfileKind::two_step: {
        const real outer = 1.0 - inner_;
        if (t < -0.5) return -0.5 + outer * (t + 1.0);
        if (t < 0.5) return -0.5 + 0.5 * outer + inner_ * (t + 0.5);
        return -0.5 + 0.5 * outer + inner_ + outer * (t - 0.5);
    }
    default: {
        // Odd symmetry about 0; integrate from 0 where the integrand is far from its flat ends.
        const real a = std::abs(t);
        const auto rule = composite_gauss(20, 8, 0.0, a);
        real acc = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k) acc += rule.weights[k] * bump_raw(rule.nodes[k]);
        acc *= bump_norm_;
        return t >= 0.0 ? acc : -acc;
    }
    }
}

Coupling rescaled_coupling(const Coupling& c)
{
    const cplx factor = tanc(sqrt_upper(cplx(c.d(), 0.0)) / 2.0);
    return c.scaled(factor.real());
}

Coupling confining_limit(const Coupling& c)
{
    const real d = c.d();
    if (!(d < 0.0)) throw DomainError("confining_limit: requires d = eta^2 - tau^2 < 0");
    return c.scaled(2.0 / std::sqrt(-d));
}

Coupling eps_coupling_at(const Coupling& c, real fval)
{
    const real d = c.d();
    if (!(d < 0.0)) throw DomainError("eps_coupling: requires d = eta^2 - tau^2 < 0");
    if (!(fval >= 0.0)) throw DomainError("eps_coupling: scaling value must be non-negative");
    const cplx factor = tanc(sqrt_upper(cplx(fval * fval * d, 0.0)) / 2.0) * fval;
    return c.scaled(factor.real());
}

Coupling eps_coupling(const Coupling& c, const ScalingLaw& f, real eps)
{
    return eps_coupling_at(c, f(eps));
}

CMat layer_matrix(const DiracRep& rep, const Vec2& nu, const Coupling& c, real fval, real Qval)
{
    const real d = c.d();
    if (!(d < 0.0)) throw DomainError("layer_matrix: requires d < 0");
    const real root = std::sqrt(-d);
    const real a = fval * root;
    // (alpha.nu) V / sqrt(d) with sqrt(d) = i sqrt|d|
    const CMat P = alpha_dot(rep, nu) * c.matrix(rep) * (-I / root);
    return (std::cosh(a * Qval) * rep.identity() + std::sinh(a * Qval) * P) / std::cosh(0.5 * a);
}

CMat d_factor(const DiracRep& rep, const Coupling& c, real qval)
{
    const int h = rep.n / 2;
    CMat D = CMat::Zero(rep.n, rep.n);
    const real s = std::sqrt(qval);
    D.block(0, 0, h, h) = s * std::sqrt(std::abs(c.eta + c.tau)) * CMat::Identity(h, h);
    D.block(h, h, h, h) = s * std::sqrt(std::abs(c.eta - c.tau)) * CMat::Identity(h, h);
    return D;
}

}  // namespace shellwave
