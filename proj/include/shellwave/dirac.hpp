#pragma once

#include <functional>
#include <span>
#include <vector>

#include "shellwave/types.hpp"

namespace shellwave {

/// Dirac matrices alpha_1..alpha_theta and beta for space dimension theta in {2,3}.
struct DiracRep {
    int theta = 2;
    int n = 2;
    std::vector<CMat> alphas;
    CMat beta;

    CMat identity() const { return CMat::Identity(n, n); }
};

DiracRep make_dirac_rep(int theta);

/// alpha . x for a real theta-vector x.
CMat alpha_dot(const DiracRep& rep, std::span<const real> x);
CMat alpha_dot(const DiracRep& rep, const Vec2& x);

/// tan(w)/w with the removable singularity filled in; throws DomainError at the poles.
cplx tanc(cplx w);

/// Principal square root with the branch cut on [0, inf): Im sqrt(w) > 0 off the cut.
cplx sqrt_upper(cplx w);

/// Interaction strengths of V = eta I_N + tau beta.
struct Coupling {
    real eta = 0.0;
    real tau = 0.0;

    real d() const { return eta * eta - tau * tau; }
    CMat matrix(const DiracRep& rep) const { return eta * rep.identity() + tau * rep.beta; }
    Coupling scaled(real s) const { return {s * eta, s * tau}; }
};

enum class ScalingFamily { logarithmic, power };

/// f(eps) = a log(1/eps) or f(eps) = a eps^(-rho), paired with the exponent gamma in (0, 1/2).
class ScalingLaw {
public:
    static ScalingLaw logarithmic(real amplitude, real gamma);
    static ScalingLaw power(real amplitude, real rho, real gamma);

    real operator()(real eps) const;
    /// f(eps)^{3/2} eps^gamma
    real envelope(real eps) const;

    ScalingFamily family() const { return family_; }
    real amplitude() const { return amplitude_; }
    real rho() const { return rho_; }
    real gamma() const { return gamma_; }

private:
    ScalingLaw(ScalingFamily family, real amplitude, real rho, real gamma);
    ScalingFamily family_;
    real amplitude_;
    real rho_;
    real gamma_;
};

enum class ProfileKind { uniform, bump, two_step };

/// Transverse profile q >= 0 on (-1,1) with unit mass, and Q(t) = -1/2 + int_{-1}^t q.
class ProfileQ {
public:
    static ProfileQ uniform();
    static ProfileQ bump();
    /// q = inner on |t| < 1/2 and (1 - inner) elsewhere.
    static ProfileQ two_step(real inner = 0.8);
    static ProfileQ from_name(const std::string& name);

    real q(real t) const;
    real Q(real t) const;
    ProfileKind kind() const { return kind_; }
    std::string name() const;

private:
    explicit ProfileQ(ProfileKind kind, real inner = 0.0);
    ProfileKind kind_;
    real inner_;
    real bump_norm_ = 1.0;
};

/// (eta, tau) -> tanc(sqrt(d)/2) (eta, tau).
Coupling rescaled_coupling(const Coupling& c);

/// (eta, tau) -> (2/sqrt|d|)(eta, tau); requires d < 0.
Coupling confining_limit(const Coupling& c);

/// tanc(sqrt(f^2 d)/2) f V, which equals tanh(f sqrt|d| / 2) * confining_limit(c) for d < 0.
Coupling eps_coupling_at(const Coupling& c, real fval);
Coupling eps_coupling(const Coupling& c, const ScalingLaw& f, real eps);

/// cos((alpha.nu) f V / 2)^{-1} exp(-i (alpha.nu) f V Q), evaluated through the cosh/sinh reduction.
CMat layer_matrix(const DiracRep& rep, const Vec2& nu, const Coupling& c, real fval, real Qval);

/// D = sqrt(q) diag(sqrt|eta+tau| I, sqrt|eta-tau| I), so that V q = sign(tau) D beta D.
CMat d_factor(const DiracRep& rep, const Coupling& c, real qval);

}  // namespace shellwave
