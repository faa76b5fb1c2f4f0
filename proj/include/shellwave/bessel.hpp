#pragma once

#include "shellwave/types.hpp"

namespace shellwave {

/// Modified Bessel functions of the second kind K_0, K_1 for Re w > 0.
///
/// Power series for |w| <= 2, Steed's continued fraction (Temme's CF2) for 2 < |w| < 20,
/// and the large-argument asymptotic expansion beyond. Throws DomainError for Re w <= 0.
cplx bessel_k0(cplx w);
cplx bessel_k1(cplx w);
cplx bessel_k(int order, cplx w);

/// exp(w) K_nu(w); avoids underflow at large |w|.
void bessel_k01_scaled(cplx w, cplx& k0, cplx& k1);

/// Modified Bessel functions of the first kind, valid for Re w >= 0.
cplx bessel_i0(cplx w);
cplx bessel_i1(cplx w);

/// exp(-w) I_nu(w).
void bessel_i01_scaled(cplx w, cplx& i0, cplx& i1);

}  // namespace shellwave
