#pragma once

#include "shellwave/quadrature.hpp"

namespace shellwave {

template <class Field>
Vec2c extrapolated_trace(const Field& u, const PlanarCurve& c, int i, Side side,
                         const std::vector<real>& offsets)
{
    const real sgn = side == Side::plus ? -1.0 : 1.0;
    std::vector<real> lw;
    lagrange_weights(offsets, 0.0, lw);
    Vec2c t = Vec2c::Zero();
    for (std::size_t k = 0; k < offsets.size(); ++k)
        t += lw[k] * u(Vec2(c.points()[i] + sgn * offsets[k] * c.normals()[i]));
    return t;
}

}  // namespace shellwave
