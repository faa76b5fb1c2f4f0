#include "shellwave/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace shellwave {

namespace {

QuadRule compute_gauss_legendre(int n)
{
    QuadRule rule;
    if (n == 1) return QuadRule{{0.0}, {2.0}};
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        real x = std::cos(pi * (i + 0.75) / (n + 0.5));
        real dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            real p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        real p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const real w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadRule& gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    static std::mutex mutex;
    static std::map<int, QuadRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

QuadRule gauss_legendre(int n, real a, real b)
{
    const auto& ref = gauss_legendre(n);
    QuadRule out;
    out.nodes.resize(n);
    out.weights.resize(n);
    const real half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int k = 0; k < n; ++k) {
        out.nodes[k] = mid + half * ref.nodes[k];
        out.weights[k] = half * ref.weights[k];
    }
    return out;
}

QuadRule composite_gauss(int order, int panels, real a, real b)
{
    QuadRule out;
    const real width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        auto r = gauss_legendre(order, a + p * width, a + (p + 1) * width);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

void lagrange_weights(const std::vector<real>& nodes, real x, std::vector<real>& out)
{
    const std::size_t n = nodes.size();
    out.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (x == nodes[j]) {
            out[j] = 1.0;
            return;
        }
    }
    real total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        real w = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) w /= (nodes[j] - nodes[k]);
        out[j] = w / (x - nodes[j]);
        total += out[j];
    }
    for (auto& v : out) v /= total;
}

std::vector<real> kress_log_weights(int n)
{
    if (n % 2 != 0) throw std::invalid_argument("kress_log_weights: node count must be even");
    const int M = n / 2;
    std::vector<real> R(n);
    for (int j = 0; j < n; ++j) {
        const real s = pi * j / M;
        real acc = 0.0;
        for (int m = 1; m < M; ++m) acc += std::cos(m * s) / m;
        R[j] = -2.0 * pi / M * acc - pi / (real(M) * M) * std::cos(M * s);
    }
    return R;
}

void trig_interp_weights(int n, real s, std::vector<real>& out)
{
    out.assign(n, 0.0);
    const int M = n / 2;
    for (int j = 0; j < n; ++j) {
        const real d = s - 2.0 * pi * j / n;
        real acc = 1.0;
        for (int k = 1; k < M; ++k) acc += 2.0 * std::cos(k * d);
        acc += std::cos(M * d);
        out[j] = acc / n;
    }
}

}  // namespace shellwave
