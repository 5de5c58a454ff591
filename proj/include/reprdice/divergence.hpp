#pragma once

#include <functional>
#include <string>

#include "reprdice/mdp.hpp"

namespace reprdice {

/// Convex generator f with its derivative, Fenchel conjugate, and the inverse
/// of the derivative. All four are needed by the DICE machinery.
struct DivergenceSpec {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    std::function<double(double)> conjugate;           // f*(y) = sup_x [xy - f(x)]
    std::function<double(double)> derivative_inverse;  // (f')^-1
    std::string name;
};

enum class KLVariant { normalized, shifted };

// normalized: f(x) = x log x - x + 1, f' = log x, f* = exp(y) - 1
// shifted:    f(x) = x log x,         f' = log x + 1, f* = exp(y-1)
// Both induce the same divergence value on normalized measure pairs.
DivergenceSpec kl_divergence_spec(KLVariant variant);

// E_{d_exp}[f(d/d_exp)]; throws on support violation (d > 0 where d_exp = 0)
double f_divergence(const OccupancyMeasure& d, const OccupancyMeasure& d_exp,
                    const DivergenceSpec& spec);

} // namespace reprdice
