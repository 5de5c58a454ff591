#include "reprdice/divergence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reprdice {

namespace {
// x log x with the limit value at x = 0
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
} // namespace

DivergenceSpec kl_divergence_spec(KLVariant variant) {
    DivergenceSpec spec;
    if (variant == KLVariant::normalized) {
        spec.name = "kl_normalized";
        spec.f = [](double x) { return xlogx(x) - x + 1.0; };
        spec.f_prime = [](double x) { return std::log(x); };
        spec.conjugate = [](double y) { return std::exp(y) - 1.0; };
        spec.derivative_inverse = [](double y) { return std::exp(y); };
    } else {
        spec.name = "kl_shifted";
        spec.f = [](double x) { return xlogx(x); };
        spec.f_prime = [](double x) { return std::log(x) + 1.0; };
        spec.conjugate = [](double y) { return std::exp(y - 1.0); };
        spec.derivative_inverse = [](double y) { return std::exp(y - 1.0); };
    }
    return spec;
}

double f_divergence(const OccupancyMeasure& d, const OccupancyMeasure& d_exp,
                    const DivergenceSpec& spec) {
    if (d.dist.rows() != d_exp.dist.rows() || d.dist.cols() != d_exp.dist.cols())
        throw std::invalid_argument("f_divergence: shape mismatch");
    double total = 0.0;
    for (Eigen::Index s = 0; s < d.dist.rows(); ++s) {
        for (Eigen::Index a = 0; a < d.dist.cols(); ++a) {
            double p = d.dist(s, a);
            double q = d_exp.dist(s, a);
            if (q == 0.0) {
                if (p > 0.0)
                    throw std::runtime_error(
                        "f_divergence: support violation at (s=" + std::to_string(s) +
                        ",a=" + std::to_string(a) + "): d > 0 where d_exp = 0");
                continue;
            }
            total += q * spec.f(p / q);
        }
    }
    return total;
}

} // namespace reprdice
