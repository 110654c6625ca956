#include "hyperwalk/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hyperwalk/kernels.hpp"

namespace hyperwalk {

Distribution Distribution::uniform(int n) {
    Distribution d;
    d.n = n;
    d.probs.assign(std::size_t{1} << n, 1.0 / double(std::size_t{1} << n));
    return d;
}

Distribution Distribution::point_mass(int n, std::size_t vertex) {
    Distribution d;
    d.n = n;
    d.probs.assign(std::size_t{1} << n, 0.0);
    d.probs.at(vertex) = 1.0;
    return d;
}

double Distribution::total() const { return kernels::active().sum(probs.data(), probs.size()); }

void Distribution::clamp_and_validate() {
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0) {
            if (probs[i] < -1e-14)
                throw std::runtime_error("distribution entry " + std::to_string(i) + " is " +
                                         std::to_string(probs[i]) + ", below round-off tolerance");
            probs[i] = 0.0;
        }
    }
    const double t = total();
    if (std::fabs(t - 1.0) > 1e-10)
        throw std::runtime_error("distribution total " + std::to_string(t) + " not 1 within 1e-10");
}

}  // namespace hyperwalk
