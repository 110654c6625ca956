#pragma once

#include <cstddef>
#include <vector>

namespace hyperwalk {

// Probability distribution over the 2^n hypercube vertices.
struct Distribution {
    int n = 0;
    std::vector<double> probs;

    Distribution() = default;
    Distribution(int dim, std::vector<double> p) : n(dim), probs(std::move(p)) {}

    std::size_t num_vertices() const { return std::size_t{1} << n; }

    static Distribution uniform(int n);
    static Distribution point_mass(int n, std::size_t vertex);

    // Entries in [-1e-14, 0) are round-off and get clamped to zero; anything
    // more negative throws. Checks the total is 1 within 1e-10.
    void clamp_and_validate();

    double total() const;
};

}  // namespace hyperwalk
