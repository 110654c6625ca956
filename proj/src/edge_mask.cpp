#include "hyperwalk/edge_mask.hpp"

#include <bit>
#include <stdexcept>

namespace hyperwalk {

EdgeMask::EdgeMask(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("mask dimension must be positive");
    const std::size_t nv = std::size_t{1} << n;
    words_per_plane_ = (nv + 63) / 64;
    words_.assign(words_per_plane_ * n, 0);
}

std::uint64_t EdgeMask::edge_count() const {
    return std::uint64_t(n_) << (n_ - 1);
}

void EdgeMask::set_broken(std::size_t x, unsigned direction) {
    const std::size_t canon = x & ~(std::size_t{1} << direction);
    mutable_plane(direction)[canon >> 6] |= std::uint64_t{1} << (canon & 63);
}

bool EdgeMask::is_broken(std::size_t x, unsigned direction) const {
    if (words_.empty()) return false;
    const std::size_t canon = x & ~(std::size_t{1} << direction);
    return (plane(direction)[canon >> 6] >> (canon & 63)) & 1u;
}

std::uint64_t EdgeMask::broken_count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

void EdgeMask::clear() {
    words_.assign(words_.size(), 0);
}

}  // namespace hyperwalk
