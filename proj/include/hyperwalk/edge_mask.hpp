#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperwalk {

// Set of broken hypercube links for one time step. An edge is the unordered
// pair {x, x^(1<<j)}; it is stored once, keyed by the endpoint with bit j
// clear, which makes e'_j(x) = e'_j(x^e_j) hold by construction. A
// default-constructed or empty mask means every link is closed.
class EdgeMask {
  public:
    EdgeMask() = default;
    explicit EdgeMask(int n);

    int dim() const { return n_; }
    bool empty() const { return words_.empty(); }

    // Total number of undirected links: n * 2^(n-1).
    std::uint64_t edge_count() const;

    void set_broken(std::size_t x, unsigned direction);
    bool is_broken(std::size_t x, unsigned direction) const;
    std::uint64_t broken_count() const;
    void clear();

    // Word span for one direction's bitset, or nullptr for an empty mask.
    const std::uint64_t* plane(unsigned direction) const {
        return words_.empty() ? nullptr : words_.data() + direction * words_per_plane_;
    }
    std::uint64_t* mutable_plane(unsigned direction) {
        return words_.data() + direction * words_per_plane_;
    }
    std::size_t words_per_plane() const { return words_per_plane_; }

  private:
    int n_ = 0;
    std::size_t words_per_plane_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace hyperwalk
