#include "gncoset/gn_core.hpp"

#include <stdexcept>

namespace gncoset {

const char* graph_name(GraphId g) {
    return g == GraphId::G ? "G" : "Gpi";
}

GraphId graph_from_name(const std::string& name) {
    if (name == "G") return GraphId::G;
    if (name == "Gpi") return GraphId::Gpi;
    throw std::invalid_argument("unknown graph name '" + name + "', expected \"G\" or \"Gpi\"");
}

unsigned log2_exact(std::size_t x) {
    if (!is_pow2(x)) throw std::invalid_argument("log2_exact: not a power of two");
    unsigned n = 0;
    while ((std::size_t{1} << n) < x) ++n;
    return n;
}

void gn_transform(std::span<uint8_t> bits) {
    const std::size_t n = bits.size();
    if (n < 2 || !is_pow2(n))
        throw std::invalid_argument("gn_transform: length must be a power of two, >= 2");
    for (std::size_t h = 1; h < n; h *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                bits[j] = uint8_t((bits[j] ^ bits[j + h]) & 1u);
            }
        }
    }
}

BitVec gn_transformed(BitVec bits) {
    gn_transform(bits);
    return bits;
}

std::vector<std::vector<uint8_t>> kron_matrix(int n) {
    if (n < 1 || n > 10)
        throw std::invalid_argument("kron_matrix: n must be in [1, 10]");
    // F = [[1,0],[1,1]], expanded by repeated Kronecker product.
    std::vector<std::vector<uint8_t>> m{{1, 0}, {1, 1}};
    for (int level = 1; level < n; ++level) {
        const std::size_t s = m.size();
        std::vector<std::vector<uint8_t>> next(2 * s, std::vector<uint8_t>(2 * s, 0));
        for (std::size_t r = 0; r < s; ++r) {
            for (std::size_t c = 0; c < s; ++c) {
                next[r][c] = m[r][c];
                next[r + s][c] = m[r][c];
                next[r + s][c + s] = m[r][c];
            }
        }
        m = std::move(next);
    }
    return m;
}

std::size_t map_index(std::size_t i, std::size_t j, GraphId graph, std::size_t n_sub) {
    if (!is_pow2(n_sub) || n_sub < 2)
        throw std::invalid_argument("map_index: n_sub must be a power of two, >= 2");
    if (i >= n_sub || j >= n_sub)
        throw std::invalid_argument("map_index: sub-code or bit index out of range");
    return graph == GraphId::G ? j * n_sub + i : i * n_sub + j;
}

} // namespace gncoset
