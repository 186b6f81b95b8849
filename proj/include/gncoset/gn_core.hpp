// Binary kernel transform G_N = F^(xn) and the two-graph index mapping.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gncoset {

using BitVec = std::vector<uint8_t>;

// The two decoding graphs: G is the plain transform, Gpi the permuted one.
enum class GraphId : uint8_t { G = 0, Gpi = 1 };

constexpr GraphId other_graph(GraphId g) {
    return g == GraphId::G ? GraphId::Gpi : GraphId::G;
}

const char* graph_name(GraphId g);
GraphId graph_from_name(const std::string& name);

constexpr bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

// Integer log2 of a power of two.
unsigned log2_exact(std::size_t x);

// c = u * G_N over GF(2), in place. Natural bit order, no bit reversal.
// G_N is an involution, so the same call also inverts.
void gn_transform(std::span<uint8_t> bits);
BitVec gn_transformed(BitVec bits);

// F^(xn) as an explicit 2^n x 2^n matrix. Oracle scale only, n <= 10.
std::vector<std::vector<uint8_t>> kron_matrix(int n);

// Global code-bit position of the j-th bit of the i-th sub-code under the
// given graph: j*n_sub + i for G, i*n_sub + j for Gpi.
std::size_t map_index(std::size_t i, std::size_t j, GraphId graph, std::size_t n_sub);

} // namespace gncoset
