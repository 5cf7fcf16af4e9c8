#ifndef SEMLINK_LDPC_HPP
#define SEMLINK_LDPC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "semlink/code_rate.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

// Multi-rate LDPC codec at block length 648 with normalized min-sum decoding.
//
// Built-in matrices are quasi-cyclic with circulant size Z = 27 over a
// 24-block-column prototype. Rates 1/2, 2/3 and 3/4 use a dual-diagonal
// parity structure with a weight-3 leading parity column (shifts 1/0/1 at the
// top/middle/bottom block rows); rate 1/3 uses a repeat-accumulate structure.
// Information block columns have weight 3 on rows (j + t*offset) mod m_b,
// offset = max(1, m_b/3), with circulant shifts chosen greedily (smallest
// shift avoiding every length-4 cycle). The construction is deterministic.
//
// Encoding works for arbitrary parity matrices through a precomputed GF(2)
// elimination: message bits occupy the non-pivot columns (the first k columns
// for the built-in codes, which are systematic) and pivot bits are solved by
// masked XOR.
struct LdpcCodeSpec {
    std::size_t n = 0;  // codeword bits
    std::size_t m = 0;  // parity checks
    std::size_t k = 0;  // message bits = n - rank(H)
    std::vector<std::vector<std::uint32_t>> check_vars;  // H rows, ascending

    CodeRate rate;
    int max_iterations = 50;
    double min_sum_scale = 0.75;

    std::vector<std::uint32_t> message_cols;             // ascending, size k
    std::vector<std::uint32_t> pivot_cols;               // size rank(H)
    std::vector<std::vector<std::uint64_t>> solve_masks;  // per pivot, over message bits

    static LdpcCodeSpec standard(const CodeRate& rate);

    // Builds the encoder structure (and k) from an explicit parity matrix.
    static LdpcCodeSpec from_parity(std::vector<std::vector<std::uint32_t>> check_vars,
                                    std::size_t n, int max_iterations = 50);
};

// alist-style sparse text format: "n m", "max_col_deg max_row_deg", the n
// column degrees, the m row degrees, then one line of 1-based row indices
// per column and one line of 1-based column indices per row. Zero entries
// (MacKay-style padding) are accepted and ignored on load.
LdpcCodeSpec ldpc_load_alist(const std::string& path, int max_iterations = 50);
void ldpc_save_alist(const LdpcCodeSpec& spec, const std::string& path);

BitSequence ldpc_encode(const BitSequence& message, const LdpcCodeSpec& spec);

bool ldpc_parity_ok(const std::vector<std::uint8_t>& codeword, const LdpcCodeSpec& spec);

struct LdpcDecodeResult {
    BitSequence message;
    bool converged = false;
    int iterations_used = 0;
};

// Normalized min-sum message passing; stops when the hard decision satisfies
// every check or max_iterations is reached. LLR convention: positive = bit 0.
LdpcDecodeResult ldpc_decode(const std::vector<double>& llrs, const LdpcCodeSpec& spec);

}  // namespace semlink

#endif
