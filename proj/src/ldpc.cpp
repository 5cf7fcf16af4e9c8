#include "semlink/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "semlink/rng.hpp"

namespace semlink {
namespace {

constexpr std::size_t kBlockLength = 648;
constexpr std::size_t kCirculant = 27;
constexpr std::size_t kBlockCols = 24;

// Prototype grid: shift value per (block row, block col), -1 for no entry.
using ProtoGrid = std::vector<std::vector<int>>;

// A shift s at (i, j) closes a length-4 cycle with entries b = (i, j'),
// c = (i', j'), d = (i', j) iff s - b + c - d == 0 (mod Z). Probing starts
// from a per-position mixed value so the shifts spread over [0, Z) instead
// of clustering near zero, which would pile up short cycles.
int cycle_free_shift(const ProtoGrid& grid, std::size_t i, std::size_t j) {
    std::vector<std::uint8_t> forbidden(kCirculant, 0);
    for (std::size_t i2 = 0; i2 < grid.size(); ++i2) {
        if (i2 == i || grid[i2][j] < 0) continue;
        const int d = grid[i2][j];
        for (std::size_t j2 = 0; j2 < kBlockCols; ++j2) {
            if (j2 == j || grid[i][j2] < 0 || grid[i2][j2] < 0) continue;
            const int b = grid[i][j2];
            const int c = grid[i2][j2];
            const int z = static_cast<int>(kCirculant);
            forbidden[static_cast<std::size_t>(((b - c + d) % z + z) % z)] = 1;
        }
    }
    const std::size_t start = static_cast<std::size_t>(
        mix64((i + 1) * 0x9E3779B97F4A7C15ull ^ (j + 1) * 0xC2B2AE3D27D4EB4Full) %
        kCirculant);
    for (std::size_t probe = 0; probe < kCirculant; ++probe) {
        const std::size_t s = (start + probe) % kCirculant;
        if (!forbidden[s]) return static_cast<int>(s);
    }
    raise(ErrorKind::Config, "prototype placement has no cycle-free shift");
}

ProtoGrid build_prototype(std::size_t block_rows, bool accumulator_form) {
    const std::size_t m_b = block_rows;
    const std::size_t k_b = kBlockCols - m_b;
    ProtoGrid grid(m_b, std::vector<int>(kBlockCols, -1));

    if (accumulator_form) {
        // [C | T]: plain accumulator, T column t has identities at rows t, t+1.
        for (std::size_t t = 0; t < m_b; ++t) {
            grid[t][k_b + t] = 0;
            if (t + 1 < m_b) grid[t + 1][k_b + t] = 0;
        }
    } else {
        // [C | h | T]: h at rows {0, m_b/2, m_b-1} with shifts {1, 0, 1},
        // T column t has identities at rows t, t+1.
        grid[0][k_b] = 1;
        grid[m_b / 2][k_b] = 0;
        grid[m_b - 1][k_b] = 1;
        for (std::size_t t = 0; t + 1 < m_b; ++t) {
            grid[t][k_b + 1 + t] = 0;
            grid[t + 1][k_b + 1 + t] = 0;
        }
    }

    const std::size_t offset = std::max<std::size_t>(1, m_b / 3);
    for (std::size_t j = 0; j < k_b; ++j) {
        for (std::size_t t = 0; t < 3; ++t) {
            const std::size_t row = (j + t * offset) % m_b;
            grid[row][j] = cycle_free_shift(grid, row, j);
        }
    }
    return grid;
}

std::vector<std::vector<std::uint32_t>> expand_prototype(const ProtoGrid& grid) {
    std::vector<std::vector<std::uint32_t>> rows(grid.size() * kCirculant);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < kBlockCols; ++j) {
            if (grid[i][j] < 0) continue;
            const auto shift = static_cast<std::size_t>(grid[i][j]);
            for (std::size_t z = 0; z < kCirculant; ++z) {
                const std::size_t check = i * kCirculant + z;
                const std::size_t var = j * kCirculant + (z + shift) % kCirculant;
                rows[check].push_back(static_cast<std::uint32_t>(var));
            }
        }
    }
    for (auto& r : rows) std::sort(r.begin(), r.end());
    return rows;
}

}  // namespace

LdpcCodeSpec LdpcCodeSpec::from_parity(std::vector<std::vector<std::uint32_t>> check_vars,
                                       std::size_t n, int max_iterations) {
    if (n == 0) raise(ErrorKind::Config, "codeword length must be positive");
    for (auto& row : check_vars) {
        std::sort(row.begin(), row.end());
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] >= n)
                raise(ErrorKind::Config, "parity matrix column index out of range");
            if (i > 0 && row[i] == row[i - 1])
                raise(ErrorKind::Config, "duplicate entry in parity check row");
        }
    }

    const std::size_t m = check_vars.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(m, std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < m; ++r)
        for (auto v : check_vars[r]) bits[r][v / 64] |= 1ull << (v % 64);

    // Gauss-Jordan, pivoting on the rightmost columns first so that the
    // built-in codes stay systematic in their leading columns.
    std::vector<int> pivot_row_of_col(n, -1);
    std::vector<std::uint8_t> row_used(m, 0);
    for (std::size_t col = n; col-- > 0;) {
        const std::size_t w = col / 64;
        const std::uint64_t mask = 1ull << (col % 64);
        std::size_t pivot = m;
        for (std::size_t r = 0; r < m; ++r) {
            if (!row_used[r] && (bits[r][w] & mask)) {
                pivot = r;
                break;
            }
        }
        if (pivot == m) continue;
        row_used[pivot] = 1;
        pivot_row_of_col[col] = static_cast<int>(pivot);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != pivot && (bits[r][w] & mask)) {
                for (std::size_t ww = 0; ww < words; ++ww) bits[r][ww] ^= bits[pivot][ww];
            }
        }
    }

    LdpcCodeSpec spec;
    spec.n = n;
    spec.m = m;
    spec.max_iterations = max_iterations;
    spec.check_vars = std::move(check_vars);

    for (std::uint32_t col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] < 0) spec.message_cols.push_back(col);
    }
    spec.k = spec.message_cols.size();

    std::vector<std::uint32_t> message_index(n, 0);
    for (std::size_t i = 0; i < spec.message_cols.size(); ++i)
        message_index[spec.message_cols[i]] = static_cast<std::uint32_t>(i);

    const std::size_t msg_words = (spec.k + 63) / 64;
    for (std::uint32_t col = 0; col < n; ++col) {
        const int pr = pivot_row_of_col[col];
        if (pr < 0) continue;
        spec.pivot_cols.push_back(col);
        std::vector<std::uint64_t> mask(msg_words, 0);
        // After Gauss-Jordan the pivot row contains the pivot column plus
        // message columns only.
        for (std::uint32_t c = 0; c < n; ++c) {
            if (c == col) continue;
            if (bits[static_cast<std::size_t>(pr)][c / 64] & (1ull << (c % 64))) {
                const std::uint32_t mi = message_index[c];
                mask[mi / 64] |= 1ull << (mi % 64);
            }
        }
        spec.solve_masks.push_back(std::move(mask));
    }

    // Declared rate: nearest supported rate within 1% of k/n.
    const double kn = static_cast<double>(spec.k) / static_cast<double>(spec.n);
    const CodeRate candidates[] = {{1, 3}, {1, 2}, {2, 3}, {3, 4}};
    bool matched = false;
    for (const auto& c : candidates) {
        if (std::abs(c.value() - kn) <= 0.01 * c.value()) {
            spec.rate = c;
            matched = true;
            break;
        }
    }
    if (!matched)
        raise(ErrorKind::Config,
              "parity matrix rate " + std::to_string(kn) + " is not in the supported set");
    return spec;
}

LdpcCodeSpec LdpcCodeSpec::standard(const CodeRate& rate) {
    if (!CodeRate::supported(rate))
        raise(ErrorKind::Config, "unsupported LDPC rate " + std::to_string(rate.numerator) +
                                     "/" + std::to_string(rate.denominator));
    std::size_t block_rows = 0;
    bool accumulator = false;
    if (rate == CodeRate{1, 3}) {
        block_rows = 16;
        accumulator = true;
    } else if (rate == CodeRate{1, 2}) {
        block_rows = 12;
    } else if (rate == CodeRate{2, 3}) {
        block_rows = 8;
    } else {
        block_rows = 6;
    }
    auto spec = from_parity(expand_prototype(build_prototype(block_rows, accumulator)),
                            kBlockLength);
    if (!(spec.rate == rate))
        raise(ErrorKind::Config, "constructed LDPC rate mismatch");
    return spec;
}

BitSequence ldpc_encode(const BitSequence& message, const LdpcCodeSpec& spec) {
    if (message.size() != spec.k)
        raise(ErrorKind::Config, "message length " + std::to_string(message.size()) +
                                     " does not match code dimension " +
                                     std::to_string(spec.k));
    const std::size_t msg_words = (spec.k + 63) / 64;
    std::vector<std::uint64_t> msg(msg_words, 0);
    for (std::size_t i = 0; i < spec.k; ++i)
        if (message.bits[i] & 1) msg[i / 64] |= 1ull << (i % 64);

    BitSequence code;
    code.bits.assign(spec.n, 0);
    for (std::size_t i = 0; i < spec.k; ++i)
        code.bits[spec.message_cols[i]] = message.bits[i] & 1;
    for (std::size_t p = 0; p < spec.pivot_cols.size(); ++p) {
        std::uint64_t acc = 0;
        const auto& mask = spec.solve_masks[p];
        for (std::size_t w = 0; w < msg_words; ++w) acc ^= mask[w] & msg[w];
        code.bits[spec.pivot_cols[p]] =
            static_cast<std::uint8_t>(__builtin_popcountll(acc) & 1);
    }
    return code;
}

bool ldpc_parity_ok(const std::vector<std::uint8_t>& codeword, const LdpcCodeSpec& spec) {
    if (codeword.size() != spec.n) return false;
    for (const auto& row : spec.check_vars) {
        unsigned acc = 0;
        for (auto v : row) acc ^= codeword[v];
        if (acc & 1) return false;
    }
    return true;
}

LdpcDecodeResult ldpc_decode(const std::vector<double>& llrs, const LdpcCodeSpec& spec) {
    if (llrs.size() != spec.n)
        raise(ErrorKind::Framing, "LLR count " + std::to_string(llrs.size()) +
                                      " does not match codeword length " +
                                      std::to_string(spec.n));

    // Flat edge layout per check row.
    std::size_t edge_count = 0;
    for (const auto& row : spec.check_vars) edge_count += row.size();
    std::vector<std::uint32_t> edge_var(edge_count);
    std::vector<std::size_t> row_begin(spec.m + 1, 0);
    {
        std::size_t e = 0;
        for (std::size_t r = 0; r < spec.m; ++r) {
            row_begin[r] = e;
            for (auto v : spec.check_vars[r]) edge_var[e++] = v;
        }
        row_begin[spec.m] = e;
    }

    std::vector<double> v2c(edge_count), c2v(edge_count, 0.0), total(spec.n);
    for (std::size_t e = 0; e < edge_count; ++e) v2c[e] = llrs[edge_var[e]];

    std::vector<std::uint8_t> hard(spec.n);
    auto hard_from_totals = [&](const std::vector<double>& t) {
        for (std::size_t v = 0; v < spec.n; ++v) hard[v] = t[v] < 0.0 ? 1 : 0;
    };
    auto syndrome_ok = [&]() {
        for (std::size_t r = 0; r < spec.m; ++r) {
            unsigned acc = 0;
            for (std::size_t e = row_begin[r]; e < row_begin[r + 1]; ++e)
                acc ^= hard[edge_var[e]];
            if (acc & 1) return false;
        }
        return true;
    };

    hard_from_totals(llrs);
    bool converged = syndrome_ok();
    int iterations = 0;

    while (!converged && iterations < spec.max_iterations) {
        ++iterations;
        // check-node update: normalized min-sum with self-exclusion
        for (std::size_t r = 0; r < spec.m; ++r) {
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            std::size_t min_edge = row_begin[r];
            unsigned sign_all = 0;
            for (std::size_t e = row_begin[r]; e < row_begin[r + 1]; ++e) {
                const double v = v2c[e];
                const double mag = std::abs(v);
                sign_all ^= v < 0.0 ? 1u : 0u;
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    min_edge = e;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::size_t e = row_begin[r]; e < row_begin[r + 1]; ++e) {
                const unsigned sign = sign_all ^ (v2c[e] < 0.0 ? 1u : 0u);
                const double mag = (e == min_edge) ? min2 : min1;
                c2v[e] = (sign ? -1.0 : 1.0) * spec.min_sum_scale * mag;
            }
        }
        // variable-node update
        for (std::size_t v = 0; v < spec.n; ++v) total[v] = llrs[v];
        for (std::size_t e = 0; e < edge_count; ++e) total[edge_var[e]] += c2v[e];
        for (std::size_t e = 0; e < edge_count; ++e)
            v2c[e] = total[edge_var[e]] - c2v[e];

        hard_from_totals(total);
        converged = syndrome_ok();
    }

    LdpcDecodeResult result;
    result.converged = converged;
    result.iterations_used = iterations;
    result.message.bits.resize(spec.k);
    for (std::size_t i = 0; i < spec.k; ++i)
        result.message.bits[i] = hard[spec.message_cols[i]];
    return result;
}

LdpcCodeSpec ldpc_load_alist(const std::string& path, int max_iterations) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open " + path);
    std::size_t n = 0, m = 0, max_col = 0, max_row = 0;
    if (!(in >> n >> m >> max_col >> max_row))
        raise(ErrorKind::Format, path + ": malformed alist header");
    std::vector<std::size_t> col_deg(n), row_deg(m);
    for (auto& d : col_deg)
        if (!(in >> d)) raise(ErrorKind::Format, path + ": truncated column degrees");
    for (auto& d : row_deg)
        if (!(in >> d)) raise(ErrorKind::Format, path + ": truncated row degrees");
    // column adjacency is redundant with the row adjacency; parse and discard
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < col_deg[c]; ++i) {
            long v;
            if (!(in >> v)) raise(ErrorKind::Format, path + ": truncated column list");
        }
    }
    std::vector<std::vector<std::uint32_t>> rows(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < row_deg[r]; ++i) {
            long v;
            if (!(in >> v)) raise(ErrorKind::Format, path + ": truncated row list");
            if (v == 0) continue;  // MacKay padding
            if (v < 1 || static_cast<std::size_t>(v) > n)
                raise(ErrorKind::Format, path + ": column index out of range");
            rows[r].push_back(static_cast<std::uint32_t>(v - 1));
        }
        std::sort(rows[r].begin(), rows[r].end());
    }
    return LdpcCodeSpec::from_parity(std::move(rows), n, max_iterations);
}

void ldpc_save_alist(const LdpcCodeSpec& spec, const std::string& path) {
    std::vector<std::vector<std::uint32_t>> cols(spec.n);
    for (std::size_t r = 0; r < spec.m; ++r)
        for (auto v : spec.check_vars[r]) cols[v].push_back(static_cast<std::uint32_t>(r));

    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : cols) max_col = std::max(max_col, c.size());
    for (const auto& r : spec.check_vars) max_row = std::max(max_row, r.size());

    std::ostringstream out;
    out << spec.n << ' ' << spec.m << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < spec.n; ++c)
        out << cols[c].size() << (c + 1 < spec.n ? ' ' : '\n');
    for (std::size_t r = 0; r < spec.m; ++r)
        out << spec.check_vars[r].size() << (r + 1 < spec.m ? ' ' : '\n');
    for (const auto& c : cols) {
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (c[i] + 1) << (i + 1 < c.size() ? ' ' : '\n');
        if (c.empty()) out << '\n';
    }
    for (const auto& r : spec.check_vars) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (r[i] + 1) << (i + 1 < r.size() ? ' ' : '\n');
        if (r.empty()) out << '\n';
    }

    std::ofstream file(path, std::ios::trunc);
    if (!file) raise(ErrorKind::Io, "cannot create " + path);
    file << out.str();
    if (!file) raise(ErrorKind::Io, "write failure on " + path);
}

}  // namespace semlink
