#include "semlink/turbo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semlink {
namespace {

constexpr double kNegInf = -1.0e300;

// Trellis for one RSC constituent, precomputed per (feedback, feedforward).
struct RscTrellis {
    int memory;
    int states;
    unsigned fb_state_mask;  // feedback taps on the state register
    unsigned ff_state_mask;  // feedforward taps on the state register
    unsigned ff_in;          // feedforward tap on the (post-feedback) input
    std::vector<std::uint8_t> next_state;  // [state*2 + u]
    std::vector<std::uint8_t> parity;      // [state*2 + u]

    RscTrellis(unsigned feedback_octal, unsigned feedforward_octal, int mem)
        : memory(mem), states(1 << mem) {
        // Octal generators list coefficients of D^0..D^m, D^0 first.
        auto coeff = [mem](unsigned octal, int j) -> unsigned {
            return (octal >> (mem - j)) & 1u;
        };
        fb_state_mask = ff_state_mask = 0;
        for (int j = 1; j <= mem; ++j) {
            fb_state_mask |= coeff(feedback_octal, j) << (j - 1);
            ff_state_mask |= coeff(feedforward_octal, j) << (j - 1);
        }
        ff_in = coeff(feedforward_octal, 0);

        next_state.resize(states * 2);
        parity.resize(states * 2);
        for (int s = 0; s < states; ++s) {
            for (unsigned u = 0; u < 2; ++u) {
                const unsigned fb = u ^ (__builtin_popcount(s & fb_state_mask) & 1u);
                const unsigned p =
                    (fb & ff_in) ^ (__builtin_popcount(s & ff_state_mask) & 1u);
                next_state[s * 2 + u] =
                    static_cast<std::uint8_t>(((s << 1) | fb) & (states - 1));
                parity[s * 2 + u] = static_cast<std::uint8_t>(p);
            }
        }
    }

    // Tail input that drives the feedback to zero from state s.
    unsigned tail_input(int s) const {
        return __builtin_popcount(s & fb_state_mask) & 1u;
    }
};

RscTrellis trellis_for(const TurboCodeSpec& spec) {
    if (spec.memory < 1 || spec.memory > 8)
        raise(ErrorKind::Config, "turbo memory out of range");
    return RscTrellis(spec.feedback_octal, spec.feedforward_octal, spec.memory);
}

// Encodes one constituent; appends parity bits, returns tail (sys, par).
void rsc_encode(const RscTrellis& tr, const std::vector<std::uint8_t>& input,
                std::vector<std::uint8_t>& parity_out,
                std::vector<std::uint8_t>& tail_sys,
                std::vector<std::uint8_t>& tail_par) {
    int s = 0;
    parity_out.resize(input.size());
    for (std::size_t k = 0; k < input.size(); ++k) {
        const unsigned u = input[k] & 1;
        parity_out[k] = tr.parity[s * 2 + u];
        s = tr.next_state[s * 2 + u];
    }
    tail_sys.resize(tr.memory);
    tail_par.resize(tr.memory);
    for (int j = 0; j < tr.memory; ++j) {
        const unsigned u = tr.tail_input(s);
        tail_sys[j] = static_cast<std::uint8_t>(u);
        tail_par[j] = tr.parity[s * 2 + u];
        s = tr.next_state[s * 2 + u];
    }
}

// Max-log BCJR over a terminated trellis of `n` steps. sys/par hold the
// combined systematic (channel + a priori) and parity LLRs; app receives
// the a-posteriori LLR of the first `n_message` inputs.
void bcjr_maxlog(const RscTrellis& tr, const std::vector<double>& sys,
                 const std::vector<double>& par, std::size_t n_message,
                 std::vector<double>& app, std::vector<double>& alpha_storage) {
    const std::size_t n = sys.size();
    const int ns = tr.states;
    alpha_storage.assign((n + 1) * ns, kNegInf);
    double* alpha = alpha_storage.data();
    alpha[0] = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double* a = alpha + k * ns;
        double* an = alpha + (k + 1) * ns;
        const double ls = sys[k], lp = par[k];
        for (int s = 0; s < ns; ++s) {
            if (a[s] <= kNegInf) continue;
            for (unsigned u = 0; u < 2; ++u) {
                const double g = (u ? -0.5 * ls : 0.5 * ls) +
                                 (tr.parity[s * 2 + u] ? -0.5 * lp : 0.5 * lp);
                const int nxt = tr.next_state[s * 2 + u];
                const double cand = a[s] + g;
                if (cand > an[nxt]) an[nxt] = cand;
            }
        }
    }

    std::vector<double> beta(ns, kNegInf), beta_next(ns, kNegInf);
    beta[0] = 0.0;  // terminated in the zero state
    app.resize(n_message);
    for (std::size_t k = n; k-- > 0;) {
        std::swap(beta, beta_next);
        std::fill(beta.begin(), beta.end(), kNegInf);
        const double ls = sys[k], lp = par[k];
        const double* a = alpha + k * ns;
        double best0 = kNegInf, best1 = kNegInf;
        for (int s = 0; s < ns; ++s) {
            for (unsigned u = 0; u < 2; ++u) {
                const double g = (u ? -0.5 * ls : 0.5 * ls) +
                                 (tr.parity[s * 2 + u] ? -0.5 * lp : 0.5 * lp);
                const int nxt = tr.next_state[s * 2 + u];
                const double gb = g + beta_next[nxt];
                if (gb > beta[s]) beta[s] = gb;
                if (k < n_message) {
                    const double full = a[s] + gb;
                    if (u == 0) {
                        if (full > best0) best0 = full;
                    } else {
                        if (full > best1) best1 = full;
                    }
                }
            }
        }
        if (k < n_message) app[k] = best0 - best1;
    }
}

}  // namespace

std::vector<std::uint32_t> qpp_interleaver(std::size_t length, std::uint64_t f1,
                                           std::uint64_t f2) {
    if (length == 0) raise(ErrorKind::Config, "interleaver length must be positive");
    std::vector<std::uint32_t> perm(length);
    std::vector<std::uint8_t> seen(length, 0);
    for (std::size_t i = 0; i < length; ++i) {
        // (f1*i + f2*i^2) mod L, evaluated mod L at every step to stay in 64 bits
        const std::uint64_t im = i % length;
        const std::uint64_t sq = (im * im) % length;
        const std::uint64_t idx = (f1 % length * im % length + f2 % length * sq % length) % length;
        perm[i] = static_cast<std::uint32_t>(idx);
        if (seen[idx])
            raise(ErrorKind::Config, "QPP(" + std::to_string(f1) + "," +
                                         std::to_string(f2) + ") is not a bijection on " +
                                         std::to_string(length));
        seen[idx] = 1;
    }
    return perm;
}

TurboCodeSpec TurboCodeSpec::standard(std::size_t message_length, int decode_iterations) {
    if (message_length < 8)
        raise(ErrorKind::Config, "turbo message length must be at least 8");

    auto radical = [](std::size_t n) {
        std::size_t rad = 1;
        for (std::size_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                rad *= p;
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) rad *= n;
        return rad;
    };

    const std::size_t l = message_length;
    std::uint64_t f1 = std::max<std::uint64_t>(3, l / 16);
    if (f1 % 2 == 0) ++f1;
    while (std::gcd(f1, static_cast<std::uint64_t>(l)) != 1) f1 += 2;

    const std::uint64_t rad = radical(l);
    std::uint64_t f2 = rad * std::max<std::uint64_t>(1, (l / 8) / rad);

    TurboCodeSpec spec;
    spec.decode_iterations = decode_iterations;
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            spec.interleaver = qpp_interleaver(l, f1, f2 + attempt * rad);
            return spec;
        } catch (const Error&) {
            // try the next multiple of the radical
        }
    }
    raise(ErrorKind::Config,
          "no valid QPP interleaver found for length " + std::to_string(l));
}

BitSequence turbo_encode(const BitSequence& message, const TurboCodeSpec& spec) {
    const std::size_t l = spec.message_length();
    if (message.size() != l)
        raise(ErrorKind::Config, "message length " + std::to_string(message.size()) +
                                     " does not match interleaver length " +
                                     std::to_string(l));
    const RscTrellis tr = trellis_for(spec);

    std::vector<std::uint8_t> interleaved(l);
    for (std::size_t i = 0; i < l; ++i) interleaved[i] = message.bits[spec.interleaver[i]];

    std::vector<std::uint8_t> p1, p2, t1s, t1p, t2s, t2p;
    rsc_encode(tr, message.bits, p1, t1s, t1p);
    rsc_encode(tr, interleaved, p2, t2s, t2p);

    BitSequence out;
    out.bits.reserve(spec.codeword_length());
    out.bits.insert(out.bits.end(), message.bits.begin(), message.bits.end());
    out.bits.insert(out.bits.end(), p1.begin(), p1.end());
    out.bits.insert(out.bits.end(), p2.begin(), p2.end());
    out.bits.insert(out.bits.end(), t1s.begin(), t1s.end());
    out.bits.insert(out.bits.end(), t1p.begin(), t1p.end());
    out.bits.insert(out.bits.end(), t2s.begin(), t2s.end());
    out.bits.insert(out.bits.end(), t2p.begin(), t2p.end());
    return out;
}

TurboDecodeResult turbo_decode(const std::vector<double>& llrs, const TurboCodeSpec& spec) {
    const std::size_t l = spec.message_length();
    const std::size_t m = static_cast<std::size_t>(spec.memory);
    if (llrs.size() != spec.codeword_length())
        raise(ErrorKind::Framing, "LLR count " + std::to_string(llrs.size()) +
                                      " does not match codeword length " +
                                      std::to_string(spec.codeword_length()));
    const RscTrellis tr = trellis_for(spec);
    const double* ls = llrs.data();
    const double* lp1 = llrs.data() + l;
    const double* lp2 = llrs.data() + 2 * l;
    const double* t1s = llrs.data() + 3 * l;
    const double* t1p = t1s + m;
    const double* t2s = t1p + m;
    const double* t2p = t2s + m;

    std::vector<double> sys1(l + m), par1(l + m), sys2(l + m), par2(l + m);
    std::copy(lp1, lp1 + l, par1.begin());
    std::copy(t1s, t1s + m, sys1.begin() + l);
    std::copy(t1p, t1p + m, par1.begin() + l);
    std::copy(lp2, lp2 + l, par2.begin());
    std::copy(t2s, t2s + m, sys2.begin() + l);
    std::copy(t2p, t2p + m, par2.begin() + l);

    std::vector<double> la1(l, 0.0), la2(l, 0.0), ext1(l), app1, app2, alpha;
    std::vector<std::uint8_t> hard1(l), hard2(l), decision(l);
    int iterations_used = spec.decode_iterations;

    for (int it = 1; it <= spec.decode_iterations; ++it) {
        for (std::size_t k = 0; k < l; ++k) sys1[k] = ls[k] + la1[k];
        bcjr_maxlog(tr, sys1, par1, l, app1, alpha);
        for (std::size_t k = 0; k < l; ++k) {
            hard1[k] = app1[k] < 0.0 ? 1 : 0;
            ext1[k] = spec.extrinsic_scale * (app1[k] - sys1[k]);
        }
        for (std::size_t k = 0; k < l; ++k) la2[k] = ext1[spec.interleaver[k]];

        for (std::size_t k = 0; k < l; ++k) sys2[k] = ls[spec.interleaver[k]] + la2[k];
        bcjr_maxlog(tr, sys2, par2, l, app2, alpha);
        for (std::size_t k = 0; k < l; ++k) {
            hard2[spec.interleaver[k]] = app2[k] < 0.0 ? 1 : 0;
            la1[spec.interleaver[k]] = spec.extrinsic_scale * (app2[k] - sys2[k]);
        }

        decision = hard2;
        if (hard1 == hard2) {
            iterations_used = it;
            break;
        }
    }

    TurboDecodeResult result;
    result.message.bits = std::move(decision);
    result.iterations_used = iterations_used;
    return result;
}

}  // namespace semlink
