#ifndef SEMLINK_GUIDANCE_HPP
#define SEMLINK_GUIDANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semlink/error.hpp"

namespace semlink {

// Latent tensor of arbitrary positive shape; this module never assumes video
// dimensions.
struct LatentTensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    std::size_t element_count() const noexcept {
        std::size_t n = 1;
        for (auto d : shape) n *= d;
        return shape.empty() ? 0 : n;
    }
    bool same_shape(const LatentTensor& other) const noexcept {
        return shape == other.shape;
    }

    static LatentTensor filled(std::vector<std::size_t> shape, double value);
};

// Condition embeddings; at least one modality must be present.
struct Conditioning {
    std::optional<LatentTensor> visual;  // c_v
    std::optional<LatentTensor> text;    // c_t
};

struct GuidanceParams {
    double guidance_scale = 1.0;  // omega
    std::size_t steps = 50;
    std::uint64_t seed = 7777;
};

// Noise predictor contract: shape-preserving, deterministic for fixed inputs.
class EpsilonPredictor {
public:
    virtual ~EpsilonPredictor() = default;
    virtual LatentTensor predict(const LatentTensor& latent,
                                 const LatentTensor& conditioning,
                                 std::size_t step) const = 0;
};

// eps_v + omega * (eps_t - eps_v), elementwise.
LatentTensor guided_epsilon(const LatentTensor& eps_visual, const LatentTensor& eps_text,
                            double guidance_scale);

// Single predictor call for the text-only simplification; enforces the
// shape-preservation contract.
LatentTensor text_only_epsilon(const EpsilonPredictor& predictor, const LatentTensor& latent,
                               const LatentTensor& text_conditioning, std::size_t step);

// Deterministic sampling loop. The initial latent is standard normal drawn
// from the seed (counter RNG, elements in index order); each of the `steps`
// iterations applies the noise-prediction Euler update
//     z <- z + (sigma[i+1] - sigma[i]) * eps_hat
// over the linear schedule sigma[i] = (steps - i) / steps, so the update is
// the identity when eps_hat is zero. eps_hat fuses both conditioning slots
// through guided_epsilon when both are present and is a plain predictor call
// otherwise. Identical inputs give bit-identical outputs.
LatentTensor sample(const EpsilonPredictor& predictor, const Conditioning& conditioning,
                    const GuidanceParams& params, const std::vector<std::size_t>& shape);

// Latents exchanged with offline models through the GVT container; the shape
// is padded with leading 1s to four dimensions (rank above 4 is an error).
void write_latent(const std::string& path, const LatentTensor& latent);
LatentTensor read_latent(const std::string& path);

}  // namespace semlink

#endif
