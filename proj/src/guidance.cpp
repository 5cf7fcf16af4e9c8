#include "semlink/guidance.hpp"

#include <cmath>

#include "semlink/rng.hpp"
#include "semlink/tensor_io.hpp"

namespace semlink {
namespace {

void check_positive_shape(const std::vector<std::size_t>& shape) {
    if (shape.empty()) raise(ErrorKind::Shape, "latent shape must not be empty");
    for (auto d : shape)
        if (d == 0) raise(ErrorKind::Shape, "latent dimensions must be positive");
}

LatentTensor checked_predict(const EpsilonPredictor& predictor, const LatentTensor& latent,
                             const LatentTensor& conditioning, std::size_t step) {
    LatentTensor eps = predictor.predict(latent, conditioning, step);
    if (!eps.same_shape(latent))
        raise(ErrorKind::Contract, "predictor changed the latent shape");
    if (eps.data.size() != latent.data.size())
        raise(ErrorKind::Contract, "predictor output size does not match its shape");
    return eps;
}

}  // namespace

LatentTensor LatentTensor::filled(std::vector<std::size_t> shape, double value) {
    check_positive_shape(shape);
    LatentTensor t;
    t.shape = std::move(shape);
    t.data.assign(t.element_count(), value);
    return t;
}

LatentTensor guided_epsilon(const LatentTensor& eps_visual, const LatentTensor& eps_text,
                            double guidance_scale) {
    if (!eps_visual.same_shape(eps_text))
        raise(ErrorKind::Shape, "guidance inputs must share a shape");
    LatentTensor out = eps_visual;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] += guidance_scale * (eps_text.data[i] - eps_visual.data[i]);
    return out;
}

LatentTensor text_only_epsilon(const EpsilonPredictor& predictor, const LatentTensor& latent,
                               const LatentTensor& text_conditioning, std::size_t step) {
    return checked_predict(predictor, latent, text_conditioning, step);
}

LatentTensor sample(const EpsilonPredictor& predictor, const Conditioning& conditioning,
                    const GuidanceParams& params, const std::vector<std::size_t>& shape) {
    if (params.steps < 1) raise(ErrorKind::Config, "step count must be at least 1");
    if (!conditioning.visual && !conditioning.text)
        raise(ErrorKind::Config, "at least one conditioning modality is required");
    check_positive_shape(shape);

    LatentTensor z;
    z.shape = shape;
    z.data.resize(z.element_count());
    for (std::size_t i = 0; i < z.data.size(); ++i)
        z.data[i] = rng_normal_pair(params.seed, i).first;

    const double steps = static_cast<double>(params.steps);
    for (std::size_t i = 0; i < params.steps; ++i) {
        LatentTensor eps;
        if (conditioning.visual && conditioning.text) {
            const LatentTensor eps_v = checked_predict(predictor, z, *conditioning.visual, i);
            const LatentTensor eps_t = checked_predict(predictor, z, *conditioning.text, i);
            eps = guided_epsilon(eps_v, eps_t, params.guidance_scale);
        } else if (conditioning.text) {
            eps = checked_predict(predictor, z, *conditioning.text, i);
        } else {
            eps = checked_predict(predictor, z, *conditioning.visual, i);
        }
        const double sigma_cur = (steps - static_cast<double>(i)) / steps;
        const double sigma_next = (steps - static_cast<double>(i) - 1.0) / steps;
        const double delta = sigma_next - sigma_cur;
        for (std::size_t e = 0; e < z.data.size(); ++e) z.data[e] += delta * eps.data[e];
    }
    return z;
}

void write_latent(const std::string& path, const LatentTensor& latent) {
    check_positive_shape(latent.shape);
    if (latent.shape.size() > 4)
        raise(ErrorKind::Shape, "latent rank above 4 cannot enter the GVT container");
    GvtData raw;
    raw.dims = {1, 1, 1, 1};
    const std::size_t pad = 4 - latent.shape.size();
    for (std::size_t i = 0; i < latent.shape.size(); ++i)
        raw.dims[pad + i] = static_cast<std::uint32_t>(latent.shape[i]);
    raw.values.assign(latent.data.begin(), latent.data.end());
    write_gvt(path, raw);
}

LatentTensor read_latent(const std::string& path) {
    const GvtData raw = read_gvt(path);
    LatentTensor t;
    for (auto d : raw.dims) t.shape.push_back(d);
    t.data.assign(raw.values.begin(), raw.values.end());
    for (double v : t.data)
        if (!std::isfinite(v)) raise(ErrorKind::Format, path + ": non-finite latent value");
    return t;
}

}  // namespace semlink
