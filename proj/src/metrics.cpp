#include "semlink/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "semlink/tensor_io.hpp"

namespace semlink {
namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;

void check_same_shape(const VideoTensor& a, const VideoTensor& b) {
    if (a.frames() != b.frames() || a.height() != b.height() || a.width() != b.width() ||
        a.channels() != b.channels())
        raise(ErrorKind::Shape, "tensors must share a shape");
}

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kWindow);
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double x = i - (kWindow - 1) / 2.0;
        k[i] = std::exp(-x * x / (2.0 * kWindowSigma * kWindowSigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

// Valid-mode separable filtering: (H, W) -> (H - 10, W - 10).
std::vector<double> filter_valid(const std::vector<double>& plane, std::size_t h,
                                 std::size_t w, const std::vector<double>& kernel) {
    const std::size_t wo = w - kWindow + 1;
    std::vector<double> horiz(h * wo);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < wo; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) acc += kernel[t] * plane[y * w + x + t];
            horiz[y * wo + x] = acc;
        }
    }
    const std::size_t ho = h - kWindow + 1;
    std::vector<double> out(ho * wo);
    for (std::size_t y = 0; y < ho; ++y) {
        for (std::size_t x = 0; x < wo; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) acc += kernel[t] * horiz[(y + t) * wo + x];
            out[y * wo + x] = acc;
        }
    }
    return out;
}

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b,
                  std::size_t h, std::size_t w, double peak) {
    static const std::vector<double> kernel = gaussian_kernel();
    const double c1 = (0.01 * peak) * (0.01 * peak);
    const double c2 = (0.03 * peak) * (0.03 * peak);

    std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const auto mu_a = filter_valid(a, h, w, kernel);
    const auto mu_b = filter_valid(b, h, w, kernel);
    const auto m_aa = filter_valid(aa, h, w, kernel);
    const auto m_bb = filter_valid(bb, h, w, kernel);
    const auto m_ab = filter_valid(ab, h, w, kernel);

    double acc = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double va = m_aa[i] - mu_a[i] * mu_a[i];
        const double vb = m_bb[i] - mu_b[i] * mu_b[i];
        const double cov = m_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
        const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (va + vb + c2);
        acc += num / den;
    }
    return acc / static_cast<double>(mu_a.size());
}

std::vector<double> channel_plane(const VideoTensor& t, std::uint32_t frame,
                                  std::uint32_t channel) {
    const std::size_t hw = static_cast<std::size_t>(t.height()) * t.width();
    std::vector<double> plane(hw);
    const std::size_t base = static_cast<std::size_t>(frame) * t.frame_elements();
    for (std::size_t i = 0; i < hw; ++i)
        plane[i] = static_cast<double>(t.data()[base + i * t.channels() + channel]);
    return plane;
}

std::vector<double> downsample2(const std::vector<double>& plane, std::size_t h,
                                std::size_t w) {
    const std::size_t ho = h / 2, wo = w / 2;
    std::vector<double> out(ho * wo);
    for (std::size_t y = 0; y < ho; ++y)
        for (std::size_t x = 0; x < wo; ++x)
            out[y * wo + x] = 0.25 * (plane[2 * y * w + 2 * x] + plane[2 * y * w + 2 * x + 1] +
                                      plane[(2 * y + 1) * w + 2 * x] +
                                      plane[(2 * y + 1) * w + 2 * x + 1]);
    return out;
}

std::vector<double> gradient_magnitude(const std::vector<double>& plane, std::size_t h,
                                       std::size_t w) {
    std::vector<double> out((h - 1) * (w - 1));
    for (std::size_t y = 0; y + 1 < h; ++y) {
        for (std::size_t x = 0; x + 1 < w; ++x) {
            const double gx = plane[y * w + x + 1] - plane[y * w + x];
            const double gy = plane[(y + 1) * w + x] - plane[y * w + x];
            out[y * (w - 1) + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

}  // namespace

LossWeights LossWeights::checked(double k) {
    if (!(k >= 0.0 && k <= 1.0))
        raise(ErrorKind::Domain, "loss weight must lie in [0,1]");
    return LossWeights{k};
}

double mse(const VideoTensor& a, const VideoTensor& b) {
    check_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.total_elements(); ++i) {
        const double d = static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(a.total_elements());
}

double weighted_loss(const VideoTensor& a, const VideoTensor& b, const LossWeights& w,
                     const PerceptualDistance& perceptual) {
    if (!(w.k >= 0.0 && w.k <= 1.0))
        raise(ErrorKind::Domain, "loss weight must lie in [0,1]");
    return w.k * mse(a, b) + (1.0 - w.k) * perceptual.dist(a, b);
}

double psnr(const VideoTensor& a, const VideoTensor& b, double peak) {
    if (!(peak > 0.0)) raise(ErrorKind::Domain, "peak must be positive");
    const double err = mse(a, b);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / err);
}

double ssim(const VideoTensor& a, const VideoTensor& b, double peak) {
    check_same_shape(a, b);
    if (a.height() < kWindow || a.width() < kWindow)
        raise(ErrorKind::Domain, "image smaller than the SSIM window");
    double acc = 0.0;
    for (std::uint32_t f = 0; f < a.frames(); ++f) {
        for (std::uint32_t c = 0; c < a.channels(); ++c) {
            acc += ssim_plane(channel_plane(a, f, c), channel_plane(b, f, c), a.height(),
                              a.width(), peak);
        }
    }
    return acc / (static_cast<double>(a.frames()) * a.channels());
}

double GradientMagnitudeDistance::dist(const VideoTensor& a, const VideoTensor& b) const {
    check_same_shape(a, b);
    double acc = 0.0;
    std::size_t terms = 0;
    for (std::uint32_t f = 0; f < a.frames(); ++f) {
        for (std::uint32_t c = 0; c < a.channels(); ++c) {
            auto pa = channel_plane(a, f, c);
            auto pb = channel_plane(b, f, c);
            std::size_t h = a.height(), w = a.width();
            for (int scale = 0; scale < 3 && h >= 2 && w >= 2; ++scale) {
                const auto ga = gradient_magnitude(pa, h, w);
                const auto gb = gradient_magnitude(pb, h, w);
                double d = 0.0;
                for (std::size_t i = 0; i < ga.size(); ++i) d += std::abs(ga[i] - gb[i]);
                acc += d / static_cast<double>(ga.size());
                ++terms;
                pa = downsample2(pa, h, w);
                pb = downsample2(pb, h, w);
                h /= 2;
                w /= 2;
            }
        }
    }
    return terms == 0 ? 0.0 : acc / static_cast<double>(terms);
}

ScoreReport score_frames(const VideoTensor& reference, const VideoTensor& generated,
                         const SemanticScorer* scorer) {
    check_same_shape(reference, generated);
    ScoreReport report;
    double psnr_sum = 0.0, ssim_sum = 0.0, sem_sum = 0.0;
    for (std::uint32_t f = 1; f <= reference.frames(); ++f) {
        const VideoTensor ref_frame = frame_slice(reference, f);
        const VideoTensor gen_frame = frame_slice(generated, f);
        FrameScore score;
        score.psnr = psnr(ref_frame, gen_frame);
        score.ssim = ssim(ref_frame, gen_frame);
        if (scorer) {
            score.semantic = scorer->score(ref_frame, gen_frame);
            sem_sum += *score.semantic;
        }
        psnr_sum += score.psnr;
        ssim_sum += score.ssim;
        report.frames.push_back(score);
    }
    const double n = static_cast<double>(reference.frames());
    report.mean_psnr = psnr_sum / n;
    report.mean_ssim = ssim_sum / n;
    if (scorer) report.mean_semantic = sem_sum / n;
    return report;
}

void write_scorer_frames(const std::string& dir, const VideoTensor& reference,
                         const VideoTensor& generated) {
    check_same_shape(reference, generated);
    const char* ext = reference.channels() == 3 ? "ppm" : "pgm";
    for (std::uint32_t f = 1; f <= reference.frames(); ++f) {
        char name[64];
        std::snprintf(name, sizeof(name), "/ref_%03u.%s", f - 1, ext);
        write_image(frame_slice(reference, f), dir + name);
        std::snprintf(name, sizeof(name), "/gen_%03u.%s", f - 1, ext);
        write_image(frame_slice(generated, f), dir + name);
    }
}

std::vector<double> read_scorer_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open " + path);
    std::vector<double> scores;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str())
            raise(ErrorKind::Format, path + ": malformed score line: " + line);
        scores.push_back(v);
    }
    return scores;
}

}  // namespace semlink
