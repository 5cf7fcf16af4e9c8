#ifndef SEMLINK_METRICS_HPP
#define SEMLINK_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "semlink/tensor.hpp"

namespace semlink {

// Weight of the pixel term in the combined reconstruction loss; the
// perceptual term receives 1-k.
struct LossWeights {
    double k = 0.3;

    static LossWeights checked(double k);
};

// Perceptual distance slot: symmetric, non-negative, zero on identical
// inputs. The neural metric that usually fills this slot is out of scope;
// GradientMagnitudeDistance is a deterministic stand-in.
class PerceptualDistance {
public:
    virtual ~PerceptualDistance() = default;
    virtual double dist(const VideoTensor& a, const VideoTensor& b) const = 0;
};

// Mean absolute difference of gradient-magnitude maps at dyadic scales
// (1, 1/2, 1/4), averaged over frames and channels.
class GradientMagnitudeDistance : public PerceptualDistance {
public:
    double dist(const VideoTensor& a, const VideoTensor& b) const override;
};

double mse(const VideoTensor& a, const VideoTensor& b);

// k * mse + (1-k) * perceptual distance.
double weighted_loss(const VideoTensor& a, const VideoTensor& b, const LossWeights& w,
                     const PerceptualDistance& perceptual);

// 10 log10(peak^2 / mse); identical inputs give the infinity sentinel
// (rendered as "inf" in reports).
double psnr(const VideoTensor& a, const VideoTensor& b, double peak = 1.0);

// Mean local SSIM, 11x11 Gaussian window with sigma 1.5,
// C1 = (0.01 peak)^2, C2 = (0.03 peak)^2, averaged over channels and frames.
double ssim(const VideoTensor& a, const VideoTensor& b, double peak = 1.0);

class SemanticScorer {
public:
    virtual ~SemanticScorer() = default;
    virtual double score(const VideoTensor& reference_frame,
                         const VideoTensor& generated_frame) const = 0;
};

struct FrameScore {
    double psnr = 0.0;
    double ssim = 0.0;
    std::optional<double> semantic;
};

struct ScoreReport {
    std::vector<FrameScore> frames;
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    std::optional<double> mean_semantic;  // absent without a registered scorer
};

// Per-frame and mean quality metrics; the semantic slot is used only when a
// scorer is registered.
ScoreReport score_frames(const VideoTensor& reference, const VideoTensor& generated,
                         const SemanticScorer* scorer = nullptr);

// File protocol for out-of-process scorers: frames are written as
// ref_###.ppm / gen_###.ppm pairs (PGM for single-channel) into a directory;
// the scorer answers with one score per line.
void write_scorer_frames(const std::string& dir, const VideoTensor& reference,
                         const VideoTensor& generated);
std::vector<double> read_scorer_scores(const std::string& path);

}  // namespace semlink

#endif
