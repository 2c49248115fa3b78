#pragma once

#include <cstdint>

#include "qwsr/image.hpp"
#include "qwsr/tensor.hpp"

namespace qwsr {

// Synthesis spec for LR-HR pair generation: blur kernel, additive Gaussian
// noise level, and the downsampling factor. Kernel taps must sum to 1.
struct DegradationSpec {
    Tensor kernel;          // odd-sided 2D taps
    double noise_sigma = 0.0;
    int scale_factor = 1;
    uint64_t rng_seed = 0;

    void validate() const;
};

// Normalized isotropic Gaussian taps, odd size.
Tensor gaussian_kernel(double sigma, int size);

// Catmull-Rom bicubic (a = -0.5) with half-sample symmetric edge handling.
ImageGrid bicubic_resize(const ImageGrid& image, int out_h, int out_w);

// blur (symmetric borders, keeping constants fixed) -> bicubic downsample by
// scale_factor -> seeded i.i.d. Gaussian noise -> clamp to [0,1].
ImageGrid degrade(const ImageGrid& x, const DegradationSpec& spec);

}  // namespace qwsr
