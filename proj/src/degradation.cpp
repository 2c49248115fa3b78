#include "qwsr/degradation.hpp"

#include <cmath>

#include "qwsr/numerics.hpp"
#include "qwsr/rng.hpp"

namespace qwsr {

void DegradationSpec::validate() const {
    require(kernel.shape.size() == 2 && kernel.shape[0] % 2 == 1 && kernel.shape[1] % 2 == 1,
            "DegradationSpec: kernel must be 2D with odd sides");
    double sum = 0.0;
    for (double v : kernel.v) sum += v;
    require(std::abs(sum - 1.0) <= 1e-9, "DegradationSpec: kernel taps must sum to 1");
    require(noise_sigma >= 0.0, "DegradationSpec: noise_sigma must be >= 0");
    require(scale_factor >= 1, "DegradationSpec: scale_factor must be >= 1");
}

Tensor gaussian_kernel(double sigma, int size) {
    require(size % 2 == 1, "gaussian_kernel: size must be odd");
    require(sigma > 0.0, "gaussian_kernel: sigma must be > 0");
    Tensor k({size, size});
    const int r = size / 2;
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dy = y - r, dx = x - r;
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            k.v[static_cast<size_t>(y) * size + x] = v;
            sum += v;
        }
    }
    for (double& v : k.v) v /= sum;
    return k;
}

namespace {

double cubic_weight(double t) {
    // Catmull-Rom: a = -0.5
    const double a = -0.5;
    t = std::abs(t);
    if (t < 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
    if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
    return 0.0;
}

int reflect_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

}  // namespace

ImageGrid bicubic_resize(const ImageGrid& image, int out_h, int out_w) {
    require(out_h >= 1 && out_w >= 1, "bicubic_resize: output dims must be >= 1");
    const double sy = static_cast<double>(image.height) / out_h;
    const double sx = static_cast<double>(image.width) / out_w;

    // Horizontal pass, then vertical.
    ImageGrid horiz(image.height, out_w, image.channels);
    for (int x = 0; x < out_w; ++x) {
        const double src = (x + 0.5) * sx - 0.5;
        const int base = static_cast<int>(std::floor(src));
        const double frac = src - base;
        double w[4];
        for (int i = 0; i < 4; ++i) w[i] = cubic_weight(frac - (i - 1));
        for (int y = 0; y < image.height; ++y) {
            for (int c = 0; c < image.channels; ++c) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    acc += w[i] * image.at(y, reflect_index(base + i - 1, image.width), c);
                horiz.at(y, x, c) = acc;
            }
        }
    }
    ImageGrid out(out_h, out_w, image.channels);
    for (int y = 0; y < out_h; ++y) {
        const double src = (y + 0.5) * sy - 0.5;
        const int base = static_cast<int>(std::floor(src));
        const double frac = src - base;
        double w[4];
        for (int i = 0; i < 4; ++i) w[i] = cubic_weight(frac - (i - 1));
        for (int x = 0; x < out_w; ++x) {
            for (int c = 0; c < out.channels; ++c) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    acc += w[i] * horiz.at(reflect_index(base + i - 1, image.height), x, c);
                out.at(y, x, c) = acc;
            }
        }
    }
    return out;
}

ImageGrid degrade(const ImageGrid& x, const DegradationSpec& spec) {
    spec.validate();
    require(x.height % spec.scale_factor == 0 && x.width % spec.scale_factor == 0,
            "degrade: scale_factor must divide image dims");

    ImageGrid blurred = conv2d_same(x, spec.kernel, Border::Symmetric);
    ImageGrid small = (spec.scale_factor == 1)
                          ? blurred
                          : bicubic_resize(blurred, x.height / spec.scale_factor,
                                           x.width / spec.scale_factor);
    if (spec.noise_sigma > 0.0) {
        Rng rng(spec.rng_seed);
        for (double& v : small.data) v += spec.noise_sigma * rng.normal();
    }
    small.clamp01();  // bicubic overshoot and noise both land outside [0,1]
    return small;
}

}  // namespace qwsr
