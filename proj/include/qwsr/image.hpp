#pragma once

#include <cstdint>
#include <vector>

#include "qwsr/common.hpp"

namespace qwsr {

// H x W x C raster, row-major, channel-last. Pixel-domain images live in
// [0,1]; latent and feature grids are unbounded.
struct ImageGrid {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    ImageGrid() = default;
    ImageGrid(int h, int w, int c, double fill = 0.0)
        : height(h), width(w), channels(c),
          data(static_cast<size_t>(h) * w * c, fill) {
        require(h > 0 && w > 0 && c > 0, "ImageGrid: dims must be positive");
    }

    size_t size() const { return data.size(); }

    double& at(int y, int x, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    bool same_shape(const ImageGrid& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }

    ImageGrid channel(int c) const;
    void set_channel(int c, const ImageGrid& plane);
    void clamp01();
};

// Stack single-channel planes into one multi-channel grid.
ImageGrid stack_channels(const std::vector<ImageGrid>& planes);

// Circular shift by (dy, dx); used by the shift-invariance diagnostics.
ImageGrid circular_shift(const ImageGrid& img, int dy, int dx);

double rms_diff(const ImageGrid& a, const ImageGrid& b);
double sum_squares(const ImageGrid& a);

}  // namespace qwsr
