#include "qwsr/image.hpp"

#include <algorithm>
#include <cmath>

namespace qwsr {

ImageGrid ImageGrid::channel(int c) const {
    require(c >= 0 && c < channels, "channel index out of range");
    ImageGrid out(height, width, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            out.at(y, x, 0) = at(y, x, c);
    return out;
}

void ImageGrid::set_channel(int c, const ImageGrid& plane) {
    require(c >= 0 && c < channels, "channel index out of range");
    require(plane.height == height && plane.width == width && plane.channels == 1,
            "set_channel: plane shape mismatch");
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            at(y, x, c) = plane.at(y, x, 0);
}

void ImageGrid::clamp01() {
    for (double& v : data) v = std::clamp(v, 0.0, 1.0);
}

ImageGrid stack_channels(const std::vector<ImageGrid>& planes) {
    require(!planes.empty(), "stack_channels: no planes");
    const int h = planes[0].height, w = planes[0].width;
    ImageGrid out(h, w, static_cast<int>(planes.size()));
    for (size_t c = 0; c < planes.size(); ++c) {
        require(planes[c].height == h && planes[c].width == w && planes[c].channels == 1,
                "stack_channels: plane shape mismatch");
        out.set_channel(static_cast<int>(c), planes[c]);
    }
    return out;
}

ImageGrid circular_shift(const ImageGrid& img, int dy, int dx) {
    ImageGrid out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y) {
        int sy = ((y - dy) % img.height + img.height) % img.height;
        for (int x = 0; x < img.width; ++x) {
            int sx = ((x - dx) % img.width + img.width) % img.width;
            for (int c = 0; c < img.channels; ++c)
                out.at(y, x, c) = img.at(sy, sx, c);
        }
    }
    return out;
}

double rms_diff(const ImageGrid& a, const ImageGrid& b) {
    require(a.same_shape(b), "rms_diff: shape mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.data.size()));
}

double sum_squares(const ImageGrid& a) {
    double acc = 0.0;
    for (double v : a.data) acc += v * v;
    return acc;
}

}  // namespace qwsr
