#include "qwsr/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qwsr {

ImageGrid rgb_to_ycbcr(const ImageGrid& image) {
    require(image.channels == 3, "rgb_to_ycbcr: expects 3 channels");
    ImageGrid out(image.height, image.width, 3);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const double r = image.at(y, x, 0), g = image.at(y, x, 1), b = image.at(y, x, 2);
            out.at(y, x, 0) = 0.299 * r + 0.587 * g + 0.114 * b;
            out.at(y, x, 1) = 0.5 - 0.168736 * r - 0.331264 * g + 0.5 * b;
            out.at(y, x, 2) = 0.5 + 0.5 * r - 0.418688 * g - 0.081312 * b;
        }
    }
    return out;
}

ImageGrid luma(const ImageGrid& image) {
    if (image.channels == 1) return image;
    require(image.channels == 3, "luma: expects 1 or 3 channels");
    ImageGrid out(image.height, image.width, 1);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x)
            out.at(y, x, 0) = 0.299 * image.at(y, x, 0) + 0.587 * image.at(y, x, 1) +
                              0.114 * image.at(y, x, 2);
    return out;
}

double psnr_y(const ImageGrid& a, const ImageGrid& b) {
    require(a.same_shape(b), "psnr_y: shape mismatch");
    const ImageGrid ya = luma(a), yb = luma(b);
    double mse = 0.0;
    for (size_t i = 0; i < ya.data.size(); ++i) {
        const double d = ya.data[i] - yb.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(ya.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

std::vector<double> gaussian_window_1d(int size, double sigma) {
    std::vector<double> w(size);
    const int r = size / 2;
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = static_cast<double>(i - r);
        w[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Valid-region separable Gaussian filtering of a single-channel grid.
ImageGrid gauss_valid(const ImageGrid& img, const std::vector<double>& w) {
    const int k = static_cast<int>(w.size());
    ImageGrid horiz(img.height, img.width - k + 1, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < horiz.width; ++x) {
            double acc = 0.0;
            for (int i = 0; i < k; ++i) acc += w[i] * img.at(y, x + i, 0);
            horiz.at(y, x, 0) = acc;
        }
    ImageGrid out(img.height - k + 1, horiz.width, 1);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            double acc = 0.0;
            for (int i = 0; i < k; ++i) acc += w[i] * horiz.at(y + i, x, 0);
            out.at(y, x, 0) = acc;
        }
    return out;
}

}  // namespace

double ssim_y(const ImageGrid& a, const ImageGrid& b) {
    require(a.same_shape(b), "ssim_y: shape mismatch");
    const int win = 11;
    require(a.height >= win && a.width >= win, "ssim_y: image smaller than the window");
    const ImageGrid ya = luma(a), yb = luma(b);

    const std::vector<double> w = gaussian_window_1d(win, 1.5);
    ImageGrid aa(ya.height, ya.width, 1), bb(ya.height, ya.width, 1), ab(ya.height, ya.width, 1);
    for (size_t i = 0; i < ya.data.size(); ++i) {
        aa.data[i] = ya.data[i] * ya.data[i];
        bb.data[i] = yb.data[i] * yb.data[i];
        ab.data[i] = ya.data[i] * yb.data[i];
    }
    const ImageGrid mu_a = gauss_valid(ya, w), mu_b = gauss_valid(yb, w);
    const ImageGrid m_aa = gauss_valid(aa, w), m_bb = gauss_valid(bb, w), m_ab = gauss_valid(ab, w);

    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;  // (K*L)^2 with L = 1
    double acc = 0.0;
    for (size_t i = 0; i < mu_a.data.size(); ++i) {
        const double ma = mu_a.data[i], mb = mu_b.data[i];
        const double va = m_aa.data[i] - ma * ma;
        const double vb = m_bb.data[i] - mb * mb;
        const double cov = m_ab.data[i] - ma * mb;
        acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    return acc / static_cast<double>(mu_a.data.size());
}

void MetricReport::add(const std::string& name, double psnr, double ssim) {
    rows.push_back({name, psnr, ssim});
    double sp = 0.0, ss = 0.0;
    for (const MetricRow& r : rows) {
        sp += r.psnr_db;
        ss += r.ssim;
    }
    mean_psnr_db = sp / static_cast<double>(rows.size());
    mean_ssim = ss / static_cast<double>(rows.size());
}

std::string MetricReport::to_csv() const {
    std::ostringstream os;
    os.precision(10);
    os << "filename,psnr_y,ssim_y\n";
    for (const MetricRow& r : rows)
        os << r.name << "," << r.psnr_db << "," << r.ssim << "\n";
    os << "mean," << mean_psnr_db << "," << mean_ssim << "\n";
    return os.str();
}

}  // namespace qwsr
