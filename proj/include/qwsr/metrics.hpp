#pragma once

#include <string>
#include <vector>

#include "qwsr/image.hpp"

namespace qwsr {

// ITU-R BT.601 full-range conversion; inputs 3-channel in [0,1].
ImageGrid rgb_to_ycbcr(const ImageGrid& image);

// Y channel as a single-channel grid. 1-channel inputs pass through.
ImageGrid luma(const ImageGrid& image);

// 10*log10(1 / MSE_Y) for [0,1]-range images; identical inputs give +inf.
double psnr_y(const ImageGrid& a, const ImageGrid& b);

// Mean local SSIM on Y, Gaussian window 11 / sigma 1.5, K1=0.01, K2=0.03,
// L=1, valid-region statistics. Requires dims >= 11.
double ssim_y(const ImageGrid& a, const ImageGrid& b);

struct MetricRow {
    std::string name;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

struct MetricReport {
    std::vector<MetricRow> rows;
    double mean_psnr_db = 0.0;
    double mean_ssim = 0.0;

    void add(const std::string& name, double psnr, double ssim);
    std::string to_csv() const;  // columns: filename, psnr_y, ssim_y
};

}  // namespace qwsr
