#include "qwsr/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qwsr {

ImageGrid conv2d_same(const ImageGrid& input, const Tensor& kernel, Border border) {
    require(kernel.shape.size() == 2, "conv2d_same: kernel must be 2D");
    const int kh = kernel.shape[0], kw = kernel.shape[1];
    require(kh % 2 == 1 && kw % 2 == 1, "conv2d_same: kernel sides must be odd");
    const int ry = kh / 2, rx = kw / 2;
    const int H = input.height, W = input.width, C = input.channels;

    ImageGrid out(H, W, C);
    auto reflect = [](int i, int n) {
        // half-sample symmetric: ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - 1 - i;
        }
        return i;
    };

    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            for (int c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int u = 0; u < kh; ++u) {
                    int sy = y + u - ry;
                    for (int v = 0; v < kw; ++v) {
                        int sx = x + v - rx;
                        double pix;
                        if (border == Border::Zero) {
                            if (sy < 0 || sy >= H || sx < 0 || sx >= W) continue;
                            pix = input.at(sy, sx, c);
                        } else {
                            pix = input.at(reflect(sy, H), reflect(sx, W), c);
                        }
                        acc += kernel.v[static_cast<size_t>(u) * kw + v] * pix;
                    }
                }
                out.at(y, x, c) = acc;
            }
        }
    }
    return out;
}

double grad_check(const std::function<double(ParamStore&, bool want_grad)>& f,
                  ParamStore& params, const GradCheckOptions& opts) {
    params.zero_grads();
    double f0 = f(params, true);
    require(std::isfinite(f0), "grad_check: objective is not finite");

    // Snapshot analytic gradients before perturbing anything.
    std::map<std::string, Tensor> analytic;
    for (auto& [name, e] : params.entries()) analytic[name] = e.grad;

    double worst = 0.0;
    for (auto& [name, e] : params.entries()) {
        if (e.frozen) continue;
        const size_t n = e.value.numel();
        size_t stride = 1;
        if (opts.max_components_per_tensor > 0 &&
            n > static_cast<size_t>(opts.max_components_per_tensor)) {
            stride = n / static_cast<size_t>(opts.max_components_per_tensor);
        }
        for (size_t i = 0; i < n; i += stride) {
            const double orig = e.value[i];
            e.value[i] = orig + opts.step;
            double fp = f(params, false);
            e.value[i] = orig - opts.step;
            double fm = f(params, false);
            e.value[i] = orig;
            require(std::isfinite(fp) && std::isfinite(fm),
                    "grad_check: perturbed objective is not finite");
            double numeric = (fp - fm) / (2.0 * opts.step);
            double a = analytic[name][i];
            double rel = std::abs(a - numeric) /
                         std::max({std::abs(a), std::abs(numeric), 1e-8});
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

}  // namespace qwsr
