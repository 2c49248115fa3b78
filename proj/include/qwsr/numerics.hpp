#pragma once

#include <functional>

#include "qwsr/image.hpp"
#include "qwsr/tensor.hpp"

namespace qwsr {

enum class Border { Zero, Symmetric };

// Per-channel 2D correlation with an odd-sized kernel; output keeps the
// input's spatial dims. Border::Zero pads with zeros, Border::Symmetric
// reflects with edge duplication (half-sample symmetry).
ImageGrid conv2d_same(const ImageGrid& input, const Tensor& kernel,
                      Border border = Border::Zero);

struct GradCheckOptions {
    double step = 1e-4;
    // Cap on checked components per tensor; <= 0 means check all of them.
    // Components are chosen deterministically (evenly strided).
    int max_components_per_tensor = 0;
};

// f must evaluate the scalar objective at the store's current values; when
// want_grad is set it must also leave d(objective)/d(param) in each entry's
// grad slot. Returns the max over checked components of
// |analytic - central| / max(|analytic|, |central|, 1e-8).
double grad_check(const std::function<double(ParamStore&, bool want_grad)>& f,
                  ParamStore& params, const GradCheckOptions& opts = {});

}  // namespace qwsr
