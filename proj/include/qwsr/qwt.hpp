#pragma once

#include <vector>

#include "qwsr/image.hpp"
#include "qwsr/quaternion.hpp"
#include "qwsr/wavelet.hpp"

namespace qwsr {

// Grid of quaternion coefficients stored as four real planes.
struct QuatGrid {
    ImageGrid a, b, c, d;
};

struct QwtLevel {
    QuatGrid phi;    // quaternion lowpass
    QuatGrid psi_h;  // horizontal wavelet  (lh: phi(x) psi(y))
    QuatGrid psi_v;  // vertical wavelet    (hl: psi(x) phi(y))
    QuatGrid psi_d;  // diagonal wavelet    (hh: psi(x) psi(y))
};

// Dual-tree quaternion wavelet decomposition. Four separable 2D DWTs are run
// with filter combinations (h.h, g.h, h.g, g.g) -- first letter along x,
// second along y, g the Hilbert-pair tree of h -- and their outputs form the
// quaternion components (a, b, c, d) of each coefficient. Four quaternion
// sub-bands x four components = 16 real planes per level.
struct QwtDecomposition {
    int levels = 0;
    int source_h = 0, source_w = 0;
    std::vector<QwtLevel> level;  // [0] is the finest scale
};

QwtDecomposition qwt_forward(const ImageGrid& image, int levels);

// Averages the four inverse trees.
ImageGrid qwt_inverse(const QwtDecomposition& decomp);

// 16-channel plane extraction at a level (1-based). Channel order:
// [phi.a,b,c,d, psi_h.a..d, psi_v.a..d, psi_d.a..d].
ImageGrid qwt_planes(const QwtDecomposition& decomp, int level);

// Coefficient-wise magnitude / phase maps of one sub-band, for diagnostics.
ImageGrid quat_magnitude_map(const QuatGrid& g);
ImageGrid quat_phase_map(const QuatGrid& g);  // 3 channels (phi, theta, psi)

// Sum over the three detail sub-bands at every level of |q|^2.
double qwt_detail_magnitude_energy(const QwtDecomposition& decomp);

}  // namespace qwsr
