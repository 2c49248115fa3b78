#pragma once

#include <vector>

#include "qwsr/image.hpp"

namespace qwsr {

enum class FilterFamily { Haar, Daub4, FarrasFirstStage, QShift10 };

// Orthonormal analysis/synthesis filter pair. Analysis runs as correlation,
// synthesis as its adjoint (= convolution with the same taps), so for these
// orthonormal families the synthesis taps coincide with the analysis taps.
struct FilterPair {
    FilterFamily name = FilterFamily::Haar;
    std::vector<double> lowpass;
    std::vector<double> highpass;
    std::vector<double> synth_lowpass;
    std::vector<double> synth_highpass;
};

FilterPair make_filter(FilterFamily family);

// The two trees of the dual-tree construction. Tree b's filters sit a
// (half-)sample delay from tree a's, which is what makes the assembled
// quaternion magnitudes near shift-invariant.
struct DualTreeBank {
    FilterPair tree_a;
    FilterPair tree_b;
};

DualTreeBank dual_tree_first_stage();  // Farras pair, level 1
DualTreeBank dual_tree_deeper_stage();  // q-shift 10-tap pair, levels >= 2

struct Dwt1dResult {
    std::vector<double> approx;
    std::vector<double> detail;
};

// Periodic (circular) analysis; odd-length input is padded to even length by
// repeating the last sample first. Output halves the padded length.
Dwt1dResult dwt1d(const std::vector<double>& signal, const FilterPair& filters);
std::vector<double> idwt1d(const std::vector<double>& approx,
                           const std::vector<double>& detail,
                           const FilterPair& filters);

// Single-level separable 2D transform of a single-channel grid.
// Sub-band roles: ll = phi(x)phi(y), lh = phi(x)psi(y) (horizontal features),
// hl = psi(x)phi(y) (vertical), hh = psi(x)psi(y) (diagonal).
struct SubbandSet {
    ImageGrid ll, lh, hl, hh;
    int level = 1;
    int source_h = 0, source_w = 0;
};

SubbandSet dwt2d(const ImageGrid& image, const FilterPair& filters);
ImageGrid idwt2d(const SubbandSet& subbands, const FilterPair& filters);

// Mixed-filter variant used by the dual-tree transform: row_f runs along x,
// col_f along y.
SubbandSet dwt2d_mixed(const ImageGrid& image, const FilterPair& row_f,
                       const FilterPair& col_f);
ImageGrid idwt2d_mixed(const SubbandSet& subbands, const FilterPair& row_f,
                       const FilterPair& col_f);

// Recursive decomposition of ll. result[0] is the finest level; every level
// carries its ll but only the coarsest one participates in reconstruction.
std::vector<SubbandSet> dwt2d_multilevel(const ImageGrid& image,
                                         const FilterPair& filters, int levels);
ImageGrid idwt2d_multilevel(const std::vector<SubbandSet>& pyramid,
                            const FilterPair& filters);

}  // namespace qwsr
