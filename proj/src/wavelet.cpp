#include "qwsr/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace qwsr {

namespace {

// Published dual-tree tap tables are rounded decimals; a few Newton steps
// project them back onto the exact double-shift orthonormality manifold
// (sum h[n] h[n+2k] = delta_k), which the perfect-reconstruction and
// Parseval gates need at the 1e-10 level.
void orthonormalize_lowpass(std::vector<double>& h) {
    const int L = static_cast<int>(h.size());
    const int K = L / 2;
    for (int iter = 0; iter < 8; ++iter) {
        std::vector<double> c(K, 0.0);
        for (int k = 0; k < K; ++k) {
            double acc = 0.0;
            for (int n = 0; n + 2 * k < L; ++n) acc += h[n] * h[n + 2 * k];
            c[k] = acc - (k == 0 ? 1.0 : 0.0);
        }
        double worst = 0.0;
        for (double v : c) worst = std::max(worst, std::abs(v));
        if (worst < 1e-15) break;

        // J[k][n] = d c_k / d h[n]
        std::vector<double> J(static_cast<size_t>(K) * L, 0.0);
        for (int k = 0; k < K; ++k) {
            for (int n = 0; n < L; ++n) {
                double d = 0.0;
                if (n + 2 * k < L) d += h[n + 2 * k];
                if (n - 2 * k >= 0) d += h[n - 2 * k];
                J[static_cast<size_t>(k) * L + n] = d;
            }
        }
        // Solve (J J^T) lambda = -c, step h += J^T lambda.
        std::vector<double> A(static_cast<size_t>(K) * K, 0.0);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) {
                double acc = 0.0;
                for (int n = 0; n < L; ++n)
                    acc += J[static_cast<size_t>(i) * L + n] * J[static_cast<size_t>(j) * L + n];
                A[static_cast<size_t>(i) * K + j] = acc;
            }
        std::vector<double> lam(K);
        for (int i = 0; i < K; ++i) lam[i] = -c[i];
        // Gaussian elimination with partial pivoting.
        for (int col = 0; col < K; ++col) {
            int piv = col;
            for (int r = col + 1; r < K; ++r)
                if (std::abs(A[static_cast<size_t>(r) * K + col]) >
                    std::abs(A[static_cast<size_t>(piv) * K + col]))
                    piv = r;
            for (int cc = 0; cc < K; ++cc)
                std::swap(A[static_cast<size_t>(col) * K + cc], A[static_cast<size_t>(piv) * K + cc]);
            std::swap(lam[col], lam[piv]);
            const double p = A[static_cast<size_t>(col) * K + col];
            for (int r = col + 1; r < K; ++r) {
                const double f = A[static_cast<size_t>(r) * K + col] / p;
                for (int cc = col; cc < K; ++cc)
                    A[static_cast<size_t>(r) * K + cc] -= f * A[static_cast<size_t>(col) * K + cc];
                lam[r] -= f * lam[col];
            }
        }
        for (int r = K - 1; r >= 0; --r) {
            double acc = lam[r];
            for (int cc = r + 1; cc < K; ++cc)
                acc -= A[static_cast<size_t>(r) * K + cc] * lam[cc];
            lam[r] = acc / A[static_cast<size_t>(r) * K + r];
        }
        for (int n = 0; n < L; ++n) {
            double step = 0.0;
            for (int k = 0; k < K; ++k) step += J[static_cast<size_t>(k) * L + n] * lam[k];
            h[n] += step;
        }
    }
}

std::vector<double> qmf_highpass(const std::vector<double>& lo) {
    const int L = static_cast<int>(lo.size());
    std::vector<double> hi(L);
    for (int n = 0; n < L; ++n)
        hi[n] = ((n % 2 == 0) ? 1.0 : -1.0) * lo[L - 1 - n];
    return hi;
}

FilterPair pair_from_lowpass(FilterFamily name, std::vector<double> lo) {
    orthonormalize_lowpass(lo);
    FilterPair fp;
    fp.name = name;
    fp.lowpass = lo;
    fp.highpass = qmf_highpass(lo);
    fp.synth_lowpass = fp.lowpass;
    fp.synth_highpass = fp.highpass;
    return fp;
}

// Farras nearly-symmetric first-stage filters (tree a / tree b lowpass).
const std::vector<double> kFarrasA = {
    0.0, -0.08838834764832, 0.08838834764832, 0.69587998903400,
    0.69587998903400, 0.08838834764832, -0.08838834764832,
    0.01122679215254, 0.01122679215254, 0.0};
const std::vector<double> kFarrasB = {
    0.01122679215254, 0.01122679215254, -0.08838834764832, 0.08838834764832,
    0.69587998903400, 0.69587998903400, 0.08838834764832, -0.08838834764832,
    0.0, 0.0};

// Kingsbury q-shift 10-tap, tree a; tree b is its time reverse.
const std::vector<double> kQShiftA = {
    0.03516384000000, 0.0, -0.08832942000000, 0.23389032000000,
    0.76027237000000, 0.58751830000000, 0.0, -0.11430184000000, 0.0, 0.0};

std::vector<double> periodic_pad_to_even(const std::vector<double>& x) {
    if (x.size() % 2 == 0) return x;
    std::vector<double> p = x;
    p.push_back(x.back());
    return p;
}

}  // namespace

FilterPair make_filter(FilterFamily family) {
    switch (family) {
        case FilterFamily::Haar:
            return pair_from_lowpass(family, {M_SQRT1_2, M_SQRT1_2});
        case FilterFamily::Daub4: {
            const double s3 = std::sqrt(3.0), den = 4.0 * std::sqrt(2.0);
            return pair_from_lowpass(family, {(1.0 + s3) / den, (3.0 + s3) / den,
                                              (3.0 - s3) / den, (1.0 - s3) / den});
        }
        case FilterFamily::FarrasFirstStage:
            return pair_from_lowpass(family, kFarrasA);
        case FilterFamily::QShift10:
            return pair_from_lowpass(family, kQShiftA);
    }
    fail("make_filter: unknown family");
}

DualTreeBank dual_tree_first_stage() {
    DualTreeBank bank;
    bank.tree_a = pair_from_lowpass(FilterFamily::FarrasFirstStage, kFarrasA);
    bank.tree_b = pair_from_lowpass(FilterFamily::FarrasFirstStage, kFarrasB);
    return bank;
}

DualTreeBank dual_tree_deeper_stage() {
    DualTreeBank bank;
    bank.tree_a = pair_from_lowpass(FilterFamily::QShift10, kQShiftA);
    std::vector<double> rev(kQShiftA.rbegin(), kQShiftA.rend());
    bank.tree_b = pair_from_lowpass(FilterFamily::QShift10, rev);
    return bank;
}

Dwt1dResult dwt1d(const std::vector<double>& signal, const FilterPair& filters) {
    require(!signal.empty(), "dwt1d: empty signal");
    const std::vector<double> x = periodic_pad_to_even(signal);
    const int N = static_cast<int>(x.size());
    const int half = N / 2;
    const int L = static_cast<int>(filters.lowpass.size());
    Dwt1dResult r;
    r.approx.assign(half, 0.0);
    r.detail.assign(half, 0.0);
    for (int k = 0; k < half; ++k) {
        double lo = 0.0, hi = 0.0;
        for (int n = 0; n < L; ++n) {
            const double v = x[(2 * k + n) % N];
            lo += filters.lowpass[n] * v;
            hi += filters.highpass[n] * v;
        }
        r.approx[k] = lo;
        r.detail[k] = hi;
    }
    return r;
}

std::vector<double> idwt1d(const std::vector<double>& approx,
                           const std::vector<double>& detail,
                           const FilterPair& filters) {
    require(approx.size() == detail.size(), "idwt1d: length mismatch");
    require(!approx.empty(), "idwt1d: empty input");
    const int half = static_cast<int>(approx.size());
    const int N = 2 * half;
    const int L = static_cast<int>(filters.synth_lowpass.size());
    std::vector<double> x(N, 0.0);
    for (int k = 0; k < half; ++k) {
        for (int n = 0; n < L; ++n) {
            const int m = (2 * k + n) % N;
            x[m] += filters.synth_lowpass[n] * approx[k] +
                    filters.synth_highpass[n] * detail[k];
        }
    }
    return x;
}

namespace {

// Filter every row along x, splitting into low/high half-width grids.
void analyze_rows(const ImageGrid& img, const FilterPair& f,
                  ImageGrid& low, ImageGrid& high) {
    const int H = img.height;
    std::vector<double> row(img.width);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < img.width; ++x) row[x] = img.at(y, x, 0);
        Dwt1dResult r = dwt1d(row, f);
        if (y == 0) {
            low = ImageGrid(H, static_cast<int>(r.approx.size()), 1);
            high = ImageGrid(H, static_cast<int>(r.detail.size()), 1);
        }
        for (size_t x = 0; x < r.approx.size(); ++x) {
            low.at(y, static_cast<int>(x), 0) = r.approx[x];
            high.at(y, static_cast<int>(x), 0) = r.detail[x];
        }
    }
}

void analyze_cols(const ImageGrid& img, const FilterPair& f,
                  ImageGrid& low, ImageGrid& high) {
    const int W = img.width;
    std::vector<double> col(img.height);
    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < img.height; ++y) col[y] = img.at(y, x, 0);
        Dwt1dResult r = dwt1d(col, f);
        if (x == 0) {
            low = ImageGrid(static_cast<int>(r.approx.size()), W, 1);
            high = ImageGrid(static_cast<int>(r.detail.size()), W, 1);
        }
        for (size_t y = 0; y < r.approx.size(); ++y) {
            low.at(static_cast<int>(y), x, 0) = r.approx[y];
            high.at(static_cast<int>(y), x, 0) = r.detail[y];
        }
    }
}

ImageGrid synth_cols(const ImageGrid& low, const ImageGrid& high,
                     const FilterPair& f, int out_h) {
    ImageGrid out(2 * low.height, low.width, 1);
    std::vector<double> a(low.height), d(low.height);
    for (int x = 0; x < low.width; ++x) {
        for (int y = 0; y < low.height; ++y) {
            a[y] = low.at(y, x, 0);
            d[y] = high.at(y, x, 0);
        }
        std::vector<double> rec = idwt1d(a, d, f);
        for (int y = 0; y < static_cast<int>(rec.size()); ++y) out.at(y, x, 0) = rec[y];
    }
    if (out_h < out.height) {
        ImageGrid cropped(out_h, out.width, 1);
        for (int y = 0; y < out_h; ++y)
            for (int x = 0; x < out.width; ++x) cropped.at(y, x, 0) = out.at(y, x, 0);
        return cropped;
    }
    return out;
}

ImageGrid synth_rows(const ImageGrid& low, const ImageGrid& high,
                     const FilterPair& f, int out_w) {
    ImageGrid out(low.height, 2 * low.width, 1);
    std::vector<double> a(low.width), d(low.width);
    for (int y = 0; y < low.height; ++y) {
        for (int x = 0; x < low.width; ++x) {
            a[x] = low.at(y, x, 0);
            d[x] = high.at(y, x, 0);
        }
        std::vector<double> rec = idwt1d(a, d, f);
        for (int x = 0; x < static_cast<int>(rec.size()); ++x) out.at(y, x, 0) = rec[x];
    }
    if (out_w < out.width) {
        ImageGrid cropped(out.height, out_w, 1);
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out_w; ++x) cropped.at(y, x, 0) = out.at(y, x, 0);
        return cropped;
    }
    return out;
}

}  // namespace

SubbandSet dwt2d_mixed(const ImageGrid& image, const FilterPair& row_f,
                       const FilterPair& col_f) {
    require(image.channels == 1, "dwt2d: single-channel input required");
    SubbandSet s;
    s.source_h = image.height;
    s.source_w = image.width;
    ImageGrid xlow, xhigh;
    analyze_rows(image, row_f, xlow, xhigh);
    ImageGrid tmp_low, tmp_high;
    analyze_cols(xlow, col_f, tmp_low, tmp_high);
    s.ll = tmp_low;
    s.lh = tmp_high;
    analyze_cols(xhigh, col_f, tmp_low, tmp_high);
    s.hl = tmp_low;
    s.hh = tmp_high;
    return s;
}

SubbandSet dwt2d(const ImageGrid& image, const FilterPair& filters) {
    return dwt2d_mixed(image, filters, filters);
}

ImageGrid idwt2d_mixed(const SubbandSet& s, const FilterPair& row_f,
                       const FilterPair& col_f) {
    require(s.ll.same_shape(s.lh) && s.ll.same_shape(s.hl) && s.ll.same_shape(s.hh),
            "idwt2d: sub-band shape mismatch");
    require(s.source_h > 0 && s.source_w > 0, "idwt2d: missing source dims");
    ImageGrid xlow = synth_cols(s.ll, s.lh, col_f, s.source_h);
    ImageGrid xhigh = synth_cols(s.hl, s.hh, col_f, s.source_h);
    return synth_rows(xlow, xhigh, row_f, s.source_w);
}

ImageGrid idwt2d(const SubbandSet& subbands, const FilterPair& filters) {
    return idwt2d_mixed(subbands, filters, filters);
}

std::vector<SubbandSet> dwt2d_multilevel(const ImageGrid& image,
                                         const FilterPair& filters, int levels) {
    require(levels >= 1, "dwt2d_multilevel: levels must be >= 1");
    require(image.height >= (1 << levels) && image.width >= (1 << levels),
            "dwt2d_multilevel: image too small for requested levels");
    std::vector<SubbandSet> pyramid;
    ImageGrid cur = image;
    for (int lv = 1; lv <= levels; ++lv) {
        SubbandSet s = dwt2d(cur, filters);
        s.level = lv;
        cur = s.ll;
        pyramid.push_back(std::move(s));
    }
    return pyramid;
}

ImageGrid idwt2d_multilevel(const std::vector<SubbandSet>& pyramid,
                            const FilterPair& filters) {
    require(!pyramid.empty(), "idwt2d_multilevel: empty pyramid");
    ImageGrid cur = pyramid.back().ll;
    for (int i = static_cast<int>(pyramid.size()) - 1; i >= 0; --i) {
        SubbandSet s = pyramid[i];
        s.ll = cur;
        cur = idwt2d(s, filters);
    }
    return cur;
}

}  // namespace qwsr
