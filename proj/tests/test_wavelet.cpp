#include <doctest.h>

#include <cmath>

#include "qwsr/rng.hpp"
#include "qwsr/wavelet.hpp"

using namespace qwsr;

namespace {

ImageGrid random_plane(Rng& rng, int h, int w) {
    ImageGrid img(h, w, 1);
    for (double& v : img.data) v = rng.uniform();
    return img;
}

double image_energy(const ImageGrid& a) { return sum_squares(a); }

const FilterFamily kAllFamilies[] = {FilterFamily::Haar, FilterFamily::Daub4,
                                     FilterFamily::FarrasFirstStage,
                                     FilterFamily::QShift10};

}  // namespace

TEST_SUITE_BEGIN("wavelet");

TEST_CASE("lowpass taps are unit-energy for every family") {
    for (FilterFamily fam : kAllFamilies) {
        FilterPair f = make_filter(fam);
        double ss = 0.0;
        for (double v : f.lowpass) ss += v * v;
        CHECK(std::abs(ss - 1.0) < 1e-10);
    }
}

TEST_CASE("haar on constant and oscillating pairs") {
    FilterPair haar = make_filter(FilterFamily::Haar);
    Dwt1dResult r = dwt1d({1.0, 1.0}, haar);
    CHECK(r.approx.size() == 1);
    CHECK(r.approx[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(r.detail[0]) < 1e-12);

    Dwt1dResult o = dwt1d({1.0, -1.0}, haar);
    CHECK(std::abs(o.approx[0]) < 1e-12);
    CHECK(std::abs(std::abs(o.detail[0]) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("dwt1d rejects empty signals, idwt1d rejects length mismatch") {
    FilterPair haar = make_filter(FilterFamily::Haar);
    CHECK_THROWS(dwt1d({}, haar));
    CHECK_THROWS(idwt1d({1.0, 2.0}, {1.0}, haar));
}

TEST_CASE("dwt1d/idwt1d roundtrip, all families") {
    Rng rng(21);
    for (FilterFamily fam : kAllFamilies) {
        FilterPair f = make_filter(fam);
        std::vector<double> x(16);
        for (double& v : x) v = rng.normal();
        Dwt1dResult r = dwt1d(x, f);
        CHECK(r.approx.size() == 8);
        std::vector<double> rec = idwt1d(r.approx, r.detail, f);
        REQUIRE(rec.size() == x.size());
        for (size_t i = 0; i < x.size(); ++i) CHECK(std::abs(rec[i] - x[i]) < 1e-10);
    }
}

TEST_CASE("odd-length signals pad to even and crop back") {
    Rng rng(22);
    FilterPair f = make_filter(FilterFamily::Daub4);
    std::vector<double> x(9);
    for (double& v : x) v = rng.normal();
    Dwt1dResult r = dwt1d(x, f);
    CHECK(r.approx.size() == 5);  // ceil-half
}

TEST_CASE("dwt2d constant image concentrates in ll") {
    const double c = 0.31;
    ImageGrid img(8, 8, 1, c);
    SubbandSet s = dwt2d(img, make_filter(FilterFamily::Haar));
    for (size_t i = 0; i < s.ll.data.size(); ++i) {
        CHECK(s.ll.data[i] == doctest::Approx(2.0 * c).epsilon(1e-12));
        CHECK(std::abs(s.lh.data[i]) < 1e-12);
        CHECK(std::abs(s.hl.data[i]) < 1e-12);
        CHECK(std::abs(s.hh.data[i]) < 1e-12);
    }
}

TEST_CASE("dwt2d rejects multi-channel input") {
    ImageGrid rgb(8, 8, 3, 0.5);
    CHECK_THROWS(dwt2d(rgb, make_filter(FilterFamily::Haar)));
}

TEST_CASE("horizontal step edge fires lh, not hl") {
    // Edge runs along x; intensity varies along y.
    ImageGrid img(16, 16, 1);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) img.at(y, x, 0) = (y < 8) ? 0.0 : 1.0;
    SubbandSet s = dwt2d(img, make_filter(FilterFamily::Daub4));
    CHECK(image_energy(s.lh) > 10.0 * image_energy(s.hl));
}

TEST_CASE("dwt2d roundtrip and Parseval on random 16x16") {
    Rng rng(23);
    ImageGrid img = random_plane(rng, 16, 16);
    for (FilterFamily fam : {FilterFamily::Haar, FilterFamily::Daub4}) {
        FilterPair f = make_filter(fam);
        SubbandSet s = dwt2d(img, f);
        ImageGrid rec = idwt2d(s, f);
        CHECK(rms_diff(img, rec) < 1e-10);
        const double bands = image_energy(s.ll) + image_energy(s.lh) +
                             image_energy(s.hl) + image_energy(s.hh);
        CHECK(bands == doctest::Approx(image_energy(img)).epsilon(1e-8));
    }
}

TEST_CASE("idwt2d rejects inconsistent sub-band shapes") {
    Rng rng(24);
    SubbandSet s = dwt2d(random_plane(rng, 8, 8), make_filter(FilterFamily::Haar));
    s.hh = ImageGrid(2, 4, 1);
    CHECK_THROWS(idwt2d(s, make_filter(FilterFamily::Haar)));
}

TEST_CASE("perfect reconstruction, all families, 100 random images per size") {
    Rng rng(25);
    for (int size : {8, 16, 32, 64}) {
        for (FilterFamily fam : kAllFamilies) {
            FilterPair f = make_filter(fam);
            const int reps = 100 / 4;  // 25 per family = 100 per size
            for (int i = 0; i < reps; ++i) {
                ImageGrid img = random_plane(rng, size, size);
                CHECK(rms_diff(img, idwt2d(dwt2d(img, f), f)) < 1e-8);
            }
        }
    }
}

TEST_CASE("multilevel level 1 equals dwt2d") {
    Rng rng(26);
    ImageGrid img = random_plane(rng, 16, 16);
    FilterPair f = make_filter(FilterFamily::Daub4);
    auto pyr = dwt2d_multilevel(img, f, 1);
    REQUIRE(pyr.size() == 1);
    SubbandSet s = dwt2d(img, f);
    CHECK(rms_diff(pyr[0].ll, s.ll) == 0.0);
    CHECK(rms_diff(pyr[0].hh, s.hh) == 0.0);
}

TEST_CASE("multilevel roundtrip at 3 levels on 32x32") {
    Rng rng(27);
    ImageGrid img = random_plane(rng, 32, 32);
    for (FilterFamily fam : kAllFamilies) {
        FilterPair f = make_filter(fam);
        auto pyr = dwt2d_multilevel(img, f, 3);
        ImageGrid rec = idwt2d_multilevel(pyr, f);
        CHECK(rms_diff(img, rec) < 1e-8);
    }
}

TEST_CASE("multilevel constant image has zero detail everywhere") {
    ImageGrid img(16, 16, 1, 0.42);
    FilterPair f = make_filter(FilterFamily::Haar);
    auto pyr = dwt2d_multilevel(img, f, 2);
    for (const SubbandSet& s : pyr) {
        CHECK(image_energy(s.lh) < 1e-20);
        CHECK(image_energy(s.hl) < 1e-20);
        CHECK(image_energy(s.hh) < 1e-20);
    }
}

TEST_CASE("multilevel rejects undersized images") {
    ImageGrid img(8, 8, 1, 0.5);
    CHECK_THROWS(dwt2d_multilevel(img, make_filter(FilterFamily::Haar), 4));
}

TEST_CASE("real DWT detail energy is shift sensitive") {
    // Baseline for the dual-tree comparison: a unit impulse swept across 8
    // positions must show strictly positive variance of detail energy.
    FilterPair f = make_filter(FilterFamily::FarrasFirstStage);
    std::vector<double> energies;
    for (int shift = 0; shift < 8; ++shift) {
        ImageGrid img(16, 16, 1, 0.0);
        img.at(8, 4 + shift, 0) = 1.0;
        SubbandSet s = dwt2d(img, f);
        energies.push_back(image_energy(s.lh) + image_energy(s.hl) + image_energy(s.hh));
    }
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= energies.size();
    double var = 0.0;
    for (double e : energies) var += (e - mean) * (e - mean);
    var /= energies.size();
    CHECK(var > 1e-8);
}

TEST_SUITE_END();
