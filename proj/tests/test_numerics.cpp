#include <doctest.h>

#include <cmath>

#include "qwsr/autodiff.hpp"
#include "qwsr/image.hpp"
#include "qwsr/numerics.hpp"
#include "qwsr/quaternion.hpp"
#include "qwsr/rng.hpp"

using namespace qwsr;

namespace {

// Straight-line reference: per-channel correlation with zero padding.
ImageGrid conv_oracle(const ImageGrid& in, const Tensor& k) {
    const int kh = k.shape[0], kw = k.shape[1];
    ImageGrid out(in.height, in.width, in.channels);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            for (int c = 0; c < in.channels; ++c) {
                double acc = 0.0;
                for (int u = 0; u < kh; ++u)
                    for (int v = 0; v < kw; ++v) {
                        const int sy = y + u - kh / 2, sx = x + v - kw / 2;
                        if (sy < 0 || sy >= in.height || sx < 0 || sx >= in.width) continue;
                        acc += k.v[u * kw + v] * in.at(sy, sx, c);
                    }
                out.at(y, x, c) = acc;
            }
    return out;
}

ImageGrid random_image(Rng& rng, int h, int w, int c) {
    ImageGrid img(h, w, c);
    for (double& v : img.data) v = rng.uniform();
    return img;
}

}  // namespace

TEST_SUITE_BEGIN("numerics");

TEST_CASE("conv2d_same identity kernel returns the input") {
    Rng rng(11);
    ImageGrid img = random_image(rng, 7, 9, 3);
    Tensor k({3, 3});
    k.v = {0, 0, 0, 0, 1, 0, 0, 0, 0};
    ImageGrid out = conv2d_same(img, k);
    CHECK(rms_diff(img, out) == 0.0);
}

TEST_CASE("conv2d_same preserves constants in the interior") {
    ImageGrid img(8, 8, 1, 0.37);
    Tensor k({3, 3}, 1.0 / 9.0);
    ImageGrid out = conv2d_same(img, k);
    for (int y = 1; y < 7; ++y)
        for (int x = 1; x < 7; ++x)
            CHECK(out.at(y, x, 0) == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("conv2d_same matches the nested-loop oracle") {
    Rng rng(12);
    ImageGrid img = random_image(rng, 5, 5, 1);
    Tensor k({3, 3});
    for (double& v : k.v) v = rng.normal();
    ImageGrid a = conv2d_same(img, k);
    ImageGrid b = conv_oracle(img, k);
    CHECK(rms_diff(a, b) < 1e-12);
}

TEST_CASE("conv2d_same rejects even kernels") {
    ImageGrid img(4, 4, 1, 0.0);
    Tensor k({2, 2}, 0.25);
    CHECK_THROWS(conv2d_same(img, k));
}

TEST_CASE("conv2d_same is linear") {
    Rng rng(13);
    ImageGrid x = random_image(rng, 10, 10, 1);
    ImageGrid y = random_image(rng, 10, 10, 1);
    Tensor k({5, 3});
    for (double& v : k.v) v = rng.normal();
    const double a = 1.7, b = -0.6;
    ImageGrid mix(10, 10, 1);
    for (size_t i = 0; i < mix.data.size(); ++i) mix.data[i] = a * x.data[i] + b * y.data[i];
    ImageGrid lhs = conv2d_same(mix, k);
    ImageGrid cx = conv2d_same(x, k), cy = conv2d_same(y, k);
    for (size_t i = 0; i < lhs.data.size(); ++i)
        CHECK(std::abs(lhs.data[i] - (a * cx.data[i] + b * cy.data[i])) < 1e-10);
}

TEST_CASE("quat_magnitude basics") {
    CHECK(quat_magnitude({1, 0, 0, 0}) == doctest::Approx(1.0));
    CHECK(quat_magnitude({0, 0, 0, 0}) == 0.0);
    CHECK(quat_magnitude({1, 1, 1, 1}) == doctest::Approx(2.0));
}

TEST_CASE("quat_phase identity and axis conventions") {
    QuatPhase p = quat_phase({1, 0, 0, 0});
    CHECK(p.phi == doctest::Approx(0.0));
    CHECK(p.theta == doctest::Approx(0.0));
    CHECK(p.psi == doctest::Approx(0.0));

    QuatPhase pi2 = quat_phase({0, 1, 0, 0});
    CHECK(pi2.phi == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(pi2.theta == doctest::Approx(0.0));
    CHECK(pi2.psi == doctest::Approx(0.0));
}

TEST_CASE("quat_phase rejects the zero quaternion") {
    CHECK_THROWS(quat_phase({0, 0, 0, 0}));
}

TEST_CASE("quat polar roundtrip on 1000 random quaternions") {
    Rng rng(14);
    for (int i = 0; i < 1000; ++i) {
        Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const double mag = quat_magnitude(q);
        if (mag < 1e-6) continue;
        QuatPhase p = quat_phase(q);
        CHECK(p.phi >= -M_PI);
        CHECK(p.phi < M_PI);
        CHECK(std::abs(p.theta) <= M_PI / 2 + 1e-12);
        CHECK(std::abs(p.psi) <= M_PI / 4 + 1e-12);
        Quaternion r = quat_from_polar(mag, p);
        CHECK(std::abs(r.a - q.a) < 1e-9);
        CHECK(std::abs(r.b - q.b) < 1e-9);
        CHECK(std::abs(r.c - q.c) < 1e-9);
        CHECK(std::abs(r.d - q.d) < 1e-9);
    }
}

TEST_CASE("grad_check on a quadratic is near exact") {
    ParamStore store;
    Rng rng(15);
    store.add("w", randn_tensor(rng, {4, 3}, 1.0));
    store.add("b", randn_tensor(rng, {5}, 1.0));
    auto f = [](ParamStore& s, bool want_grad) {
        double acc = 0.0;
        for (auto& [name, e] : s.entries()) {
            for (size_t i = 0; i < e.value.numel(); ++i) {
                acc += e.value[i] * e.value[i];
                if (want_grad) e.grad[i] += 2.0 * e.value[i];
            }
        }
        return acc;
    };
    CHECK(grad_check(f, store) < 1e-6);
}

TEST_CASE("grad_check flags non-finite objectives") {
    ParamStore store;
    store.add("w", Tensor({1}, 0.0));
    auto f = [](ParamStore&, bool) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS(grad_check(f, store));
}

TEST_CASE("tape conv/groupnorm/silu composite passes grad_check") {
    ParamStore store;
    Rng rng(16);
    store.add("w", randn_tensor(rng, {8, 2, 3, 3}, 0.4));
    store.add("b", randn_tensor(rng, {8}, 0.2));
    store.add("gamma", Tensor({8}, 1.0));
    store.add("beta", Tensor({8}, 0.0));
    store.add("w2", randn_tensor(rng, {1, 8, 1, 1}, 0.4));
    store.add("b2", randn_tensor(rng, {1}, 0.1));
    Tensor input = randn_tensor(rng, {2, 5, 5}, 1.0);
    Tensor target = randn_tensor(rng, {1, 5, 5}, 1.0);

    auto f = [&](ParamStore& s, bool want_grad) {
        ad::Graph g;
        int x = g.leaf(input);
        int h = g.conv2d(x, g.param(s, "w"), g.param(s, "b"), 1, 1);
        h = g.group_norm(h, g.param(s, "gamma"), g.param(s, "beta"), 8);
        h = g.silu(h);
        h = g.conv2d(h, g.param(s, "w2"), g.param(s, "b2"), 1, 0);
        int loss = g.mse(h, target);
        if (want_grad) g.backward(loss);
        return g.val(loss)[0];
    };
    CHECK(grad_check(f, store) < 1e-4);
}

TEST_CASE("tape linear/softmax/pool ops pass grad_check") {
    ParamStore store;
    Rng rng(17);
    store.add("gates", randn_tensor(rng, {6}, 0.5));
    store.add("w", randn_tensor(rng, {3, 6}, 0.5));
    store.add("b", randn_tensor(rng, {3}, 0.1));
    Tensor input = randn_tensor(rng, {6, 4, 4}, 1.0);
    Tensor target = randn_tensor(rng, {3}, 1.0);

    auto f = [&](ParamStore& s, bool want_grad) {
        ad::Graph g;
        int x = g.leaf(input);
        int gates = g.softmax(g.param(s, "gates"));
        x = g.channel_scale(x, gates);
        int pooled = g.global_avg_pool(g.upsample_nearest2(x));
        int y = g.linear(pooled, g.param(s, "w"), g.param(s, "b"));
        int loss = g.mse(y, target);
        if (want_grad) g.backward(loss);
        return g.val(loss)[0];
    };
    CHECK(grad_check(f, store) < 1e-5);
}

TEST_CASE("frozen entries are skipped by the optimizer and the tape") {
    ParamStore store;
    Rng rng(18);
    store.add("free", randn_tensor(rng, {4}, 1.0));
    store.add("ice", randn_tensor(rng, {4}, 1.0), /*frozen=*/true);
    Tensor ice_before = store.value("ice");

    ad::Graph g;
    int a = g.param(store, "free");
    int b = g.param(store, "ice");
    int loss = g.mse(g.add(a, b), Tensor({4}, 0.0));
    g.backward(loss);

    double ice_grad = 0.0, free_grad = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        ice_grad += std::abs(store.entry("ice").grad[i]);
        free_grad += std::abs(store.entry("free").grad[i]);
    }
    CHECK(ice_grad == 0.0);
    CHECK(free_grad > 0.0);

    AdamWConfig cfg;
    cfg.lr = 0.1;
    adamw_step(store, cfg);
    for (size_t i = 0; i < 4; ++i) CHECK(store.value("ice")[i] == ice_before[i]);
}

TEST_CASE("adamw with lr 0 leaves parameters bitwise unchanged") {
    ParamStore store;
    Rng rng(19);
    store.add("w", randn_tensor(rng, {16}, 1.0));
    Tensor before = store.value("w");
    for (size_t i = 0; i < 16; ++i) store.entry("w").grad[i] = rng.normal();
    AdamWConfig cfg;
    cfg.lr = 0.0;
    adamw_step(store, cfg);
    for (size_t i = 0; i < 16; ++i) CHECK(store.value("w")[i] == before[i]);
}

TEST_SUITE_END();
