#include "qwsr/autodiff.hpp"

#include <algorithm>
#include <cmath>

namespace qwsr::ad {

namespace {

// C[M,N] += A[M,K] * B[K,N]
void matmul_nn(double* C, const double* A, const double* B, int M, int K, int N) {
    for (int i = 0; i < M; ++i) {
        double* c = C + static_cast<size_t>(i) * N;
        const double* a = A + static_cast<size_t>(i) * K;
        for (int k = 0; k < K; ++k) {
            const double f = a[k];
            const double* b = B + static_cast<size_t>(k) * N;
            for (int j = 0; j < N; ++j) c[j] += f * b[j];
        }
    }
}

// C[K,N] += A[M,K]^T * B[M,N]
void matmul_at_b(double* C, const double* A, const double* B, int M, int K, int N) {
    for (int m = 0; m < M; ++m) {
        const double* a = A + static_cast<size_t>(m) * K;
        const double* b = B + static_cast<size_t>(m) * N;
        for (int k = 0; k < K; ++k) {
            const double f = a[k];
            double* c = C + static_cast<size_t>(k) * N;
            for (int j = 0; j < N; ++j) c[j] += f * b[j];
        }
    }
}

// C[M,K] += A[M,N] * B[K,N]^T
void matmul_a_bt(double* C, const double* A, const double* B, int M, int K, int N) {
    for (int m = 0; m < M; ++m) {
        const double* a = A + static_cast<size_t>(m) * N;
        double* c = C + static_cast<size_t>(m) * K;
        for (int k = 0; k < K; ++k) {
            const double* b = B + static_cast<size_t>(k) * N;
            double acc = 0.0;
            for (int j = 0; j < N; ++j) acc += a[j] * b[j];
            c[k] += acc;
        }
    }
}

void im2col(const Tensor& x, int kh, int kw, int stride, int pad,
            int ho, int wo, std::vector<double>& col) {
    const int C = x.shape[0], H = x.shape[1], W = x.shape[2];
    const int K = C * kh * kw, N = ho * wo;
    col.assign(static_cast<size_t>(K) * N, 0.0);
    for (int c = 0; c < C; ++c) {
        for (int u = 0; u < kh; ++u) {
            for (int v = 0; v < kw; ++v) {
                double* row = col.data() + (static_cast<size_t>(c) * kh * kw +
                                            static_cast<size_t>(u) * kw + v) * N;
                for (int oy = 0; oy < ho; ++oy) {
                    const int sy = oy * stride + u - pad;
                    if (sy < 0 || sy >= H) continue;
                    const double* src = &x.v[(static_cast<size_t>(c) * H + sy) * W];
                    double* dst = row + static_cast<size_t>(oy) * wo;
                    for (int ox = 0; ox < wo; ++ox) {
                        const int sx = ox * stride + v - pad;
                        if (sx >= 0 && sx < W) dst[ox] = src[sx];
                    }
                }
            }
        }
    }
}

void col2im_add(const std::vector<double>& col, int C, int H, int W, int kh, int kw,
                int stride, int pad, int ho, int wo, Tensor& dx) {
    const int N = ho * wo;
    for (int c = 0; c < C; ++c) {
        for (int u = 0; u < kh; ++u) {
            for (int v = 0; v < kw; ++v) {
                const double* row = col.data() + (static_cast<size_t>(c) * kh * kw +
                                                  static_cast<size_t>(u) * kw + v) * N;
                for (int oy = 0; oy < ho; ++oy) {
                    const int sy = oy * stride + u - pad;
                    if (sy < 0 || sy >= H) continue;
                    double* dst = &dx.v[(static_cast<size_t>(c) * H + sy) * W];
                    const double* src = row + static_cast<size_t>(oy) * wo;
                    for (int ox = 0; ox < wo; ++ox) {
                        const int sx = ox * stride + v - pad;
                        if (sx >= 0 && sx < W) dst[sx] += src[ox];
                    }
                }
            }
        }
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

int Graph::push(Tensor val, bool needs_grad, std::function<void(Graph&, int)> bwd) {
    Node n;
    n.val = std::move(val);
    n.needs_grad = needs_grad;
    n.bwd = std::move(bwd);
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

Tensor& Graph::grad_buf(int id) {
    Node& n = nodes_[id];
    if (n.grad.v.empty()) n.grad = Tensor(n.val.shape);
    return n.grad;
}

void Graph::accum(int id, const Tensor& g) {
    Tensor& dst = grad_buf(id);
    for (size_t i = 0; i < g.numel(); ++i) dst[i] += g[i];
}

int Graph::leaf(Tensor t) { return push(std::move(t), false, nullptr); }

int Graph::param(ParamStore& store, const std::string& name) {
    auto& e = store.entry(name);
    int id = push(e.value, !e.frozen, nullptr);
    nodes_[id].bound = e.frozen ? nullptr : &e;
    return id;
}

void Graph::backward(int node, double seed) {
    if (!nodes_[node].needs_grad) return;
    Tensor& g = grad_buf(node);
    for (size_t i = 0; i < g.numel(); ++i) g[i] += seed;
    for (int i = node; i >= 0; --i) {
        Node& n = nodes_[i];
        if (!n.needs_grad || n.grad.v.empty()) continue;
        if (n.bwd) n.bwd(*this, i);
        if (n.bound) {
            for (size_t k = 0; k < n.grad.numel(); ++k) n.bound->grad[k] += n.grad[k];
        }
    }
}

int Graph::conv2d(int x, int w, int b, int stride, int pad) {
    const Tensor& xv = nodes_[x].val;
    const Tensor& wv = nodes_[w].val;
    const Tensor& bv = nodes_[b].val;
    require(xv.shape.size() == 3 && wv.shape.size() == 4, "conv2d: bad ranks");
    const int Ci = xv.shape[0], H = xv.shape[1], W = xv.shape[2];
    const int Co = wv.shape[0], kh = wv.shape[2], kw = wv.shape[3];
    require(wv.shape[1] == Ci, "conv2d: channel mismatch");
    require(bv.shape.size() == 1 && bv.shape[0] == Co, "conv2d: bad bias");
    const int ho = (H + 2 * pad - kh) / stride + 1;
    const int wo = (W + 2 * pad - kw) / stride + 1;
    require(ho > 0 && wo > 0, "conv2d: output would be empty");
    const int K = Ci * kh * kw, N = ho * wo;

    auto col = std::make_shared<std::vector<double>>();
    im2col(xv, kh, kw, stride, pad, ho, wo, *col);

    Tensor y({Co, ho, wo});
    for (int o = 0; o < Co; ++o)
        std::fill_n(y.v.begin() + static_cast<size_t>(o) * N, N, bv[o]);
    matmul_nn(y.v.data(), wv.v.data(), col->data(), Co, K, N);

    bool ng = wants(x) || wants(w) || wants(b);
    return push(std::move(y), ng, [x, w, b, stride, pad, ho, wo, col](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& wv = g.nodes_[w].val;
        const int Co = wv.shape[0], Ci = wv.shape[1], kh = wv.shape[2], kw = wv.shape[3];
        const int K = Ci * kh * kw, N = ho * wo;
        if (g.wants(b)) {
            Tensor& db = g.grad_buf(b);
            for (int o = 0; o < Co; ++o) {
                double acc = 0.0;
                const double* p = dy.v.data() + static_cast<size_t>(o) * N;
                for (int n = 0; n < N; ++n) acc += p[n];
                db[o] += acc;
            }
        }
        if (g.wants(w)) {
            Tensor& dw = g.grad_buf(w);
            matmul_a_bt(dw.v.data(), dy.v.data(), col->data(), Co, K, N);
        }
        if (g.wants(x)) {
            const Tensor& xv = g.nodes_[x].val;
            std::vector<double> dcol(static_cast<size_t>(K) * N, 0.0);
            matmul_at_b(dcol.data(), wv.v.data(), dy.v.data(), Co, K, N);
            col2im_add(dcol, xv.shape[0], xv.shape[1], xv.shape[2], kh, kw,
                       stride, pad, ho, wo, g.grad_buf(x));
        }
    });
}

int Graph::linear(int x, int w, int b) {
    const Tensor& xv = nodes_[x].val;
    const Tensor& wv = nodes_[w].val;
    const Tensor& bv = nodes_[b].val;
    require(xv.shape.size() == 1 && wv.shape.size() == 2, "linear: bad ranks");
    const int N = xv.shape[0], M = wv.shape[0];
    require(wv.shape[1] == N && bv.shape[0] == M, "linear: shape mismatch");
    Tensor y({M});
    for (int m = 0; m < M; ++m) {
        const double* row = wv.v.data() + static_cast<size_t>(m) * N;
        double acc = bv[m];
        for (int n = 0; n < N; ++n) acc += row[n] * xv[n];
        y[m] = acc;
    }
    bool ng = wants(x) || wants(w) || wants(b);
    return push(std::move(y), ng, [x, w, b](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& xv = g.nodes_[x].val;
        const Tensor& wv = g.nodes_[w].val;
        const int M = wv.shape[0], N = wv.shape[1];
        if (g.wants(b)) {
            Tensor& db = g.grad_buf(b);
            for (int m = 0; m < M; ++m) db[m] += dy[m];
        }
        if (g.wants(w)) {
            Tensor& dw = g.grad_buf(w);
            for (int m = 0; m < M; ++m) {
                double* row = dw.v.data() + static_cast<size_t>(m) * N;
                const double f = dy[m];
                for (int n = 0; n < N; ++n) row[n] += f * xv[n];
            }
        }
        if (g.wants(x)) {
            Tensor& dx = g.grad_buf(x);
            for (int m = 0; m < M; ++m) {
                const double* row = wv.v.data() + static_cast<size_t>(m) * N;
                const double f = dy[m];
                for (int n = 0; n < N; ++n) dx[n] += f * row[n];
            }
        }
    });
}

int Graph::group_norm(int x, int gamma, int beta, int group_size) {
    const Tensor& xv = nodes_[x].val;
    require(xv.shape.size() == 3, "group_norm: expects CHW");
    const int C = xv.shape[0], H = xv.shape[1], W = xv.shape[2];
    require(C % group_size == 0, "group_norm: channels not divisible by group size");
    const int G = C / group_size;
    const int HW = H * W;
    const double eps = 1e-5;
    const Tensor& gv = nodes_[gamma].val;
    const Tensor& bv = nodes_[beta].val;
    require(gv.shape[0] == C && bv.shape[0] == C, "group_norm: affine shape mismatch");

    auto mean = std::make_shared<std::vector<double>>(G, 0.0);
    auto ivar = std::make_shared<std::vector<double>>(G, 0.0);
    Tensor y({C, H, W});
    const size_t gsz = static_cast<size_t>(group_size) * HW;
    for (int g = 0; g < G; ++g) {
        const double* src = xv.v.data() + g * gsz;
        double mu = 0.0;
        for (size_t i = 0; i < gsz; ++i) mu += src[i];
        mu /= static_cast<double>(gsz);
        double var = 0.0;
        for (size_t i = 0; i < gsz; ++i) {
            double d = src[i] - mu;
            var += d * d;
        }
        var /= static_cast<double>(gsz);
        (*mean)[g] = mu;
        (*ivar)[g] = 1.0 / std::sqrt(var + eps);
    }
    for (int c = 0; c < C; ++c) {
        const int g = c / group_size;
        const double mu = (*mean)[g], iv = (*ivar)[g];
        const double ga = gv[c], be = bv[c];
        const double* src = xv.v.data() + static_cast<size_t>(c) * HW;
        double* dst = y.v.data() + static_cast<size_t>(c) * HW;
        for (int i = 0; i < HW; ++i) dst[i] = ga * (src[i] - mu) * iv + be;
    }

    bool ng = wants(x) || wants(gamma) || wants(beta);
    return push(std::move(y), ng,
                [x, gamma, beta, group_size, mean, ivar](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& xv = g.nodes_[x].val;
        const Tensor& gv = g.nodes_[gamma].val;
        const int C = xv.shape[0], HW = xv.shape[1] * xv.shape[2];
        const int G = C / group_size;
        const size_t gsz = static_cast<size_t>(group_size) * HW;
        if (g.wants(gamma) || g.wants(beta)) {
            for (int c = 0; c < C; ++c) {
                const int gr = c / group_size;
                const double mu = (*mean)[gr], iv = (*ivar)[gr];
                const double* xs = xv.v.data() + static_cast<size_t>(c) * HW;
                const double* ds = dy.v.data() + static_cast<size_t>(c) * HW;
                double dga = 0.0, dbe = 0.0;
                for (int i = 0; i < HW; ++i) {
                    dga += ds[i] * (xs[i] - mu) * iv;
                    dbe += ds[i];
                }
                if (g.wants(gamma)) g.grad_buf(gamma)[c] += dga;
                if (g.wants(beta)) g.grad_buf(beta)[c] += dbe;
            }
        }
        if (g.wants(x)) {
            Tensor& dx = g.grad_buf(x);
            for (int gr = 0; gr < G; ++gr) {
                const double mu = (*mean)[gr], iv = (*ivar)[gr];
                const double* xs = xv.v.data() + gr * gsz;
                const double* ds = dy.v.data() + gr * gsz;
                // dxhat folded with per-channel gamma
                double sum_dxhat = 0.0, sum_dxhat_xc = 0.0;
                for (size_t i = 0; i < gsz; ++i) {
                    const int c = gr * group_size + static_cast<int>(i) / HW;
                    double dxh = ds[i] * gv[c];
                    sum_dxhat += dxh;
                    sum_dxhat_xc += dxh * (xs[i] - mu);
                }
                const double n = static_cast<double>(gsz);
                double* dd = dx.v.data() + gr * gsz;
                for (size_t i = 0; i < gsz; ++i) {
                    const int c = gr * group_size + static_cast<int>(i) / HW;
                    double dxh = ds[i] * gv[c];
                    double xc = xs[i] - mu;
                    dd[i] += iv * (dxh - sum_dxhat / n - xc * iv * iv * sum_dxhat_xc / n);
                }
            }
        }
    });
}

int Graph::silu(int x) {
    const Tensor& xv = nodes_[x].val;
    Tensor y(xv.shape);
    for (size_t i = 0; i < xv.numel(); ++i) y[i] = xv[i] * sigmoid(xv[i]);
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& xv = g.nodes_[x].val;
        Tensor& dx = g.grad_buf(x);
        for (size_t i = 0; i < xv.numel(); ++i) {
            double s = sigmoid(xv[i]);
            dx[i] += dy[i] * s * (1.0 + xv[i] * (1.0 - s));
        }
    });
}

int Graph::add(int a, int b) {
    const Tensor& av = nodes_[a].val;
    const Tensor& bv = nodes_[b].val;
    require(av.same_shape(bv), "add: shape mismatch");
    Tensor y(av.shape);
    for (size_t i = 0; i < av.numel(); ++i) y[i] = av[i] + bv[i];
    return push(std::move(y), wants(a) || wants(b), [a, b](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        if (g.wants(a)) g.accum(a, dy);
        if (g.wants(b)) g.accum(b, dy);
    });
}

int Graph::mul(int a, int b) {
    const Tensor& av = nodes_[a].val;
    const Tensor& bv = nodes_[b].val;
    require(av.same_shape(bv), "mul: shape mismatch");
    Tensor y(av.shape);
    for (size_t i = 0; i < av.numel(); ++i) y[i] = av[i] * bv[i];
    return push(std::move(y), wants(a) || wants(b), [a, b](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        if (g.wants(a)) {
            Tensor& da = g.grad_buf(a);
            const Tensor& bv = g.nodes_[b].val;
            for (size_t i = 0; i < dy.numel(); ++i) da[i] += dy[i] * bv[i];
        }
        if (g.wants(b)) {
            Tensor& db = g.grad_buf(b);
            const Tensor& av = g.nodes_[a].val;
            for (size_t i = 0; i < dy.numel(); ++i) db[i] += dy[i] * av[i];
        }
    });
}

int Graph::add_channel_bias(int x, int bias) {
    const Tensor& xv = nodes_[x].val;
    const Tensor& bv = nodes_[bias].val;
    require(xv.shape.size() == 3 && bv.shape.size() == 1 && bv.shape[0] == xv.shape[0],
            "add_channel_bias: shape mismatch");
    const int C = xv.shape[0], HW = xv.shape[1] * xv.shape[2];
    Tensor y(xv.shape);
    for (int c = 0; c < C; ++c) {
        const double* src = xv.v.data() + static_cast<size_t>(c) * HW;
        double* dst = y.v.data() + static_cast<size_t>(c) * HW;
        for (int i = 0; i < HW; ++i) dst[i] = src[i] + bv[c];
    }
    return push(std::move(y), wants(x) || wants(bias), [x, bias](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const int C = dy.shape[0], HW = dy.shape[1] * dy.shape[2];
        if (g.wants(x)) g.accum(x, dy);
        if (g.wants(bias)) {
            Tensor& db = g.grad_buf(bias);
            for (int c = 0; c < C; ++c) {
                const double* p = dy.v.data() + static_cast<size_t>(c) * HW;
                double acc = 0.0;
                for (int i = 0; i < HW; ++i) acc += p[i];
                db[c] += acc;
            }
        }
    });
}

int Graph::channel_scale(int x, int s) {
    const Tensor& xv = nodes_[x].val;
    const Tensor& sv = nodes_[s].val;
    require(xv.shape.size() == 3 && sv.shape.size() == 1 && sv.shape[0] == xv.shape[0],
            "channel_scale: shape mismatch");
    const int C = xv.shape[0], HW = xv.shape[1] * xv.shape[2];
    Tensor y(xv.shape);
    for (int c = 0; c < C; ++c) {
        const double* src = xv.v.data() + static_cast<size_t>(c) * HW;
        double* dst = y.v.data() + static_cast<size_t>(c) * HW;
        for (int i = 0; i < HW; ++i) dst[i] = src[i] * sv[c];
    }
    return push(std::move(y), wants(x) || wants(s), [x, s](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& xv = g.nodes_[x].val;
        const Tensor& sv = g.nodes_[s].val;
        const int C = xv.shape[0], HW = xv.shape[1] * xv.shape[2];
        if (g.wants(x)) {
            Tensor& dx = g.grad_buf(x);
            for (int c = 0; c < C; ++c) {
                const double f = sv[c];
                const double* p = dy.v.data() + static_cast<size_t>(c) * HW;
                double* q = dx.v.data() + static_cast<size_t>(c) * HW;
                for (int i = 0; i < HW; ++i) q[i] += f * p[i];
            }
        }
        if (g.wants(s)) {
            Tensor& ds = g.grad_buf(s);
            for (int c = 0; c < C; ++c) {
                const double* p = dy.v.data() + static_cast<size_t>(c) * HW;
                const double* xs = xv.v.data() + static_cast<size_t>(c) * HW;
                double acc = 0.0;
                for (int i = 0; i < HW; ++i) acc += p[i] * xs[i];
                ds[c] += acc;
            }
        }
    });
}

int Graph::concat_ch(int a, int b) {
    const Tensor& av = nodes_[a].val;
    const Tensor& bv = nodes_[b].val;
    require(av.shape.size() == 3 && bv.shape.size() == 3 &&
            av.shape[1] == bv.shape[1] && av.shape[2] == bv.shape[2],
            "concat_ch: spatial mismatch");
    const int Ca = av.shape[0], Cb = bv.shape[0];
    Tensor y({Ca + Cb, av.shape[1], av.shape[2]});
    std::copy(av.v.begin(), av.v.end(), y.v.begin());
    std::copy(bv.v.begin(), bv.v.end(), y.v.begin() + av.numel());
    return push(std::move(y), wants(a) || wants(b), [a, b](Graph& g, int self) {
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& av = g.nodes_[a].val;
        if (g.wants(a)) {
            Tensor& da = g.grad_buf(a);
            for (size_t i = 0; i < av.numel(); ++i) da[i] += dy[i];
        }
        if (g.wants(b)) {
            Tensor& db = g.grad_buf(b);
            const size_t off = av.numel();
            for (size_t i = 0; i < db.numel(); ++i) db[i] += dy[off + i];
        }
    });
}

int Graph::take_channels(int x, int from, int count) {
    const Tensor& xv = nodes_[x].val;
    require(xv.shape.size() == 3, "take_channels: expects CHW");
    require(from >= 0 && from + count <= xv.shape[0], "take_channels: range");
    const int HW = xv.shape[1] * xv.shape[2];
    Tensor y({count, xv.shape[1], xv.shape[2]});
    std::copy(xv.v.begin() + static_cast<size_t>(from) * HW,
              xv.v.begin() + static_cast<size_t>(from + count) * HW, y.v.begin());
    return push(std::move(y), wants(x), [x, from, count](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        Tensor& dx = g.grad_buf(x);
        const int HW = dx.shape[1] * dx.shape[2];
        double* dst = dx.v.data() + static_cast<size_t>(from) * HW;
        for (size_t i = 0; i < dy.numel(); ++i) dst[i] += dy[i];
    });
}

int Graph::upsample_nearest2(int x) {
    const Tensor& xv = nodes_[x].val;
    require(xv.shape.size() == 3, "upsample_nearest2: expects CHW");
    const int C = xv.shape[0], H = xv.shape[1], W = xv.shape[2];
    Tensor y({C, 2 * H, 2 * W});
    for (int c = 0; c < C; ++c)
        for (int yx = 0; yx < 2 * H; ++yx)
            for (int xx = 0; xx < 2 * W; ++xx)
                y.at3(c, yx, xx) = xv.at3(c, yx / 2, xx / 2);
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        Tensor& dx = g.grad_buf(x);
        const int C = dx.shape[0], H = dx.shape[1], W = dx.shape[2];
        for (int c = 0; c < C; ++c)
            for (int yy = 0; yy < 2 * H; ++yy)
                for (int xx = 0; xx < 2 * W; ++xx)
                    dx.at3(c, yy / 2, xx / 2) += dy.at3(c, yy, xx);
    });
}

int Graph::global_avg_pool(int x) {
    const Tensor& xv = nodes_[x].val;
    require(xv.shape.size() == 3, "global_avg_pool: expects CHW");
    const int C = xv.shape[0], HW = xv.shape[1] * xv.shape[2];
    Tensor y({C});
    for (int c = 0; c < C; ++c) {
        const double* p = xv.v.data() + static_cast<size_t>(c) * HW;
        double acc = 0.0;
        for (int i = 0; i < HW; ++i) acc += p[i];
        y[c] = acc / HW;
    }
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        Tensor& dx = g.grad_buf(x);
        const int C = dx.shape[0], HW = dx.shape[1] * dx.shape[2];
        for (int c = 0; c < C; ++c) {
            const double f = dy[c] / HW;
            double* q = dx.v.data() + static_cast<size_t>(c) * HW;
            for (int i = 0; i < HW; ++i) q[i] += f;
        }
    });
}

int Graph::softmax(int x) {
    const Tensor& xv = nodes_[x].val;
    require(xv.shape.size() == 1, "softmax: expects a vector");
    const int N = xv.shape[0];
    Tensor y({N});
    double mx = xv[0];
    for (int i = 1; i < N; ++i) mx = std::max(mx, xv[i]);
    double z = 0.0;
    for (int i = 0; i < N; ++i) {
        y[i] = std::exp(xv[i] - mx);
        z += y[i];
    }
    for (int i = 0; i < N; ++i) y[i] /= z;
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        const Tensor& s = g.nodes_[self].val;
        Tensor& dx = g.grad_buf(x);
        const int N = s.shape[0];
        double dot = 0.0;
        for (int i = 0; i < N; ++i) dot += dy[i] * s[i];
        for (int i = 0; i < N; ++i) dx[i] += s[i] * (dy[i] - dot);
    });
}

int Graph::scale_const(int x, double c) {
    const Tensor& xv = nodes_[x].val;
    Tensor y(xv.shape);
    for (size_t i = 0; i < xv.numel(); ++i) y[i] = xv[i] * c;
    return push(std::move(y), wants(x), [x, c](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        Tensor& dx = g.grad_buf(x);
        for (size_t i = 0; i < dy.numel(); ++i) dx[i] += dy[i] * c;
    });
}

int Graph::add_const(int x, double c) {
    const Tensor& xv = nodes_[x].val;
    Tensor y(xv.shape);
    for (size_t i = 0; i < xv.numel(); ++i) y[i] = xv[i] + c;
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (g.wants(x)) g.accum(x, g.nodes_[self].grad);
    });
}

int Graph::reshape(int x, std::vector<int> shape) {
    const Tensor& xv = nodes_[x].val;
    require(Tensor::numel_of(shape) == xv.numel(), "reshape: element count mismatch");
    Tensor y(shape);
    y.v = xv.v;
    return push(std::move(y), wants(x), [x](Graph& g, int self) {
        if (!g.wants(x)) return;
        const Tensor& dy = g.nodes_[self].grad;
        Tensor& dx = g.grad_buf(x);
        for (size_t i = 0; i < dy.numel(); ++i) dx[i] += dy[i];
    });
}

int Graph::mse(int x, const Tensor& target) {
    const Tensor& xv = nodes_[x].val;
    require(xv.same_shape(target), "mse: shape mismatch");
    const size_t n = xv.numel();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double d = xv[i] - target[i];
        acc += d * d;
    }
    Tensor y({1});
    y[0] = acc / static_cast<double>(n);
    auto t = std::make_shared<Tensor>(target);
    return push(std::move(y), wants(x), [x, t](Graph& g, int self) {
        if (!g.wants(x)) return;
        const double seed = g.nodes_[self].grad[0];
        const Tensor& xv = g.nodes_[x].val;
        Tensor& dx = g.grad_buf(x);
        const double f = 2.0 * seed / static_cast<double>(xv.numel());
        for (size_t i = 0; i < xv.numel(); ++i) dx[i] += f * (xv[i] - (*t)[i]);
    });
}

}  // namespace qwsr::ad
