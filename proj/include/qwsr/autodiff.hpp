#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qwsr/tensor.hpp"

namespace qwsr::ad {

// Reverse-mode tape over the small op set the models need: conv, linear,
// group norm, elementwise, pooling/resampling, and the SFT affine. Values
// are computed eagerly as ops are recorded; backward() walks the tape in
// reverse and accumulates parameter gradients into the bound ParamStore.
//
// Feature maps are CHW tensors; vectors are 1-D tensors.
class Graph {
public:
    // Constant input; no gradient is propagated into it.
    int leaf(Tensor t);
    // Parameter leaf bound to a store entry. Frozen entries behave like
    // constants but still pass activations through.
    int param(ParamStore& store, const std::string& name);

    int conv2d(int x, int w, int b, int stride, int pad);
    int linear(int x, int w, int b);
    int group_norm(int x, int gamma, int beta, int group_size);
    int silu(int x);
    int add(int a, int b);
    int mul(int a, int b);
    int add_channel_bias(int x, int bias);
    int channel_scale(int x, int s);
    int concat_ch(int a, int b);
    int take_channels(int x, int from, int count);
    int upsample_nearest2(int x);
    int global_avg_pool(int x);
    int softmax(int x);
    int scale_const(int x, double c);
    int add_const(int x, double c);
    int reshape(int x, std::vector<int> shape);
    // Mean squared error against a constant target; returns a scalar node.
    int mse(int x, const Tensor& target);

    const Tensor& val(int id) const { return nodes_[id].val; }
    size_t num_nodes() const { return nodes_.size(); }

    // Seeds d(node)/d(node) = seed and accumulates into parameter grads.
    void backward(int node, double seed = 1.0);

private:
    struct Node {
        Tensor val;
        Tensor grad;  // lazily sized
        bool needs_grad = false;
        std::function<void(Graph&, int)> bwd;
        ParamStore::Entry* bound = nullptr;
    };

    std::vector<Node> nodes_;

    int push(Tensor val, bool needs_grad, std::function<void(Graph&, int)> bwd);
    Tensor& grad_buf(int id);
    bool wants(int id) const { return nodes_[id].needs_grad; }
    void accum(int id, const Tensor& g);

    friend struct GraphOps;
};

}  // namespace qwsr::ad
