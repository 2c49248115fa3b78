#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qwsr/common.hpp"

namespace qwsr {

class Rng;

// Dense double-precision tensor, row-major.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        v.assign(numel_of(shape), 0.0);
    }
    Tensor(std::vector<int> s, double fill) : shape(std::move(s)) {
        v.assign(numel_of(shape), fill);
    }

    static size_t numel_of(const std::vector<int>& s) {
        size_t n = 1;
        for (int d : s) {
            require(d > 0, "Tensor: dims must be positive");
            n *= static_cast<size_t>(d);
        }
        return n;
    }

    size_t numel() const { return v.size(); }
    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    double& operator[](size_t i) { return v[i]; }
    double operator[](size_t i) const { return v[i]; }

    // CHW accessors for 3-d feature maps.
    double& at3(int c, int y, int x) {
        return v[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x];
    }
    double at3(int c, int y, int x) const {
        return v[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x];
    }
};

// Named trainable tensors with gradient slots and AdamW moment buffers.
// Frozen entries never change under optimizer steps.
class ParamStore {
public:
    struct Entry {
        Tensor value;
        Tensor grad;
        Tensor m;  // first moment
        Tensor s;  // second moment
        bool frozen = false;
    };

    Entry& add(const std::string& name, Tensor init, bool frozen = false);
    bool has(const std::string& name) const { return entries_.count(name) != 0; }
    Entry& entry(const std::string& name);
    const Entry& entry(const std::string& name) const;
    Tensor& value(const std::string& name) { return entry(name).value; }
    const Tensor& value(const std::string& name) const { return entry(name).value; }

    void zero_grads();
    void freeze_all(bool frozen = true);
    bool all_frozen() const;

    size_t total_params() const;
    uint64_t content_hash() const;

    int64_t step_count = 0;

    std::map<std::string, Entry>& entries() { return entries_; }
    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

// AdamW with decoupled weight decay. lr = 0 leaves parameters bitwise
// unchanged; frozen entries are skipped entirely.
struct AdamWConfig {
    double lr = 5e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;
};

void adamw_step(ParamStore& store, const AdamWConfig& cfg);

// Kaiming-style init helpers, deterministic under the given rng.
Tensor randn_tensor(Rng& rng, std::vector<int> shape, double sigma);

}  // namespace qwsr
