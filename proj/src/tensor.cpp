#include "qwsr/tensor.hpp"

#include <cmath>
#include <cstring>

#include "qwsr/rng.hpp"

namespace qwsr {

ParamStore::Entry& ParamStore::add(const std::string& name, Tensor init, bool frozen) {
    require(!has(name), "ParamStore: duplicate entry " + name);
    Entry e;
    e.grad = Tensor(init.shape);
    e.m = Tensor(init.shape);
    e.s = Tensor(init.shape);
    e.value = std::move(init);
    e.frozen = frozen;
    return entries_.emplace(name, std::move(e)).first->second;
}

ParamStore::Entry& ParamStore::entry(const std::string& name) {
    auto it = entries_.find(name);
    require(it != entries_.end(), "ParamStore: missing entry " + name);
    return it->second;
}

const ParamStore::Entry& ParamStore::entry(const std::string& name) const {
    auto it = entries_.find(name);
    require(it != entries_.end(), "ParamStore: missing entry " + name);
    return it->second;
}

void ParamStore::zero_grads() {
    for (auto& [name, e] : entries_)
        std::fill(e.grad.v.begin(), e.grad.v.end(), 0.0);
}

void ParamStore::freeze_all(bool frozen) {
    for (auto& [name, e] : entries_) e.frozen = frozen;
}

bool ParamStore::all_frozen() const {
    for (auto& [name, e] : entries_)
        if (!e.frozen) return false;
    return true;
}

size_t ParamStore::total_params() const {
    size_t n = 0;
    for (auto& [name, e] : entries_) n += e.value.numel();
    return n;
}

uint64_t ParamStore::content_hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (auto& [name, e] : entries_) {
        h = fnv1a_str(name, h);
        for (int d : e.value.shape) h = fnv1a(&d, sizeof(d), h);
        h = fnv1a(e.value.v.data(), e.value.v.size() * sizeof(double), h);
    }
    return h;
}

void adamw_step(ParamStore& store, const AdamWConfig& cfg) {
    store.step_count += 1;
    const double t = static_cast<double>(store.step_count);
    const double bc1 = 1.0 - std::pow(cfg.beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.beta2, t);
    for (auto& [name, e] : store.entries()) {
        if (e.frozen) continue;
        for (size_t i = 0; i < e.value.numel(); ++i) {
            double g = e.grad[i];
            e.m[i] = cfg.beta1 * e.m[i] + (1.0 - cfg.beta1) * g;
            e.s[i] = cfg.beta2 * e.s[i] + (1.0 - cfg.beta2) * g * g;
            double mhat = e.m[i] / bc1;
            double shat = e.s[i] / bc2;
            e.value[i] -= cfg.lr * (mhat / (std::sqrt(shat) + cfg.eps) +
                                    cfg.weight_decay * e.value[i]);
        }
    }
}

Tensor randn_tensor(Rng& rng, std::vector<int> shape, double sigma) {
    Tensor t(std::move(shape));
    rng.fill_normal(t.v, sigma);
    return t;
}

}  // namespace qwsr
