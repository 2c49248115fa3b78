#include "qwsr/qwt.hpp"

#include <array>
#include <cmath>

namespace qwsr {

namespace {

const FilterPair& first_stage(int tree) {
    static const DualTreeBank bank = dual_tree_first_stage();
    return tree == 0 ? bank.tree_a : bank.tree_b;
}

const FilterPair& deeper_stage(int tree) {
    static const DualTreeBank bank = dual_tree_deeper_stage();
    return tree == 0 ? bank.tree_a : bank.tree_b;
}

// One multilevel separable 2D DWT with the tree-specific filter per level.
std::vector<SubbandSet> analyze_tree(const ImageGrid& image, int levels,
                                     int tree_x, int tree_y) {
    std::vector<SubbandSet> pyramid;
    ImageGrid cur = image;
    for (int lv = 1; lv <= levels; ++lv) {
        const FilterPair& fx = (lv == 1) ? first_stage(tree_x) : deeper_stage(tree_x);
        const FilterPair& fy = (lv == 1) ? first_stage(tree_y) : deeper_stage(tree_y);
        SubbandSet s = dwt2d_mixed(cur, fx, fy);
        s.level = lv;
        cur = s.ll;
        pyramid.push_back(std::move(s));
    }
    return pyramid;
}

ImageGrid synth_tree(std::vector<SubbandSet> pyramid, int tree_x, int tree_y) {
    ImageGrid cur = pyramid.back().ll;
    for (int i = static_cast<int>(pyramid.size()) - 1; i >= 0; --i) {
        const int lv = pyramid[i].level;
        const FilterPair& fx = (lv == 1) ? first_stage(tree_x) : deeper_stage(tree_x);
        const FilterPair& fy = (lv == 1) ? first_stage(tree_y) : deeper_stage(tree_y);
        pyramid[i].ll = cur;
        cur = idwt2d_mixed(pyramid[i], fx, fy);
    }
    return cur;
}

// Quaternion components map onto trees as a=(h.h) b=(g.h) c=(h.g) d=(g.g).
constexpr std::array<std::array<int, 2>, 4> kTreeOfComponent = {{
    {0, 0}, {1, 0}, {0, 1}, {1, 1}}};

}  // namespace

QwtDecomposition qwt_forward(const ImageGrid& image, int levels) {
    require(image.channels == 1, "qwt_forward: single-channel input required");
    require(levels >= 1, "qwt_forward: levels must be >= 1");
    require(image.height >= (1 << levels) && image.width >= (1 << levels),
            "qwt_forward: image too small for requested levels");

    std::array<std::vector<SubbandSet>, 4> trees;
    for (int comp = 0; comp < 4; ++comp)
        trees[comp] = analyze_tree(image, levels,
                                   kTreeOfComponent[comp][0], kTreeOfComponent[comp][1]);

    QwtDecomposition d;
    d.levels = levels;
    d.source_h = image.height;
    d.source_w = image.width;
    d.level.resize(levels);
    for (int lv = 0; lv < levels; ++lv) {
        QwtLevel& out = d.level[lv];
        auto assign = [&](QuatGrid& qg, auto pick) {
            qg.a = pick(trees[0][lv]);
            qg.b = pick(trees[1][lv]);
            qg.c = pick(trees[2][lv]);
            qg.d = pick(trees[3][lv]);
        };
        assign(out.phi, [](const SubbandSet& s) { return s.ll; });
        assign(out.psi_h, [](const SubbandSet& s) { return s.lh; });
        assign(out.psi_v, [](const SubbandSet& s) { return s.hl; });
        assign(out.psi_d, [](const SubbandSet& s) { return s.hh; });
    }
    return d;
}

ImageGrid qwt_inverse(const QwtDecomposition& decomp) {
    require(decomp.levels >= 1 && !decomp.level.empty(), "qwt_inverse: empty decomposition");
    ImageGrid acc;
    for (int comp = 0; comp < 4; ++comp) {
        std::vector<SubbandSet> pyramid(decomp.levels);
        int h = decomp.source_h, w = decomp.source_w;
        for (int lv = 0; lv < decomp.levels; ++lv) {
            const QwtLevel& L = decomp.level[lv];
            auto pick = [&](const QuatGrid& qg) -> const ImageGrid& {
                switch (comp) {
                    case 0: return qg.a;
                    case 1: return qg.b;
                    case 2: return qg.c;
                    default: return qg.d;
                }
            };
            SubbandSet& s = pyramid[lv];
            s.level = lv + 1;
            s.source_h = h;
            s.source_w = w;
            s.ll = pick(L.phi);
            s.lh = pick(L.psi_h);
            s.hl = pick(L.psi_v);
            s.hh = pick(L.psi_d);
            require(s.ll.same_shape(s.lh) && s.ll.same_shape(s.hl) && s.ll.same_shape(s.hh),
                    "qwt_inverse: inconsistent sub-band shapes");
            h = s.ll.height;
            w = s.ll.width;
        }
        ImageGrid rec = synth_tree(std::move(pyramid),
                                   kTreeOfComponent[comp][0], kTreeOfComponent[comp][1]);
        if (comp == 0) {
            acc = rec;
        } else {
            for (size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += rec.data[i];
        }
    }
    for (double& v : acc.data) v *= 0.25;
    return acc;
}

ImageGrid qwt_planes(const QwtDecomposition& decomp, int level) {
    require(level >= 1 && level <= decomp.levels, "qwt_planes: level out of range");
    const QwtLevel& L = decomp.level[level - 1];
    std::vector<ImageGrid> planes;
    planes.reserve(16);
    for (const QuatGrid* qg : {&L.phi, &L.psi_h, &L.psi_v, &L.psi_d}) {
        planes.push_back(qg->a);
        planes.push_back(qg->b);
        planes.push_back(qg->c);
        planes.push_back(qg->d);
    }
    return stack_channels(planes);
}

ImageGrid quat_magnitude_map(const QuatGrid& g) {
    ImageGrid out(g.a.height, g.a.width, 1);
    for (size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = std::sqrt(g.a.data[i] * g.a.data[i] + g.b.data[i] * g.b.data[i] +
                                g.c.data[i] * g.c.data[i] + g.d.data[i] * g.d.data[i]);
    }
    return out;
}

ImageGrid quat_phase_map(const QuatGrid& g) {
    ImageGrid out(g.a.height, g.a.width, 3);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            Quaternion q{g.a.at(y, x, 0), g.b.at(y, x, 0), g.c.at(y, x, 0), g.d.at(y, x, 0)};
            if (quat_magnitude(q) <= 0.0) {
                out.at(y, x, 0) = out.at(y, x, 1) = out.at(y, x, 2) = 0.0;
                continue;
            }
            QuatPhase p = quat_phase(q);
            out.at(y, x, 0) = p.phi;
            out.at(y, x, 1) = p.theta;
            out.at(y, x, 2) = p.psi;
        }
    }
    return out;
}

double qwt_detail_magnitude_energy(const QwtDecomposition& decomp) {
    double acc = 0.0;
    for (const QwtLevel& L : decomp.level) {
        for (const QuatGrid* qg : {&L.psi_h, &L.psi_v, &L.psi_d}) {
            acc += sum_squares(qg->a) + sum_squares(qg->b) +
                   sum_squares(qg->c) + sum_squares(qg->d);
        }
    }
    return acc;
}

}  // namespace qwsr
