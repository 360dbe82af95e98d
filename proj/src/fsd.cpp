#include "shearsub/fsd.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <cmath>
#include <fstream>

namespace shearsub {

namespace {

namespace fs = std::filesystem;

void require_periodic(const FieldD& c, uint8_t eta) {
    if (c.boundary != Boundary::periodic)
        throw PeriodMismatch("decomposition needs a periodic field");
    if (c.px % 4 != 0 || c.py % 2 != 0)
        throw PeriodMismatch("torus " + std::to_string(c.px) + "x" + std::to_string(c.py) +
                             " is not divisible by the dilation");
    // subsampling along the shear branch wraps (0, py/2) to (-2 py, py)
    if (eta == 1 && (2 * c.py) % c.px != 0)
        throw PeriodMismatch("shear subsampling on torus " + std::to_string(c.px) + "x" +
                             std::to_string(c.py) + " needs px | 2 py");
}

FieldD subtract(const FieldD& a, const FieldD& b) {
    FieldD r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

std::string gamma_tag(const Index2& g) {
    return std::to_string(g[0]) + "-" + std::to_string(g[1]);
}

}  // namespace

std::vector<Index2> detail_offsets() {
    std::vector<Index2> g;
    for (long long y = 0; y < 2; ++y)
        for (long long x = 0; x < 4; ++x)
            if (x || y) g.push_back({x, y});
    return g;
}

AnalyzeResult analyze_step(const FieldD& c, uint8_t eta, const MaskPair& pair) {
    if (!pair.interpolatory) throw NotInterpolatory();
    require_periodic(c, eta);
    IMat2 w = w_gen(eta);

    AnalyzeResult out;
    out.child = FieldD::periodic_zeros(c.px / 4, c.py / 2);
    out.child.eps = c.eps.appended(eta);
    for (long long y = 0; y < out.child.py; ++y)
        for (long long x = 0; x < out.child.px; ++x) {
            Index2 p = w.apply({x, y});
            out.child.ref(x, y) = c.get(p[0], p[1]);
        }

    FieldD residual = subtract(c, step((eta ? pair.a1 : pair.a0), eta, out.child));
    for (const Index2& g : detail_offsets()) {
        FieldD d = FieldD::periodic_zeros(out.child.px, out.child.py);
        d.eps = out.child.eps;
        for (long long y = 0; y < d.py; ++y)
            for (long long x = 0; x < d.px; ++x) {
                Index2 p = w.apply({x, y});
                d.ref(x, y) = residual.get(p[0] + g[0], p[1] + g[1]);
            }
        out.details.emplace(g, std::move(d));
    }
    return out;
}

FieldD analyze_gamma0(const FieldD& c, uint8_t eta, const MaskPair& pair) {
    if (!pair.interpolatory) throw NotInterpolatory();
    require_periodic(c, eta);
    IMat2 w = w_gen(eta);
    FieldD child = FieldD::periodic_zeros(c.px / 4, c.py / 2);
    for (long long y = 0; y < child.py; ++y)
        for (long long x = 0; x < child.px; ++x) {
            Index2 p = w.apply({x, y});
            child.ref(x, y) = c.get(p[0], p[1]);
        }
    FieldD residual = subtract(c, step((eta ? pair.a1 : pair.a0), eta, child));
    FieldD d0 = FieldD::periodic_zeros(child.px, child.py);
    for (long long y = 0; y < d0.py; ++y)
        for (long long x = 0; x < d0.px; ++x) {
            Index2 p = w.apply({x, y});
            d0.ref(x, y) = residual.get(p[0], p[1]);
        }
    return d0;
}

FieldD synthesize_step(const FieldD& child, const std::map<Index2, FieldD>& details, uint8_t eta,
                       const MaskPair& pair) {
    if (!pair.interpolatory) throw NotInterpolatory();
    if (child.boundary != Boundary::periodic)
        throw ShapeMismatch("synthesize_step: child must be periodic");
    if (details.size() != 7) throw ShapeMismatch("synthesize_step: expected 7 detail arrays");
    for (const auto& [g, d] : details)
        if (d.px != child.px || d.py != child.py)
            throw ShapeMismatch("synthesize_step: detail dims differ from child dims");

    IMat2 w = w_gen(eta);
    FieldD c = step((eta ? pair.a1 : pair.a0), eta, child);
    for (const auto& [g, d] : details)
        for (long long y = 0; y < d.py; ++y)
            for (long long x = 0; x < d.px; ++x) {
                Index2 p = w.apply({x, y});
                long long cx = (((p[0] + g[0]) % c.px) + c.px) % c.px;
                long long cy = (((p[1] + g[1]) % c.py) + c.py) % c.py;
                c.ref(cx, cy) += d.ref(x, y);
            }
    // lattice points carry the child samples exactly (interpolation)
    c.eps = child.eps.empty() ? EpsWord{} : child.eps.prefix(child.eps.size() - 1);
    return c;
}

ShearletTree decompose(const FieldD& c, unsigned depth, const MaskPair& pair, const EpsWord* path,
                       bool keep_interior) {
    if (c.boundary != Boundary::periodic)
        throw PeriodMismatch("decompose needs a periodic field");
    long long div = 1;
    for (unsigned k = 0; k < depth; ++k) div *= 4;
    if (c.px % div != 0 || c.py % div != 0)
        throw PeriodMismatch("decompose depth " + std::to_string(depth) + " needs periods "
                             "divisible by " + std::to_string(div));
    if (path && path->size() != depth)
        throw std::invalid_argument("decompose: path length must equal depth");

    ShearletTree tree;
    tree.depth = depth;
    tree.px = c.px;
    tree.py = c.py;
    tree.full = path == nullptr;
    if (path) tree.path = *path;

    std::map<EpsWord, FieldD> level;
    FieldD root = c;
    root.eps = EpsWord{};
    level.emplace(EpsWord{}, std::move(root));
    if (keep_interior) tree.scaling = level;

    for (unsigned k = 0; k < depth; ++k) {
        std::map<EpsWord, FieldD> next;
        for (const auto& [word, field] : level) {
            for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
                if (path && (*path)[k] != eta) continue;
                AnalyzeResult r = analyze_step(field, eta, pair);
                EpsWord cw = word.appended(eta);
                for (auto& [g, d] : r.details) tree.details.emplace(std::make_pair(cw, g), std::move(d));
                if (keep_interior) tree.scaling.emplace(cw, r.child);
                next.emplace(cw, std::move(r.child));
            }
        }
        level = std::move(next);
    }
    if (!keep_interior)
        for (auto& [word, field] : level) tree.scaling.emplace(word, std::move(field));
    return tree;
}

FieldD reconstruct_node(const ShearletTree& tree, const EpsWord& node, const MaskPair& pair) {
    auto it = tree.scaling.find(node);
    if (it != tree.scaling.end()) return it->second;
    for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
        EpsWord cw = node.appended(eta);
        if (tree.details.find({cw, {1, 0}}) == tree.details.end()) continue;
        std::map<Index2, FieldD> details;
        for (const Index2& g : detail_offsets()) {
            auto dit = tree.details.find({cw, g});
            if (dit == tree.details.end())
                throw MissingNode("tree is missing detail " + gamma_tag(g) + " at node " + cw.str());
            details.emplace(g, dit->second);
        }
        return synthesize_step(reconstruct_node(tree, cw, pair), details, eta, pair);
    }
    throw MissingNode("tree has no data at or below node " + node.str());
}

FieldD reconstruct(const ShearletTree& tree, const EpsWord& path, const MaskPair& pair) {
    FieldD c = reconstruct_node(tree, path, pair);
    for (size_t k = path.size(); k > 0; --k) {
        EpsWord node = path.prefix(k);
        std::map<Index2, FieldD> details;
        for (const Index2& g : detail_offsets()) {
            auto dit = tree.details.find({node, g});
            if (dit == tree.details.end())
                throw MissingNode("tree is missing detail " + gamma_tag(g) + " at node " +
                                  node.str());
            details.emplace(g, dit->second);
        }
        c = synthesize_step(c, details, path[k - 1], pair);
    }
    return c;
}

FieldF detail_energy_map(const ShearletTree& tree, const EpsWord& node) {
    auto first = tree.details.find({node, {1, 0}});
    if (first == tree.details.end())
        throw MissingNode("no detail arrays at node " + node.str());
    const FieldD& d0 = first->second;
    FieldF m = FieldF::periodic_zeros(d0.px, d0.py);
    m.eps = node;
    for (const Index2& g : detail_offsets()) {
        auto it = tree.details.find({node, g});
        if (it == tree.details.end())
            throw MissingNode("tree is missing detail " + gamma_tag(g) + " at node " + node.str());
        for (size_t i = 0; i < m.values.size(); ++i) {
            double v = std::abs(it->second.values[i].to_double());
            if (v > m.values[i]) m.values[i] = v;
        }
    }
    return m;
}

void write_tree(const std::string& dir, const ShearletTree& tree) {
    fs::create_directories(dir);
    nlohmann::json j;
    j["depth"] = tree.depth;
    j["dims"] = {tree.px, tree.py};
    j["boundary"] = "periodic";
    j["branches"] = tree.full ? std::string("full") : tree.path.str();
    j["files"] = nlohmann::json::array();

    for (const auto& [word, field] : tree.scaling) {
        std::string name = "c_" + word.str() + ".csv";
        write_csv_file((fs::path(dir) / name).string(), field);
        j["files"].push_back(name);
    }
    for (const auto& [key, field] : tree.details) {
        std::string name = "d_" + key.first.str() + "_" + gamma_tag(key.second) + ".csv";
        write_csv_file((fs::path(dir) / name).string(), field);
        j["files"].push_back(name);
    }
    std::ofstream os(fs::path(dir) / "manifest.json");
    if (!os) throw std::runtime_error("cannot write manifest in " + dir);
    os << j.dump(2) << "\n";
}

ShearletTree read_tree(const std::string& dir) {
    std::ifstream is(fs::path(dir) / "manifest.json");
    if (!is) throw std::runtime_error("cannot open manifest in " + dir);
    nlohmann::json j = nlohmann::json::parse(is);

    ShearletTree tree;
    tree.depth = j.at("depth").get<unsigned>();
    tree.px = j.at("dims")[0].get<long long>();
    tree.py = j.at("dims")[1].get<long long>();
    std::string branches = j.at("branches").get<std::string>();
    tree.full = branches == "full";
    if (!tree.full) tree.path = EpsWord::from_string(branches);

    for (const auto& fn : j.at("files")) {
        std::string name = fn.get<std::string>();
        FieldD f = read_csv_file_dyadic((fs::path(dir) / name).string());
        if (name.rfind("c_", 0) == 0) {
            std::string bits = name.substr(2, name.size() - 6);
            tree.scaling.emplace(EpsWord::from_string(bits), std::move(f));
        } else if (name.rfind("d_", 0) == 0) {
            std::string stem = name.substr(2, name.size() - 6);
            auto us = stem.rfind('_');
            auto dash = stem.rfind('-');
            EpsWord word = EpsWord::from_string(stem.substr(0, us));
            Index2 g = {std::stoll(stem.substr(us + 1, dash - us - 1)),
                        std::stoll(stem.substr(dash + 1))};
            tree.details.emplace(std::make_pair(word, g), std::move(f));
        } else {
            throw std::runtime_error("unexpected file name in manifest: " + name);
        }
    }
    return tree;
}

}  // namespace shearsub
