#include "shearsub/dense.hpp"

#include <algorithm>

namespace shearsub {

namespace {

template <typename Terms, typename Pick>
DenseGrid densify_terms(const Terms& terms, int rows, int cols, Pick pick) {
    long long x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    unsigned scale = 0;
    bool first = true;
    for (const auto& [e, m] : terms) {
        if (first) {
            x0 = x1 = e[0];
            y0 = y1 = e[1];
            first = false;
        }
        x0 = std::min(x0, e[0]);
        x1 = std::max(x1, e[0]);
        y0 = std::min(y0, e[1]);
        y1 = std::max(y1, e[1]);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) scale = std::max(scale, pick(m, r, c).log2den());
    }
    DenseGrid g = DenseGrid::make(x0, y0, x1 - x0 + 1, y1 - y0 + 1, rows, cols, scale);
    for (const auto& [e, m] : terms)
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                Dyadic d = pick(m, r, c);
                auto num = static_cast<Int128>(static_cast<long long>(d.num()));
                g.v[g.cell(e[0], e[1]) + r * cols + c] = num << (scale - d.log2den());
            }
    return g;
}

}  // namespace

BigInt to_bigint(Int128 v) {
    bool neg = v < 0;
    auto u = static_cast<unsigned __int128>(neg ? -v : v);
    BigInt r = static_cast<unsigned long long>(u >> 64);
    r <<= 64;
    r += static_cast<unsigned long long>(u);
    return neg ? BigInt(-r) : r;
}

DenseGrid DenseGrid::make(long long ox, long long oy, long long nx, long long ny, int rows,
                          int cols, unsigned scale) {
    DenseGrid g;
    g.ox = ox;
    g.oy = oy;
    g.nx = nx;
    g.ny = ny;
    g.rows = rows;
    g.cols = cols;
    g.scale = scale;
    g.v.assign(static_cast<size_t>(nx * ny) * rows * cols, 0);
    return g;
}

DenseGrid densify(const LaurentPoly& a) {
    return densify_terms(a.terms(), 1, 1, [](const Dyadic& d, int, int) { return d; });
}

DenseGrid densify(const MatrixMask22& m) {
    return densify_terms(m.terms(), 2, 2,
                         [](const DyMat<2, 2>& mm, int r, int c) { return mm.e[r][c]; });
}

DenseGrid densify(const VectorSeq& d) {
    return densify_terms(d.terms(), 2, 1,
                         [](const DyMat<2, 1>& mm, int r, int c) { return mm.e[r][c]; });
}

DenseGrid dense_step(const DenseGrid& b, const IMat2& w, const DenseGrid& d) {
    if (b.cols != d.rows) throw std::invalid_argument("dense_step: shape mismatch");
    long long x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool first = true;
    for (long long cx : {d.ox, d.ox + d.nx - 1})
        for (long long cy : {d.oy, d.oy + d.ny - 1}) {
            Index2 p = w.apply({cx, cy});
            if (first) {
                x0 = x1 = p[0];
                y0 = y1 = p[1];
                first = false;
            }
            x0 = std::min(x0, p[0]);
            x1 = std::max(x1, p[0]);
            y0 = std::min(y0, p[1]);
            y1 = std::max(y1, p[1]);
        }
    DenseGrid out = DenseGrid::make(x0 + b.ox, y0 + b.oy, (x1 - x0) + b.nx, (y1 - y0) + b.ny,
                                    b.rows, d.cols, b.scale + d.scale);
    const int bk = b.cols, oc = d.cols, dch = d.rows * d.cols;
    for (long long dy = d.oy; dy < d.oy + d.ny; ++dy)
        for (long long dx = d.ox; dx < d.ox + d.nx; ++dx) {
            const Int128* dm = &d.v[d.cell(dx, dy)];
            bool nz = false;
            for (int i = 0; i < dch; ++i) nz |= dm[i] != 0;
            if (!nz) continue;
            Index2 p = w.apply({dx, dy});
            for (long long by = b.oy; by < b.oy + b.ny; ++by) {
                const Int128* brow = &b.v[b.cell(b.ox, by)];
                Int128* orow = &out.v[out.cell(p[0] + b.ox, p[1] + by)];
                for (long long i = 0; i < b.nx; ++i)
                    for (int r = 0; r < b.rows; ++r)
                        for (int c = 0; c < oc; ++c) {
                            Int128 acc = 0;
                            for (int k = 0; k < bk; ++k)
                                acc += brow[i * b.rows * bk + r * bk + k] * dm[k * oc + c];
                            orow[i * b.rows * oc + r * oc + c] += acc;
                        }
            }
        }
    return out;
}

DenseGrid dense_difference(const DenseGrid& c) {
    if (c.rows != 1 || c.cols != 1)
        throw std::invalid_argument("dense_difference: scalar grid expected");
    DenseGrid out = DenseGrid::make(c.ox, c.oy, c.nx + 1, c.ny + 1, 2, 1, c.scale);
    for (long long y = c.oy; y < c.oy + c.ny + 1; ++y)
        for (long long x = c.ox; x < c.ox + c.nx + 1; ++x) {
            Int128 here = c.get(x, y, 0, 0);
            out.v[out.cell(x, y) + 0] = c.get(x - 1, y, 0, 0) - here;
            out.v[out.cell(x, y) + 1] = c.get(x, y - 1, 0, 0) - here;
        }
    return out;
}

bool dense_equal(const DenseGrid& a, const DenseGrid& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    unsigned s = std::max(a.scale, b.scale);
    long long x0 = std::min(a.ox, b.ox), x1 = std::max(a.ox + a.nx, b.ox + b.nx);
    long long y0 = std::min(a.oy, b.oy), y1 = std::max(a.oy + a.ny, b.oy + b.ny);
    for (long long y = y0; y < y1; ++y)
        for (long long x = x0; x < x1; ++x)
            for (int r = 0; r < a.rows; ++r)
                for (int c = 0; c < a.cols; ++c)
                    if ((a.get(x, y, r, c) << (s - a.scale)) !=
                        (b.get(x, y, r, c) << (s - b.scale)))
                        return false;
    return true;
}

bool dense_matches(const DenseGrid& g, const LaurentPoly& a) {
    if (g.rows != 1 || g.cols != 1) return false;
    for (long long y = g.oy; y < g.oy + g.ny; ++y)
        for (long long x = g.ox; x < g.ox + g.nx; ++x)
            if (g.value(x, y, 0, 0) != a.at({x, y})) return false;
    for (const auto& [e, c] : a.terms())
        if (!g.in_box(e[0], e[1])) return false;
    return true;
}

}  // namespace shearsub
