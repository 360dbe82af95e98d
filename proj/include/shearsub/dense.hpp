#pragma once

#include "shearsub/laurent.hpp"

#include <vector>

namespace shearsub {

/// Dense fixed-point grids over Z^2: every value is a 128-bit integer at a
/// shared power-of-two scale, so grid arithmetic stays exact while avoiding
/// per-entry allocation. Used on bulk symbolic identities (iterated masks,
/// difference schemes) where sparse maps are too slow.
using Int128 = __int128;

BigInt to_bigint(Int128 v);

struct DenseGrid {
    long long ox = 0, oy = 0, nx = 0, ny = 0;
    int rows = 1, cols = 1;
    unsigned scale = 0;
    std::vector<Int128> v;  // ((y-oy)*nx + (x-ox)) * rows*cols + r*cols + c

    static DenseGrid make(long long ox, long long oy, long long nx, long long ny, int rows,
                          int cols, unsigned scale);

    size_t cell(long long x, long long y) const {
        return static_cast<size_t>((y - oy) * nx + (x - ox)) * rows * cols;
    }
    bool in_box(long long x, long long y) const {
        return x >= ox && x < ox + nx && y >= oy && y < oy + ny;
    }
    Int128 get(long long x, long long y, int r, int c) const {
        return in_box(x, y) ? v[cell(x, y) + r * cols + c] : 0;
    }
    Dyadic value(long long x, long long y, int r, int c) const {
        return Dyadic(to_bigint(get(x, y, r, c)), scale);
    }
};

DenseGrid densify(const LaurentPoly& a);
DenseGrid densify(const MatrixMask22& m);
DenseGrid densify(const VectorSeq& d);

/// out(W beta + s) = sum b(s) d(beta), contracting b's columns with d's rows.
DenseGrid dense_step(const DenseGrid& b, const IMat2& w, const DenseGrid& d);

/// Backwards-difference channels (c(.-e1) - c, c(.-e2) - c) of a scalar grid.
DenseGrid dense_difference(const DenseGrid& c);

/// Value-wise equality after aligning the two scales.
bool dense_equal(const DenseGrid& a, const DenseGrid& b);

/// Scalar grid equals the sparse polynomial, entry for entry.
bool dense_matches(const DenseGrid& g, const LaurentPoly& a);

}  // namespace shearsub
