#pragma once

#include "shearsub/dyadic.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace shearsub {

using Index2 = std::array<long long, 2>;

inline Index2 operator+(const Index2& a, const Index2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Index2 operator-(const Index2& a, const Index2& b) { return {a[0] - b[0], a[1] - b[1]}; }

/// 2x2 matrix with exact dyadic entries.
struct Mat2 {
    // entries [row][col]
    std::array<std::array<Dyadic, 2>, 2> m;

    static Mat2 identity() { return {{{{Dyadic(1), Dyadic(0)}, {Dyadic(0), Dyadic(1)}}}}; }
    static Mat2 from_ints(long long a, long long b, long long c, long long d) {
        return {{{{Dyadic(a), Dyadic(b)}, {Dyadic(c), Dyadic(d)}}}};
    }

    const Dyadic& operator()(int i, int j) const { return m[i][j]; }
    Dyadic& operator()(int i, int j) { return m[i][j]; }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }

    bool operator==(const Mat2& o) const { return m == o.m; }

    Dyadic det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    /// Exact inverse; requires every entry of the inverse to be dyadic,
    /// i.e. det = +-2^k up to an odd unit dividing all cofactors.
    Mat2 inverse() const {
        Dyadic d = det();
        if (d.is_zero()) throw std::domain_error("Mat2: singular");
        Mat2 adj = {{{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}}};
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = adj.m[i][j] / d;
        return r;
    }

    bool is_integer() const {
        for (const auto& row : m)
            for (const auto& e : row)
                if (!e.is_integer()) return false;
        return true;
    }

    bool unimodular() const {
        if (!is_integer()) return false;
        Dyadic d = det();
        return d == Dyadic(1) || d == Dyadic(-1);
    }

    /// Applies the matrix to an integer vector; entries must come out integral.
    Index2 apply(const Index2& v) const {
        Dyadic x = m[0][0] * Dyadic(v[0]) + m[0][1] * Dyadic(v[1]);
        Dyadic y = m[1][0] * Dyadic(v[0]) + m[1][1] * Dyadic(v[1]);
        if (!x.is_integer() || !y.is_integer())
            throw std::domain_error("Mat2::apply: non-integer image");
        return {static_cast<long long>(x.num()), static_cast<long long>(y.num())};
    }

    /// True iff the matrix maps v to an integer vector.
    bool maps_to_integer(const Index2& v) const {
        Dyadic x = m[0][0] * Dyadic(v[0]) + m[0][1] * Dyadic(v[1]);
        Dyadic y = m[1][0] * Dyadic(v[0]) + m[1][1] * Dyadic(v[1]);
        return x.is_integer() && y.is_integer();
    }
};

}  // namespace shearsub
