#pragma once

#include "shearsub/dyadic.hpp"
#include "shearsub/eps_word.hpp"
#include "shearsub/lattice.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace shearsub {

struct PeriodMismatch : std::runtime_error {
    explicit PeriodMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class Boundary { zero, periodic };

/// Dense 2-D array with an integer origin offset; index alpha stands for the
/// location W_eps^{-1} alpha. Periodic fields are tori of size px x py.
template <typename T>
struct Field {
    std::vector<T> values;  // row-major by y: (y - oy) * nx + (x - ox)
    long long ox = 0, oy = 0;
    long long nx = 0, ny = 0;
    EpsWord eps;
    Boundary boundary = Boundary::zero;
    long long px = 0, py = 0;  // periods (periodic mode only)

    static Field zeros(long long ox, long long oy, long long nx, long long ny) {
        Field f;
        f.ox = ox;
        f.oy = oy;
        f.nx = nx;
        f.ny = ny;
        f.values.assign(static_cast<size_t>(nx * ny), T{});
        return f;
    }

    static Field periodic_zeros(long long px, long long py) {
        Field f = zeros(0, 0, px, py);
        f.boundary = Boundary::periodic;
        f.px = px;
        f.py = py;
        return f;
    }

    bool in_box(long long x, long long y) const {
        return x >= ox && x < ox + nx && y >= oy && y < oy + ny;
    }
    T& ref(long long x, long long y) {
        return values[static_cast<size_t>((y - oy) * nx + (x - ox))];
    }
    const T& ref(long long x, long long y) const {
        return values[static_cast<size_t>((y - oy) * nx + (x - ox))];
    }

    /// Value at an arbitrary index, honoring the boundary policy.
    T get(long long x, long long y) const {
        if (boundary == Boundary::periodic) {
            x = ((x % px) + px) % px;
            y = ((y % py) + py) % py;
            return ref(x, y);
        }
        return in_box(x, y) ? ref(x, y) : T{};
    }

    bool operator==(const Field& o) const {
        return values == o.values && ox == o.ox && oy == o.oy && nx == o.nx && ny == o.ny;
    }
};

using FieldD = Field<Dyadic>;
using FieldF = Field<double>;

// Field CSV: "# eps=<bits> origin=<x0>,<y0> rows=<R> cols=<C> boundary=..."
// followed by R comma-separated rows (row = fixed y, ascending).
void write_csv(std::ostream& os, const FieldD& f);
void write_csv(std::ostream& os, const FieldF& f);
FieldD read_csv_dyadic(std::istream& is);
FieldF read_csv_float(std::istream& is);

void write_csv_file(const std::string& path, const FieldD& f);
FieldD read_csv_file_dyadic(const std::string& path);

/// 8-bit PGM (P5); values mapped affinely from [min,max] to [0,255],
/// constant fields map to 128. The mapping is recorded in a comment line.
void write_pgm(std::ostream& os, const FieldF& f);
void write_pgm_file(const std::string& path, const FieldF& f);

FieldF to_float(const FieldD& f);

}  // namespace shearsub
