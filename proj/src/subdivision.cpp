#include "shearsub/subdivision.hpp"

#include "shearsub/dense.hpp"

#include <algorithm>
#include <array>
#include <type_traits>
#include <vector>

namespace shearsub {

namespace {

template <typename T>
T conv(const Dyadic& d) {
    if constexpr (std::is_same_v<T, double>)
        return d.to_double();
    else
        return d;
}

template <typename T>
bool is_zero_value(const T& v) {
    if constexpr (std::is_same_v<T, double>)
        return v == 0.0;
    else
        return v.is_zero();
}

template <typename T>
struct MaskEntry {
    Index2 s;
    T v;
};

// Mask entries bucketed by their coset modulo W, keyed by gamma1 + 4*gamma2.
template <typename T>
std::array<std::vector<MaskEntry<T>>, 8> bucket_mask(const LaurentPoly& a, const IMat2& w) {
    std::array<std::vector<MaskEntry<T>>, 8> groups;
    for (const auto& [s, coef] : a.terms()) {
        Index2 g = coset_reduce(w, s);
        groups[static_cast<size_t>(g[0] + 4 * g[1])].push_back({s, conv<T>(coef)});
    }
    return groups;
}

void check_periodic_shear(uint8_t eps, long long px, long long py) {
    // W1 maps the period (0, py) to (-4 py, 2 py); for the image to live on a
    // rectangular torus of width 4 px this needs px | py.
    if (eps == 1 && py % px != 0)
        throw PeriodMismatch("shear step on torus " + std::to_string(px) + "x" +
                             std::to_string(py) + " needs px | py");
}

template <typename T>
Field<T> prepare_output(const LaurentPoly& a, uint8_t eps, const Field<T>& c) {
    if (a.is_zero()) throw std::invalid_argument("step: empty mask");
    Field<T> out;
    if (c.boundary == Boundary::periodic) {
        check_periodic_shear(eps, c.px, c.py);
        out = Field<T>::periodic_zeros(4 * c.px, 2 * c.py);
    } else {
        long long b = eps ? -4 : 0;
        auto [mlo, mhi] = a.bounds();
        long long x0 = c.ox, x1 = c.ox + c.nx - 1;
        long long y0 = c.oy, y1 = c.oy + c.ny - 1;
        long long xa = 4 * x0 + std::min(b * y0, b * y1);
        long long xb = 4 * x1 + std::max(b * y0, b * y1);
        out = Field<T>::zeros(xa + mlo[0], 2 * y0 + mlo[1], xb - xa + mhi[0] - mlo[0] + 1,
                              2 * (y1 - y0) + mhi[1] - mlo[1] + 1);
    }
    out.eps = c.eps.appended(eps);
    return out;
}

bool fits_int128(const BigInt& b, unsigned shift, Int128& out) {
    if (b == 0) {
        out = 0;
        return true;
    }
    BigInt ab = b < 0 ? BigInt(-b) : b;
    if (boost::multiprecision::msb(ab) + shift >= 126) return false;
    auto u = static_cast<unsigned __int128>(static_cast<unsigned long long>(ab >> 64)) << 64 |
             static_cast<unsigned long long>(ab & 0xFFFFFFFFFFFFFFFFull);
    out = static_cast<Int128>(u) << shift;
    if (b < 0) out = -out;
    return true;
}

Dyadic dyadic_from_fixed(Int128 v, unsigned scale) {
    if (v == 0) return Dyadic();
    auto u = static_cast<unsigned __int128>(v < 0 ? -v : v);
    auto low = static_cast<unsigned long long>(u);
    unsigned tz = low ? static_cast<unsigned>(__builtin_ctzll(low))
                      : 64 + static_cast<unsigned>(__builtin_ctzll(static_cast<unsigned long long>(u >> 64)));
    unsigned k = std::min(tz, scale);
    return Dyadic(to_bigint(v >> k), scale - k);
}

/// Fixed-point gather for exact fields: mask and input are rescaled to shared
/// power-of-two denominators and accumulated in 128-bit integers. Returns
/// false (leaving out untouched) when values would not fit, in which case the
/// caller falls back to the generic big-integer path.
bool step_fixed(const LaurentPoly& a, uint8_t eps, const FieldD& c, FieldD& result) {
    FieldD out = prepare_output(a, eps, c);
    IMat2 w = w_gen(eps);
    long long b = w.b;

    unsigned sa = 0, sc = 0;
    for (const auto& [s, coef] : a.terms()) sa = std::max(sa, coef.log2den());
    for (const auto& v : c.values) sc = std::max(sc, v.log2den());

    struct FixedEntry {
        Index2 s;
        Int128 v;
    };
    std::array<std::vector<FixedEntry>, 8> groups;
    Int128 mask_sum = 0;
    for (const auto& [s, coef] : a.terms()) {
        Int128 m;
        if (!fits_int128(coef.num(), sa - coef.log2den(), m)) return false;
        mask_sum += m < 0 ? -m : m;
        Index2 g = coset_reduce(w, s);
        groups[static_cast<size_t>(g[0] + 4 * g[1])].push_back({s, m});
    }

    std::vector<Int128> fv(c.values.size());
    Int128 maxf = 0;
    for (size_t i = 0; i < c.values.size(); ++i) {
        const Dyadic& d = c.values[i];
        if (!fits_int128(d.num(), sc - d.log2den(), fv[i])) return false;
        Int128 av = fv[i] < 0 ? -fv[i] : fv[i];
        maxf = std::max(maxf, av);
    }
    if (maxf != 0 && mask_sum > (static_cast<Int128>(1) << 125) / maxf) return false;

    bool per = c.boundary == Boundary::periodic;
    unsigned scale = sa + sc;
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < out.ny; ++r) {
        long long y = out.oy + r;
        for (long long x = out.ox; x < out.ox + out.nx; ++x) {
            Index2 g = coset_reduce(w, {x, y});
            Int128 acc = 0;
            for (const auto& en : groups[static_cast<size_t>(g[0] + 4 * g[1])]) {
                long long by = (y - en.s[1]) / 2;
                long long bx = (x - en.s[0] - b * by) / 4;
                if (per) {
                    bx = ((bx % c.px) + c.px) % c.px;
                    by = ((by % c.py) + c.py) % c.py;
                } else if (!c.in_box(bx, by)) {
                    continue;
                }
                acc += en.v * fv[static_cast<size_t>((by - c.oy) * c.nx + (bx - c.ox))];
            }
            out.ref(x, y) = dyadic_from_fixed(acc, scale);
        }
    }
    result = std::move(out);
    return true;
}

template <typename T>
Field<T> step_impl(const LaurentPoly& a, uint8_t eps, const Field<T>& c) {
    Field<T> out = prepare_output(a, eps, c);
    IMat2 w = w_gen(eps);
    long long b = w.b;
    auto groups = bucket_mask<T>(a, w);

#pragma omp parallel for schedule(static)
    for (long long r = 0; r < out.ny; ++r) {
        long long y = out.oy + r;
        for (long long x = out.ox; x < out.ox + out.nx; ++x) {
            Index2 g = coset_reduce(w, {x, y});
            T acc{};
            for (const auto& en : groups[static_cast<size_t>(g[0] + 4 * g[1])]) {
                long long by = (y - en.s[1]) / 2;
                long long bx = (x - en.s[0] - b * by) / 4;
                T v = c.get(bx, by);
                if (!is_zero_value(v)) acc += en.v * v;
            }
            out.ref(x, y) = acc;
        }
    }
    return out;
}

template <typename T>
Field<T> step_serial_impl(const LaurentPoly& a, uint8_t eps, const Field<T>& c) {
    Field<T> out = prepare_output(a, eps, c);
    IMat2 w = w_gen(eps);
    std::vector<MaskEntry<T>> entries;
    for (const auto& [s, coef] : a.terms()) entries.push_back({s, conv<T>(coef)});

    for (long long by = c.oy; by < c.oy + c.ny; ++by)
        for (long long bx = c.ox; bx < c.ox + c.nx; ++bx) {
            const T& v = c.ref(bx, by);
            if (is_zero_value(v)) continue;
            Index2 wb = w.apply({bx, by});
            for (const auto& en : entries) {
                long long x = wb[0] + en.s[0], y = wb[1] + en.s[1];
                if (out.boundary == Boundary::periodic) {
                    x = ((x % out.px) + out.px) % out.px;
                    y = ((y % out.py) + out.py) % out.py;
                }
                out.ref(x, y) += en.v * v;
            }
        }
    return out;
}

template <typename T>
Field<T> step_dispatch(const LaurentPoly& a, uint8_t eps, const Field<T>& c) {
    if constexpr (std::is_same_v<T, Dyadic>) {
        FieldD out;
        if (step_fixed(a, eps, c, out)) return out;
    }
    return step_impl(a, eps, c);
}

template <typename T>
Field<T> run_impl(const MaskPair& pair, const EpsWord& eps, Field<T> c) {
    for (size_t i = 0; i < eps.size(); ++i) {
        uint8_t b = eps[i];
        c = step_dispatch(b ? pair.a1 : pair.a0, b, c);
    }
    return c;
}

BigInt ipow(long long base, unsigned e) {
    BigInt r = 1, b = base;
    for (; e; e >>= 1, b *= b)
        if (e & 1) r *= b;
    return r;
}

// Exact linear solve, Gaussian elimination over the rationals.
std::vector<BigRational> solve_rational(std::vector<std::vector<BigRational>> m,
                                        std::vector<BigRational> rhs) {
    size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("singular interpolation system");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            BigRational f = m[r][col] / m[col][col];
            for (size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<BigRational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

bool reproduces_monomial(const LaurentPoly& a, uint8_t eps, unsigned g1, unsigned g2, unsigned k,
                         long long R) {
    FieldD c = FieldD::zeros(-R, -R, 2 * R + 1, 2 * R + 1);
    for (long long y = -R; y <= R; ++y)
        for (long long x = -R; x <= R; ++x)
            c.ref(x, y) = Dyadic(ipow(x, g1) * ipow(y, g2), 0);
    FieldD out = step_impl(a, eps, c);

    long long b = eps ? -4 : 0;
    auto in_window = [R](long long x, long long y) {
        return x >= -R && x <= R && y >= -R && y <= R;
    };
    // alpha is interior when every congruent mask translate pulls from inside
    // the window, so the zero padding never leaks in.
    auto interior = [&](long long x, long long y) {
        for (const auto& [s, coef] : a.terms()) {
            long long dy = y - s[1];
            if (dy % 2 != 0) continue;
            long long by = dy / 2;
            long long dx = x - s[0] - b * by;
            if (dx % 4 != 0) continue;
            if (!in_window(dx / 4, by)) return false;
        }
        return true;
    };

    unsigned n1 = k + 1;
    for (unsigned i = 0; i < n1; ++i)
        for (unsigned j = 0; j < n1; ++j)
            if (!out.in_box(i, j) || !interior(i, j))
                throw WindowTooSmall("interpolation nodes fall outside the interior; "
                                     "increase window_radius");

    // Fit the full tensor grid of degree <= k per variable on the node block,
    // then demand total degree <= k and agreement on the whole interior.
    std::vector<std::vector<BigRational>> m;
    std::vector<BigRational> rhs;
    for (unsigned nx = 0; nx < n1; ++nx)
        for (unsigned ny = 0; ny < n1; ++ny) {
            std::vector<BigRational> row;
            for (unsigned i = 0; i < n1; ++i)
                for (unsigned j = 0; j < n1; ++j)
                    row.emplace_back(ipow(nx, i) * ipow(ny, j));
            m.push_back(std::move(row));
            rhs.push_back(out.ref(nx, ny).to_rational());
        }
    auto coef = solve_rational(std::move(m), std::move(rhs));

    for (unsigned i = 0; i < n1; ++i)
        for (unsigned j = 0; j < n1; ++j)
            if (i + j > k && coef[i * n1 + j] != 0) return false;

    for (long long y = out.oy; y < out.oy + out.ny; ++y)
        for (long long x = out.ox; x < out.ox + out.nx; ++x) {
            if (!interior(x, y)) continue;
            BigRational val = 0;
            for (unsigned i = 0; i < n1; ++i)
                for (unsigned j = 0; j < n1; ++j)
                    val += coef[i * n1 + j] * BigRational(ipow(x, i) * ipow(y, j));
            if (val != out.ref(x, y).to_rational()) return false;
        }
    return true;
}

}  // namespace

FieldD step(const LaurentPoly& a, uint8_t eps, const FieldD& c) {
    return step_dispatch(a, eps, c);
}
FieldF step(const LaurentPoly& a, uint8_t eps, const FieldF& c) { return step_impl(a, eps, c); }

FieldD step_serial(const LaurentPoly& a, uint8_t eps, const FieldD& c) {
    return step_serial_impl(a, eps, c);
}
FieldF step_serial(const LaurentPoly& a, uint8_t eps, const FieldF& c) {
    return step_serial_impl(a, eps, c);
}

FieldD run(const MaskPair& pair, const EpsWord& eps, const FieldD& c) {
    return run_impl(pair, eps, c);
}
FieldF run(const MaskPair& pair, const EpsWord& eps, const FieldF& c) {
    return run_impl(pair, eps, c);
}

LaurentPoly iterated_mask(const MaskPair& pair, const EpsWord& eps) {
    LaurentPoly r = LaurentPoly::delta();
    for (size_t i = 0; i < eps.size(); ++i) {
        const LaurentPoly& a = eps[i] ? pair.a1 : pair.a0;
        IMat2 w = w_gen(eps[i]);
        LaurentPoly next;
        for (const auto& [beta, v] : r.terms())
            for (const auto& [s, av] : a.terms()) next.add(w.apply(beta) + s, av * v);
        r = next;
    }
    return r;
}

FieldD limit_samples(const MaskPair& pair, const EpsWord& eps) {
    LaurentPoly ae = iterated_mask(pair, eps);
    FieldD f;
    if (ae.is_zero()) {
        f = FieldD::zeros(0, 0, 1, 1);
    } else {
        auto [lo, hi] = ae.bounds();
        f = FieldD::zeros(lo[0], lo[1], hi[0] - lo[0] + 1, hi[1] - lo[1] + 1);
        for (const auto& [e, c] : ae.terms()) f.ref(e[0], e[1]) = c;
    }
    f.eps = eps;
    return f;
}

bool check_poly_reproduction(const MaskPair& pair, unsigned k, long long window_radius) {
    for (uint8_t eps : {uint8_t{0}, uint8_t{1}}) {
        const LaurentPoly& a = eps ? pair.a1 : pair.a0;
        for (unsigned g1 = 0; g1 <= k; ++g1)
            for (unsigned g2 = 0; g1 + g2 <= k; ++g2)
                if (!reproduces_monomial(a, eps, g1, g2, k, window_radius)) return false;
    }
    return true;
}

}  // namespace shearsub
