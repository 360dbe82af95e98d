#include "shearsub/lattice.hpp"

#include <cmath>

namespace shearsub {

Mat2 to_mat2(const IMat2& m) { return Mat2::from_ints(m.a, m.b, m.c, m.d); }

IMat2 dilation_product(const EpsWord& eps) {
    IMat2 w = {1, 0, 0, 1};
    for (size_t j = 0; j < eps.size(); ++j) w = w_gen(eps[j]) * w;  // left-multiply in order
    return w;
}

DilationFactors dilation_matrix(const EpsWord& eps) {
    const auto n = static_cast<unsigned>(eps.size());
    Dyadic frac = eps.dyadic_value();             // [eps]_2
    Dyadic four_n(BigInt(1) << (2 * n), 0);
    Dyadic two_n(BigInt(1) << n, 0);
    DilationFactors f;
    f.w = {{{{four_n, four_n * Dyadic(-2) * frac}, {Dyadic(0), two_n}}}};
    f.u = {{{{Dyadic(1), two_n * Dyadic(-2) * frac}, {Dyadic(0), Dyadic(1)}}}};
    f.v = {{{{Dyadic(1), Dyadic(-2) * frac}, {Dyadic(0), Dyadic(1)}}}};
    return f;
}

Mat2 refinement_matrix(const EpsWord& eps) {
    const auto n = static_cast<unsigned>(eps.size());
    Dyadic four_mn = Dyadic::half_pow(2 * n);
    Dyadic two_mn = Dyadic::half_pow(n);
    Dyadic b = four_mn * Dyadic(2) * Dyadic(static_cast<long long>(eps.binary_value()));
    return {{{{four_mn, b}, {Dyadic(0), two_mn}}}};
}

Mat2 refinement_generator(long long k) {
    return {{{{Dyadic::half_pow(2), Dyadic(k).div_pow2(1)}, {Dyadic(0), Dyadic::half_pow(1)}}}};
}

Slope slope_after(const Slope& s, const EpsWord& eps) {
    const auto n = static_cast<unsigned>(eps.size());
    BigInt g = eps.binary_value();
    if (!s.infinite && s.value == 0) return Slope::finite(0);
    BigInt two_n = BigInt(1) << n;
    if (s.infinite) {
        if (g == 0) return Slope::inf();
        return Slope::finite(BigRational(two_n, 2 * g));  // 2^{n-1} / (eps)_2
    }
    // 2^n / (1/s + 2 g)
    BigRational denom = BigRational(1) / s.value + BigRational(2 * g);
    return Slope::finite(BigRational(two_n) / denom);
}

namespace {

EpsWord word_from_value(unsigned long long v, unsigned n) {
    std::vector<uint8_t> bits(n);
    for (unsigned j = 0; j < n; ++j) bits[j] = (v >> j) & 1u;
    return EpsWord(std::move(bits));
}

bool within(const Slope& got, const Slope& t, const BigRational& delta) {
    if (t.infinite) return got.infinite || got.value * delta > 1;
    if (got.infinite) return false;
    BigRational d = got.value - t.value;
    if (d < 0) d = -d;
    return d < delta;
}

}  // namespace

std::optional<EpsWord> plan_direction(const Slope& s, const Slope& t, const BigRational& delta) {
    if (delta <= 0) return std::nullopt;
    if (!s.infinite && s.value <= 0) return std::nullopt;
    if (!t.infinite && t.value < BigRational(1, 2)) return std::nullopt;

    const unsigned n_max =
        static_cast<unsigned>(std::ceil(std::log2(8.0 / delta.convert_to<double>()))) + 4;

    for (unsigned n = 1; n <= n_max && n < 63; ++n) {
        BigInt two_n = BigInt(1) << n;
        if (t.infinite) {
            // all-zero word: slope 2^n s (or infinity for vertical source)
            EpsWord w = word_from_value(0, n);
            if (within(slope_after(s, w), t, delta)) return w;
            continue;
        }
        // target binary value g ~ 2^{n-1}/t - 1/(2s), per the truncation construction
        BigRational target = BigRational(two_n / 2) / t.value;
        if (!s.infinite) target -= BigRational(1) / (2 * s.value);
        BigInt base = boost::multiprecision::numerator(target) /
                      boost::multiprecision::denominator(target);
        for (long long off = -1; off <= 2; ++off) {
            BigInt g = base + off;
            if (g < 0 || g >= two_n) continue;
            EpsWord w = word_from_value(g.convert_to<unsigned long long>(), n);
            if (within(slope_after(s, w), t, delta)) return w;
        }
    }
    return std::nullopt;
}

std::vector<Index2> coset_representatives(const EpsWord& eps) {
    const auto n = static_cast<unsigned>(eps.size());
    const long long nx = 1LL << (2 * n), ny = 1LL << n;
    std::vector<Index2> reps;
    reps.reserve(static_cast<size_t>(nx * ny));
    for (long long y = 0; y < ny; ++y)
        for (long long x = 0; x < nx; ++x) reps.push_back({x, y});
    return reps;
}

Index2 coset_reduce(const IMat2& w, const Index2& p) {
    // lattice columns (A,0), (B,D) with A = w.a, B = w.b, D = w.d
    const long long A = w.a, B = w.b, D = w.d;
    long long ry = ((p[1] % D) + D) % D;
    long long t = (p[1] - ry) / D;
    long long x = p[0] - t * B;
    long long rx = ((x % A) + A) % A;
    return {rx, ry};
}

bool congruent_mod(const IMat2& w, const Index2& a, const Index2& b) {
    return coset_reduce(w, a) == coset_reduce(w, b);
}

}  // namespace shearsub
