#include "shearsub/convergence.hpp"

#include "shearsub/dense.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <random>

namespace shearsub {

namespace {

Dyadic entry_row_max(const DyMat<2, 2>& m) {
    Dyadic r0 = m.e[0][0].abs() + m.e[0][1].abs();
    Dyadic r1 = m.e[1][0].abs() + m.e[1][1].abs();
    return r0 < r1 ? r1 : r0;
}

EpsWord word_from_index(unsigned long long idx, unsigned n) {
    std::vector<uint8_t> bits(n);
    for (unsigned j = 0; j < n; ++j) bits[j] = (idx >> j) & 1;
    return EpsWord(std::move(bits));
}

/// Probes with sup norm <= 1: the differenced delta plus differenced random
/// sequences with entries in [-1/2, 1/2], so each probe stays inside the unit
/// ball and lower bounds cannot exceed the operator norm bound.
std::vector<VectorSeq> make_probes() {
    std::vector<VectorSeq> probes;
    probes.push_back(difference(LaurentPoly::delta()));
    std::mt19937_64 rng(0x5eb1a7);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int t = 0; t < 5; ++t) {
        LaurentPoly c;
        for (long long y = 0; y < 4; ++y)
            for (long long x = 0; x < 4; ++x) c.set({x, y}, Dyadic(coef(rng), 3));
        probes.push_back(difference(c));
    }
    return probes;
}

Int128 iabs(Int128 v) { return v < 0 ? -v : v; }

/// Dense counterpart of operator_norm_bound.
Dyadic dense_norm_bound(const DenseGrid& g, const EpsWord& eps) {
    IMat2 w = dilation_product(eps);
    long long px = 1, py = 1;
    for (size_t i = 0; i < eps.size(); ++i) {
        px *= 4;
        py *= 2;
    }
    std::vector<Int128> acc(static_cast<size_t>(px * py) * 2, 0);
    for (long long y = g.oy; y < g.oy + g.ny; ++y)
        for (long long x = g.ox; x < g.ox + g.nx; ++x) {
            const Int128* m = &g.v[g.cell(x, y)];
            if (!m[0] && !m[1] && !m[2] && !m[3]) continue;
            Index2 r = coset_reduce(w, {x, y});
            size_t idx = static_cast<size_t>(r[1] * px + r[0]) * 2;
            acc[idx] += iabs(m[0]) + iabs(m[1]);
            acc[idx + 1] += iabs(m[2]) + iabs(m[3]);
        }
    Int128 best = 0;
    for (Int128 v : acc) best = std::max(best, v);
    return Dyadic(to_bigint(best), g.scale);
}

Dyadic dense_sup(const DenseGrid& g) {
    Int128 best = 0;
    for (Int128 v : g.v) best = std::max(best, iabs(v));
    return Dyadic(to_bigint(best), g.scale);
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::converges: return "converges";
        case Verdict::not_contractive: return "not_contractive";
        default: return "inconclusive";
    }
}

VectorSeq matrix_step_vec(const MatrixMask22& b, uint8_t eps, const VectorSeq& d) {
    return matrix_step(b, w_gen(eps), d);
}

MatrixMask22 iterated_matrix_mask(const MatrixMask22& b0, const MatrixMask22& b1,
                                  const EpsWord& eps) {
    MatrixMask22 r;
    r.add({0, 0}, DyMat<2, 2>::identity());
    for (size_t i = 0; i < eps.size(); ++i)
        r = matrix_step(eps[i] ? b1 : b0, w_gen(eps[i]), r);
    return r;
}

Dyadic operator_norm_bound(const MatrixMask22& b, const EpsWord& eps) {
    IMat2 w = dilation_product(eps);
    std::map<Index2, DyMat<2, 2>> agg;
    for (const auto& [e, m] : b.terms()) {
        auto& acc = agg[coset_reduce(w, e)];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc.e[i][j] += m.e[i][j].abs();
    }
    Dyadic bound;
    for (const auto& [g, m] : agg) {
        Dyadic r = entry_row_max(m);
        if (bound < r) bound = r;
    }
    return bound;
}

RadiusEstimate jsr_estimate(const MatrixMask22& b0, const MatrixMask22& b1, unsigned max_depth,
                            bool stop_when_contractive) {
    if (max_depth < 1) throw std::invalid_argument("jsr_estimate: max_depth must be >= 1");
    RadiusEstimate est;

    auto sparse_probes = make_probes();
    std::vector<DenseGrid> probes;
    for (const auto& d : sparse_probes) probes.push_back(densify(d));
    DenseGrid gen[2] = {densify(b0), densify(b1)};

    // level[idx]: iterated masks for words of the current depth, bit j of idx
    // being the j-th letter; probe_level[p][idx]: the probes driven through
    // the same words.
    std::vector<DenseGrid> level(1);
    level[0] = DenseGrid::make(0, 0, 1, 1, 2, 2, 0);
    level[0].v[0] = level[0].v[3] = 1;
    std::vector<std::vector<DenseGrid>> probe_level(probes.size());
    for (size_t p = 0; p < probes.size(); ++p) probe_level[p] = {probes[p]};

    for (unsigned n = 1; n <= max_depth; ++n) {
        unsigned long long half = 1ULL << (n - 1);
        std::vector<DenseGrid> next(2 * half);
        std::vector<std::vector<DenseGrid>> probe_next(probes.size());
        for (auto& v : probe_next) v.resize(2 * half);

#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(2 * half); ++i) {
            auto idx = static_cast<unsigned long long>(i);
            uint8_t bit = idx >= half ? 1 : 0;
            unsigned long long parent = idx & (half - 1);
            next[idx] = dense_step(gen[bit], w_gen(bit), level[parent]);
            for (size_t p = 0; p < probes.size(); ++p)
                probe_next[p][idx] = dense_step(gen[bit], w_gen(bit), probe_level[p][parent]);
        }
        level = std::move(next);
        probe_level = std::move(probe_next);

        DepthRecord rec;
        rec.depth = n;
        for (unsigned long long idx = 0; idx < 2 * half; ++idx) {
            EpsWord word = word_from_index(idx, n);
            Dyadic nb = dense_norm_bound(level[idx], word);
            if (rec.upper_norm < nb) {
                rec.upper_norm = nb;
                rec.worst = word;
            }
            for (size_t p = 0; p < probes.size(); ++p) {
                Dyadic pn = dense_sup(probe_level[p][idx]);
                if (rec.lower_norm < pn) rec.lower_norm = pn;
            }
        }
        rec.upper_root = std::pow(rec.upper_norm.to_double(), 1.0 / n);
        rec.lower_root = std::pow(rec.lower_norm.to_double(), 1.0 / n);
        est.per_depth.push_back(rec);
        if (stop_when_contractive && rec.upper_norm < Dyadic(1)) break;
    }

    const DepthRecord* best = &est.per_depth.front();
    for (const auto& r : est.per_depth)
        if (r.upper_root < best->upper_root) best = &r;
    est.depth = best->depth;
    est.upper_norm = best->upper_norm;
    est.upper = best->upper_root;
    const DepthRecord* low = &est.per_depth.front();
    for (const auto& r : est.per_depth)
        if (r.lower_root > low->lower_root) low = &r;
    est.lower_norm = low->lower_norm;
    est.lower = low->lower_root;

    bool contractive = false;
    for (const auto& r : est.per_depth)
        if (r.upper_norm < Dyadic(1)) contractive = true;
    if (contractive) {
        est.verdict = Verdict::converges;
    } else {
        size_t m = est.per_depth.size();
        bool growing = est.per_depth.back().lower_root > 1.0 && m >= 3;
        for (size_t i = 0; growing && i + 1 < 3; ++i)
            if (est.per_depth[m - 1 - i].lower_root < est.per_depth[m - 2 - i].lower_root)
                growing = false;
        est.verdict = growing ? Verdict::not_contractive : Verdict::inconclusive;
    }
    return est;
}

ConvergenceReport convergence_verdict(const MaskPair& pair, unsigned max_depth) {
    ConvergenceReport rep;
    bool ok0 = sum_rule_check(pair.a0, 0);
    bool ok1 = sum_rule_check(pair.a1, 1);
    if (!ok0 || !ok1) {
        rep.sum_rule_ok = false;
        rep.diagnostics = "sum rule of order 0 fails for mask";
        if (!ok0) rep.diagnostics += " a0";
        if (!ok1) rep.diagnostics += " a1";
        rep.diagnostics += "; the scheme cannot converge";
        return rep;
    }
    rep.sum_rule_ok = true;
    MatrixMask22 b0 = representation_mask(pair.a0, 0);
    MatrixMask22 b1 = representation_mask(pair.a1, 1);
    rep.estimate = jsr_estimate(b0, b1, max_depth);
    rep.diagnostics = "upper bounds are exact operator norm maxima; lower bounds are probe "
                      "responses and cannot prove divergence";
    return rep;
}

std::string report_json(const ConvergenceReport& r) {
    nlohmann::json j;
    j["sum_rule_ok"] = r.sum_rule_ok;
    j["diagnostics"] = r.diagnostics;
    if (r.sum_rule_ok) {
        const auto& e = r.estimate;
        j["depth"] = e.depth;
        j["upper"] = e.upper;
        j["upper_norm"] = e.upper_norm.str();
        j["lower"] = e.lower;
        j["lower_norm"] = e.lower_norm.str();
        j["verdict"] = verdict_name(e.verdict);
        j["per_depth"] = nlohmann::json::array();
        for (const auto& d : e.per_depth)
            j["per_depth"].push_back({{"depth", d.depth},
                                      {"upper", d.upper_root},
                                      {"upper_norm", d.upper_norm.str()},
                                      {"lower", d.lower_root},
                                      {"lower_norm", d.lower_norm.str()},
                                      {"worst", d.worst.str()}});
    }
    return j.dump(2);
}

}  // namespace shearsub
