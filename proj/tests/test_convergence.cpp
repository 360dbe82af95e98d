#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearsub/convergence.hpp"
#include "shearsub/subdivision.hpp"

#include <nlohmann/json.hpp>

#include <random>

using namespace shearsub;

namespace {

MatrixMask22 delta_identity() {
    MatrixMask22 b;
    b.add({0, 0}, DyMat<2, 2>::identity());
    return b;
}

LaurentPoly random_poly(std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<long long> pos(-4, 4);
    std::uniform_int_distribution<int> num(-9, 9);
    LaurentPoly f;
    for (int t = 0; t < terms; ++t) f.add({pos(rng), pos(rng)}, Dyadic(num(rng), 2));
    return f;
}

LaurentPoly sparse_step(const LaurentPoly& a, const IMat2& w, const LaurentPoly& c) {
    LaurentPoly out;
    for (const auto& [beta, v] : c.terms())
        for (const auto& [s, av] : a.terms()) out.add(w.apply(beta) + s, av * v);
    return out;
}

std::vector<EpsWord> all_words(unsigned n) {
    std::vector<EpsWord> out;
    for (unsigned long long v = 0; v < (1ULL << n); ++v) {
        std::vector<uint8_t> bits(n);
        for (unsigned j = 0; j < n; ++j) bits[j] = (v >> j) & 1u;
        out.emplace_back(std::move(bits));
    }
    return out;
}

}  // namespace

TEST_CASE("matrix step basics") {
    VectorSeq d = difference(LaurentPoly::delta());
    VectorSeq up = matrix_step_vec(delta_identity(), 0, d);
    for (const auto& [e, m] : d.terms()) CHECK(up.at(w0().apply(e)) == m);
    CHECK(matrix_step_vec(MatrixMask22{}, 0, d).is_zero());

    MaskPair p = dd_pair();
    MatrixMask22 b0 = representation_mask(p.a0, 0);
    VectorSeq lhs = difference(sparse_step(p.a0, w0(), LaurentPoly::delta()));
    VectorSeq rhs = matrix_step_vec(b0, 0, d);
    CHECK(lhs == rhs);
}

TEST_CASE("iterated matrix masks and intertwining") {
    MaskPair p = dd_pair();
    MatrixMask22 b0 = representation_mask(p.a0, 0);
    MatrixMask22 b1 = representation_mask(p.a1, 1);
    CHECK(iterated_matrix_mask(b0, b1, EpsWord{0}) == b0);
    CHECK(iterated_matrix_mask(b0, b1, EpsWord{1}) == b1);

    std::mt19937_64 rng(9);
    for (unsigned n = 1; n <= 3; ++n)
        for (const EpsWord& eps : all_words(n)) {
            IMat2 w = dilation_product(eps);
            MatrixMask22 be = iterated_matrix_mask(b0, b1, eps);
            for (int t = 0; t < 4; ++t) {
                LaurentPoly c = t == 0 ? LaurentPoly::delta() : random_poly(rng, 8);
                LaurentPoly sc = c;
                for (size_t i = 0; i < eps.size(); ++i)
                    sc = sparse_step(eps[i] ? p.a1 : p.a0, w_gen(eps[i]), sc);
                CHECK(difference(sc) == matrix_step(be, w, difference(c)));
            }
        }
}

TEST_CASE("operator norm bounds") {
    MatrixMask22 half;
    DyMat<2, 2> m = DyMat<2, 2>::identity();
    m.e[0][0] = m.e[1][1] = Dyadic(1, 1);
    half.add({0, 0}, m);
    CHECK(operator_norm_bound(half, EpsWord{0}) == Dyadic(1, 1));
    CHECK(operator_norm_bound(delta_identity(), EpsWord{0}) == Dyadic(1));

    MaskPair p = dd_pair();
    MatrixMask22 b0 = representation_mask(p.a0, 0);
    MatrixMask22 b1 = representation_mask(p.a1, 1);

    // frozen regression values for the worst one- and two-letter words
    CHECK(operator_norm_bound(b1, EpsWord{1}) == Dyadic(495, 7));
    MatrixMask22 b10 = iterated_matrix_mask(b0, b1, EpsWord{1, 0});
    CHECK(operator_norm_bound(b10, EpsWord{1, 0}) == Dyadic(1065, 9));

    // submultiplicative across concatenation
    for (unsigned n = 2; n <= 3; ++n)
        for (const EpsWord& eps : all_words(n)) {
            EpsWord head = eps.prefix(n - 1);
            EpsWord last{eps[n - 1]};
            Dyadic whole = operator_norm_bound(iterated_matrix_mask(b0, b1, eps), eps);
            Dyadic a = operator_norm_bound(iterated_matrix_mask(b0, b1, head), head);
            Dyadic b = operator_norm_bound(eps[n - 1] ? b1 : b0, last);
            CHECK(whole <= a * b);
        }
}

TEST_CASE("radius estimation") {
    RadiusEstimate zero = jsr_estimate(MatrixMask22{}, MatrixMask22{}, 3);
    CHECK(zero.verdict == Verdict::converges);
    CHECK(zero.upper_norm.is_zero());
    CHECK(zero.lower_norm.is_zero());

    RadiusEstimate ident = jsr_estimate(delta_identity(), delta_identity(), 4, false);
    CHECK(ident.verdict == Verdict::inconclusive);
    CHECK(ident.upper == doctest::Approx(1.0));

    MatrixMask22 grow;
    DyMat<2, 2> two;
    two.e[0][0] = two.e[1][1] = Dyadic(2);
    grow.add({0, 0}, two);
    RadiusEstimate g = jsr_estimate(grow, grow, 4, false);
    CHECK(g.verdict == Verdict::not_contractive);
    CHECK(g.lower > 1.0);

    MaskPair p = dd_pair();
    MatrixMask22 b0 = representation_mask(p.a0, 0);
    MatrixMask22 b1 = representation_mask(p.a1, 1);
    RadiusEstimate dd = jsr_estimate(b0, b1, 6);
    CHECK(dd.verdict == Verdict::converges);
    CHECK(dd.depth == 4);
    CHECK(dd.upper_norm == Dyadic(BigInt("161936227703"), 38));  // frozen after first run
    CHECK(dd.upper < 1.0);
    for (const auto& rec : dd.per_depth) CHECK(rec.lower_norm <= rec.upper_norm);
    CHECK(dd.per_depth[2].upper_norm == Dyadic(BigInt("606096803"), 29));
    CHECK(dd.per_depth[2].worst == EpsWord{1, 0, 0});
}

TEST_CASE("full verdict pipeline") {
    MaskPair p = dd_pair();
    ConvergenceReport rep = convergence_verdict(p, 4);
    CHECK(rep.sum_rule_ok);
    CHECK(rep.estimate.verdict == Verdict::converges);

    MaskPair scaled = p;
    scaled.a0 = p.a0.scaled(Dyadic(2));
    ConvergenceReport bad = convergence_verdict(scaled, 4);
    CHECK(!bad.sum_rule_ok);

    MaskPair same;
    same.a0 = same.a1 = p.a0;
    ConvergenceReport odd = convergence_verdict(same, 2);  // analyzable, no crash
    CHECK(odd.sum_rule_ok);

    auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j.at("verdict").get<std::string>() == "converges");
    CHECK(j.at("per_depth").size() == rep.estimate.per_depth.size());
}
