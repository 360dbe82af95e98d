#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shearsub/fsd.hpp"

#include <filesystem>
#include <random>

using namespace shearsub;

namespace {

FieldD random_torus(std::mt19937_64& rng, long long px, long long py) {
    FieldD f = FieldD::periodic_zeros(px, py);
    std::uniform_int_distribution<int> num(-32, 32);
    for (auto& v : f.values) v = Dyadic(num(rng), 3);
    return f;
}

FieldD constant_torus(long long px, long long py, Dyadic v) {
    FieldD f = FieldD::periodic_zeros(px, py);
    for (auto& u : f.values) u = v;
    return f;
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

TEST_CASE("analysis of simple inputs") {
    MaskPair p = dd_pair();
    CHECK(detail_offsets().size() == 7);

    // constants predict exactly, so every detail vanishes
    for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
        AnalyzeResult r = analyze_step(constant_torus(16, 16, Dyadic(3, 1)), eta, p);
        CHECK(r.child.px == 4);
        CHECK(r.child.py == 8);
        for (const auto& v : r.child.values) CHECK(v == Dyadic(3, 1));
        for (const auto& [g, d] : r.details)
            for (const auto& v : d.values) CHECK(v.is_zero());
    }

    // a delta subsamples to a delta; near the origin the residual is -a_eta
    for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
        FieldD c = FieldD::periodic_zeros(32, 32);
        c.ref(0, 0) = Dyadic(1);
        AnalyzeResult r = analyze_step(c, eta, p);
        for (long long y = 0; y < r.child.py; ++y)
            for (long long x = 0; x < r.child.px; ++x)
                CHECK(r.child.ref(x, y) == ((x == 0 && y == 0) ? Dyadic(1) : Dyadic()));
        const LaurentPoly& a = eta ? p.a1 : p.a0;
        for (const auto& [g, d] : r.details) CHECK(d.ref(0, 0) == -a.at(g));
    }
}

TEST_CASE("perfect prediction leaves no details") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(3);
    for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
        FieldD fine = step(eta ? p.a1 : p.a0, eta, random_torus(rng, 8, 8));
        AnalyzeResult r = analyze_step(fine, eta, p);
        for (const auto& [g, d] : r.details)
            for (const auto& v : d.values) CHECK(v.is_zero());
        CHECK(synthesize_step(r.child, r.details, eta, p) == fine);
    }
}

TEST_CASE("one split reconstructs exactly") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(7);
    for (uint8_t eta : {uint8_t{0}, uint8_t{1}}) {
        FieldD c = random_torus(rng, 16, 16);
        AnalyzeResult r = analyze_step(c, eta, p);
        CHECK(synthesize_step(r.child, r.details, eta, p) == c);
        // the omitted coset is redundant for interpolatory pairs
        FieldD d0 = analyze_gamma0(c, eta, p);
        for (const auto& v : d0.values) CHECK(v.is_zero());
    }
}

TEST_CASE("analysis is linear") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(13);
    FieldD a = random_torus(rng, 16, 16);
    FieldD b = random_torus(rng, 16, 16);
    FieldD sum = a;
    for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += b.values[i];
    AnalyzeResult ra = analyze_step(a, 1, p);
    AnalyzeResult rb = analyze_step(b, 1, p);
    AnalyzeResult rs = analyze_step(sum, 1, p);
    for (const auto& [g, d] : rs.details)
        for (size_t i = 0; i < d.values.size(); ++i)
            CHECK(d.values[i] == ra.details.at(g).values[i] + rb.details.at(g).values[i]);
    for (size_t i = 0; i < rs.child.values.size(); ++i)
        CHECK(rs.child.values[i] == ra.child.values[i] + rb.child.values[i]);
}

TEST_CASE("guards") {
    MaskPair bs = shearsub::make_pair(bspline_mask(2), bspline_mask(2));
    FieldD c = constant_torus(16, 16, Dyadic(1));
    CHECK_THROWS_AS(analyze_step(c, 0, bs), NotInterpolatory);

    MaskPair p = dd_pair();
    FieldD box = FieldD::zeros(0, 0, 16, 16);
    CHECK_THROWS_AS(analyze_step(box, 0, p), PeriodMismatch);
    CHECK_THROWS_AS(decompose(constant_torus(8, 8, Dyadic(1)), 2, p), PeriodMismatch);
    CHECK_THROWS_AS(analyze_step(constant_torus(6, 6, Dyadic(1)), 0, p), PeriodMismatch);

    AnalyzeResult r = analyze_step(c, 0, p);
    auto missing = r.details;
    missing.erase(missing.begin());
    CHECK_THROWS_AS(synthesize_step(r.child, missing, 0, p), ShapeMismatch);
}

TEST_CASE("tree decomposition of a constant") {
    MaskPair p = dd_pair();
    ShearletTree t1 = decompose(constant_torus(8, 8, Dyadic(1)), 1, p);
    CHECK(t1.scaling.size() == 2);
    CHECK(t1.details.size() == 14);
    for (const auto& [w, f] : t1.scaling) {
        CHECK(w.size() == 1);
        for (const auto& v : f.values) CHECK(v == Dyadic(1));
    }
    for (const auto& [k, d] : t1.details)
        for (const auto& v : d.values) CHECK(v.is_zero());

    ShearletTree t2 = decompose(constant_torus(16, 16, Dyadic(1)), 2, p);
    CHECK(t2.scaling.size() == 4);
    CHECK(t2.details.size() == 42);

    ShearletTree t2i = decompose(constant_torus(16, 16, Dyadic(1)), 2, p, nullptr, true);
    CHECK(t2i.scaling.size() == 7);
}

TEST_CASE("full tree reconstructs along every path") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 2; ++rep) {
        FieldD c = random_torus(rng, 64, 64);
        ShearletTree tree = decompose(c, 3, p);
        CHECK(tree.scaling.size() == 8);
        CHECK(tree.details.size() == 7 * (2 + 4 + 8));
        for (const EpsWord& path : all_words(3)) CHECK(reconstruct(tree, path, p) == c);
        // shorter paths synthesize the missing interior nodes from below
        CHECK(reconstruct(tree, EpsWord{1}, p) == c);
        CHECK(reconstruct_node(tree, EpsWord{0, 1}, p) ==
              decompose(c, 2, p, nullptr, true).scaling.at(EpsWord{0, 1}));
    }
}

TEST_CASE("single path decomposition") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(23);
    FieldD c = random_torus(rng, 16, 16);
    EpsWord path{1, 0};
    ShearletTree tree = decompose(c, 2, p, &path);
    CHECK(!tree.full);
    CHECK(tree.scaling.size() == 1);
    CHECK(tree.details.size() == 14);
    CHECK(reconstruct(tree, path, p) == c);
    CHECK_THROWS_AS(reconstruct(tree, EpsWord{0, 0}, p), MissingNode);
}

TEST_CASE("detail energy map") {
    MaskPair p = dd_pair();
    ShearletTree flat = decompose(constant_torus(16, 16, Dyadic(2)), 1, p);
    FieldF e = detail_energy_map(flat, EpsWord{0});
    for (double v : e.values) CHECK(v == 0.0);

    FieldD c = FieldD::periodic_zeros(32, 32);
    c.ref(0, 0) = Dyadic(1);
    ShearletTree spike = decompose(c, 1, p);
    FieldF e1 = detail_energy_map(spike, EpsWord{0});
    CHECK(e1.ref(0, 0) == doctest::Approx(p.a0.at({1, 0}).to_double()).epsilon(1e-12));
    CHECK_THROWS_AS(detail_energy_map(spike, EpsWord{1, 1}), MissingNode);
}

TEST_CASE("tree directory round trip") {
    MaskPair p = dd_pair();
    std::mt19937_64 rng(29);
    FieldD c = random_torus(rng, 16, 16);
    ShearletTree tree = decompose(c, 2, p);

    std::string dir = (std::filesystem::temp_directory_path() / "shearsub_tree_test").string();
    std::filesystem::remove_all(dir);
    write_tree(dir, tree);
    ShearletTree back = read_tree(dir);
    CHECK(back.depth == tree.depth);
    CHECK(back.full);
    CHECK(back.scaling.size() == tree.scaling.size());
    CHECK(back.details.size() == tree.details.size());
    for (const auto& [w, f] : tree.scaling) CHECK(back.scaling.at(w) == f);
    for (const auto& [k, d] : tree.details) CHECK(back.details.at(k) == d);
    CHECK(reconstruct(back, EpsWord{0, 1}, p) == c);
    std::filesystem::remove_all(dir);
}
