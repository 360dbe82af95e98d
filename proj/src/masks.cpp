#include "shearsub/masks.hpp"

#include <nlohmann/json.hpp>

#include <limits>

namespace shearsub {

Mask1D dd_mask() {
    return {{-3, Dyadic(-1, 4)}, {-1, Dyadic(9, 4)}, {0, Dyadic(1)},
            {1, Dyadic(9, 4)},  {3, Dyadic(-1, 4)}};
}

Mask1D bspline_mask(unsigned m) {
    if (m < 1) throw std::invalid_argument("bspline_mask: order must be >= 1");
    Mask1D h;
    BigInt binom = 1;
    for (unsigned k = 0; k <= m; ++k) {
        h[k] = Dyadic(binom, m - 1);
        binom = binom * (m - k) / (k + 1);
    }
    return h;
}

Mask1D double_step(const Mask1D& b) {
    Mask1D out;
    for (const auto& [k, bk] : b)
        for (const auto& [m, bm] : b) {
            Dyadic v = bk * bm;
            if (v.is_zero()) continue;
            auto [it, inserted] = out.try_emplace(m + 2 * k, v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

bool interpolatory2(const Mask1D& b) {
    for (const auto& [k, v] : b)
        if (k % 2 == 0 && !(k == 0 && v == Dyadic(1))) return false;
    auto it = b.find(0);
    return it != b.end() && it->second == Dyadic(1);
}

LaurentPoly tensor(const Mask1D& bx, const Mask1D& by) {
    LaurentPoly a;
    for (const auto& [i, vx] : bx)
        for (const auto& [j, vy] : by) a.add({i, j}, vx * vy);
    return a;
}

LaurentPoly shear_reindex(const LaurentPoly& a, long long k) {
    return a.reindexed(shear_u_pow(k));
}

MaskPair make_pair(const Mask1D& b1, const Mask1D& b2) {
    MaskPair p;
    p.a0 = tensor(double_step(b1), b2);
    p.a1 = shear_reindex(p.a0, 1);
    p.interpolatory = interpolatory2(b1) && interpolatory2(b2);
    return p;
}

MaskPair dd_pair() { return shearsub::make_pair(dd_mask(), dd_mask()); }

bool check_interpolatory(const LaurentPoly& a) {
    if (a.at({0, 0}) != Dyadic(1)) return false;
    for (const auto& [e, c] : a.terms()) {
        if (e == Index2{0, 0}) continue;
        if (e[0] % 4 == 0 && e[1] % 2 == 0) return false;  // e = W0 alpha, alpha != 0
    }
    return true;
}

std::string mask_to_json(const LaurentPoly& a, const std::string& name) {
    nlohmann::json j;
    j["name"] = name;
    j["entries"] = nlohmann::json::array();
    for (const auto& [e, c] : a.terms()) {
        nlohmann::json entry = {{"i", e[0]}, {"j", e[1]}, {"log2den", c.log2den()}};
        if (c.num() >= std::numeric_limits<long long>::min() &&
            c.num() <= std::numeric_limits<long long>::max())
            entry["num"] = c.num().convert_to<long long>();
        else
            entry["num"] = c.num().str();
        j["entries"].push_back(std::move(entry));
    }
    return j.dump(2);
}

LaurentPoly mask_from_json(const std::string& text, std::string* name) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (name) *name = j.value("name", "");
    LaurentPoly a;
    for (const auto& e : j.at("entries")) {
        Index2 idx = {e.at("i").get<long long>(), e.at("j").get<long long>()};
        BigInt num;
        if (e.at("num").is_string())
            num = BigInt(e.at("num").get<std::string>());
        else
            num = e.at("num").get<long long>();
        Dyadic v(num, e.at("log2den").get<unsigned>());
        if (!a.at(idx).is_zero())
            throw std::invalid_argument("mask JSON: duplicate entry at (" +
                                        std::to_string(idx[0]) + "," + std::to_string(idx[1]) + ")");
        a.add(idx, v);
    }
    return a;
}

}  // namespace shearsub
