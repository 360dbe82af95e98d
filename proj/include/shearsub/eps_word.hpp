#pragma once

#include "shearsub/dyadic.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shearsub {

/// Finite 0/1 word indexing one branch of the subdivision tree.
class EpsWord {
public:
    EpsWord() = default;
    explicit EpsWord(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_)
            if (b > 1) throw std::invalid_argument("EpsWord: bits must be 0 or 1");
    }
    EpsWord(std::initializer_list<int> bits) {
        for (int b : bits) {
            if (b != 0 && b != 1) throw std::invalid_argument("EpsWord: bits must be 0 or 1");
            bits_.push_back(static_cast<uint8_t>(b));
        }
    }

    static EpsWord from_string(const std::string& s) {
        std::vector<uint8_t> bits;
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("EpsWord: expected 0/1 string");
            bits.push_back(static_cast<uint8_t>(c - '0'));
        }
        return EpsWord(std::move(bits));
    }

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t operator[](size_t i) const { return bits_[i]; }
    const std::vector<uint8_t>& bits() const { return bits_; }

    /// (eps)_2 = sum eps_{j+1} 2^j; first bit is least significant.
    unsigned long long binary_value() const {
        unsigned long long v = 0;
        for (size_t j = 0; j < bits_.size(); ++j) v |= static_cast<unsigned long long>(bits_[j]) << j;
        return v;
    }

    /// [eps]_2 = .eps_1 eps_2 ... in binary.
    Dyadic dyadic_value() const {
        Dyadic v;
        for (size_t j = 0; j < bits_.size(); ++j)
            if (bits_[j]) v += Dyadic::half_pow(static_cast<unsigned>(j + 1));
        return v;
    }

    EpsWord reversed() const {
        std::vector<uint8_t> b(bits_.rbegin(), bits_.rend());
        return EpsWord(std::move(b));
    }

    /// First k bits, k <= size().
    EpsWord prefix(size_t k) const {
        if (k > bits_.size()) throw std::out_of_range("EpsWord::prefix");
        return EpsWord(std::vector<uint8_t>(bits_.begin(), bits_.begin() + k));
    }

    EpsWord appended(uint8_t bit) const {
        auto b = bits_;
        b.push_back(bit);
        return EpsWord(std::move(b));
    }

    std::string str() const {
        std::string s;
        for (auto b : bits_) s += static_cast<char>('0' + b);
        return s;
    }

    bool operator==(const EpsWord& o) const { return bits_ == o.bits_; }
    bool operator<(const EpsWord& o) const { return bits_ < o.bits_; }

private:
    std::vector<uint8_t> bits_;
};

}  // namespace shearsub
