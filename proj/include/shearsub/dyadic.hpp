#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace shearsub {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational num / 2^log2den, canonical form: num odd or zero.
/// Closed under +, -, *; division only by powers of two.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long n) : num_(n) { normalize(); }          // NOLINT(google-explicit-constructor)
    Dyadic(BigInt n, unsigned k) : num_(std::move(n)), log2den_(k) { normalize(); }

    static Dyadic half_pow(unsigned k) { return Dyadic(1, k); }  // 2^-k

    const BigInt& num() const { return num_; }
    unsigned log2den() const { return log2den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return log2den_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Dyadic operator-() const { return Dyadic(-num_, log2den_); }

    Dyadic operator+(const Dyadic& o) const {
        unsigned k = std::max(log2den_, o.log2den_);
        return Dyadic((num_ << (k - log2den_)) + (o.num_ << (k - o.log2den_)), k);
    }
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const {
        return Dyadic(num_ * o.num_, log2den_ + o.log2den_);
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    /// Exact division by 2^k.
    Dyadic div_pow2(unsigned k) const { return Dyadic(num_, log2den_ + k); }

    /// Exact division; throws unless the quotient is again dyadic.
    Dyadic operator/(const Dyadic& o) const {
        if (o.is_zero()) throw std::domain_error("Dyadic: division by zero");
        if (is_zero()) return Dyadic();
        BigInt odd = o.num_ < 0 ? BigInt(-o.num_) : o.num_;
        unsigned twos = 0;
        while (odd % 2 == 0) {
            odd /= 2;
            ++twos;
        }
        BigInt n = num_ << o.log2den_;
        if (o.num_ < 0) n = -n;
        if (n % odd != 0) throw std::domain_error("Dyadic: quotient not dyadic");
        return Dyadic(n / odd, log2den_ + twos);
    }

    Dyadic abs() const { return num_ < 0 ? -*this : *this; }

    bool operator==(const Dyadic& o) const {
        return num_ == o.num_ && log2den_ == o.log2den_;
    }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const {
        unsigned k = std::max(log2den_, o.log2den_);
        return (num_ << (k - log2den_)) < (o.num_ << (k - o.log2den_));
    }
    bool operator<=(const Dyadic& o) const { return !(o < *this); }
    bool operator>(const Dyadic& o) const { return o < *this; }
    bool operator>=(const Dyadic& o) const { return !(*this < o); }

    double to_double() const {
        return static_cast<double>(num_) / std::ldexp(1.0, static_cast<int>(log2den_));
    }

    BigRational to_rational() const {
        BigInt den = BigInt(1) << log2den_;
        return BigRational(num_, den);
    }

    /// "n" for integers, "n/2^k" otherwise.
    std::string str() const {
        if (log2den_ == 0) return num_.str();
        return num_.str() + "/2^" + std::to_string(log2den_);
    }

    /// Parses the str() format.
    static Dyadic parse(const std::string& s) {
        auto pos = s.find("/2^");
        if (pos == std::string::npos) return Dyadic(BigInt(s), 0);
        return Dyadic(BigInt(s.substr(0, pos)), std::stoul(s.substr(pos + 3)));
    }

private:
    void normalize() {
        if (num_ == 0) { log2den_ = 0; return; }
        while (log2den_ > 0 && num_ % 2 == 0) {
            num_ /= 2;
            --log2den_;
        }
    }

    BigInt num_ = 0;
    unsigned log2den_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

/// Gaussian integer scaled by a power of two: re + i*im with dyadic parts.
/// Enough to evaluate symbols exactly at 4th roots of unity.
struct GaussianDyadic {
    Dyadic re, im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    GaussianDyadic operator+(const GaussianDyadic& o) const { return {re + o.re, im + o.im}; }
    GaussianDyadic operator*(const GaussianDyadic& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussianDyadic& o) const { return re == o.re && im == o.im; }

    /// i^k, any integer k.
    static GaussianDyadic unit_power(long long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {Dyadic(1), Dyadic(0)};
            case 1: return {Dyadic(0), Dyadic(1)};
            case 2: return {Dyadic(-1), Dyadic(0)};
            default: return {Dyadic(0), Dyadic(-1)};
        }
    }
};

}  // namespace shearsub
