#pragma once

#include <cstdint>
#include <vector>

namespace conetutte {

// Sign-magnitude arbitrary-precision integer. Only the ring operations are
// provided; geometric predicates reduce to signs of integer polynomials, so
// no division or gcd is ever needed.
class BigInt {
  public:
    BigInt() = default;
    explicit BigInt(std::int64_t value);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& rhs) const;
    BigInt operator-(const BigInt& rhs) const;
    BigInt operator*(const BigInt& rhs) const;

    // this * 2^k, k >= 0
    BigInt shifted_left(unsigned k) const;

    // -1, 0, +1 of (*this - rhs)
    int compare(const BigInt& rhs) const;

    double to_double() const; // round-to-nearest approximation, diagnostics only

  private:
    static int compare_magnitude(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_magnitude(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b);
    void trim();

    int sign_ = 0;
    std::vector<std::uint32_t> limbs_; // little-endian magnitude, no trailing zeros
};

// Dyadic rational m * 2^e. Every finite double converts exactly, and the set
// is closed under +, -, *; enough to evaluate any polynomial predicate on
// floating-point inputs without rounding.
class Dyadic {
  public:
    Dyadic() = default;
    explicit Dyadic(double value);
    Dyadic(BigInt mantissa, std::int64_t exponent);

    int sign() const { return mantissa_.sign(); }
    bool is_zero() const { return mantissa_.is_zero(); }

    Dyadic operator-() const;
    Dyadic operator+(const Dyadic& rhs) const;
    Dyadic operator-(const Dyadic& rhs) const;
    Dyadic operator*(const Dyadic& rhs) const;

    const BigInt& mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }

  private:
    BigInt mantissa_;
    std::int64_t exponent_ = 0;
};

// sign of (b - a) x (c - a), computed exactly. A floating-point filter
// resolves the vast majority of calls without touching BigInt.
int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy);

// sign of a*b + c*d, exact (filtered). Covers 2D dots and crosses of raw
// double vectors: cross(p,q) = p.x*q.y + (-p.y)*q.x, dot(p,q) = p.x*q.x + p.y*q.y.
int product_sum_sign(double a, double b, double c, double d);

// Exact sign helpers for the cone inequalities and Farkas checks.
// sign of <p, q>
int dot_sign(double px, double py, double qx, double qy);
// sign of <a - b, c - d>
int dot_diff_sign(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                  double dy);
// sign of (a - b) x (c - d)
int cross_diff_sign(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                    double dy);

} // namespace conetutte
