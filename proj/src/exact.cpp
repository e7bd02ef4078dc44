#include "conetutte/exact.hpp"

#include <cmath>
#include <cstdlib>

namespace conetutte {

namespace {

// Shewchuk's half-ulp epsilon (2^-53) and the static error bound for the
// 2D orientation determinant.
constexpr double kEps = 1.1102230246251565e-16;
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;

} // namespace

BigInt::BigInt(std::int64_t value) {
    if (value == 0) return;
    sign_ = value > 0 ? 1 : -1;
    std::uint64_t mag = value > 0 ? static_cast<std::uint64_t>(value)
                                  : ~static_cast<std::uint64_t>(value) + 1ull;
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
        mag >>= 32;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::compare_magnitude(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    const std::vector<std::uint32_t>* big = &a;
    const std::vector<std::uint32_t>* small = &b;
    if (big->size() < small->size()) std::swap(big, small);
    std::vector<std::uint32_t> out;
    out.reserve(big->size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big->size(); ++i) {
        std::uint64_t sum = carry + (*big)[i] + (i < small->size() ? (*small)[i] : 0u);
        out.push_back(static_cast<std::uint32_t>(sum & 0xffffffffu));
        carry = sum >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_magnitude(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow -
                            (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (diff < 0) {
            diff += 0x100000000ll;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(diff));
    }
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::operator+(const BigInt& rhs) const {
    if (sign_ == 0) return rhs;
    if (rhs.sign_ == 0) return *this;
    BigInt out;
    if (sign_ == rhs.sign_) {
        out.sign_ = sign_;
        out.limbs_ = add_magnitude(limbs_, rhs.limbs_);
    } else {
        int cmp = compare_magnitude(limbs_, rhs.limbs_);
        if (cmp == 0) return BigInt();
        if (cmp > 0) {
            out.sign_ = sign_;
            out.limbs_ = sub_magnitude(limbs_, rhs.limbs_);
        } else {
            out.sign_ = rhs.sign_;
            out.limbs_ = sub_magnitude(rhs.limbs_, limbs_);
        }
    }
    out.trim();
    return out;
}

BigInt BigInt::operator-(const BigInt& rhs) const { return *this + (-rhs); }

BigInt BigInt::operator*(const BigInt& rhs) const {
    if (sign_ == 0 || rhs.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = sign_ * rhs.sign_;
    out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            std::uint64_t cur = out.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[j] + carry;
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + rhs.limbs_.size();
        while (carry) {
            std::uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

BigInt BigInt::shifted_left(unsigned k) const {
    if (sign_ == 0 || k == 0) return *this;
    BigInt out;
    out.sign_ = sign_;
    unsigned limb_shift = k / 32;
    unsigned bit_shift = k % 32;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
        out.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(cur & 0xffffffffu);
        out.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(cur >> 32);
    }
    out.trim();
    return out;
}

int BigInt::compare(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    return sign_ * compare_magnitude(limbs_, rhs.limbs_);
}

double BigInt::to_double() const {
    double out = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) out = out * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -out : out;
}

Dyadic::Dyadic(double value) {
    if (value == 0.0) return;
    int exp = 0;
    double m = std::frexp(value, &exp); // value = m * 2^exp, |m| in [0.5, 1)
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    mantissa_ = BigInt(mant);
    exponent_ = exp - 53;
}

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {}

Dyadic Dyadic::operator-() const { return Dyadic(-mantissa_, exponent_); }

Dyadic Dyadic::operator+(const Dyadic& rhs) const {
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    std::int64_t e = exponent_ < rhs.exponent_ ? exponent_ : rhs.exponent_;
    BigInt a = mantissa_.shifted_left(static_cast<unsigned>(exponent_ - e));
    BigInt b = rhs.mantissa_.shifted_left(static_cast<unsigned>(rhs.exponent_ - e));
    return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& rhs) const { return *this + (-rhs); }

Dyadic Dyadic::operator*(const Dyadic& rhs) const {
    if (is_zero() || rhs.is_zero()) return Dyadic();
    return Dyadic(mantissa_ * rhs.mantissa_, exponent_ + rhs.exponent_);
}

namespace {

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    Dyadic dax(ax), day(ay), dbx(bx), dby(by), dcx(cx), dcy(cy);
    Dyadic det = (dbx - dax) * (dcy - day) - (dby - day) * (dcx - dax);
    return det.sign();
}

} // namespace

int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy) {
    double detleft = (bx - ax) * (cy - ay);
    double detright = (by - ay) * (cx - ax);
    double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }
    double errbound = kCcwErrBound * detsum;
    if (det >= errbound) return 1;
    if (-det >= errbound) return -1;
    return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int product_sum_sign(double a, double b, double c, double d) {
    double t1 = a * b;
    double t2 = c * d;
    double sum = t1 + t2;
    double errbound = kCcwErrBound * (std::abs(t1) + std::abs(t2));
    if (sum > errbound) return 1;
    if (-sum > errbound) return -1;
    return (Dyadic(a) * Dyadic(b) + Dyadic(c) * Dyadic(d)).sign();
}

int dot_sign(double px, double py, double qx, double qy) {
    Dyadic d = Dyadic(px) * Dyadic(qx) + Dyadic(py) * Dyadic(qy);
    return d.sign();
}

int dot_diff_sign(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                  double dy) {
    Dyadic ux = Dyadic(ax) - Dyadic(bx), uy = Dyadic(ay) - Dyadic(by);
    Dyadic vx = Dyadic(cx) - Dyadic(dx), vy = Dyadic(cy) - Dyadic(dy);
    return (ux * vx + uy * vy).sign();
}

int cross_diff_sign(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                    double dy) {
    Dyadic ux = Dyadic(ax) - Dyadic(bx), uy = Dyadic(ay) - Dyadic(by);
    Dyadic vx = Dyadic(cx) - Dyadic(dx), vy = Dyadic(cy) - Dyadic(dy);
    return (ux * vy - uy * vx).sign();
}

} // namespace conetutte
