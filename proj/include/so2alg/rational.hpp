#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace so2alg {

/// Arbitrary-precision signed integer, sign/magnitude with base-2^32 limbs.
/// Magnitude is little-endian with no leading zero limbs; zero has sign 0
/// and an empty limb vector.
class BigInt {
  public:
    BigInt() : sign_(0) {}

    BigInt(long long v) : sign_(0) {
        if (v == 0) return;
        unsigned long long m;
        if (v < 0) {
            sign_ = -1;
            m = ~static_cast<unsigned long long>(v) + 1ull;
        } else {
            sign_ = 1;
            m = static_cast<unsigned long long>(v);
        }
        while (m) {
            limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
            m >>= 32;
        }
    }

    static BigInt from_string(const std::string& s) {
        size_t i = 0;
        int sg = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sg = -1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty digits");
        BigInt r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in \"" + s + "\"");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.limbs_.empty()) r.sign_ = sg;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && limbs_ == o.limbs_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const {
        if (sign_ != o.sign_) return sign_ < o.sign_;
        int c = cmp_mag(limbs_, o.limbs_);
        return sign_ >= 0 ? c < 0 : c > 0;
    }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt operator+(const BigInt& o) const {
        if (sign_ == 0) return o;
        if (o.sign_ == 0) return *this;
        BigInt r;
        if (sign_ == o.sign_) {
            r.limbs_ = add_mag(limbs_, o.limbs_);
            r.sign_ = sign_;
        } else {
            int c = cmp_mag(limbs_, o.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(limbs_, o.limbs_);
                r.sign_ = sign_;
            } else {
                r.limbs_ = sub_mag(o.limbs_, limbs_);
                r.sign_ = o.sign_;
            }
        }
        return r;
    }
    BigInt operator-(const BigInt& o) const { return *this + (-o); }

    BigInt operator*(const BigInt& o) const {
        if (sign_ == 0 || o.sign_ == 0) return BigInt();
        BigInt r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] +
                               r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            size_t k = i + o.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = sign_ * o.sign_;
        return r;
    }

    /// Truncated division (quotient rounds toward zero, as in C).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
        q.trim();
        r.trim();
        q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
    }

    BigInt operator/(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return q;
    }
    BigInt operator%(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.limbs_.empty() ? 0 : 1;
        b.sign_ = b.limbs_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
            a.sign_ = a.limbs_.empty() ? 0 : 1;
            b.sign_ = b.limbs_.empty() ? 0 : 1;
        }
        return a;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<uint32_t> m = limbs_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (sign_ < 0) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

    /// Valid only when the value fits; callers use it for small indices.
    long long to_ll() const {
        unsigned long long m = 0;
        if (limbs_.size() > 2) throw std::overflow_error("BigInt: to_ll overflow");
        for (size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
        if (m > 0x7fffffffffffffffull) throw std::overflow_error("BigInt: to_ll overflow");
        return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
    }

  private:
    int sign_;
    std::vector<uint32_t> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) sign_ = 0;
    }

    void mul_small(uint32_t f) {
        uint64_t carry = 0;
        for (auto& l : limbs_) {
            uint64_t cur = static_cast<uint64_t>(l) * f + carry;
            l = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }

    void add_small(uint32_t v) {
        uint64_t carry = v;
        for (size_t i = 0; carry && i < limbs_.size(); ++i) {
            uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
        if (!limbs_.empty() && sign_ == 0) sign_ = 1;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r = big;
        uint64_t carry = 0;
        for (size_t i = 0; i < small.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + small[i] + carry;
            r[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        for (size_t i = small.size(); carry && i < r.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + carry;
            r[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) {
                cur += 0x100000000ll;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on normalized magnitudes.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            uint64_t rem = 0;
            for (size_t i = a.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        int shift = 0;
        uint32_t top = b.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++shift;
        }
        std::vector<uint32_t> u = shl_bits(a, shift);
        std::vector<uint32_t> v = shl_bits(b, shift);
        size_t n = v.size(), m = u.size() - n + (u.size() >= n ? 0 : 0);
        if (u.size() < a.size() + 1) u.push_back(0);
        m = u.size() - n - 1;
        q.assign(m + 1, 0);
        for (size_t j = m + 1; j-- > 0;) {
            unsigned __int128 num =
                ((static_cast<unsigned __int128>(u[j + n]) << 64) |
                 (static_cast<uint64_t>(u[j + n - 1]) << 32) | u[j + n - 2]);
            unsigned __int128 den = (static_cast<uint64_t>(v[n - 1]) << 32) | v[n - 2];
            unsigned __int128 qhat = num / den;
            if (qhat > 0xffffffffu) qhat = 0xffffffffu;
            // multiply-subtract, fixing up at most twice
            while (true) {
                __int128 borrow = 0;
                std::vector<uint32_t> tmp(u.begin() + j, u.begin() + j + n + 1);
                bool neg = false;
                uint64_t carry = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t prod =
                        static_cast<uint64_t>(static_cast<uint32_t>(qhat)) * v[i] + carry;
                    carry = prod >> 32;
                    int64_t diff = static_cast<int64_t>(tmp[i]) -
                                   static_cast<int64_t>(prod & 0xffffffffu) -
                                   static_cast<int64_t>(borrow);
                    if (diff < 0) {
                        diff += 0x100000000ll;
                        borrow = 1;
                    } else
                        borrow = 0;
                    tmp[i] = static_cast<uint32_t>(diff);
                }
                int64_t diff = static_cast<int64_t>(tmp[n]) - static_cast<int64_t>(carry) -
                               static_cast<int64_t>(borrow);
                if (diff < 0) neg = true;
                tmp[n] = static_cast<uint32_t>(diff);
                if (!neg) {
                    std::copy(tmp.begin(), tmp.end(), u.begin() + j);
                    break;
                }
                qhat -= 1;
            }
            q[j] = static_cast<uint32_t>(qhat);
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        std::vector<uint32_t> rem(u.begin(), u.begin() + n);
        r = shr_bits(rem, shift);
        while (!r.empty() && r.back() == 0) r.pop_back();
    }

    static std::vector<uint32_t> shl_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) {
            auto r = a;
            return r;
        }
        std::vector<uint32_t> r(a.size() + 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] |= a[i] << s;
            r[i + 1] = a[i] >> (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<uint32_t> shr_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) return a;
        std::vector<uint32_t> r(a.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] >> s;
            if (i + 1 < a.size()) r[i] |= a[i + 1] << (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

/// Exact rational number. Always reduced, denominator > 0.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    /// Parses "p", "-p" or "p/q".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(BigInt::from_string(s), BigInt(1));
        return Rat(BigInt::from_string(s.substr(0, slash)),
                   BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rat operator-() const { return Rat(-num_, den_, no_normalize{}); }
    Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return (num_ * o.den_) < (o.num_ * den_); }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

  private:
    struct no_normalize {};
    Rat(BigInt n, BigInt d, no_normalize) : num_(std::move(n)), den_(std::move(d)) {}

    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

}  // namespace so2alg
