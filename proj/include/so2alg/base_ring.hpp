#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "so2alg/rational.hpp"

namespace so2alg {

/// One graded slice of prod_{n>=1} Q: a rational for every component index n,
/// eventually constant. Normal form: no exception entry equals the tail.
class TailSeq {
  public:
    TailSeq() = default;
    explicit TailSeq(const Rat& tail) : tail_(tail) {}
    TailSeq(std::map<int, Rat> exceptions, Rat tail) : exc_(std::move(exceptions)), tail_(tail) {
        for (const auto& [n, v] : exc_)
            if (n < 1) throw std::invalid_argument("TailSeq: component index must be >= 1");
        normalize();
    }

    const Rat& tail() const { return tail_; }
    const std::map<int, Rat>& exceptions() const { return exc_; }

    Rat at(int n) const {
        auto it = exc_.find(n);
        return it == exc_.end() ? tail_ : it->second;
    }

    bool is_zero() const { return tail_.is_zero() && exc_.empty(); }
    bool has_finite_support() const { return tail_.is_zero(); }

    bool operator==(const TailSeq& o) const { return tail_ == o.tail_ && exc_ == o.exc_; }
    bool operator!=(const TailSeq& o) const { return !(*this == o); }

    TailSeq operator+(const TailSeq& o) const {
        TailSeq r;
        r.tail_ = tail_ + o.tail_;
        for (const auto& [n, v] : exc_) r.exc_[n] = v + o.at(n);
        for (const auto& [n, v] : o.exc_)
            if (!exc_.count(n)) r.exc_[n] = tail_ + v;
        r.normalize();
        return r;
    }

    TailSeq operator-() const {
        TailSeq r;
        r.tail_ = -tail_;
        for (const auto& [n, v] : exc_) r.exc_[n] = -v;
        return r;
    }
    TailSeq operator-(const TailSeq& o) const { return *this + (-o); }

    /// Componentwise product.
    TailSeq operator*(const TailSeq& o) const {
        TailSeq r;
        r.tail_ = tail_ * o.tail_;
        for (const auto& [n, v] : exc_) r.exc_[n] = v * o.at(n);
        for (const auto& [n, v] : o.exc_)
            if (!exc_.count(n)) r.exc_[n] = tail_ * v;
        r.normalize();
        return r;
    }

    TailSeq scaled(const Rat& s) const {
        TailSeq r;
        r.tail_ = tail_ * s;
        for (const auto& [n, v] : exc_) r.exc_[n] = v * s;
        r.normalize();
        return r;
    }

  private:
    std::map<int, Rat> exc_;
    Rat tail_;

    void normalize() {
        for (auto it = exc_.begin(); it != exc_.end();)
            it = (it->second == tail_) ? exc_.erase(it) : std::next(it);
    }
};

/// Element of the effective subring of O_F = prod_n Q[c_n].
/// Slice k holds the coefficients of c_n^k, sitting in degree -2k.
class OFElem {
  public:
    OFElem() = default;
    explicit OFElem(std::map<int, TailSeq> slices) : slices_(std::move(slices)) {
        for (const auto& [k, s] : slices_)
            if (k < 0) throw std::invalid_argument("OFElem: negative c-power");
        normalize();
    }

    static OFElem zero() { return OFElem(); }
    static OFElem one() { return OFElem({{0, TailSeq(Rat(1))}}); }

    /// The Euler class c, the unique element with c_n = e_n c for all n.
    static OFElem euler_class() { return OFElem({{1, TailSeq(Rat(1))}}); }

    /// c_n: the Euler class of the single factor n.
    static OFElem c_n(int n) { return OFElem({{1, TailSeq({{n, Rat(1)}}, Rat(0))}}); }

    const std::map<int, TailSeq>& slices() const { return slices_; }
    TailSeq slice(int k) const {
        auto it = slices_.find(k);
        return it == slices_.end() ? TailSeq() : it->second;
    }
    bool is_zero() const { return slices_.empty(); }

    bool operator==(const OFElem& o) const { return slices_ == o.slices_; }
    bool operator!=(const OFElem& o) const { return !(*this == o); }

    OFElem operator+(const OFElem& o) const {
        OFElem r = *this;
        for (const auto& [k, s] : o.slices_) {
            auto [it, fresh] = r.slices_.try_emplace(k, s);
            if (!fresh) it->second = it->second + s;
        }
        r.normalize();
        return r;
    }
    OFElem operator-() const {
        OFElem r;
        for (const auto& [k, s] : slices_) r.slices_[k] = -s;
        return r;
    }
    OFElem operator-(const OFElem& o) const { return *this + (-o); }

  private:
    std::map<int, TailSeq> slices_;

    void normalize() {
        for (auto it = slices_.begin(); it != slices_.end();)
            it = it->second.is_zero() ? slices_.erase(it) : std::next(it);
    }

    friend OFElem of_mul(const OFElem&, const OFElem&);
    friend OFElem idempotent(const std::set<int>&, bool);
};

/// Degreewise product in O_F: convolution of c-power slices,
/// componentwise in each factor.
inline OFElem of_mul(const OFElem& x, const OFElem& y) {
    std::map<int, TailSeq> out;
    for (const auto& [j, sx] : x.slices())
        for (const auto& [k, sy] : y.slices()) {
            TailSeq prod = sx * sy;
            auto [it, fresh] = out.try_emplace(j + k, prod);
            if (!fresh) it->second = it->second + prod;
        }
    return OFElem(std::move(out));
}

/// e_phi for phi a finite set of components (cofinite = false) or the
/// complement of a finite set (cofinite = true).
inline OFElem idempotent(const std::set<int>& phi, bool cofinite = false) {
    std::map<int, Rat> exc;
    for (int n : phi) {
        if (n < 1) throw std::invalid_argument("idempotent: component index must be >= 1");
        exc[n] = cofinite ? Rat(0) : Rat(1);
    }
    TailSeq s(std::move(exc), cofinite ? Rat(1) : Rat(0));
    if (s.is_zero()) return OFElem::zero();
    return OFElem({{0, s}});
}

/// Element of the effective subring of E^{-1}O_F. Slice k again holds
/// coefficients of c^k (degree -2k); negative k (positive degree) slices
/// must have finite support, matching the product/sum dichotomy of the
/// localized ring.
class LocElem {
  public:
    LocElem() = default;
    explicit LocElem(std::map<int, TailSeq> slices) : slices_(std::move(slices)) {
        for (const auto& [k, s] : slices_)
            if (k < 0 && !s.has_finite_support())
                throw std::invalid_argument(
                    "LocElem: positive-degree slice must have finite support");
        normalize();
    }

    static LocElem zero() { return LocElem(); }
    static LocElem one() { return LocElem({{0, TailSeq(Rat(1))}}); }

    /// c_n^{-1}, the inverse of c_n within factor n.
    static LocElem c_n_inverse(int n) {
        return LocElem({{-1, TailSeq({{n, Rat(1)}}, Rat(0))}});
    }

    const std::map<int, TailSeq>& slices() const { return slices_; }
    TailSeq slice(int k) const {
        auto it = slices_.find(k);
        return it == slices_.end() ? TailSeq() : it->second;
    }
    bool is_zero() const { return slices_.empty(); }

    bool operator==(const LocElem& o) const { return slices_ == o.slices_; }
    bool operator!=(const LocElem& o) const { return !(*this == o); }

    LocElem operator+(const LocElem& o) const {
        std::map<int, TailSeq> out = slices_;
        for (const auto& [k, s] : o.slices_) {
            auto [it, fresh] = out.try_emplace(k, s);
            if (!fresh) it->second = it->second + s;
        }
        return LocElem(std::move(out));
    }
    LocElem operator-() const {
        std::map<int, TailSeq> out;
        for (const auto& [k, s] : slices_) out[k] = -s;
        return LocElem(std::move(out));
    }
    LocElem operator-(const LocElem& o) const { return *this + (-o); }

  private:
    std::map<int, TailSeq> slices_;

    void normalize() {
        for (auto it = slices_.begin(); it != slices_.end();)
            it = it->second.is_zero() ? slices_.erase(it) : std::next(it);
    }
};

/// The canonical inclusion O_F -> E^{-1}O_F. Degreewise injective since
/// O_F lives in non-positive degrees where both rings carry the full product.
inline LocElem localize_elem(const OFElem& x) {
    std::map<int, TailSeq> out;
    for (const auto& [k, s] : x.slices()) out[k] = s;
    return LocElem(std::move(out));
}

inline LocElem loc_mul(const LocElem& x, const LocElem& y) {
    std::map<int, TailSeq> out;
    for (const auto& [j, sx] : x.slices())
        for (const auto& [k, sy] : y.slices()) {
            TailSeq prod = sx * sy;
            auto [it, fresh] = out.try_emplace(j + k, prod);
            if (!fresh) it->second = it->second + prod;
        }
    return LocElem(std::move(out));
}

}  // namespace so2alg
