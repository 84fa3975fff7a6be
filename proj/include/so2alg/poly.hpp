#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "so2alg/rational.hpp"

namespace so2alg {

/// Sparse Laurent polynomial in the Euler class c (deg c = -2).
/// Powers may be negative; ordinary polynomials simply stay >= 0.
class CPoly {
  public:
    CPoly() = default;
    explicit CPoly(const Rat& r) {
        if (!r.is_zero()) terms_[0] = r;
    }
    static CPoly monomial(const Rat& coeff, int power) {
        CPoly p;
        if (!coeff.is_zero()) p.terms_[power] = coeff;
        return p;
    }

    const std::map<int, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    int min_power() const { return terms_.begin()->first; }

    Rat coeff(int power) const {
        auto it = terms_.find(power);
        return it == terms_.end() ? Rat() : it->second;
    }

    CPoly operator+(const CPoly& o) const {
        CPoly r = *this;
        for (const auto& [p, c] : o.terms_) r.add_term(p, c);
        return r;
    }
    CPoly operator-(const CPoly& o) const {
        CPoly r = *this;
        for (const auto& [p, c] : o.terms_) r.add_term(p, -c);
        return r;
    }
    CPoly operator*(const CPoly& o) const {
        CPoly r;
        for (const auto& [p1, c1] : terms_)
            for (const auto& [p2, c2] : o.terms_) r.add_term(p1 + p2, c1 * c2);
        return r;
    }
    bool operator==(const CPoly& o) const { return terms_ == o.terms_; }

    void add_term(int power, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(power, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Renders like "3c^2-1/2c+4" or "2c^-3"; zero renders as "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [p, c] = *it;
            std::string cs = c.to_string();
            bool neg = cs.size() && cs[0] == '-';
            if (!out.empty()) out += neg ? "-" : "+";
            else if (neg)
                out += "-";
            std::string mag = neg ? cs.substr(1) : cs;
            if (p == 0) {
                out += mag;
            } else {
                if (mag != "1") out += mag;
                out += "c";
                if (p != 1) out += "^" + std::to_string(p);
            }
        }
        return out;
    }

    /// Parses the format produced by to_string.
    static CPoly parse(const std::string& s) {
        CPoly out;
        size_t i = 0;
        if (s == "0") return out;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+') ++i;
            else if (s[i] == '-') {
                sign = -1;
                ++i;
            }
            std::string num;
            while (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
                num.push_back(s[i++]);
            Rat coeff = num.empty() ? Rat(1) : Rat::parse(num);
            if (sign < 0) coeff = -coeff;
            int power = 0;
            if (i < s.size() && s[i] == 'c') {
                ++i;
                power = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    std::string pw;
                    if (i < s.size() && s[i] == '-') pw.push_back(s[i++]);
                    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i])))
                        pw.push_back(s[i++]);
                    if (pw.empty() || pw == "-")
                        throw std::invalid_argument("CPoly: bad exponent in \"" + s + "\"");
                    power = std::stoi(pw);
                }
            } else if (num.empty()) {
                throw std::invalid_argument("CPoly: bad term in \"" + s + "\"");
            }
            out.add_term(power, coeff);
        }
        return out;
    }

  private:
    std::map<int, Rat> terms_;
};

}  // namespace so2alg
