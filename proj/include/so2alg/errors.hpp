#pragma once

#include <stdexcept>
#include <string>

namespace so2alg {

/// The structure map fails to be an isomorphism after inverting the Euler
/// classes; carries the offending component (0 = tail) and a witness degree.
class NotInAError : public std::runtime_error {
  public:
    NotInAError(int component, int degree, const std::string& what)
        : std::runtime_error(what), component_(component), degree_(degree) {}
    int component() const { return component_; }
    int degree() const { return degree_; }

  private:
    int component_, degree_;
};

/// The requested construction leaves the finitely-describable class.
class NotEffectiveError : public std::runtime_error {
  public:
    explicit NotEffectiveError(const std::string& what) : std::runtime_error(what) {}
};

/// A windowed verification cannot certify its claim; widen to `needed`.
class WindowTooSmallError : public std::runtime_error {
  public:
    WindowTooSmallError(int needed_lo, int needed_hi, const std::string& what)
        : std::runtime_error(what), lo_(needed_lo), hi_(needed_hi) {}
    int needed_lo() const { return lo_; }
    int needed_hi() const { return hi_; }

  private:
    int lo_, hi_;
};

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace so2alg
