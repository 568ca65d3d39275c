#pragma once

// Elements of T = K(t), t^h = c, in the power basis 1, t, ..., t^(h-1) over K.

#include <string>
#include <vector>

#include "cmtwist/numerics.hpp"
#include "cmtwist/quadfield.hpp"

namespace cmtwist {

class TElement {
 public:
  TElement() = default;

  TElement(KElement c, std::vector<KElement> coeffs) : c_(std::move(c)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("TElement needs at least one coefficient");
  }

  static TElement from_k(const KElement& c, int h, const KElement& x) {
    std::vector<KElement> coeffs(static_cast<std::size_t>(h), KElement(x.q(), 0, 0));
    coeffs[0] = x;
    return TElement(c, std::move(coeffs));
  }

  /// u * t^j for 0 <= j < h.
  static TElement monomial(const KElement& c, int h, const KElement& u, int j) {
    std::vector<KElement> coeffs(static_cast<std::size_t>(h), KElement(u.q(), 0, 0));
    coeffs.at(static_cast<std::size_t>(j)) = u;
    return TElement(c, std::move(coeffs));
  }

  int h() const { return static_cast<int>(coeffs_.size()); }
  const KElement& c() const { return c_; }
  const std::vector<KElement>& coeffs() const { return coeffs_; }
  const KElement& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }

  bool is_zero() const {
    for (const KElement& k : coeffs_) {
      if (!k.is_zero()) return false;
    }
    return true;
  }

  friend TElement operator+(const TElement& x, const TElement& y) {
    check(x, y);
    std::vector<KElement> out(x.coeffs_);
    for (int j = 0; j < x.h(); ++j) out[j] = out[j] + y.coeffs_[j];
    return TElement(x.c_, std::move(out));
  }

  friend TElement operator-(const TElement& x, const TElement& y) {
    check(x, y);
    std::vector<KElement> out(x.coeffs_);
    for (int j = 0; j < x.h(); ++j) out[j] = out[j] - y.coeffs_[j];
    return TElement(x.c_, std::move(out));
  }

  friend TElement operator*(const TElement& x, const TElement& y) {
    check(x, y);
    const int h = x.h();
    const KElement zero(x.c_.q(), 0, 0);
    std::vector<KElement> out(static_cast<std::size_t>(h), zero);
    for (int i = 0; i < h; ++i) {
      if (x.coeffs_[i].is_zero()) continue;
      for (int j = 0; j < h; ++j) {
        if (y.coeffs_[j].is_zero()) continue;
        const KElement p = x.coeffs_[i] * y.coeffs_[j];
        if (i + j < h) {
          out[i + j] = out[i + j] + p;
        } else {
          out[i + j - h] = out[i + j - h] + p * x.c_;
        }
      }
    }
    return TElement(x.c_, std::move(out));
  }

  friend TElement operator*(const TElement& x, const KElement& s) {
    std::vector<KElement> out(x.coeffs_);
    for (KElement& k : out) k = k * s;
    return TElement(x.c_, std::move(out));
  }

  friend bool operator==(const TElement& x, const TElement& y) {
    return x.c_ == y.c_ && x.coeffs_ == y.coeffs_;
  }
  friend bool operator!=(const TElement& x, const TElement& y) { return !(x == y); }

  /// Image in C under t -> t_iota.
  BigComplex embed(const BigComplex& t) const {
    const long prec = t.precision();
    BigComplex acc = BigComplex::zero(prec);
    for (int j = h() - 1; j >= 0; --j) {
      acc *= t;
      acc += coeffs_[j].to_complex(prec);
    }
    return acc;
  }

  std::string to_string() const {
    std::string out;
    for (int j = 0; j < h(); ++j) {
      if (j) out += " + ";
      out += "(" + coeffs_[j].to_string() + ")";
      if (j == 1) out += "*t";
      if (j > 1) out += "*t^" + std::to_string(j);
    }
    return out;
  }

 private:
  static void check(const TElement& x, const TElement& y) {
    if (x.h() != y.h() || x.c_ != y.c_) throw InvalidInput("TElements from different fields");
  }

  KElement c_;
  std::vector<KElement> coeffs_;
};

}  // namespace cmtwist
