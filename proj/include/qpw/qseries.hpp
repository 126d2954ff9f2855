#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "qpw/errors.hpp"
#include "qpw/rational.hpp"

namespace qpw {

namespace detail {

inline long gcd_pos(long a, long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

/// ceil(a/b) for b > 0, correct for negative a.
inline long ceil_div(long a, long b) {
    long q = a / b, r = a % b;
    return q + (r > 0 ? 1 : 0);
}

/// floor(a/b) for b > 0, correct for negative a.
inline long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return q - (r < 0 ? 1 : 0);
}

inline long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace detail

/// Truncated formal Laurent series in q^{1/D} over BigRational.
///
/// Exponents are scaled integers: term i of coeffs() is the coefficient of
/// q^{(min_exp()+i)/scale()}. Terms with scaled exponent >= prec() are
/// unknown. Values are immutable after construction; every operation is a
/// pure function, so series may be shared freely between threads.
///
/// Normal form: scale() is the smallest D representing the support (so
/// integer-exponent series always have D = 1), the leading stored
/// coefficient is nonzero, and a series that is zero to its precision has
/// min_exp() == prec() with no stored coefficients.
class QSeries {
  public:
    QSeries() : scale_(1), min_exp_(0), prec_(0) {}

    /// The zero series known through scaled exponent prec-1.
    static QSeries zero(long prec, long scale = 1) {
        QSeries s;
        s.scale_ = scale;
        s.min_exp_ = prec;
        s.prec_ = prec;
        s.normalize();
        return s;
    }

    /// c * q^{exp/scale}, known through scaled exponent prec-1. Requires prec > exp.
    static QSeries monomial(const BigRational& c, long exp, long scale, long prec) {
        if (prec <= exp) throw InsufficientPrecision("monomial: prec must exceed exponent");
        if (c == 0) return zero(prec, scale);
        QSeries s;
        s.scale_ = scale;
        s.min_exp_ = exp;
        s.prec_ = prec;
        s.coeffs_.assign(static_cast<size_t>(prec - exp), BigRational(0));
        s.coeffs_[0] = c;
        s.normalize();
        return s;
    }

    static QSeries one(long prec) { return monomial(BigRational(1), 0, 1, prec); }

    /// Adopts a dense block of coefficients for exponents
    /// [min_exp, min_exp + coeffs.size()) at the given scale; precision is
    /// min_exp + coeffs.size().
    static QSeries from_dense(long scale, long min_exp, std::vector<BigRational> coeffs) {
        QSeries s;
        s.scale_ = scale;
        s.min_exp_ = min_exp;
        s.prec_ = min_exp + static_cast<long>(coeffs.size());
        s.coeffs_ = std::move(coeffs);
        s.normalize();
        return s;
    }

    long scale() const { return scale_; }
    long min_exp() const { return min_exp_; }
    long prec() const { return prec_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }

    /// Coefficient of q^{e/scale()} for scaled e; zero off the support.
    const BigRational& at(long scaled_exp) const {
        if (scaled_exp >= prec_)
            throw InsufficientPrecision("coefficient_at: exponent " + std::to_string(scaled_exp) +
                                        "/" + std::to_string(scale_) + " is beyond precision " +
                                        std::to_string(prec_));
        static const BigRational kZero(0);
        if (scaled_exp < min_exp_) return kZero;
        return coeffs_[static_cast<size_t>(scaled_exp - min_exp_)];
    }

    /// Coefficient of q^{num/den} in whatever scale this series carries.
    BigRational coefficient_at(long num, long den = 1) const {
        // exponent num/den as a scaled exponent: num*scale_/den
        long n = num * scale_;
        if (n % den != 0) {
            // not representable on this grid: known zero if below precision
            if (detail::floor_div(n, den) >= prec_)
                throw InsufficientPrecision("coefficient_at: exponent beyond precision");
            return BigRational(0);
        }
        return at(n / den);
    }

    /// True if the series is a single monomial (to its precision); returns
    /// coefficient and scaled exponent.
    std::optional<std::pair<BigRational, long>> as_monomial() const {
        if (is_zero()) return std::nullopt;
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return std::make_pair(coeffs_[0], min_exp_);
    }

    /// Same series re-expressed with scale() == new_scale (a multiple of scale()).
    QSeries with_scale(long new_scale) const {
        if (new_scale == scale_) return *this;
        if (new_scale % scale_ != 0)
            throw Error("with_scale: target must be a multiple of the current scale");
        long m = new_scale / scale_;
        QSeries s;
        s.scale_ = new_scale;
        s.min_exp_ = min_exp_ * m;
        s.prec_ = prec_ * m;
        s.coeffs_.assign(static_cast<size_t>(s.prec_ - s.min_exp_), BigRational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i)
            s.coeffs_[i * m] = coeffs_[i];
        return s; // already normal except scale reduction, which would undo this
    }

    /// Knowledge truncated to scaled exponent < new_prec.
    QSeries truncated(long new_prec) const {
        if (new_prec >= prec_) return *this;
        QSeries s;
        s.scale_ = scale_;
        s.min_exp_ = std::min(min_exp_, new_prec);
        s.prec_ = new_prec;
        s.coeffs_.assign(coeffs_.begin(),
                         coeffs_.begin() + std::max<long>(0, new_prec - min_exp_));
        s.normalize();
        return s;
    }

  private:
    void normalize() {
        // strip leading zeros
        size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            min_exp_ += static_cast<long>(lead);
        }
        if (coeffs_.empty()) {
            min_exp_ = prec_;
            if (scale_ != 1) {
                prec_ = detail::ceil_div(prec_, scale_);
                min_exp_ = prec_;
                scale_ = 1;
            }
            return;
        }
        // drop unknown-range padding beyond prec (defensive for from_dense)
        if (static_cast<long>(coeffs_.size()) > prec_ - min_exp_)
            coeffs_.resize(static_cast<size_t>(prec_ - min_exp_));
        // reduce the scale to the smallest D representing the support
        if (scale_ > 1) {
            long g = scale_;
            for (size_t i = 0; i < coeffs_.size() && g > 1; ++i)
                if (coeffs_[i] != 0) g = detail::gcd_pos(g, min_exp_ + static_cast<long>(i));
            if (g > 1) {
                std::vector<BigRational> reduced;
                reduced.reserve(coeffs_.size() / g + 1);
                long new_min = min_exp_ / g; // min_exp divisible by g (leading coeff nonzero)
                long new_prec = detail::ceil_div(prec_, g);
                reduced.assign(static_cast<size_t>(new_prec - new_min), BigRational(0));
                for (size_t i = 0; i < coeffs_.size(); ++i)
                    if (coeffs_[i] != 0)
                        reduced[static_cast<size_t>((min_exp_ + static_cast<long>(i)) / g - new_min)] =
                            coeffs_[i];
                coeffs_ = std::move(reduced);
                min_exp_ = new_min;
                prec_ = new_prec;
                scale_ /= g;
            }
        }
    }

    long scale_;
    long min_exp_;
    long prec_;
    std::vector<BigRational> coeffs_;

    friend QSeries add_impl(const QSeries& f, const QSeries& g, bool subtract);
    friend QSeries operator*(const QSeries& f, const QSeries& g);
    friend QSeries invert(const QSeries& f);
    friend QSeries substitute(const QSeries& f, int sign, long u, long v);
    friend QSeries dissect(const QSeries& f, long residue, long modulus);
    friend QSeries mul_binomial(const QSeries& f, const BigRational& a, long k, long k_scale);
    friend QSeries div_binomial(const QSeries& f, const BigRational& a, long k, long k_scale);
};

/// Common scale for two series: lcm of the scales.
inline long common_scale(const QSeries& f, const QSeries& g) {
    return f.scale() / detail::gcd_pos(f.scale(), g.scale()) * g.scale();
}

inline QSeries add_impl(const QSeries& f0, const QSeries& g0, bool subtract) {
    long d = common_scale(f0, g0);
    QSeries f = f0.with_scale(d), g = g0.with_scale(d);
    long prec = std::min(f.prec_, g.prec_);
    long lo = std::min(std::min(f.min_exp_, g.min_exp_), prec);
    std::vector<BigRational> c(static_cast<size_t>(prec - lo), BigRational(0));
    for (long e = f.min_exp_; e < std::min(f.prec_, prec); ++e)
        c[static_cast<size_t>(e - lo)] = f.coeffs_[static_cast<size_t>(e - f.min_exp_)];
    for (long e = g.min_exp_; e < std::min(g.prec_, prec); ++e) {
        const BigRational& v = g.coeffs_[static_cast<size_t>(e - g.min_exp_)];
        if (subtract)
            c[static_cast<size_t>(e - lo)] -= v;
        else
            c[static_cast<size_t>(e - lo)] += v;
    }
    return QSeries::from_dense(d, lo, std::move(c));
}

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add_impl(f, g, false); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return add_impl(f, g, true); }

inline QSeries operator-(const QSeries& f) {
    std::vector<BigRational> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -f.coeffs()[i];
    return QSeries::from_dense(f.scale(), f.min_exp(), std::move(c)).truncated(f.prec());
}

inline QSeries operator*(const BigRational& k, const QSeries& f) {
    if (k == 0) return QSeries::zero(f.prec(), f.scale());
    std::vector<BigRational> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = k * f.coeffs()[i];
    return QSeries::from_dense(f.scale(), f.min_exp(), std::move(c)).truncated(f.prec());
}

/// Cauchy product. Result precision is min(prec_f + min_g, prec_g + min_f):
/// unknown tails of one factor shift by the other factor's leading exponent.
inline QSeries operator*(const QSeries& f0, const QSeries& g0) {
    long d = common_scale(f0, g0);
    QSeries f = f0.with_scale(d), g = g0.with_scale(d);
    long prec = std::min(f.prec_ + g.min_exp_, g.prec_ + f.min_exp_);
    if (f.is_zero() || g.is_zero()) return QSeries::zero(prec, d);
    long lo = f.min_exp_ + g.min_exp_;
    std::vector<BigRational> c(static_cast<size_t>(std::max<long>(prec - lo, 0)), BigRational(0));
    BigRational tmp;
    for (size_t i = 0; i < f.coeffs_.size(); ++i) {
        if (f.coeffs_[i] == 0) continue;
        long ei = f.min_exp_ + static_cast<long>(i);
        size_t jmax = std::min(g.coeffs_.size(), static_cast<size_t>(std::max<long>(
                                                     prec - ei - g.min_exp_, 0)));
        for (size_t j = 0; j < jmax; ++j) {
            if (g.coeffs_[j] == 0) continue;
            tmp = f.coeffs_[i] * g.coeffs_[j];
            c[static_cast<size_t>(ei + g.min_exp_ + static_cast<long>(j) - lo)] += tmp;
        }
    }
    return QSeries::from_dense(d, lo, std::move(c)).truncated(prec);
}

/// Laurent inverse: f * invert(f) = 1 to the available precision.
inline QSeries invert(const QSeries& f) {
    if (f.is_zero()) throw ZeroLeadingTerm("invert: series is zero to its precision");
    long m = f.min_exp_;
    long len = f.prec_ - m;
    const BigRational& lead = f.coeffs_[0];
    std::vector<BigRational> g(static_cast<size_t>(len), BigRational(0));
    g[0] = 1 / lead;
    BigRational acc, tmp;
    for (long j = 1; j < len; ++j) {
        acc = 0;
        long imax = std::min<long>(j, static_cast<long>(f.coeffs_.size()) - 1);
        for (long i = 1; i <= imax; ++i) {
            if (f.coeffs_[static_cast<size_t>(i)] == 0) continue;
            tmp = f.coeffs_[static_cast<size_t>(i)] * g[static_cast<size_t>(j - i)];
            acc += tmp;
        }
        g[static_cast<size_t>(j)] = -acc / lead;
    }
    return QSeries::from_dense(f.scale_, -m, std::move(g));
}

inline QSeries operator/(const QSeries& f, const QSeries& g) { return f * invert(g); }

/// f^k for integer k; negative k through invert.
inline QSeries pow(const QSeries& f, long k) {
    if (k == 0) return QSeries::one(std::max<long>(1, f.prec() - f.min_exp()));
    QSeries base = k < 0 ? invert(f) : f;
    long e = k < 0 ? -k : k;
    QSeries acc = base;
    for (long i = 1; i < e; ++i) acc = acc * base;
    return acc;
}

/// Term map a q^{e/D} -> a sign^{e/D} q^{e u /(D v)}. For sign = -1 every
/// populated exponent must be integral (divisible by D).
inline QSeries substitute(const QSeries& f, int sign, long u, long v) {
    if (u < 1 || v < 1) throw Error("substitute: u and v must be positive");
    if (sign != 1 && sign != -1) throw Error("substitute: sign must be +-1");
    long d = f.scale_ * v;
    long lo = f.min_exp_ * u;
    long prec = f.prec_ * u;
    std::vector<BigRational> c(static_cast<size_t>(std::max<long>(prec - lo, 0)), BigRational(0));
    for (size_t i = 0; i < f.coeffs_.size(); ++i) {
        if (f.coeffs_[i] == 0) continue;
        long e = f.min_exp_ + static_cast<long>(i);
        BigRational val = f.coeffs_[i];
        if (sign == -1) {
            if (e % f.scale_ != 0)
                throw FractionalSignSubstitution(
                    "substitute: q -> -q needs integral exponents, found " + std::to_string(e) +
                    "/" + std::to_string(f.scale_));
            if ((e / f.scale_) % 2 != 0) val = -val;
        }
        c[static_cast<size_t>(e * u - lo)] = val;
    }
    return QSeries::from_dense(d, lo, std::move(c)).truncated(prec);
}

/// Sub-series of terms whose scaled exponent is congruent to residue mod modulus.
inline QSeries dissect(const QSeries& f, long residue, long modulus) {
    if (modulus < 1) throw Error("dissect: modulus must be positive");
    residue = detail::mod_pos(residue, modulus);
    std::vector<BigRational> c(f.coeffs_.size(), BigRational(0));
    for (size_t i = 0; i < f.coeffs_.size(); ++i) {
        long e = f.min_exp_ + static_cast<long>(i);
        if (detail::mod_pos(e, modulus) == residue) c[i] = f.coeffs_[i];
    }
    return QSeries::from_dense(f.scale_, f.min_exp_, std::move(c)).truncated(f.prec_);
}

/// Multiply by the exact binomial (1 + a q^{k/k_scale}). Precision is
/// preserved for k >= 1 and erodes by |k| for k < 0 (Laurent factor).
inline QSeries mul_binomial(const QSeries& f0, const BigRational& a, long k, long k_scale = 1) {
    if (a == 0) return f0;
    long d = f0.scale_ / detail::gcd_pos(f0.scale_, k_scale) * k_scale;
    QSeries f = f0.with_scale(d);
    long ks = k * (d / k_scale);
    if (ks == 0) return (BigRational(1) + a) * f0;
    long lo = std::min(f.min_exp_, f.min_exp_ + ks);
    long prec = std::min(f.prec_, f.prec_ + ks);
    std::vector<BigRational> c(static_cast<size_t>(std::max<long>(prec - lo, 0)), BigRational(0));
    for (size_t i = 0; i < f.coeffs_.size(); ++i) {
        if (f.coeffs_[i] == 0) continue;
        long e = f.min_exp_ + static_cast<long>(i);
        if (e < prec) c[static_cast<size_t>(e - lo)] += f.coeffs_[i];
        if (e + ks < prec) c[static_cast<size_t>(e + ks - lo)] += a * f.coeffs_[i];
    }
    return QSeries::from_dense(d, lo, std::move(c)).truncated(prec);
}

/// Divide by the exact binomial (1 + a q^{k/k_scale}), k/k_scale > 0.
inline QSeries div_binomial(const QSeries& f0, const BigRational& a, long k, long k_scale = 1) {
    if (a == 0) return f0;
    long d = f0.scale_ / detail::gcd_pos(f0.scale_, k_scale) * k_scale;
    QSeries f = f0.with_scale(d);
    long ks = k * (d / k_scale);
    if (ks <= 0) throw Error("div_binomial: exponent must be positive");
    std::vector<BigRational> c(f.coeffs_.begin(), f.coeffs_.end());
    // g = f - a q^k g
    for (size_t i = static_cast<size_t>(ks); i < c.size(); ++i) {
        if (c[i - static_cast<size_t>(ks)] == 0) continue;
        c[i] -= a * c[i - static_cast<size_t>(ks)];
    }
    return QSeries::from_dense(d, f.min_exp_, std::move(c)).truncated(f.prec_);
}

/// Residues mod m of the coefficients from min_exp() through prec()-1.
/// Throws NonIntegralCoefficient (with the offending exponent) if any
/// coefficient in range is not an integer.
inline std::vector<long> reduce_mod(const QSeries& f, long m) {
    if (m < 1) throw Error("reduce_mod: modulus must be positive");
    std::vector<long> out;
    out.reserve(f.coeffs().size());
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const BigRational& c = f.coeffs()[i];
        if (!is_integer(c))
            throw NonIntegralCoefficient("reduce_mod: coefficient " + to_string(c) +
                                             " at exponent " +
                                             std::to_string(f.min_exp() + static_cast<long>(i)) +
                                             "/" + std::to_string(f.scale()) + " is not integral",
                                         f.min_exp() + static_cast<long>(i), f.scale());
        BigInt r = c.get_num() % m;
        long v = r.get_si();
        out.push_back(v < 0 ? v + m : v);
    }
    return out;
}

/// Scaled exponent of the first known coefficient not divisible by m, if any.
/// Throws NonIntegralCoefficient on fractional coefficients.
inline std::optional<long> first_nonzero_mod(const QSeries& f, long m) {
    std::vector<long> r = reduce_mod(f, m);
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) return f.min_exp() + static_cast<long>(i);
    return std::nullopt;
}

/// True when f and g have identical coefficients for every exponent
/// <= through/scale; throws if the common precision does not reach that far.
inline bool agree_through(const QSeries& f, const QSeries& g, long through, long scale = 1) {
    QSeries d = f - g;
    if (through * d.scale() >= d.prec() * scale)
        throw InsufficientPrecision("agree_through: difference known only below exponent " +
                                    std::to_string(d.prec()) + "/" + std::to_string(d.scale()));
    for (size_t i = 0; i < d.coeffs().size(); ++i) {
        long e = d.min_exp() + static_cast<long>(i);
        if (e * scale <= through * d.scale() && d.coeffs()[i] != 0) return false;
    }
    return true;
}

/// Identical support, coefficients, scale, and precision.
inline bool identical(const QSeries& f, const QSeries& g) {
    return f.scale() == g.scale() && f.min_exp() == g.min_exp() && f.prec() == g.prec() &&
           f.coeffs() == g.coeffs();
}

inline std::ostream& operator<<(std::ostream& os, const QSeries& f) {
    if (f.is_zero()) return os << "0 + O(q^" << f.prec() << "/" << f.scale() << ")";
    bool first = true;
    int shown = 0;
    for (size_t i = 0; i < f.coeffs().size() && shown < 24; ++i) {
        if (f.coeffs()[i] == 0) continue;
        long e = f.min_exp() + static_cast<long>(i);
        if (!first) os << " + ";
        os << to_string(f.coeffs()[i]);
        if (e != 0) {
            os << "*q^";
            if (f.scale() == 1)
                os << e;
            else
                os << "(" << e << "/" << f.scale() << ")";
        }
        first = false;
        ++shown;
    }
    return os << " + O(q^" << f.prec() << "/" << f.scale() << ")";
}

} // namespace qpw
