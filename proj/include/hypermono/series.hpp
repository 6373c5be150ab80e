#pragma once
#include "intmat.hpp"

/* Truncated power series in one variable with coefficients in Z (modulus 0)
 * or Z/p.  Used for characteristic-class arithmetic, where the variable is
 * the hyperplane class and everything lives below a fixed degree. */

namespace hypermono {

class TruncatedSeries {
  public:
    TruncatedSeries(Int modulus, std::size_t truncation_degree)
        : mod_(std::move(modulus)), c_(truncation_degree + 1)
    {
        if (mod_ < 0)
            throw std::invalid_argument("TruncatedSeries: negative modulus");
    }

    static TruncatedSeries one(Int modulus, std::size_t trunc)
    {
        TruncatedSeries s(std::move(modulus), trunc);
        s.set_coeff(0, 1);
        return s;
    }

    /* (1 + a x) */
    static TruncatedSeries one_plus_ax(const Int& a, Int modulus, std::size_t trunc)
    {
        TruncatedSeries s = one(std::move(modulus), trunc);
        if (trunc >= 1)
            s.set_coeff(1, a);
        return s;
    }

    /* (1 + x^k)^e for any integer exponent e (negative allowed), via the
     * generalized binomial series — exact in Z, reduced if a modulus is set. */
    static TruncatedSeries binomial(const Int& e, std::size_t k, Int modulus, std::size_t trunc)
    {
        if (k == 0)
            throw std::invalid_argument("TruncatedSeries::binomial: k must be positive");
        TruncatedSeries s(std::move(modulus), trunc);
        Int coeff = 1;  /* binom(e, j), built incrementally */
        for (std::size_t j = 0; k * j <= trunc; ++j) {
            s.set_coeff(k * j, coeff);
            coeff = coeff * (e - Int(j)) / Int(j + 1);
        }
        return s;
    }

    const Int& modulus() const { return mod_; }
    std::size_t truncation_degree() const { return c_.size() - 1; }

    Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
    void set_coeff(std::size_t k, Int v)
    {
        if (k >= c_.size())
            throw std::out_of_range("TruncatedSeries::set_coeff: degree beyond truncation");
        c_[k] = reduce(std::move(v));
    }

    bool operator==(const TruncatedSeries& o) const
    {
        return mod_ == o.mod_ && c_ == o.c_;
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const
    {
        check_compatible(o);
        TruncatedSeries r(mod_, truncation_degree());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = reduce(c_[i] + o.c_[i]);
        return r;
    }

    TruncatedSeries operator-(const TruncatedSeries& o) const
    {
        check_compatible(o);
        TruncatedSeries r(mod_, truncation_degree());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = reduce(c_[i] - o.c_[i]);
        return r;
    }

    TruncatedSeries operator*(const TruncatedSeries& o) const
    {
        check_compatible(o);
        TruncatedSeries r(mod_, truncation_degree());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0)
                continue;
            for (std::size_t j = 0; i + j < c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        for (Int& x : r.c_)
            x = reduce(std::move(x));
        return r;
    }

    /* Multiplicative inverse; the constant term must be a unit (±1 over Z,
     * nonzero mod p). */
    TruncatedSeries inverse() const
    {
        Int c0inv = unit_inverse(c_[0]);
        TruncatedSeries r(mod_, truncation_degree());
        r.c_[0] = reduce(c0inv);
        for (std::size_t n = 1; n < c_.size(); ++n) {
            Int acc = 0;
            for (std::size_t i = 1; i <= n; ++i)
                acc += c_[i] * r.c_[n - i];
            r.c_[n] = reduce(-c0inv * acc);
        }
        return r;
    }

    /* Substitute `inner` (constant term must vanish) for the variable. */
    TruncatedSeries compose(const TruncatedSeries& inner) const
    {
        check_compatible(inner);
        if (inner.c_[0] != 0)
            throw std::invalid_argument("TruncatedSeries::compose: inner constant term must be zero");
        TruncatedSeries r(mod_, truncation_degree());
        for (std::size_t k = c_.size(); k-- > 0;) {  /* Horner */
            r = r * inner;
            r.c_[0] = reduce(r.c_[0] + c_[k]);
        }
        return r;
    }

    TruncatedSeries pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        TruncatedSeries r = one(mod_, truncation_degree());
        TruncatedSeries base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1)
                r = r * base;
            base = base * base;
        }
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s)
    {
        bool first = true;
        for (std::size_t i = 0; i < s.c_.size(); ++i) {
            if (s.c_[i] == 0)
                continue;
            os << (first ? "" : " + ") << s.c_[i];
            if (i > 0)
                os << "*x^" << i;
            first = false;
        }
        if (first)
            os << "0";
        return os;
    }

  private:
    Int reduce(Int v) const
    {
        if (mod_ == 0)
            return v;
        Int r = v % mod_;
        if (r < 0)
            r += mod_;
        return r;
    }

    Int unit_inverse(const Int& c) const
    {
        if (mod_ == 0) {
            if (c != 1 && c != -1)
                throw std::invalid_argument("TruncatedSeries: constant term not a unit over Z");
            return c;
        }
        /* extended Euclid mod p */
        Int a = c % mod_, m = mod_, x0 = 1, x1 = 0;
        if (a < 0)
            a += mod_;
        if (a == 0)
            throw std::invalid_argument("TruncatedSeries: constant term not a unit mod p");
        Int b = m;
        while (b != 0) {
            Int q = a / b;
            Int t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        if (a != 1)
            throw std::invalid_argument("TruncatedSeries: constant term not invertible");
        return reduce(x0);
    }

    void check_compatible(const TruncatedSeries& o) const
    {
        if (mod_ != o.mod_ || c_.size() != o.c_.size())
            throw std::invalid_argument("TruncatedSeries: modulus or truncation mismatch");
    }

    Int mod_;
    std::vector<Int> c_;
};

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }
inline TruncatedSeries series_inv(const TruncatedSeries& a) { return a.inverse(); }
inline TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a.compose(b);
}

}  // namespace hypermono
