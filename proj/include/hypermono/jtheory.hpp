#pragma once
#include "intmat.hpp"
#include "series.hpp"

#include <array>

/* K-theory of CP^4: K^0 = Z[x]/(x^5) and KO^0 = Z[y]/(y^3) on their reduced
 * parts, with complexification, realification, Adams operations, the 2-local
 * J-kernel lattice, and the James-periodicity membership verdicts. */

namespace hypermono {

struct KClass {
    std::array<Int, 4> c{};  /* coefficients of x, x^2, x^3, x^4 */

    KClass() = default;
    KClass(Int x1, Int x2, Int x3, Int x4) : c{std::move(x1), std::move(x2), std::move(x3), std::move(x4)} {}

    static KClass x_power(int j)
    {
        if (j < 1 || j > 4)
            throw std::invalid_argument("KClass::x_power: exponent out of range");
        KClass k;
        k.c[j - 1] = 1;
        return k;
    }

    bool is_zero() const
    {
        for (const Int& v : c)
            if (v != 0)
                return false;
        return true;
    }
    bool operator==(const KClass& o) const { return c == o.c; }
    KClass operator+(const KClass& o) const
    {
        KClass r;
        for (int i = 0; i < 4; ++i)
            r.c[i] = c[i] + o.c[i];
        return r;
    }
    KClass operator-(const KClass& o) const
    {
        KClass r;
        for (int i = 0; i < 4; ++i)
            r.c[i] = c[i] - o.c[i];
        return r;
    }

    TruncatedSeries to_series() const
    {
        TruncatedSeries s(0, 4);
        for (int i = 0; i < 4; ++i)
            s.set_coeff(i + 1, c[i]);
        return s;
    }
    static KClass from_series(const TruncatedSeries& s)
    {
        if (s.coeff(0) != 0)
            throw std::invalid_argument("KClass::from_series: nonzero constant term");
        KClass k;
        for (int i = 0; i < 4; ++i)
            k.c[i] = s.coeff(i + 1);
        return k;
    }
};

struct KOClass {
    Int y;   /* coefficient of y */
    Int y2;  /* coefficient of y^2 */

    KOClass() : y(0), y2(0) {}
    KOClass(Int cy, Int cy2) : y(std::move(cy)), y2(std::move(cy2)) {}

    bool is_zero() const { return y == 0 && y2 == 0; }
    bool operator==(const KOClass& o) const { return y == o.y && y2 == o.y2; }
    KOClass operator+(const KOClass& o) const { return KOClass(y + o.y, y2 + o.y2); }
    KOClass operator-(const KOClass& o) const { return KOClass(y - o.y, y2 - o.y2); }
};

/* c(y) = x^2 - x^3 + x^4 and c(y^2) = x^4, extended linearly */
inline KClass complexify(const KOClass& k)
{
    KClass r;
    r.c[1] = k.y;
    r.c[2] = -k.y;
    r.c[3] = k.y + k.y2;
    return r;
}

/* psi^k on K-classes: x^j -> ((1+x)^k - 1)^j, any integer k */
inline KClass adams_psi_C(long k, const KClass& cls)
{
    TruncatedSeries base = TruncatedSeries::binomial(k, 1, 0, 4) - TruncatedSeries::one(0, 4);
    TruncatedSeries acc(0, 4);
    TruncatedSeries pw = TruncatedSeries::one(0, 4);
    for (int j = 1; j <= 4; ++j) {
        pw = pw * base;
        TruncatedSeries term(0, 4);
        for (std::size_t i = 0; i <= 4; ++i)
            term.set_coeff(i, pw.coeff(i) * cls.c[j - 1]);
        acc = acc + term;
    }
    return KClass::from_series(acc);
}

/* r is pinned by c(r(z)) = z + psi^{-1}(z) and the injectivity of c; solving
 * against the image basis gives the y and y^2 coordinates directly. */
inline KOClass realify(const KClass& cls)
{
    KClass t = cls + adams_psi_C(-1, cls);
    Int alpha = t.c[1];
    Int beta = t.c[3] - alpha;
    if (t.c[0] != 0 || t.c[2] != -alpha)
        throw std::logic_error("realify: class not of the form c(KO class)");
    return KOClass(alpha, beta);
}

/* psi^k(y) = k^2 y + (1/12) k^2 (k^2 - 1) y^2, psi^k(y^2) = k^4 y^2; the
 * division by 12 is exact for every integer k */
inline KOClass adams_psi_R(long k, const KOClass& cls)
{
    Int k2 = Int(k) * k;
    Int num = k2 * (k2 - 1);
    if (num % 12 != 0)
        throw std::logic_error("adams_psi_R: k^2(k^2-1) not divisible by 12");
    Int mixed = num / 12;
    return KOClass(k2 * cls.y, mixed * cls.y + k2 * k2 * cls.y2);
}

/* generators (psi^k - 1)y and (psi^k - 1)y^2 in (y, y^2) coordinates */
inline std::vector<std::vector<Int>> j2_kernel_lattice(const std::vector<long>& ks)
{
    if (ks.empty())
        throw std::invalid_argument("j2_kernel_lattice: need at least one k");
    std::vector<std::vector<Int>> rows;
    for (long k : ks) {
        KOClass a = adams_psi_R(k, KOClass(1, 0)) - KOClass(1, 0);
        KOClass b = adams_psi_R(k, KOClass(0, 1)) - KOClass(0, 1);
        rows.push_back({a.y, a.y2});
        rows.push_back({b.y, b.y2});
    }
    return rows;
}

struct JamesPeriodicityVerdict {
    long d = 0;
    long target_shift = 0;
    bool holds = false;
};

/* Does r(O(d) - 5 O(1) + 4) = psi^d(y) - 5y agree with the claimed shifted
 * class modulo the 2-local J-kernel lattice?  The default shift is 2^6-5 for
 * d = 0 mod 8 and 2^5-5 for d = 4 mod 8. */
inline JamesPeriodicityVerdict james_periodicity_check(long d, long shift)
{
    if (d % 4 != 0)
        throw std::invalid_argument("james_periodicity_check: need 4 | d");
    KOClass z = adams_psi_R(d, KOClass(1, 0)) - KOClass(5, 0);
    KOClass diff = z - KOClass(shift, 0);
    JamesPeriodicityVerdict v;
    v.d = d;
    v.target_shift = shift;
    v.holds = lattice_membership_2local(j2_kernel_lattice({3}), {diff.y, diff.y2});
    return v;
}

inline JamesPeriodicityVerdict james_periodicity_check(long d)
{
    if (d % 4 != 0)
        throw std::invalid_argument("james_periodicity_check: need 4 | d");
    return james_periodicity_check(d, d % 8 == 0 ? 59 : 27);
}

}  // namespace hypermono
