#pragma once
#include "series.hpp"

#include <string>

/* Closed-form invariants of the smooth degree-d hypersurface X_d in CP^4.
 * Conventions: x is the restricted hyperplane class (degree 2); on X_d the
 * square satisfies x^2 = d*y where y generates H^4(X_d;Z), so converting a
 * coefficient from the x^2-basis to the y-basis multiplies by d.  theta-bar
 * denotes the stable tangent bundle twisted so that its total Chern class is
 * (1+x)^5 / (1+dx). */

namespace hypermono {

struct HypersurfaceInvariants {
    long d = 0;
    Int c1, c2, c3;      /* tangent Chern coefficients in the x-basis */
    Int euler_char;      /* chi = c3 * d */
    Int b3;              /* rank of H^3 = 4 - chi */
    Int g;               /* half of b3 */
    Int p1_coeff;        /* first Pontrjagin class, y-basis: (5 - d^2) d */
    bool spin = false;   /* X_d is Spin iff d is odd */
    int v4_coeff_mod2 = 0;  /* 4th Wu class of theta-bar, coefficient of x^2 */
};

/* Total Chern class of the tangent bundle, (1+x)^5 / (1+dx), over Z. */
inline TruncatedSeries chern_series_tangent(long d, std::size_t trunc)
{
    auto num = TruncatedSeries::one_plus_ax(1, 0, trunc).pow(5);
    auto den = TruncatedSeries::one_plus_ax(d, 0, trunc);
    return num * den.inverse();
}

/* Total Stiefel-Whitney class of theta-bar, (1+x)^5 / (1+dx) mod 2. */
inline TruncatedSeries stiefel_whitney_series(long d, std::size_t trunc)
{
    auto num = TruncatedSeries::one_plus_ax(1, 2, trunc).pow(5);
    auto den = TruncatedSeries::one_plus_ax(d, 2, trunc);
    return num * den.inverse();
}

/* Total Chern class of -theta-bar reduced mod 3: (1+dx) / (1+x)^5. */
inline TruncatedSeries chern_series_negative_mod3(long d, std::size_t trunc)
{
    auto num = TruncatedSeries::one_plus_ax(d, 3, trunc);
    auto den = TruncatedSeries::one_plus_ax(1, 3, trunc).pow(5);
    return num * den.inverse();
}

/* Wu class v4 of theta-bar computed from the Wu formula
 * v4 = w4 + w3 w1 + w2^2 + w1^4.  The series variable x has degree 2, so
 * w1 = w3 = 0, w2 = coeff(x), w4 = coeff(x^2); returns the x^2-coefficient. */
inline int wu_v4_from_w_series(long d)
{
    auto w = stiefel_whitney_series(d, 2);
    Int v4 = w.coeff(2) + w.coeff(1) * w.coeff(1);
    return int(v4 % 2);
}

inline HypersurfaceInvariants compute_invariants(long d)
{
    if (d < 1)
        throw std::invalid_argument("compute_invariants: degree must be >= 1");
    HypersurfaceInvariants h;
    h.d = d;
    Int D = d;
    h.c1 = 5 - D;
    h.c2 = D * D - 5 * D + 10;
    h.c3 = -D * D * D + 5 * D * D - 10 * D + 10;
    h.euler_char = h.c3 * D;
    h.b3 = 4 - h.euler_char;
    h.g = h.b3 / 2;
    h.p1_coeff = (5 - D * D) * D;
    h.spin = (d % 2 != 0);
    h.v4_coeff_mod2 = int((1 + D) % 2);
    return h;
}

/* x^2 = d*y: convert an x^2-basis coefficient to the y-basis. */
inline Int x2_coeff_to_y_basis(long d, const Int& coeff) { return coeff * d; }

/* The restriction of the quadratic refinement to the Z/d torsion summand of
 * pi_3(X_d), as a homomorphism Z/d -> Z/2: zero for odd d, the unique
 * surjection for even d. */
struct MuOnEta {
    long d = 0;
    bool surjective = false;  /* value on a generator of Z/d */

    std::string to_string() const
    {
        if (d == 1)
            return "0 -> Z/2 (trivial)";
        return surjective ? "Z/" + std::to_string(d) + " ->> Z/2 (1 maps to 1)"
                          : "Z/" + std::to_string(d) + " -> Z/2 (zero map)";
    }
};

inline MuOnEta mu_restriction_on_eta(long d)
{
    if (d < 1)
        throw std::invalid_argument("mu_restriction_on_eta: degree must be >= 1");
    return MuOnEta{d, d % 2 == 0};
}

}  // namespace hypermono
