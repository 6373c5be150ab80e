#pragma once

/* The mod-p cohomology of the hypersurface Thom spectrum as a module over
 * the Steenrod algebra, for p = 2 (d even) and p = 3 (any d).
 *
 * The module is u * F_p[x] with |x| = 2, truncated at internal degree T.
 * The total operation on the Thom class is read off from the virtual-bundle
 * series (1 + d^{p-1} x^{p-1}) * (1 + x^{p-1})^{-5}, and extends to u * x^k
 * by the Cartan formula, which multiplies that series by (1 + x^{p-1})^k.
 * At p = 2 only even squares act (the module is evenly graded); at p = 3
 * the Bockstein acts by zero since every class is an integral reduction.
 */

#include <hypermono/series.hpp>
#include <hypermono/steenrod.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hypermono {

struct SteenrodModule {
    int p = 2;
    long d = 0;
    int T = 16;                 /* internal degree cap */
    std::size_t basis_count = 0; /* basis u * x^k for 0 <= k < basis_count */

    /* action[letter][k] lists the (target index, coefficient) pairs of the
     * letter applied to u * x^k; letters as in steenrod.hpp */
    std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> action;

    int degree_of(std::size_t k) const { return int(2 * k); }

    std::string basis_label(std::size_t k) const
    {
        if (k == 0)
            return "u";
        if (k == 1)
            return "u x";
        return "u x^" + std::to_string(k);
    }

    const std::vector<std::pair<std::size_t, int>>&
    apply_letter(int letter, std::size_t k) const
    {
        static const std::vector<std::pair<std::size_t, int>> empty;
        if (k >= basis_count)
            throw std::out_of_range("SteenrodModule: basis index out of range");
        if (letter < 0 || std::size_t(letter) >= action.size())
            return empty;
        return action[std::size_t(letter)][k];
    }

    /* dense matrix of one letter over the basis, rows = targets */
    std::vector<std::vector<int>> action_matrix(int letter) const
    {
        std::vector<std::vector<int>> m(basis_count,
                                        std::vector<int>(basis_count, 0));
        for (std::size_t k = 0; k < basis_count; ++k)
            for (const auto& [target, coeff] : apply_letter(letter, k))
                m[target][k] = coeff;
        return m;
    }
};

inline SteenrodModule thom_module(long d, int p, int T = -1)
{
    check_steenrod_prime(p, "thom_module");
    if (p == 2 && d % 2 != 0)
        throw std::invalid_argument(
            "thom_module: the mod-2 module needs d even");

    SteenrodModule m;
    m.p = p;
    m.d = d;
    m.T = T < 0 ? default_degree_cap(p) : T;
    m.basis_count = std::size_t(m.T / 2) + 1;

    std::size_t trunc = std::size_t(m.T) + 2;
    Int prime(p);
    long c = 1;
    for (int e = 0; e < p - 1; ++e)
        c = c * (((d % p) + p) % p) % p;
    TruncatedSeries factor(prime, trunc);
    factor.set_coeff(0, 1);
    factor.set_coeff(std::size_t(p - 1), c);
    TruncatedSeries base = factor * TruncatedSeries::binomial(-5, std::size_t(p - 1),
                                                              prime, trunc);

    /* letters with any effect: Sq^{2i} at p = 2, P^i at p = 3; the largest
     * useful letter moves the bottom class to the top of the range */
    int max_letter = p == 2 ? m.T : m.T / 4;
    m.action.assign(std::size_t(max_letter) + 1, {});
    for (auto& per_letter : m.action)
        per_letter.assign(m.basis_count, {});

    for (std::size_t k = 0; k < m.basis_count; ++k) {
        TruncatedSeries total =
            base * TruncatedSeries::binomial(Int(long(k)), std::size_t(p - 1),
                                             prime, trunc);
        for (int i = 1; i * (p == 2 ? 1 : 2) <= int(trunc); ++i) {
            int letter = p == 2 ? 2 * i : i;
            if (letter > max_letter)
                break;
            std::size_t target = k + std::size_t(p == 2 ? i : 2 * i);
            if (target >= m.basis_count)
                continue; /* truncated away */
            Int coeff = total.coeff(std::size_t((p - 1) * i));
            int cc = int(coeff.convert_to<long>());
            if (cc != 0)
                m.action[std::size_t(letter)][k].push_back({target, cc});
        }
    }
    return m;
}

/* the one-dimensional trivial module F_p concentrated in degree zero */
inline SteenrodModule ground_field_module(int p, int T = -1)
{
    check_steenrod_prime(p, "ground_field_module");
    SteenrodModule m;
    m.p = p;
    m.d = 0;
    m.T = T < 0 ? default_degree_cap(p) : T;
    m.basis_count = 1;
    return m;
}

/* apply a word (rightmost letter first) to an F_p vector over the basis */
inline std::vector<int> apply_word(const SteenrodModule& m, const Word& w,
                                   std::vector<int> vec)
{
    if (vec.size() != m.basis_count)
        throw std::invalid_argument("apply_word: vector has wrong length");
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        std::vector<int> next(m.basis_count, 0);
        for (std::size_t k = 0; k < m.basis_count; ++k) {
            if (vec[k] == 0)
                continue;
            for (const auto& [target, coeff] : m.apply_letter(*it, k))
                next[target] = (next[target] + vec[k] * coeff) % m.p;
        }
        vec = std::move(next);
    }
    return vec;
}

inline std::vector<int> apply_element(const SteenrodModule& m,
                                      const SteenrodElement& e,
                                      const std::vector<int>& vec)
{
    if (e.p != m.p)
        throw std::invalid_argument("apply_element: mixed primes");
    std::vector<int> out(m.basis_count, 0);
    for (const auto& [w, c] : e.terms) {
        std::vector<int> part = apply_word(m, w, vec);
        for (std::size_t k = 0; k < m.basis_count; ++k)
            out[k] = (out[k] + c * part[k]) % m.p;
    }
    return out;
}

} // namespace hypermono
