#pragma once

/* Bounded-degree mod-p Steenrod algebra for p = 2 and p = 3.
 *
 * Elements are F_p-linear combinations of admissible monomials.  A monomial
 * is a word of "letters": at p = 2 the letter i >= 1 stands for Sq^i, at
 * p = 3 the letter 0 stands for the Bockstein b and the letter s >= 1 for
 * P^s.  Products are re-expressed in the admissible basis with the Adem
 * relations, applied deterministically at the leftmost inadmissible spot.
 */

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypermono {

using Word = std::vector<int>;

inline void check_steenrod_prime(int p, const char* where)
{
    if (p != 2 && p != 3)
        throw std::invalid_argument(std::string(where) + ": prime must be 2 or 3");
}

/* internal degree caps; enough for charts with s <= 6, t - s <= 9 */
inline int default_degree_cap(int p) { return p == 2 ? 16 : 20; }

inline int letter_degree(int p, int letter)
{
    if (letter < 0)
        throw std::invalid_argument("letter_degree: negative letter");
    if (p == 2) {
        if (letter == 0)
            throw std::invalid_argument("letter_degree: Sq^0 is not a letter");
        return letter;
    }
    return letter == 0 ? 1 : 2 * (p - 1) * letter;
}

inline int word_degree(int p, const Word& w)
{
    int deg = 0;
    for (int letter : w)
        deg += letter_degree(p, letter);
    return deg;
}

/* Admissibility: at p = 2, i_j >= 2 i_{j+1}; at p = 3, for consecutive
 * P-letters s and s' (with e = 1 if a Bockstein sits between them, else 0)
 * we need s >= 3 s' + e, and no two adjacent Bocksteins. */
inline bool is_admissible(int p, const Word& w)
{
    check_steenrod_prime(p, "is_admissible");
    if (p == 2) {
        for (std::size_t j = 0; j + 1 < w.size(); ++j)
            if (w[j] < 2 * w[j + 1])
                return false;
        return true;
    }
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        if (w[j] == 0 && w[j + 1] == 0)
            return false;
        if (w[j] >= 1) {
            if (w[j + 1] >= 1 && w[j] < 3 * w[j + 1])
                return false;
            if (w[j + 1] == 0 && j + 2 < w.size() && w[j + 2] >= 1 &&
                w[j] < 3 * w[j + 2] + 1)
                return false;
        }
    }
    return true;
}

namespace detail {

/* binomial coefficient mod p for nonnegative arguments, by Lucas' theorem */
inline int binom_mod(long n, long k, int p)
{
    if (k < 0 || k > n)
        return 0;
    int result = 1;
    while (n > 0 || k > 0) {
        long nd = n % p, kd = k % p;
        if (kd > nd)
            return 0;
        /* digit binomial with nd, kd < p <= 3 */
        int digit = (nd == 2 && kd == 1) ? 2 : 1;
        result = result * digit % p;
        n /= p;
        k /= p;
    }
    return result;
}

} // namespace detail

/* A formal F_p-combination of monomials, kept in admissible normal form by
 * adem_reduce/multiply.  Coefficients are stored in 1..p-1. */
struct SteenrodElement {
    int p = 2;
    int degree_cap = 16;
    std::map<Word, int> terms;

    explicit SteenrodElement(int prime = 2, int cap = -1)
        : p(prime), degree_cap(cap < 0 ? default_degree_cap(prime) : cap)
    {
        check_steenrod_prime(prime, "SteenrodElement");
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, int coeff)
    {
        coeff %= p;
        if (coeff < 0)
            coeff += p;
        if (coeff == 0)
            return;
        int& c = terms[w];
        c = (c + coeff) % p;
        if (c == 0)
            terms.erase(w);
    }

    SteenrodElement& operator+=(const SteenrodElement& other)
    {
        if (other.p != p)
            throw std::invalid_argument("SteenrodElement: mixed primes");
        for (const auto& [w, c] : other.terms)
            add_term(w, c);
        return *this;
    }

    friend SteenrodElement operator+(SteenrodElement a, const SteenrodElement& b)
    {
        a += b;
        return a;
    }

    bool operator==(const SteenrodElement& other) const
    {
        return p == other.p && terms == other.terms;
    }

    std::string to_string() const
    {
        if (terms.empty())
            return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [w, c] : terms) {
            if (!first)
                out << " + ";
            first = false;
            if (c != 1 || w.empty())
                out << c;
            if (c != 1 && !w.empty())
                out << " ";
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (j)
                    out << " ";
                if (p == 2)
                    out << "Sq" << w[j];
                else if (w[j] == 0)
                    out << "b";
                else
                    out << "P" << w[j];
            }
        }
        return out.str();
    }
};

namespace detail {

/* Replace the (two- or three-letter) segment at position j by its Adem
 * expansion, appending the resulting words to the worklist. */
inline void adem_expand_at(int p, const Word& w, std::size_t j, int coeff,
                           std::vector<std::pair<Word, int>>& worklist)
{
    auto splice = [&](std::size_t erased, const Word& seg, int c) {
        if (c % p == 0)
            return;
        Word out(w.begin(), w.begin() + long(j));
        out.insert(out.end(), seg.begin(), seg.end());
        out.insert(out.end(), w.begin() + long(j + erased), w.end());
        worklist.emplace_back(std::move(out), coeff * c);
    };

    if (p == 2) {
        int a = w[j], b = w[j + 1]; /* a < 2b */
        for (int c = 0; c <= a / 2; ++c) {
            int bin = binom_mod(b - c - 1, a - 2 * c, 2);
            if (bin == 0)
                continue;
            if (c == 0)
                splice(2, {a + b}, 1);
            else
                splice(2, {a + b - c, c}, 1);
        }
        return;
    }

    if (w[j] == 0 && w[j + 1] == 0)
        return; /* b b = 0 */

    if (w[j + 1] >= 1) {
        int a = w[j], b = w[j + 1]; /* a < 3b */
        for (int t = 0; t <= a / 3; ++t) {
            int bin = binom_mod(2 * (b - t) - 1, a - 3 * t, 3);
            if (bin == 0)
                continue;
            int sign = (a + t) % 2 == 0 ? 1 : -1;
            if (t == 0)
                splice(2, {a + b}, sign * bin);
            else
                splice(2, {a + b - t, t}, sign * bin);
        }
        return;
    }

    /* P^a b P^b with a <= 3b */
    int a = w[j], b = w[j + 2];
    for (int t = 0; t <= a / 3; ++t) {
        int bin = binom_mod(2 * (b - t), a - 3 * t, 3);
        if (bin != 0) {
            int sign = (a + t) % 2 == 0 ? 1 : -1;
            if (t == 0)
                splice(3, {0, a + b}, sign * bin);
            else
                splice(3, {0, a + b - t, t}, sign * bin);
        }
    }
    for (int t = 0; 3 * t + 1 <= a; ++t) {
        int bin = binom_mod(2 * (b - t) - 1, a - 3 * t - 1, 3);
        if (bin != 0) {
            int sign = (a + t) % 2 == 0 ? -1 : 1;
            if (t == 0)
                splice(3, {a + b, 0}, sign * bin);
            else
                splice(3, {a + b - t, 0, t}, sign * bin);
        }
    }
}

/* Leftmost position where an Adem relation applies, or npos. */
inline std::size_t leftmost_inadmissible(int p, const Word& w)
{
    if (p == 2) {
        for (std::size_t j = 0; j + 1 < w.size(); ++j)
            if (w[j] < 2 * w[j + 1])
                return j;
        return std::string::npos;
    }
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        if (w[j] == 0 && w[j + 1] == 0)
            return j;
        if (w[j] >= 1 && w[j + 1] >= 1 && w[j] < 3 * w[j + 1])
            return j;
        if (w[j] >= 1 && w[j + 1] == 0 && j + 2 < w.size() && w[j + 2] >= 1 &&
            w[j] <= 3 * w[j + 2])
            return j;
    }
    return std::string::npos;
}

} // namespace detail

/* Normal form of coeff * word in the admissible basis. */
inline SteenrodElement adem_reduce(int p, const Word& word, int coeff = 1,
                                   int degree_cap = -1)
{
    check_steenrod_prime(p, "adem_reduce");
    SteenrodElement result(p, degree_cap);
    int deg = word_degree(p, word);
    if (deg > result.degree_cap)
        throw std::invalid_argument("adem_reduce: word degree exceeds cap");

    std::vector<std::pair<Word, int>> worklist{{word, coeff}};
    long steps = 0;
    while (!worklist.empty()) {
        if (++steps > 2000000)
            throw std::logic_error("adem_reduce: rewriting failed to terminate");
        auto [w, c] = std::move(worklist.back());
        worklist.pop_back();
        if (c % p == 0)
            continue;
        std::size_t j = detail::leftmost_inadmissible(p, w);
        if (j == std::string::npos)
            result.add_term(w, c);
        else
            detail::adem_expand_at(p, w, j, c, worklist);
    }
    return result;
}

inline SteenrodElement multiply(const SteenrodElement& a, const SteenrodElement& b)
{
    if (a.p != b.p)
        throw std::invalid_argument("multiply: mixed primes");
    SteenrodElement result(a.p, std::max(a.degree_cap, b.degree_cap));
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            Word concat = wa;
            concat.insert(concat.end(), wb.begin(), wb.end());
            result += adem_reduce(a.p, concat, ca * cb, result.degree_cap);
        }
    return result;
}

namespace detail {

inline void admissible_p2(int deg, int max_first, Word& prefix,
                          std::vector<Word>& out)
{
    if (deg == 0) {
        out.push_back(prefix);
        return;
    }
    for (int a = std::min(deg, max_first); a >= 1; --a) {
        prefix.push_back(a);
        admissible_p2(deg - a, a / 2, prefix, out);
        prefix.pop_back();
    }
}

/* words P^{s1} b^{e1} P^{s2} b^{e2} ... with s_i >= 3 s_{i+1} + e_i and
 * first exponent bounded by max_first; each Bockstein is consumed together
 * with the preceding P, so adjacent Bocksteins cannot arise */
inline void admissible_p3_ppart(int deg, int max_first, Word& prefix,
                                std::vector<Word>& out)
{
    if (deg == 0) {
        out.push_back(prefix);
        return;
    }
    for (int s = std::min(deg / 4, max_first); s >= 1; --s) {
        prefix.push_back(s);
        admissible_p3_ppart(deg - 4 * s, s / 3, prefix, out);
        if (deg - 4 * s >= 1) {
            prefix.push_back(0);
            admissible_p3_ppart(deg - 4 * s - 1, (s - 1) / 3, prefix, out);
            prefix.pop_back();
        }
        prefix.pop_back();
    }
}

} // namespace detail

/* All admissible monomials of the given total degree, lexicographically
 * sorted; degree 0 yields the empty word (the unit). */
inline std::vector<Word> admissible_monomials(int p, int degree, int degree_cap = -1)
{
    check_steenrod_prime(p, "admissible_monomials");
    if (degree < 0)
        throw std::invalid_argument("admissible_monomials: negative degree");
    int cap = degree_cap < 0 ? default_degree_cap(p) : degree_cap;
    if (degree > cap)
        throw std::invalid_argument("admissible_monomials: degree exceeds cap");

    std::vector<Word> out;
    Word prefix;
    if (p == 2) {
        detail::admissible_p2(degree, degree, prefix, out);
    } else {
        detail::admissible_p3_ppart(degree, degree / 4, prefix, out);
        if (degree >= 1) {
            /* words with a leading Bockstein */
            prefix.push_back(0);
            detail::admissible_p3_ppart(degree - 1, (degree - 1) / 4, prefix, out);
            prefix.pop_back();
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hypermono
