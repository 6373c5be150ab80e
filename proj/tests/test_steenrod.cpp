#include <catch2/catch_amalgamated.hpp>

#include <hypermono/steenrod.hpp>

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hypermono;

namespace {

/* ---- dimension oracle -------------------------------------------------
 * The graded dimension of the mod-p Steenrod algebra is the number of
 * monomials in the dual: partitions into parts 2^i - 1 at p = 2; at p = 3,
 * partitions into even parts 2(3^i - 1) together with a subset of the
 * distinct odd parts 2*3^i - 1.  This counts admissible monomials without
 * ever mentioning admissibility. */

std::vector<long> partition_counts(int limit, const std::vector<int>& parts)
{
    std::vector<long> ways(limit + 1, 0);
    ways[0] = 1;
    for (int part : parts)
        for (int n = part; n <= limit; ++n)
            ways[n] += ways[n - part];
    return ways;
}

long dual_basis_dimension(int p, int degree, int limit)
{
    if (p == 2) {
        std::vector<int> parts;
        for (int q = 1; q <= limit; q = 2 * q + 1)
            parts.push_back(q);
        return partition_counts(limit, parts)[degree];
    }
    std::vector<int> even_parts;
    for (int q = 4; q <= limit; q = 3 * q + 4)
        even_parts.push_back(q);
    std::vector<int> odd_parts;
    for (int q = 1; q <= limit; q = 3 * q + 2)
        odd_parts.push_back(q);
    std::vector<long> base = partition_counts(limit, even_parts);
    /* fold in each odd exterior generator at most once */
    for (int part : odd_parts)
        for (int n = limit; n >= part; --n)
            base[n] += base[n - part];
    return base[degree];
}

/* ---- module oracles ---------------------------------------------------
 * Sparse F_p-modules with an explicit single-operation action; words act by
 * composing letters right to left.  Evaluating a raw word and its reduced
 * normal form must agree, which checks the Adem coefficients themselves. */

template <typename Basis>
struct SparseVec {
    int p;
    std::map<Basis, int> coeffs;

    void add(const Basis& b, int c)
    {
        c %= p;
        if (c < 0)
            c += p;
        if (c == 0)
            return;
        int& v = coeffs[b];
        v = (v + c) % p;
        if (v == 0)
            coeffs.erase(b);
    }
};

/* F_2[x]: Sq^i x^n = C(n,i) x^{n+i} */
using PolyVec = SparseVec<int>;

PolyVec poly_letter(int i, const PolyVec& v)
{
    PolyVec out{2, {}};
    for (const auto& [n, c] : v.coeffs)
        out.add(n + i, c * detail::binom_mod(n, i, 2));
    return out;
}

/* F_2[x,y] with the Cartan formula */
using Poly2Vec = SparseVec<std::pair<int, int>>;

Poly2Vec poly2_letter(int i, const Poly2Vec& v)
{
    Poly2Vec out{2, {}};
    for (const auto& [ab, c] : v.coeffs)
        for (int j = 0; j <= i; ++j) {
            int w = detail::binom_mod(ab.first, j, 2) *
                    detail::binom_mod(ab.second, i - j, 2);
            out.add({ab.first + j, ab.second + i - j}, c * w);
        }
    return out;
}

/* E(e) (x) F_3[x] with |e| = 1, |x| = 2, b(e) = x:
 * basis (delta, n) <-> e^delta x^n */
using BockVec = SparseVec<std::pair<int, int>>;

BockVec bock_letter(int letter, const BockVec& v)
{
    BockVec out{3, {}};
    for (const auto& [dn, c] : v.coeffs) {
        auto [delta, n] = dn;
        if (letter == 0) {
            if (delta == 1)
                out.add({0, n + 1}, c);
        } else {
            out.add({delta, n + 2 * letter},
                    c * detail::binom_mod(n, letter, 3));
        }
    }
    return out;
}

/* tensor square of the above; the Bockstein picks up the sign of the
 * left factor's degree */
using Bock2Vec = SparseVec<std::array<int, 4>>;

Bock2Vec bock2_letter(int letter, const Bock2Vec& v)
{
    Bock2Vec out{3, {}};
    for (const auto& [b, c] : v.coeffs) {
        int d1 = b[0], n1 = b[1], d2 = b[2], n2 = b[3];
        if (letter == 0) {
            if (d1 == 1)
                out.add({0, n1 + 1, d2, n2}, c);
            int sign = d1 == 1 ? -1 : 1; /* (-1)^{|left|}, |left| = d1 mod 2 */
            if (d2 == 1)
                out.add({d1, n1, 0, n2 + 1}, sign * c);
        } else {
            for (int j = 0; j <= letter; ++j) {
                int w = detail::binom_mod(n1, j, 3) *
                        detail::binom_mod(n2, letter - j, 3);
                out.add({d1, n1 + 2 * j, d2, n2 + 2 * (letter - j)}, c * w);
            }
        }
    }
    return out;
}

template <typename Vec, typename Letter>
Vec act_word(const Word& w, Vec v, Letter letter_action)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        v = letter_action(*it, v);
    return v;
}

template <typename Vec, typename Letter>
Vec act_element(const SteenrodElement& e, const Vec& v, Letter letter_action)
{
    Vec out{e.p, {}};
    for (const auto& [w, c] : e.terms) {
        Vec part = act_word(w, v, letter_action);
        for (const auto& [b, pc] : part.coeffs)
            out.add(b, pc * c);
    }
    return out;
}

template <typename Vec, typename Letter>
bool raw_equals_reduced(int p, const Word& w, const Vec& v, Letter letter_action)
{
    Vec raw = act_word(w, v, letter_action);
    Vec red = act_element(adem_reduce(p, w), v, letter_action);
    return raw.coeffs == red.coeffs;
}

SteenrodElement element_of(int p, std::vector<std::pair<Word, int>> terms)
{
    SteenrodElement e(p);
    for (const auto& [w, c] : terms)
        e.add_term(w, c);
    return e;
}

/* all words over the p=3 alphabet {b, P^1..P^4} of the given length with
 * degree at most max_degree */
std::vector<Word> p3_words(std::size_t length, int max_degree)
{
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<Word> next;
        for (const Word& w : out)
            for (int letter = 0; letter <= 4; ++letter) {
                Word v = w;
                v.push_back(letter);
                if (word_degree(3, v) <= max_degree)
                    next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("binomial coefficients mod p match Pascal's triangle", "[steenrod]")
{
    long long pascal[21][21] = {};
    for (int n = 0; n <= 20; ++n) {
        pascal[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            pascal[n][k] = pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0);
    }
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= n; ++k) {
            REQUIRE(detail::binom_mod(n, k, 2) == int(pascal[n][k] % 2));
            REQUIRE(detail::binom_mod(n, k, 3) == int(pascal[n][k] % 3));
        }
    REQUIRE(detail::binom_mod(3, 5, 2) == 0);
    REQUIRE(detail::binom_mod(4, -1, 3) == 0);
}

TEST_CASE("classical Adem products", "[steenrod]")
{
    /* Sq^1 Sq^1 = 0 */
    REQUIRE(adem_reduce(2, {1, 1}).is_zero());
    /* Sq^1 Sq^2 = Sq^3 */
    REQUIRE(adem_reduce(2, {1, 2}) == element_of(2, {{{3}, 1}}));
    /* Sq^2 Sq^2 = Sq^3 Sq^1 */
    REQUIRE(adem_reduce(2, {2, 2}) == element_of(2, {{{3, 1}, 1}}));
    /* Sq^3 Sq^2 = 0 */
    REQUIRE(adem_reduce(2, {3, 2}).is_zero());
    /* Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1 */
    REQUIRE(adem_reduce(2, {2, 3}) == element_of(2, {{{5}, 1}, {{4, 1}, 1}}));

    /* b b = 0 */
    REQUIRE(adem_reduce(3, {0, 0}).is_zero());
    /* P^1 P^1 = 2 P^2 */
    REQUIRE(adem_reduce(3, {1, 1}) == element_of(3, {{{2}, 2}}));
    /* P^1 P^2 = 0 */
    REQUIRE(adem_reduce(3, {1, 2}).is_zero());
    /* P^1 P^3 = P^4 */
    REQUIRE(adem_reduce(3, {1, 3}) == element_of(3, {{{4}, 1}}));
    /* P^1 b P^1 = b P^2 + P^2 b */
    REQUIRE(adem_reduce(3, {1, 0, 1}) ==
            element_of(3, {{{0, 2}, 1}, {{2, 0}, 1}}));
    /* P^3 b P^1 = b P^3 P^1 */
    REQUIRE(adem_reduce(3, {3, 0, 1}) == element_of(3, {{{0, 3, 1}, 1}}));
}

TEST_CASE("reduction is idempotent on admissible monomials", "[steenrod]")
{
    for (int p : {2, 3}) {
        int top = p == 2 ? 12 : 13;
        for (int deg = 0; deg <= top; ++deg)
            for (const Word& w : admissible_monomials(p, deg)) {
                SteenrodElement e = adem_reduce(p, w);
                REQUIRE(e.terms.size() == 1);
                REQUIRE(e.terms.begin()->first == w);
                REQUIRE(e.terms.begin()->second == 1);
            }
    }
}

TEST_CASE("reduction lands in the admissible basis, degree-homogeneously",
          "[steenrod]")
{
    for (int a = 1; a <= 11; ++a)
        for (int b = 1; a + b <= 12; ++b) {
            SteenrodElement e = adem_reduce(2, {a, b});
            for (const auto& [w, c] : e.terms) {
                REQUIRE(is_admissible(2, w));
                REQUIRE(word_degree(2, w) == a + b);
                REQUIRE(c == 1);
            }
        }
    for (const Word& w : p3_words(2, 20)) {
        SteenrodElement e = adem_reduce(3, w);
        for (const auto& [v, c] : e.terms) {
            REQUIRE(is_admissible(3, v));
            REQUIRE(word_degree(3, v) == word_degree(3, w));
            REQUIRE((c == 1 || c == 2));
        }
    }
}

TEST_CASE("reduction is confluent on three-letter words", "[steenrod]")
{
    /* reduce the whole word, reduce after combining the left pair, and
     * reduce after combining the right pair: all three must agree */
    auto confluent = [](int p, const Word& w) {
        SteenrodElement whole = adem_reduce(p, w);
        SteenrodElement left =
            multiply(adem_reduce(p, {w[0], w[1]}), adem_reduce(p, {w[2]}));
        SteenrodElement right =
            multiply(adem_reduce(p, {w[0]}), adem_reduce(p, {w[1], w[2]}));
        return whole == left && whole == right;
    };
    for (int a = 1; a <= 10; ++a)
        for (int b = 1; a + b <= 11; ++b)
            for (int c = 1; a + b + c <= 12; ++c)
                REQUIRE(confluent(2, {a, b, c}));
    for (const Word& w : p3_words(3, 12))
        REQUIRE(confluent(3, w));
}

TEST_CASE("Adem expansion agrees with the polynomial module at p=2",
          "[steenrod]")
{
    /* F_2[x] detects single relations; F_2[x,y] detects length-2 products
     * through the Cartan formula */
    for (int a = 1; a <= 11; ++a)
        for (int b = 1; a + b <= 12; ++b) {
            Word w{a, b};
            for (int n = 0; n <= 10; ++n) {
                PolyVec v{2, {{n, 1}}};
                REQUIRE(raw_equals_reduced(2, w, v, poly_letter));
            }
            for (int i = 0; i <= 5; ++i)
                for (int j = 0; i + j <= 5; ++j) {
                    Poly2Vec v{2, {{{i, j}, 1}}};
                    REQUIRE(raw_equals_reduced(2, w, v, poly2_letter));
                }
        }
    /* a length-3 sweep on F_2[x,y] */
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b)
            for (int c = 1; a + b + c <= 10; ++c) {
                Word w{a, b, c};
                for (int i = 0; i <= 3; ++i)
                    for (int j = 0; i + j <= 3; ++j) {
                        Poly2Vec v{2, {{{i, j}, 1}}};
                        REQUIRE(raw_equals_reduced(2, w, v, poly2_letter));
                    }
            }
}

TEST_CASE("Adem expansion agrees with the Bockstein module at p=3",
          "[steenrod]")
{
    for (const Word& w : p3_words(2, 20)) {
        for (int delta = 0; delta <= 1; ++delta)
            for (int n = 0; n <= 9; ++n) {
                BockVec v{3, {{{delta, n}, 1}}};
                REQUIRE(raw_equals_reduced(3, w, v, bock_letter));
            }
        for (int d1 = 0; d1 <= 1; ++d1)
            for (int n1 = 0; n1 <= 4; ++n1)
                for (int d2 = 0; d2 <= 1; ++d2)
                    for (int n2 = 0; n2 <= 4; ++n2) {
                        Bock2Vec v{3, {{{d1, n1, d2, n2}, 1}}};
                        REQUIRE(raw_equals_reduced(3, w, v, bock2_letter));
                    }
    }
    for (const Word& w : p3_words(3, 18))
        for (int d1 = 0; d1 <= 1; ++d1)
            for (int n1 = 0; n1 <= 3; ++n1)
                for (int d2 = 0; d2 <= 1; ++d2)
                    for (int n2 = 0; n2 <= 3; ++n2) {
                        Bock2Vec v{3, {{{d1, n1, d2, n2}, 1}}};
                        REQUIRE(raw_equals_reduced(3, w, v, bock2_letter));
                    }
}

TEST_CASE("admissible monomial counts match the dual-basis dimensions",
          "[steenrod]")
{
    for (int p : {2, 3}) {
        int cap = default_degree_cap(p);
        for (int deg = 0; deg <= cap; ++deg) {
            std::vector<Word> basis = admissible_monomials(p, deg);
            for (const Word& w : basis) {
                REQUIRE(is_admissible(p, w));
                REQUIRE(word_degree(p, w) == deg);
            }
            for (std::size_t i = 1; i < basis.size(); ++i)
                REQUIRE(basis[i - 1] < basis[i]);
            REQUIRE(long(basis.size()) == dual_basis_dimension(p, deg, cap));
        }
    }
    /* low-degree spot values, enumerated by hand */
    REQUIRE(admissible_monomials(2, 0) == std::vector<Word>{{}});
    REQUIRE(admissible_monomials(2, 3) == std::vector<Word>({{2, 1}, {3}}));
    REQUIRE(admissible_monomials(3, 5) == std::vector<Word>({{0, 1}, {1, 0}}));
    REQUIRE(admissible_monomials(3, 6) == std::vector<Word>{{0, 1, 0}});
    REQUIRE(admissible_monomials(3, 8) == std::vector<Word>{{2}});
}

TEST_CASE("frozen conformance products", "[steenrod]")
{
    std::ifstream in(std::string(HYPERMONO_TEST_DATA_DIR) + "/adem_conformance.txt");
    REQUIRE(in.good());

    auto parse_word = [](const std::string& text) {
        Word w;
        std::istringstream s(text);
        int letter;
        while (s >> letter)
            w.push_back(letter);
        return w;
    };

    int checked = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::size_t bar1 = line.find('|');
        std::size_t bar2 = line.find('|', bar1 + 1);
        REQUIRE(bar2 != std::string::npos);
        int p = std::stoi(line.substr(0, bar1));
        Word input = parse_word(line.substr(bar1 + 1, bar2 - bar1 - 1));
        std::string rhs = line.substr(bar2 + 1);

        SteenrodElement expected(p);
        std::istringstream terms(rhs);
        std::string term;
        bool zero = false;
        while (std::getline(terms, term, '+')) {
            std::size_t star = term.find('*');
            if (star == std::string::npos) {
                /* a lone "0" denotes the zero element */
                std::istringstream probe(term);
                int v;
                REQUIRE((probe >> v));
                REQUIRE(v == 0);
                zero = true;
                continue;
            }
            int coeff = std::stoi(term.substr(0, star));
            expected.add_term(parse_word(term.substr(star + 1)), coeff);
        }
        if (zero)
            REQUIRE(expected.is_zero());

        REQUIRE(adem_reduce(p, input) == expected);
        ++checked;
    }
    REQUIRE(checked >= 20);
}

TEST_CASE("rejects bad primes, letters, and over-cap degrees", "[steenrod]")
{
    REQUIRE_THROWS_AS(adem_reduce(5, {1}), std::invalid_argument);
    REQUIRE_THROWS_AS(adem_reduce(2, {0}), std::invalid_argument);
    REQUIRE_THROWS_AS(adem_reduce(2, {-2}), std::invalid_argument);
    REQUIRE_THROWS_AS(adem_reduce(2, {9, 8}), std::invalid_argument);
    REQUIRE_THROWS_AS(adem_reduce(3, {3, 3}), std::invalid_argument);
    REQUIRE_THROWS_AS(admissible_monomials(2, 17), std::invalid_argument);
    REQUIRE_THROWS_AS(admissible_monomials(3, -1), std::invalid_argument);
    REQUIRE_THROWS_AS(multiply(SteenrodElement(2), SteenrodElement(3)),
                      std::invalid_argument);
    /* raising the explicit cap lifts the bound */
    REQUIRE(adem_reduce(2, {9, 8}, 1, 32).terms.size() >= 1);
}

TEST_CASE("element printing", "[steenrod]")
{
    REQUIRE(SteenrodElement(2).to_string() == "0");
    REQUIRE(element_of(2, {{{4, 1}, 1}, {{5}, 1}}).to_string() == "Sq4 Sq1 + Sq5");
    REQUIRE(element_of(3, {{{0, 2}, 1}, {{2, 0}, 2}}).to_string() ==
            "b P2 + 2 P2 b");
    REQUIRE(element_of(3, {{{}, 2}}).to_string() == "2");
}
