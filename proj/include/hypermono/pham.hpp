#pragma once
#include "abelian.hpp"

#include <array>
#include <cstdlib>
#include <map>

/* The degree-d Fermat threefold's middle homology as a cyclic module over the
 * group ring of (Z/d)^4, its distinguished ideal generated by the diagonal
 * norm element, and the coinvariant computations that show the Hopf summand
 * dies in the coinvariants of the monodromy action.  Everything is exact
 * integer linear algebra on the d^4 monomial basis. */

namespace hypermono {

/* default bound keeps the largest Smith normal form at 625 columns; the
 * environment variable HYPERMONO_MAX_D opts into larger degrees with no
 * runtime guarantee */
inline long pham_degree_bound()
{
    long bound = 5;
    if (const char* env = std::getenv("HYPERMONO_MAX_D")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > bound)
            bound = v;
    }
    return bound;
}

namespace detail {
inline void check_pham_degree(long d, const char* who)
{
    if (d < 2 || d > pham_degree_bound())
        throw std::invalid_argument(std::string(who) +
                                    ": degree outside supported range");
}
}  // namespace detail

using ExponentTuple = std::array<int, 4>;

inline std::size_t monomial_index(long d, const ExponentTuple& a)
{
    std::size_t idx = 0;
    for (int i = 0; i < 4; ++i)
        idx = idx * std::size_t(d) + std::size_t(a[i]);
    return idx;
}

inline ExponentTuple index_to_exponents(long d, std::size_t idx)
{
    ExponentTuple a{};
    for (int i = 3; i >= 0; --i) {
        a[i] = int(idx % std::size_t(d));
        idx /= std::size_t(d);
    }
    return a;
}

/* An element of the integral group ring of (Z/d)^4: finitely supported
 * integer coefficients on exponent tuples, multiplied by convolution. */
struct GroupAlgebraElement {
    long d = 0;
    std::map<ExponentTuple, Int> coeff;

    explicit GroupAlgebraElement(long degree) : d(degree)
    {
        if (d < 1)
            throw std::invalid_argument("GroupAlgebraElement: degree must be >= 1");
    }

    static ExponentTuple normalize(long d, ExponentTuple a)
    {
        for (int i = 0; i < 4; ++i) {
            a[i] %= int(d);
            if (a[i] < 0)
                a[i] += int(d);
        }
        return a;
    }

    static GroupAlgebraElement unit(long d)
    {
        return monomial(d, {0, 0, 0, 0});
    }
    static GroupAlgebraElement monomial(long d, ExponentTuple a, Int c = 1)
    {
        GroupAlgebraElement e(d);
        if (c != 0)
            e.coeff[normalize(d, a)] = std::move(c);
        return e;
    }
    /* N_i = 1 + t_i + ... + t_i^{d-1} */
    static GroupAlgebraElement norm_element(long d, int i)
    {
        if (i < 1 || i > 4)
            throw std::invalid_argument("norm_element: generator index out of range");
        GroupAlgebraElement e(d);
        for (int k = 0; k < int(d); ++k) {
            ExponentTuple a{};
            a[i - 1] = k;
            e.coeff[a] = 1;
        }
        return e;
    }
    /* nu = sum_k (t1 t2 t3 t4)^k */
    static GroupAlgebraElement diagonal_norm(long d)
    {
        GroupAlgebraElement e(d);
        for (int k = 0; k < int(d); ++k)
            e.coeff[{k, k, k, k}] = 1;
        return e;
    }

    Int coefficient(const ExponentTuple& a) const
    {
        auto it = coeff.find(normalize(d, a));
        return it == coeff.end() ? Int(0) : it->second;
    }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const
    {
        if (d != o.d)
            throw std::invalid_argument("GroupAlgebraElement: degree mismatch");
        GroupAlgebraElement r = *this;
        for (const auto& [a, c] : o.coeff) {
            Int& slot = r.coeff[a];
            slot += c;
            if (slot == 0)
                r.coeff.erase(a);
        }
        return r;
    }
    GroupAlgebraElement operator-() const
    {
        GroupAlgebraElement r(d);
        for (const auto& [a, c] : coeff)
            r.coeff[a] = -c;
        return r;
    }
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const
    {
        return *this + (-o);
    }
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const
    {
        if (d != o.d)
            throw std::invalid_argument("GroupAlgebraElement: degree mismatch");
        GroupAlgebraElement r(d);
        for (const auto& [a, ca] : coeff)
            for (const auto& [b, cb] : o.coeff) {
                ExponentTuple s;
                for (int i = 0; i < 4; ++i)
                    s[i] = (a[i] + b[i]) % int(d);
                Int& slot = r.coeff[s];
                slot += ca * cb;
                if (slot == 0)
                    r.coeff.erase(s);
            }
        return r;
    }
    bool operator==(const GroupAlgebraElement& o) const
    {
        return d == o.d && coeff == o.coeff;
    }

    std::vector<Int> dense_row() const
    {
        std::vector<Int> row(std::size_t(d) * d * d * d);
        for (const auto& [a, c] : coeff)
            row[monomial_index(d, a)] = c;
        return row;
    }
};

/* permutation matrix of t_i on the monomial basis (column convention) */
inline IntMatrix action_matrix(long d, int i)
{
    if (i < 1 || i > 4)
        throw std::invalid_argument("action_matrix: generator index out of range");
    std::size_t n = std::size_t(d) * d * d * d;
    IntMatrix m(n, n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        ExponentTuple a = index_to_exponents(d, idx);
        a[i - 1] = (a[i - 1] + 1) % int(d);
        m(monomial_index(d, a), idx) = 1;
    }
    return m;
}

struct PhamModule {
    long d = 0;
    IntMatrix presentation;                   /* 4 d^3 rows x d^4 columns */
    std::vector<ExponentTuple> reduced_basis; /* exponents in {0..d-2}^4 */
    Int rank;                                 /* free rank of the module */
    bool torsion_free = false;
};

/* Z[mu_d^4] / (N_1, N_2, N_3, N_4): relation rows g * N_i for every g with
 * i-th exponent zero (other coset representatives give identical rows). */
inline PhamModule build_pham_module(long d)
{
    detail::check_pham_degree(d, "build_pham_module");
    PhamModule p;
    p.d = d;
    std::size_t n = std::size_t(d) * d * d * d;
    std::vector<std::vector<Int>> rows;
    for (int i = 1; i <= 4; ++i) {
        GroupAlgebraElement norm = GroupAlgebraElement::norm_element(d, i);
        for (std::size_t idx = 0; idx < n; ++idx) {
            ExponentTuple g = index_to_exponents(d, idx);
            if (g[i - 1] != 0)
                continue;
            rows.push_back((GroupAlgebraElement::monomial(d, g) * norm).dense_row());
        }
    }
    p.presentation = IntMatrix::from_rows(rows, n);

    for (std::size_t idx = 0; idx < n; ++idx) {
        ExponentTuple a = index_to_exponents(d, idx);
        bool reduced = true;
        for (int i = 0; i < 4; ++i)
            if (a[i] > int(d) - 2)
                reduced = false;
        if (reduced)
            p.reduced_basis.push_back(a);
    }

    SmithResult s = smith_normal_form(p.presentation, false, false);
    p.rank = Int(n) - Int(s.rank);
    p.torsion_free = true;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.diag[i] != 1)
            p.torsion_free = false;
    return p;
}

struct LooijengaQuotient {
    long d = 0;
    std::vector<std::vector<Int>> ideal_generators; /* d^3 rows, orbit of nu */
    AbelianGroupPresentation quotient_presentation;
    Int quotient_rank;
    bool quotient_free = false;
    Int ideal_rank; /* rank of the image of the ideal inside the module */
};

/* orbit representatives of nu: last exponent zero (the diagonal subgroup
 * stabilizes nu, so g and g * (t1 t2 t3 t4)^k give the same element) */
inline std::vector<ExponentTuple> looijenga_orbit_reps(long d)
{
    std::vector<ExponentTuple> reps;
    std::size_t n = std::size_t(d) * d * d * d;
    for (std::size_t idx = 0; idx < n; ++idx) {
        ExponentTuple g = index_to_exponents(d, idx);
        if (g[3] == 0)
            reps.push_back(g);
    }
    return reps;
}

inline LooijengaQuotient build_looijenga_quotient(long d)
{
    detail::check_pham_degree(d, "build_looijenga_quotient");
    PhamModule p = build_pham_module(d);
    std::size_t n = std::size_t(d) * d * d * d;

    LooijengaQuotient q;
    q.d = d;
    GroupAlgebraElement nu = GroupAlgebraElement::diagonal_norm(d);
    for (const ExponentTuple& g : looijenga_orbit_reps(d))
        q.ideal_generators.push_back((GroupAlgebraElement::monomial(d, g) * nu).dense_row());

    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < p.presentation.rows(); ++i) {
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = p.presentation(i, j);
        rows.push_back(std::move(row));
    }
    std::size_t module_relation_rank = n - p.rank.convert_to<std::size_t>();
    for (const auto& row : q.ideal_generators)
        rows.push_back(row);

    IntMatrix stacked = IntMatrix::from_rows(rows, n);
    q.quotient_presentation = AbelianGroupPresentation(n, stacked);
    q.quotient_rank = Int(q.quotient_presentation.free_rank());
    q.quotient_free = q.quotient_presentation.torsion_factors().empty();
    q.ideal_rank = Int(smith_normal_form(stacked, false, false).rank) -
                   Int(module_relation_rank);
    return q;
}

/* H_0 of a module with explicit commuting generator actions: cokernel of the
 * stacked rows (A_g - 1) e_a over all generators g and basis indices a,
 * together with the module's own relations. */
inline AbelianGroupPresentation coinvariants(const IntMatrix& module_relations,
                                             const std::vector<IntMatrix>& actions)
{
    if (actions.empty())
        throw std::invalid_argument("coinvariants: need at least one action matrix");
    std::size_t n = actions.front().cols();
    for (const IntMatrix& a : actions)
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("coinvariants: action matrix dimension mismatch");
    if (module_relations.rows() > 0 && module_relations.cols() != n)
        throw std::invalid_argument("coinvariants: relation dimension mismatch");

    std::vector<std::vector<Int>> rows;
    for (const IntMatrix& act : actions)
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<Int> row(n);
            for (std::size_t j = 0; j < n; ++j)
                row[j] = act(j, a);
            row[a] -= 1;
            rows.push_back(std::move(row));
        }
    for (std::size_t i = 0; i < module_relations.rows(); ++i) {
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = module_relations(i, j);
        rows.push_back(std::move(row));
    }
    return AbelianGroupPresentation(n, IntMatrix::from_rows(rows, n));
}

namespace detail {

/* the full coinvariant relation stack for a mu_d^4-module on the monomial
 * basis: difference rows (t_i - 1) e_a assembled directly (each is a pair of
 * entries), then the module relations */
inline IntMatrix coinvariant_stack(long d, const IntMatrix& module_relations)
{
    std::size_t n = std::size_t(d) * d * d * d;
    if (module_relations.rows() > 0 && module_relations.cols() != n)
        throw std::invalid_argument("coinvariant_stack: relation dimension mismatch");
    IntMatrix w(4 * n + module_relations.rows(), n);
    std::size_t r = 0;
    for (int i = 1; i <= 4; ++i)
        for (std::size_t idx = 0; idx < n; ++idx, ++r) {
            ExponentTuple a = index_to_exponents(d, idx);
            a[i - 1] = (a[i - 1] + 1) % int(d);
            w(r, monomial_index(d, a)) += 1;
            w(r, idx) -= 1;
        }
    for (std::size_t i = 0; i < module_relations.rows(); ++i, ++r)
        for (std::size_t j = 0; j < n; ++j)
            w(r, j) = module_relations(i, j);
    return w;
}

/* canonical residue coordinate on a finite cyclic cokernel: Smith-transform
 * the relation stack once, locate the single nontrivial invariant factor,
 * then read classes off through the right transform */
struct CyclicCokernelCoordinate {
    Int modulus;
    std::size_t position = 0;
    IntMatrix right;

    explicit CyclicCokernelCoordinate(const IntMatrix& relations)
    {
        SmithResult s = smith_normal_form(relations, false, true);
        if (s.rank != relations.cols())
            throw std::logic_error("CyclicCokernelCoordinate: cokernel not finite");
        bool found = false;
        for (std::size_t i = 0; i < s.rank; ++i)
            if (s.diag[i] != 1) {
                if (found)
                    throw std::logic_error("CyclicCokernelCoordinate: cokernel not cyclic");
                found = true;
                modulus = s.diag[i];
                position = i;
            }
        if (!found)
            modulus = 1;
        right = std::move(s.right);
    }

    Int residue(const std::vector<Int>& v) const
    {
        if (modulus == 1)
            return 0;
        Int acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            acc += v[i] * right(i, position);
        acc %= modulus;
        if (acc < 0)
            acc += modulus;
        return acc;
    }
};

}  // namespace detail

struct IdealCoinvariantMap {
    long d = 0;
    AbelianGroupPresentation source;  /* H_0 of the ideal on its d^3 orbit generators */
    Int target_order;                 /* |H_0(module)| — expected d */
    std::vector<Int> images;          /* residue of each orbit generator's class */
    bool is_zero = false;
};

/* The map H_0(ideal) -> H_0(module) induced by inclusion.  Relations among
 * the orbit generators inside the module are recovered from the left kernel
 * of the stacked (orbit rows | module relations) matrix; the group action on
 * the orbit is the index shift with diagonal re-normalization. */
inline IdealCoinvariantMap ideal_coinvariant_map(long d)
{
    detail::check_pham_degree(d, "ideal_coinvariant_map");
    PhamModule p = build_pham_module(d);
    std::size_t n = std::size_t(d) * d * d * d;
    std::size_t m = std::size_t(d) * d * d;

    GroupAlgebraElement nu = GroupAlgebraElement::diagonal_norm(d);
    std::vector<ExponentTuple> reps = looijenga_orbit_reps(d);
    std::map<ExponentTuple, std::size_t> rep_index;
    for (std::size_t i = 0; i < m; ++i)
        rep_index[reps[i]] = i;
    std::vector<std::vector<Int>> orbit_rows;
    for (const ExponentTuple& g : reps)
        orbit_rows.push_back((GroupAlgebraElement::monomial(d, g) * nu).dense_row());

    /* relations among the generators: left-kernel combinations that land in
     * the row span of the module relations */
    std::vector<std::vector<Int>> stacked = orbit_rows;
    for (std::size_t i = 0; i < p.presentation.rows(); ++i) {
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = p.presentation(i, j);
        stacked.push_back(std::move(row));
    }
    std::vector<std::vector<Int>> source_rows;
    for (const auto& ker : left_kernel_basis(IntMatrix::from_rows(stacked, n))) {
        std::vector<Int> row(ker.begin(), ker.begin() + m);
        source_rows.push_back(std::move(row));
    }
    /* action of t_i on the orbit: g -> g + delta_i, re-normalized so the last
     * exponent is zero (the diagonal fixes nu) */
    for (int i = 1; i <= 4; ++i)
        for (std::size_t gi = 0; gi < m; ++gi) {
            ExponentTuple a = reps[gi];
            a[i - 1] = (a[i - 1] + 1) % int(d);
            int shift = a[3];
            for (int j = 0; j < 4; ++j)
                a[j] = (a[j] - shift + int(d)) % int(d);
            std::size_t target = rep_index.at(a);
            if (target == gi)
                continue;
            std::vector<Int> row(m);
            row[target] += 1;
            row[gi] -= 1;
            source_rows.push_back(std::move(row));
        }

    IdealCoinvariantMap out;
    out.d = d;
    out.source = AbelianGroupPresentation(m, IntMatrix::from_rows(source_rows, m));

    detail::CyclicCokernelCoordinate coord(
        detail::coinvariant_stack(d, p.presentation));
    out.target_order = coord.modulus;
    out.is_zero = true;
    for (const auto& row : orbit_rows) {
        Int r = coord.residue(row);
        if (r != 0)
            out.is_zero = false;
        out.images.push_back(std::move(r));
    }
    return out;
}

/* certificate that the Hopf summand maps to zero in the coinvariants: both
 * coinvariant groups are Z/d and the ideal's classes all die, which is the
 * zero-composite + surjectivity argument */
inline bool eta_vanishing_certificate(long d)
{
    detail::check_pham_degree(d, "eta_vanishing_certificate");
    PhamModule p = build_pham_module(d);
    LooijengaQuotient q = build_looijenga_quotient(d);

    std::vector<Int> h0_module =
        cokernel_invariant_factors(detail::coinvariant_stack(d, p.presentation));
    std::vector<std::vector<Int>> quot_rows;
    std::size_t n = std::size_t(d) * d * d * d;
    for (std::size_t i = 0; i < p.presentation.rows(); ++i) {
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = p.presentation(i, j);
        quot_rows.push_back(std::move(row));
    }
    for (const auto& row : q.ideal_generators)
        quot_rows.push_back(row);
    std::vector<Int> h0_quotient = cokernel_invariant_factors(
        detail::coinvariant_stack(d, IntMatrix::from_rows(quot_rows, n)));

    std::vector<Int> expected{Int(d)};
    if (h0_module != expected || h0_quotient != expected)
        return false;
    return ideal_coinvariant_map(d).is_zero;
}

}  // namespace hypermono
