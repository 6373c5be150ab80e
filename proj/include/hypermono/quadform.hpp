#pragma once
#include "abelian.hpp"
#include "hypersurface.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_set>

/* Quadratic refinements of the standard symplectic form: Arf invariants,
 * transvection-generated automorphism groups over F_2 and Z/n, orbit
 * structure on nonzero vectors, and the exhaustive check that every
 * transvection-invariant subgroup of (Z/n)^{2g} is a multiple of the full
 * lattice.
 *
 * Coordinates are interleaved: index 2i is e_{i+1}, index 2i+1 is f_{i+1},
 * with lambda(e_i, f_i) = 1.  F_2 vectors are bitmasks in that order. */

namespace hypermono {

struct QuadraticSpace {
    int g = 0;
    std::vector<int> q_basis;  /* q(e1), q(f1), ..., q(e_g), q(f_g), each 0/1 */

    QuadraticSpace(int genus, std::vector<int> q_values)
        : g(genus), q_basis(std::move(q_values))
    {
        if (g < 1 || q_basis.size() != std::size_t(2 * g))
            throw std::invalid_argument("QuadraticSpace: need 2g basis values");
        for (int v : q_basis)
            if (v != 0 && v != 1)
                throw std::invalid_argument("QuadraticSpace: q values must be 0 or 1");
    }

    /* the standard space of a given Arf invariant: all-zero q, or q=1 on the
     * first hyperbolic pair */
    static QuadraticSpace standard(int genus, int arf)
    {
        std::vector<int> q(2 * genus, 0);
        if (arf) {
            q[0] = 1;
            q[1] = 1;
        }
        return QuadraticSpace(genus, std::move(q));
    }

    std::uint32_t vector_count() const { return std::uint32_t(1) << (2 * g); }

    int lambda(std::uint32_t x, std::uint32_t y) const
    {
        int acc = 0;
        for (int i = 0; i < g; ++i) {
            int xe = (x >> (2 * i)) & 1, xf = (x >> (2 * i + 1)) & 1;
            int ye = (y >> (2 * i)) & 1, yf = (y >> (2 * i + 1)) & 1;
            acc ^= (xe & yf) ^ (xf & ye);
        }
        return acc;
    }

    int q(std::uint32_t x) const
    {
        int acc = 0;
        for (int i = 0; i < 2 * g; ++i)
            if ((x >> i) & 1)
                acc ^= q_basis[i];
        for (int i = 0; i < g; ++i)
            acc ^= int((x >> (2 * i)) & (x >> (2 * i + 1)) & 1);
        return acc;
    }

    std::size_t zero_count() const
    {
        std::size_t n = 0;
        for (std::uint32_t x = 0; x < vector_count(); ++x)
            if (q(x) == 0)
                ++n;
        return n;
    }
};

inline int arf(const QuadraticSpace& s)
{
    int acc = 0;
    for (int i = 0; i < s.g; ++i)
        acc ^= s.q_basis[2 * i] & s.q_basis[2 * i + 1];
    return acc;
}

/* Arf invariant of the refinement carried by an odd-degree hypersurface:
 * 0 for d = ±1 mod 8, 1 for d = ±3 mod 8.  Even degrees carry no descended
 * refinement. */
inline int arf_of_hypersurface(long d)
{
    if (d % 2 == 0)
        throw std::invalid_argument(
            "arf_of_hypersurface: refinement does not descend for even degree");
    int r = int(d % 8);
    if (r < 0)
        r += 8;
    return (r == 1 || r == 7) ? 0 : 1;
}

/* ---- F_2 matrices and the transvection group ---------------------------- */

struct GF2Matrix {
    int dim = 0;
    std::array<std::uint32_t, 8> col{};  /* column bitmasks */

    static GF2Matrix identity(int dim)
    {
        GF2Matrix m;
        m.dim = dim;
        for (int j = 0; j < dim; ++j)
            m.col[j] = std::uint32_t(1) << j;
        return m;
    }

    std::uint32_t apply(std::uint32_t v) const
    {
        std::uint32_t r = 0;
        for (int j = 0; j < dim; ++j)
            if ((v >> j) & 1)
                r ^= col[j];
        return r;
    }

    GF2Matrix operator*(const GF2Matrix& o) const
    {
        GF2Matrix r;
        r.dim = dim;
        for (int j = 0; j < dim; ++j)
            r.col[j] = apply(o.col[j]);
        return r;
    }

    std::uint64_t key() const
    {
        std::uint64_t k = 0;
        for (int j = 0; j < dim; ++j)
            k |= std::uint64_t(col[j]) << (8 * j);
        return k;
    }
    bool operator==(const GF2Matrix& o) const { return dim == o.dim && col == o.col; }
};

/* t_v(x) = x + lambda(x,v) v; preserves q exactly when q(v) = 1 */
inline GF2Matrix transvection_matrix(const QuadraticSpace& s, std::uint32_t v)
{
    GF2Matrix m = GF2Matrix::identity(2 * s.g);
    for (int j = 0; j < 2 * s.g; ++j)
        if (s.lambda(std::uint32_t(1) << j, v))
            m.col[j] ^= v;
    return m;
}

/* Closure of the q-preserving transvections under multiplication; the full
 * element list, sorted canonically.  Throws when the closure exceeds the
 * configured bound. */
inline std::vector<GF2Matrix> transvection_group(const QuadraticSpace& s,
                                                 std::size_t element_cap = (1u << 20))
{
    if (s.g > 4)
        throw std::invalid_argument("transvection_group: genus bound exceeded");
    std::vector<GF2Matrix> gens;
    for (std::uint32_t v = 1; v < s.vector_count(); ++v)
        if (s.q(v) == 1)
            gens.push_back(transvection_matrix(s, v));

    std::unordered_set<std::uint64_t> seen;
    std::vector<GF2Matrix> elems;
    std::queue<GF2Matrix> work;
    GF2Matrix id = GF2Matrix::identity(2 * s.g);
    seen.insert(id.key());
    elems.push_back(id);
    work.push(id);
    while (!work.empty()) {
        GF2Matrix m = work.front();
        work.pop();
        for (const GF2Matrix& t : gens) {
            GF2Matrix p = t * m;
            if (seen.insert(p.key()).second) {
                if (elems.size() >= element_cap)
                    throw std::runtime_error("transvection_group: element cap exceeded");
                elems.push_back(p);
                work.push(p);
            }
        }
    }
    std::sort(elems.begin(), elems.end(),
              [](const GF2Matrix& a, const GF2Matrix& b) { return a.key() < b.key(); });
    return elems;
}

/* Orbits of the full isometry group of (lambda, q) on nonzero vectors: one
 * orbit per q-value.  Transvections already act transitively on each q-level
 * in every case except the split form in dimension 4, where they generate an
 * index-2 subgroup; there we extend the generator set by a brute-force search
 * for a missing isometry, so the result is still computed, not asserted. */
struct OrbitPartition {
    std::vector<std::vector<std::uint32_t>> orbits;
};

namespace detail {

inline std::vector<std::vector<std::uint32_t>>
vector_orbits(const QuadraticSpace& s, const std::vector<GF2Matrix>& gens)
{
    std::vector<bool> assigned(s.vector_count(), false);
    std::vector<std::vector<std::uint32_t>> orbits;
    for (std::uint32_t start = 1; start < s.vector_count(); ++start) {
        if (assigned[start])
            continue;
        std::vector<std::uint32_t> orbit;
        std::queue<std::uint32_t> work;
        assigned[start] = true;
        orbit.push_back(start);
        work.push(start);
        while (!work.empty()) {
            std::uint32_t x = work.front();
            work.pop();
            for (const GF2Matrix& m : gens) {
                std::uint32_t y = m.apply(x);
                if (!assigned[y]) {
                    assigned[y] = true;
                    orbit.push_back(y);
                    work.push(y);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/* find an isometry sending x to y by scanning all matrices (dim <= 4 only) */
inline GF2Matrix find_isometry_mapping(const QuadraticSpace& s, std::uint32_t x,
                                       std::uint32_t y)
{
    const int dim = 2 * s.g;
    if (dim > 4)
        throw std::logic_error("find_isometry_mapping: search only supported in dim <= 4");
    const std::uint32_t nvec = s.vector_count();
    const std::uint64_t total = std::uint64_t(1) << (dim * dim);
    for (std::uint64_t code = 0; code < total; ++code) {
        GF2Matrix m;
        m.dim = dim;
        for (int j = 0; j < dim; ++j)
            m.col[j] = std::uint32_t((code >> (dim * j)) & (nvec - 1));
        if (m.apply(x) != y)
            continue;
        bool ok = true;
        for (std::uint32_t z = 0; z < nvec && ok; ++z)
            if (s.q(m.apply(z)) != s.q(z))
                ok = false;
        if (ok)
            return m; /* q-preservation forces invertibility */
    }
    throw std::logic_error("find_isometry_mapping: no isometry found");
}

}  // namespace detail

inline OrbitPartition orbit_check(const QuadraticSpace& s)
{
    if (s.g > 3)
        throw std::invalid_argument("orbit_check: genus bound exceeded");
    std::vector<GF2Matrix> gens;
    for (std::uint32_t v = 1; v < s.vector_count(); ++v)
        if (s.q(v) == 1)
            gens.push_back(transvection_matrix(s, v));

    auto orbits = detail::vector_orbits(s, gens);
    for (;;) {
        /* merge distinct orbits carrying the same q-value */
        bool merged = false;
        for (std::size_t i = 0; i < orbits.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < orbits.size() && !merged; ++j)
                if (s.q(orbits[i].front()) == s.q(orbits[j].front())) {
                    gens.push_back(detail::find_isometry_mapping(
                        s, orbits[i].front(), orbits[j].front()));
                    orbits = detail::vector_orbits(s, gens);
                    merged = true;
                }
        if (!merged)
            break;
    }
    OrbitPartition part;
    part.orbits = std::move(orbits);
    return part;
}

/* ---- Z/n transvections and the invariant-subgroup scan ------------------ */

/* 2g x 2g matrix over Z/n, n <= 4, dim <= 4: packs into 32 bits for closure
 * bookkeeping. */
struct ModMatrix {
    int modulus = 0;
    int dim = 0;
    std::array<std::uint8_t, 16> entry{};  /* column-major */

    static ModMatrix identity(int n, int dim)
    {
        ModMatrix m;
        m.modulus = n;
        m.dim = dim;
        for (int j = 0; j < dim; ++j)
            m.entry[std::size_t(j) * dim + j] = 1;
        return m;
    }

    std::array<std::uint8_t, 4> apply(const std::array<std::uint8_t, 4>& v) const
    {
        std::array<std::uint8_t, 4> r{};
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i)
                r[i] = std::uint8_t((r[i] + entry[std::size_t(j) * dim + i] * v[j]) % modulus);
        return r;
    }

    ModMatrix operator*(const ModMatrix& o) const
    {
        ModMatrix r;
        r.modulus = modulus;
        r.dim = dim;
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) {
                int acc = 0;
                for (int k = 0; k < dim; ++k)
                    acc += entry[std::size_t(k) * dim + i] * o.entry[std::size_t(j) * dim + k];
                r.entry[std::size_t(j) * dim + i] = std::uint8_t(acc % modulus);
            }
        return r;
    }

    std::uint64_t key() const
    {
        std::uint64_t k = 0;
        for (int i = 0; i < dim * dim; ++i)
            k |= std::uint64_t(entry[i]) << (2 * i);
        return k;
    }
};

namespace detail {

inline int lambda_mod(int n, int g, const std::array<std::uint8_t, 4>& x,
                      const std::array<std::uint8_t, 4>& y)
{
    int acc = 0;
    for (int i = 0; i < g; ++i)
        acc += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
    acc %= n;
    return acc < 0 ? acc + n : acc;
}

inline std::array<std::uint8_t, 4> unpack_mod(int n, int dim, std::uint32_t idx)
{
    std::array<std::uint8_t, 4> v{};
    for (int i = 0; i < dim; ++i) {
        v[i] = std::uint8_t(idx % n);
        idx /= std::uint32_t(n);
    }
    return v;
}

inline std::uint32_t pack_mod(int n, int dim, const std::array<std::uint8_t, 4>& v)
{
    std::uint32_t idx = 0;
    for (int i = dim; i-- > 0;)
        idx = idx * std::uint32_t(n) + v[i];
    return idx;
}

}  // namespace detail

/* Symplectic transvection matrix over Z/n: x -> x + lambda(x,v) v. */
inline ModMatrix transvection_matrix_mod(int n, int g, const std::array<std::uint8_t, 4>& v)
{
    ModMatrix m = ModMatrix::identity(n, 2 * g);
    for (int j = 0; j < 2 * g; ++j) {
        std::array<std::uint8_t, 4> ej{};
        ej[j] = 1;
        int lam = detail::lambda_mod(n, g, ej, v);
        for (int i = 0; i < 2 * g; ++i)
            m.entry[std::size_t(j) * (2 * g) + i] =
                std::uint8_t((m.entry[std::size_t(j) * (2 * g) + i] + lam * v[i]) % n);
    }
    return m;
}

/* The group generated by the mod-n residues of integral symplectic
 * transvections: every nonzero residue contributes x -> x + lambda(x,v) v.
 * Full element list. */
inline std::vector<ModMatrix> transvection_group_mod(int n, int g,
                                                     std::size_t element_cap = (1u << 21))
{
    if (n < 2 || n > 4)
        throw std::invalid_argument("transvection_group_mod: modulus must be 2, 3 or 4");
    if (g > 2)
        throw std::invalid_argument("transvection_group_mod: genus bound exceeded");
    const std::uint32_t total = [&] {
        std::uint32_t t = 1;
        for (int i = 0; i < 2 * g; ++i)
            t *= std::uint32_t(n);
        return t;
    }();

    std::vector<ModMatrix> gens;
    std::unordered_set<std::uint64_t> gen_keys;
    for (std::uint32_t idx = 1; idx < total; ++idx) {
        auto v = detail::unpack_mod(n, 2 * g, idx);
        ModMatrix t = transvection_matrix_mod(n, g, v);
        if (gen_keys.insert(t.key()).second)
            gens.push_back(t);
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<ModMatrix> elems;
    std::queue<ModMatrix> work;
    ModMatrix id = ModMatrix::identity(n, 2 * g);
    seen.insert(id.key());
    elems.push_back(id);
    work.push(id);
    while (!work.empty()) {
        ModMatrix m = work.front();
        work.pop();
        for (const ModMatrix& t : gens) {
            ModMatrix p = t * m;
            if (seen.insert(p.key()).second) {
                if (elems.size() >= element_cap)
                    throw std::runtime_error("transvection_group_mod: element cap exceeded");
                elems.push_back(p);
                work.push(p);
            }
        }
    }
    std::sort(elems.begin(), elems.end(),
              [](const ModMatrix& a, const ModMatrix& b) { return a.key() < b.key(); });
    return elems;
}

struct InvariantSubgroupWitness {
    int content_gcd = 0;            /* gcd(content(v), n) */
    std::vector<int> vector;        /* an example v with that content */
    std::size_t subgroup_size = 0;  /* size of its invariant closure */
    bool matches = false;           /* closure == content * full lattice? */
};

struct InvariantSubgroupReport {
    int modulus = 0;
    int genus = 0;
    int arf = 0;
    std::size_t subgroups_checked = 0;
    bool all_of_form_k_times_lattice = false;
    std::vector<InvariantSubgroupWitness> witnesses;  /* one per content value */
};

/* For every v in (Z/n)^{2g}, the smallest subgroup containing v and closed
 * under the residue transvection group must be gcd(content(v), n) times the
 * full lattice.  The arf parameter records which refinement the integral
 * transvections preserve upstairs; the residue generators themselves do not
 * depend on it, so it travels through as report metadata. */
inline InvariantSubgroupReport invariant_subgroup_scan(int n, int g, int arf_value)
{
    if (n < 2 || n > 4)
        throw std::invalid_argument("invariant_subgroup_scan: modulus must be 2, 3 or 4");
    if (g > 2)
        throw std::invalid_argument("invariant_subgroup_scan: genus bound exceeded");
    const int dim = 2 * g;
    std::uint32_t total = 1;
    for (int i = 0; i < dim; ++i)
        total *= std::uint32_t(n);

    /* transvection directions: every nonzero residue */
    std::vector<std::array<std::uint8_t, 4>> gen_vectors;
    for (std::uint32_t idx = 1; idx < total; ++idx)
        gen_vectors.push_back(detail::unpack_mod(n, dim, idx));

    InvariantSubgroupReport report;
    report.modulus = n;
    report.genus = g;
    report.arf = arf_value;
    report.subgroups_checked = total;
    report.all_of_form_k_times_lattice = true;

    std::map<int, InvariantSubgroupWitness> by_content;
    for (std::uint32_t start = 0; start < total; ++start) {
        auto v0 = detail::unpack_mod(n, dim, start);
        int content = n;
        for (int i = 0; i < dim; ++i)
            content = std::gcd(content, int(v0[i]));

        /* subgroup closure under addition and all generator transvections */
        std::vector<bool> in(total, false);
        std::vector<std::uint32_t> members;
        std::queue<std::uint32_t> work;
        auto push = [&](std::uint32_t idx) {
            if (!in[idx]) {
                in[idx] = true;
                members.push_back(idx);
                work.push(idx);
            }
        };
        push(detail::pack_mod(n, dim, v0));
        while (!work.empty()) {
            std::uint32_t xi = work.front();
            work.pop();
            auto x = detail::unpack_mod(n, dim, xi);
            /* additive closure against current members */
            for (std::size_t mi = 0; mi < members.size(); ++mi) {
                auto y = detail::unpack_mod(n, dim, members[mi]);
                std::array<std::uint8_t, 4> sum{};
                for (int i = 0; i < dim; ++i)
                    sum[i] = std::uint8_t((x[i] + y[i]) % n);
                push(detail::pack_mod(n, dim, sum));
            }
            for (const auto& w : gen_vectors) {
                int lam = detail::lambda_mod(n, g, x, w);
                std::array<std::uint8_t, 4> img;
                for (int i = 0; i < dim; ++i)
                    img[i] = std::uint8_t((x[i] + lam * w[i]) % n);
                push(detail::pack_mod(n, dim, img));
            }
        }

        /* expected subgroup: vectors whose coordinates are multiples of k */
        std::size_t expected = 1;
        for (int i = 0; i < dim; ++i)
            expected *= std::size_t(n / content);
        bool matches = members.size() == expected;
        if (matches)
            for (std::uint32_t mi : members) {
                auto m = detail::unpack_mod(n, dim, mi);
                for (int i = 0; i < dim; ++i)
                    if (m[i] % content != 0)
                        matches = false;
            }
        if (!matches)
            report.all_of_form_k_times_lattice = false;

        auto it = by_content.find(content);
        if (it == by_content.end() || (it->second.matches && !matches)) {
            InvariantSubgroupWitness w;
            w.content_gcd = content;
            for (int i = 0; i < dim; ++i)
                w.vector.push_back(v0[i]);
            w.subgroup_size = members.size();
            w.matches = matches;
            by_content[content] = std::move(w);
        }
    }
    for (auto& [k, w] : by_content)
        report.witnesses.push_back(std::move(w));
    return report;
}

/* ---- Ker(rho) and the pi_3 extension model ------------------------------ */

/* Ker(rho) = Hom(H_3(X_d), 2*(Z/d)) = (Z/m)^{b3} with m = d for odd d and
 * m = d/2 for even d. */
struct KerRhoDescription {
    long d = 0;
    Int modulus;   /* m */
    Int exponent;  /* b3(d) */

    bool is_trivial() const { return modulus == 1 || exponent == 0; }

    std::string to_string() const
    {
        if (is_trivial())
            return "0";
        std::ostringstream os;
        os << "(Z/" << modulus << ")^" << exponent;
        return os.str();
    }

    /* materialized invariant factors; guarded because b3 grows like d^4 */
    std::vector<Int> invariant_factors(std::size_t limit = 100000) const
    {
        if (is_trivial())
            return {};
        if (exponent > Int(limit))
            throw std::length_error("KerRhoDescription: exponent too large to materialize");
        return std::vector<Int>(std::size_t(exponent), modulus);
    }
};

inline KerRhoDescription ker_rho_description(long d)
{
    if (d < 1)
        throw std::invalid_argument("ker_rho_description: degree must be >= 1");
    KerRhoDescription k;
    k.d = d;
    k.modulus = (d % 2 != 0) ? Int(d) : Int(d) / 2;
    k.exponent = compute_invariants(d).b3;
    if (k.is_trivial()) {
        k.modulus = 1;
        k.exponent = 0;
    }
    return k;
}

/* Extension model 0 -> Z/d{eta} -> pi_3 -> H -> 0 with H free symplectic of
 * rank 2g.  The set section is the zero cocycle: nothing downstream depends
 * on the extension class, and keeping the choice explicit isolates any future
 * work on the genuine class.  The form vanishes on eta, so the radical is
 * exactly the torsion summand as long as the symplectic block is unimodular. */
struct Pi3Model {
    long d = 0;
    int g = 0;
    MuOnEta mu_on_eta;

    Pi3Model(long degree, int genus)
        : d(degree), g(genus), mu_on_eta(mu_restriction_on_eta(degree))
    {
    }

    IntMatrix symplectic_gram() const
    {
        IntMatrix m(2 * std::size_t(g), 2 * std::size_t(g));
        for (int i = 0; i < g; ++i) {
            m(2 * i, 2 * i + 1) = 1;
            m(2 * i + 1, 2 * i) = -1;
        }
        return m;
    }

    /* radical of the model form == the Z/d summand, which holds exactly when
     * the free block pairs unimodularly */
    bool radical_is_torsion_summand() const
    {
        if (g == 0)
            return true;
        auto s = smith_normal_form(symplectic_gram(), false, false);
        for (const Int& x : s.diag)
            if (x != 1)
                return false;
        return true;
    }
};

}  // namespace hypermono
