#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

/* Exact integer linear algebra: dense matrices over Z, Smith normal form with
 * optional unimodular transforms, cokernel invariant factors, and lattice
 * membership tests (integral and 2-local).  Everything is arbitrary-precision;
 * no floating point anywhere. */

namespace hypermono {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries))
    {
        if (a_.size() != rows_ * cols_)
            throw std::invalid_argument("IntMatrix: entry count does not match dimensions");
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /* Build from an initializer-friendly row list (rows may be empty; the
     * column count must then be given explicitly). */
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("IntMatrix::from_rows: ragged row");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const
    {
        for (const Int& x : a_)
            if (x != 0)
                return false;
        return true;
    }

    IntMatrix operator*(const IntMatrix& o) const
    {
        if (cols_ != o.rows_)
            throw std::invalid_argument("IntMatrix: dimension mismatch in product");
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += x * o(k, j);
            }
        return r;
    }

    IntMatrix transpose() const
    {
        IntMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < cols_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < rows_; ++k)
            std::swap((*this)(k, i), (*this)(k, j));
    }
    /* row_i -= q * row_j */
    void submul_row(std::size_t i, std::size_t j, const Int& q)
    {
        if (q == 0)
            return;
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) -= q * (*this)(j, k);
    }
    /* col_i -= q * col_j */
    void submul_col(std::size_t i, std::size_t j, const Int& q)
    {
        if (q == 0)
            return;
        for (std::size_t k = 0; k < rows_; ++k)
            (*this)(k, i) -= q * (*this)(k, j);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) = -(*this)(i, k);
    }
    void add_row(std::size_t i, std::size_t j)  /* row_i += row_j */
    {
        for (std::size_t k = 0; k < cols_; ++k)
            (*this)(i, k) += (*this)(j, k);
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
    {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "\n[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? " " : "") << m(i, j);
            os << "]";
        }
        return os;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

struct SmithResult {
    /* diag has min(rows, cols) entries, nonnegative, forming a divisibility
     * chain; `rank` of them are nonzero.  When requested, left * a * right is
     * the diagonal matrix. */
    std::vector<Int> diag;
    std::size_t rank = 0;
    IntMatrix left;    /* rows x rows, unimodular (empty if not requested) */
    IntMatrix right;   /* cols x cols, unimodular (empty if not requested) */
};

/* Smith normal form by exact elimination.  Pivot selection: nonzero entry of
 * minimal absolute value in the trailing submatrix, ties broken by lowest row
 * then lowest column index, so the output is reproducible byte for byte. */
inline SmithResult smith_normal_form(const IntMatrix& a,
                                     bool want_left = true,
                                     bool want_right = true)
{
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t mn = std::min(m, n);
    IntMatrix b = a;
    IntMatrix u = want_left ? IntMatrix::identity(m) : IntMatrix();
    IntMatrix v = want_right ? IntMatrix::identity(n) : IntMatrix();

    std::size_t k = 0;
    for (; k < mn; ++k) {
        /* locate minimal-|value| pivot in the trailing submatrix; a unit
         * entry ends the scan early (nothing can beat it, and row-major
         * order preserves the tie-break) */
        std::size_t pi = 0, pj = 0;
        bool found = false;
        Int best;
        for (std::size_t i = k; i < m && !(found && best == 1); ++i)
            for (std::size_t j = k; j < n; ++j) {
                const Int& x = b(i, j);
                if (x == 0)
                    continue;
                Int ax = abs_int(x);
                if (!found || ax < best) {
                    found = true;
                    best = std::move(ax);
                    pi = i;
                    pj = j;
                    if (best == 1)
                        break;
                }
            }
        if (!found)
            break;  /* trailing submatrix is zero */
        b.swap_rows(k, pi);
        if (want_left)
            u.swap_rows(k, pi);
        b.swap_cols(k, pj);
        if (want_right)
            v.swap_cols(k, pj);

        for (;;) {
            /* Reduce column k by the pivot; a nonzero remainder becomes the
             * new, strictly smaller pivot. */
            bool shrunk = false;
            for (std::size_t i = k + 1; i < m && !shrunk; ++i) {
                if (b(i, k) == 0)
                    continue;
                Int q = b(i, k) / b(k, k);  /* truncated: |remainder| < |pivot| */
                b.submul_row(i, k, q);
                if (want_left)
                    u.submul_row(i, k, q);
                if (b(i, k) != 0) {
                    b.swap_rows(k, i);
                    if (want_left)
                        u.swap_rows(k, i);
                    shrunk = true;
                }
            }
            if (shrunk)
                continue;
            for (std::size_t j = k + 1; j < n && !shrunk; ++j) {
                if (b(k, j) == 0)
                    continue;
                Int q = b(k, j) / b(k, k);
                b.submul_col(j, k, q);
                if (want_right)
                    v.submul_col(j, k, q);
                if (b(k, j) != 0) {
                    b.swap_cols(k, j);
                    if (want_right)
                        v.swap_cols(k, j);
                    shrunk = true;
                }
            }
            if (shrunk)
                continue;
            /* Row and column are clear.  Enforce the divisibility chain: the
             * pivot must divide every trailing entry; if not, fold the bad row
             * into row k and keep reducing. */
            bool fixed = false;
            for (std::size_t i = k + 1; i < m && !fixed; ++i)
                for (std::size_t j = k + 1; j < n && !fixed; ++j)
                    if (b(i, j) % b(k, k) != 0) {
                        b.add_row(k, i);
                        if (want_left)
                            u.add_row(k, i);
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
        if (b(k, k) < 0) {
            b.negate_row(k);
            if (want_left)
                u.negate_row(k);
        }
    }

    SmithResult r;
    r.diag.resize(mn);
    for (std::size_t i = 0; i < mn; ++i)
        r.diag[i] = b(i, i);
    r.rank = k;
    r.left = std::move(u);
    r.right = std::move(v);
    return r;
}

/* Invariant factors of Z^cols / rowspan(relations): the nonunit finite factors
 * in divisibility order followed by one 0 per free summand. */
inline std::vector<Int> cokernel_invariant_factors(const IntMatrix& relations)
{
    SmithResult s = smith_normal_form(relations, false, false);
    std::vector<Int> f;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.diag[i] != 1)
            f.push_back(s.diag[i]);
    for (std::size_t i = s.rank; i < relations.cols(); ++i)
        f.push_back(0);
    return f;
}

/* Basis of the left kernel {u : u * a = 0}: the rows of the left transform
 * beyond the rank. */
inline std::vector<std::vector<Int>> left_kernel_basis(const IntMatrix& a)
{
    SmithResult s = smith_normal_form(a, true, false);
    std::vector<std::vector<Int>> basis;
    for (std::size_t i = s.rank; i < a.rows(); ++i) {
        std::vector<Int> row(a.rows());
        for (std::size_t j = 0; j < a.rows(); ++j)
            row[j] = s.left(i, j);
        basis.push_back(std::move(row));
    }
    return basis;
}

/* Shared core for lattice membership: with u*G*v = D and s = t*v, the target
 * t lies in the row span of G iff d_i | s_i on the diagonal range and s_i = 0
 * beyond it. */
namespace detail {
inline std::vector<Int> transformed_target(const SmithResult& s,
                                           const std::vector<Int>& target)
{
    const std::size_t n = s.right.rows();
    std::vector<Int> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc += target[i] * s.right(i, j);
        out[j] = acc;
    }
    return out;
}

inline bool membership_from_transformed(const SmithResult& s,
                                        const std::vector<Int>& tv,
                                        const Int& multiplier)
{
    const std::size_t mn = s.diag.size();
    for (std::size_t i = 0; i < tv.size(); ++i) {
        Int x = multiplier * tv[i];
        if (i < mn && s.diag[i] != 0) {
            if (x % s.diag[i] != 0)
                return false;
        } else if (x != 0) {
            return false;
        }
    }
    return true;
}
}  // namespace detail

/* Does target lie in the Z-span of the generator vectors? */
inline bool lattice_contains(const std::vector<std::vector<Int>>& generators,
                             const std::vector<Int>& target)
{
    if (generators.empty()) {
        for (const Int& x : target)
            if (x != 0)
                return false;
        return true;
    }
    const std::size_t n = target.size();
    for (const auto& g : generators)
        if (g.size() != n)
            throw std::invalid_argument("lattice_contains: dimension mismatch");
    IntMatrix g = IntMatrix::from_rows(generators, n);
    SmithResult s = smith_normal_form(g, false, true);
    return detail::membership_from_transformed(s, detail::transformed_target(s, target), 1);
}

/* Membership after inverting all odd primes: true iff some odd multiple of the
 * target lies in the integer span.  The candidate multipliers are the odd
 * divisors of the odd part of the lattice index (product of the nonzero
 * invariant factors); larger odd multipliers cannot help. */
inline bool lattice_membership_2local(const std::vector<std::vector<Int>>& generators,
                                      const std::vector<Int>& target)
{
    if (generators.empty()) {
        for (const Int& x : target)
            if (x != 0)
                return false;
        return true;
    }
    const std::size_t n = target.size();
    for (const auto& g : generators)
        if (g.size() != n)
            throw std::invalid_argument("lattice_membership_2local: dimension mismatch");
    IntMatrix g = IntMatrix::from_rows(generators, n);
    SmithResult s = smith_normal_form(g, false, true);
    std::vector<Int> tv = detail::transformed_target(s, target);

    Int index = 1;
    for (std::size_t i = 0; i < s.rank; ++i)
        index *= s.diag[i];
    Int odd = index;
    while (odd % 2 == 0)
        odd /= 2;

    /* enumerate odd divisors of `odd` by trial division */
    std::vector<Int> primes;
    std::vector<int> exps;
    Int rest = odd;
    for (Int p = 3; p * p <= rest; p += 2)
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            primes.push_back(p);
            exps.push_back(e);
        }
    if (rest > 1) {
        primes.push_back(rest);
        exps.push_back(1);
    }
    std::vector<Int> divisors{1};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::size_t base = divisors.size();
        Int pe = 1;
        for (int e = 1; e <= exps[i]; ++e) {
            pe *= primes[i];
            for (std::size_t j = 0; j < base; ++j)
                divisors.push_back(divisors[j] * pe);
        }
    }
    for (const Int& mlt : divisors)
        if (detail::membership_from_transformed(s, tv, mlt))
            return true;
    return false;
}

}  // namespace hypermono
