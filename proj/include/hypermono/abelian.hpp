#pragma once
#include "intmat.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

/* Finitely generated abelian groups: presentations reduced to invariant
 * factors via Smith normal form, plus a canonical value type for finite
 * groups given as direct sums of cyclic groups. */

namespace hypermono {

class AbelianGroupPresentation {
  public:
    /* trivial group: no generators, no relations */
    AbelianGroupPresentation() : generator_count_(0) {}

    /* relations: one row per relation among `generator_count` generators */
    AbelianGroupPresentation(std::size_t generator_count, IntMatrix relations)
        : generator_count_(generator_count), relations_(std::move(relations))
    {
        if (relations_.cols() != generator_count_)
            throw std::invalid_argument("AbelianGroupPresentation: relation width mismatch");
        factors_ = cokernel_invariant_factors(relations_);
    }

    std::size_t generator_count() const { return generator_count_; }
    const IntMatrix& relations() const { return relations_; }

    /* nonunit finite factors in divisibility order, then one 0 per free
     * summand */
    const std::vector<Int>& invariant_factors() const { return factors_; }

    std::size_t free_rank() const
    {
        std::size_t r = 0;
        for (const Int& f : factors_)
            if (f == 0)
                ++r;
        return r;
    }

    std::vector<Int> torsion_factors() const
    {
        std::vector<Int> t;
        for (const Int& f : factors_)
            if (f != 0)
                t.push_back(f);
        return t;
    }

    bool is_trivial() const { return factors_.empty(); }
    bool is_free() const { return torsion_factors().empty(); }

    /* group order when finite */
    std::optional<Int> order() const
    {
        Int o = 1;
        for (const Int& f : factors_) {
            if (f == 0)
                return std::nullopt;
            o *= f;
        }
        return o;
    }

    std::string to_string() const
    {
        if (factors_.empty())
            return "0";
        std::ostringstream os;
        std::size_t free = free_rank();
        bool first = true;
        for (const Int& f : factors_)
            if (f != 0) {
                os << (first ? "" : " x ") << "Z/" << f;
                first = false;
            }
        if (free == 1)
            os << (first ? "Z" : " x Z");
        else if (free > 1)
            os << (first ? "Z^" : " x Z^") << free;
        return os.str();
    }

  private:
    std::size_t generator_count_;
    IntMatrix relations_;
    std::vector<Int> factors_;
};

/* A finite abelian group in canonical invariant-factor form d1 | d2 | ...,
 * all factors >= 2; the trivial group is the empty list. */
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;

    /* canonicalize an arbitrary direct sum of cyclic groups Z/n1 x ... */
    static FiniteAbelianGroup from_cyclic_orders(const std::vector<Int>& orders)
    {
        /* split into prime powers, then regroup greedily: the largest
         * invariant factor takes the top power of every prime. */
        std::map<Int, std::vector<int>> exps;  /* prime -> exponents, desc */
        for (Int n : orders) {
            if (n <= 0)
                throw std::invalid_argument("FiniteAbelianGroup: orders must be positive");
            for (Int p = 2; p * p <= n; ++p)
                if (n % p == 0) {
                    int e = 0;
                    while (n % p == 0) {
                        n /= p;
                        ++e;
                    }
                    exps[p].push_back(e);
                }
            if (n > 1)
                exps[n].push_back(1);
        }
        std::size_t chain_len = 0;
        for (auto& [p, es] : exps) {
            std::sort(es.begin(), es.end(), std::greater<int>());
            chain_len = std::max(chain_len, es.size());
        }
        std::vector<Int> chain(chain_len, 1);  /* chain[0] = largest */
        for (const auto& [p, es] : exps)
            for (std::size_t i = 0; i < es.size(); ++i) {
                Int pe = 1;
                for (int e = 0; e < es[i]; ++e)
                    pe *= p;
                chain[i] *= pe;
            }
        std::reverse(chain.begin(), chain.end());  /* ascending: d1 | d2 | ... */
        FiniteAbelianGroup g;
        g.factors_ = std::move(chain);
        return g;
    }

    static FiniteAbelianGroup trivial() { return FiniteAbelianGroup(); }

    const std::vector<Int>& invariant_factors() const { return factors_; }

    Int order() const
    {
        Int o = 1;
        for (const Int& f : factors_)
            o *= f;
        return o;
    }

    bool is_trivial() const { return factors_.empty(); }
    bool is_cyclic() const { return factors_.size() <= 1; }

    bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

    std::string to_string() const
    {
        if (factors_.empty())
            return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            os << (i ? " x " : "") << "Z/" << factors_[i];
        return os.str();
    }

  private:
    std::vector<Int> factors_;
};

}  // namespace hypermono
