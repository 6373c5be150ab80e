#pragma once
#include "abelian.hpp"

#include <array>
#include <optional>

/* Torsion bookkeeping for the inertia-style map Phi from the group of
 * homotopy 7-spheres (Theta_7, cyclic of order 28) into the mapping class
 * group data of a degree-d hypersurface.  The 2-primary parts of Ker(Phi) and
 * of Theta_7/Ker depend only on d mod 16 and are stored as residue lists, not
 * code branches; a compile-time assertion checks that the three lists
 * partition Z/16, since transcription errors in such tables are the dominant
 * risk. */

namespace hypermono::kreck_su {

/* d mod 16 residues, grouped by the 2-part of Ker(Phi):           */
inline constexpr std::array<int, 6> residues_ker_z4 = {2, 4, 6, 10, 12, 14};
inline constexpr std::array<int, 5> residues_ker_z2 = {3, 5, 8, 11, 13};
inline constexpr std::array<int, 5> residues_ker_trivial = {0, 1, 7, 9, 15};

/* On the same residue classes the 2-part of Theta_7/Ker is complementary:
 * Z/4-kernel residues leave nothing, Z/2 leaves Z/2, trivial leaves Z/4. */

namespace detail {
constexpr bool lists_partition_z16()
{
    int seen[16] = {};
    for (int r : residues_ker_z4)
        ++seen[r];
    for (int r : residues_ker_z2)
        ++seen[r];
    for (int r : residues_ker_trivial)
        ++seen[r];
    for (int i = 0; i < 16; ++i)
        if (seen[i] != 1)
            return false;
    return true;
}
static_assert(lists_partition_z16(), "residue tables must partition Z/16");

enum class TwoPart { trivial, z2, z4 };

constexpr TwoPart ker_two_part(long d)
{
    int r = int(d % 16);
    for (int x : residues_ker_z4)
        if (x == r)
            return TwoPart::z4;
    for (int x : residues_ker_z2)
        if (x == r)
            return TwoPart::z2;
    return TwoPart::trivial;
}
}  // namespace detail

inline FiniteAbelianGroup ker_phi(long d)
{
    if (d < 1)
        throw std::invalid_argument("ker_phi: degree must be >= 1");
    std::vector<Int> parts;
    switch (detail::ker_two_part(d)) {
        case detail::TwoPart::z4: parts.push_back(4); break;
        case detail::TwoPart::z2: parts.push_back(2); break;
        case detail::TwoPart::trivial: break;
    }
    if (d % 7 != 0)
        parts.push_back(7);
    return FiniteAbelianGroup::from_cyclic_orders(parts);
}

inline FiniteAbelianGroup coker_phi(long d)
{
    if (d < 1)
        throw std::invalid_argument("coker_phi: degree must be >= 1");
    std::vector<Int> parts;
    if (d % 4 == 0)
        parts.push_back(2);
    if (d % 3 == 0)
        parts.push_back(3);
    return FiniteAbelianGroup::from_cyclic_orders(parts);
}

inline FiniteAbelianGroup theta7_mod_ker(long d)
{
    if (d < 1)
        throw std::invalid_argument("theta7_mod_ker: degree must be >= 1");
    std::vector<Int> parts;
    switch (detail::ker_two_part(d)) {
        case detail::TwoPart::z4: break;
        case detail::TwoPart::z2: parts.push_back(2); break;
        case detail::TwoPart::trivial: parts.push_back(4); break;
    }
    if (d % 7 == 0)
        parts.push_back(7);
    return FiniteAbelianGroup::from_cyclic_orders(parts);
}

struct MCGTableRow {
    long d = 0;
    FiniteAbelianGroup ker_phi;
    FiniteAbelianGroup coker_phi;
    FiniteAbelianGroup theta7_mod_ker;
    Int im_phi_order;               /* 28 / |ker_phi| */
    Int k_d_order;                  /* |Im(Phi)| * |Coker(Phi)| */
    std::optional<Int> k_constant;  /* (5 - d^2) d / 4, only integral for odd d */
};

inline MCGTableRow table_row(long d)
{
    MCGTableRow row;
    row.d = d;
    row.ker_phi = ker_phi(d);
    row.coker_phi = coker_phi(d);
    row.theta7_mod_ker = theta7_mod_ker(d);
    row.im_phi_order = Int(28) / row.ker_phi.order();
    row.k_d_order = row.im_phi_order * row.coker_phi.order();
    if (d % 2 != 0) {
        Int D = d;
        row.k_constant = (5 - D * D) * D / 4;
    }
    return row;
}

}  // namespace hypermono::kreck_su
