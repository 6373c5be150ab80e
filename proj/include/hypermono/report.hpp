#pragma once

/* Per-degree orchestration: runs every applicable module for one degree d,
 * assembles the extension-theorem summary together with the registry of
 * classical input constants, and serializes the result.  JSON output is
 * deterministic: fixed key order, no timestamps, arbitrary-precision values
 * rendered as decimal strings. */

#include <hypermono/ext.hpp>
#include <hypermono/hypersurface.hpp>
#include <hypermono/jtheory.hpp>
#include <hypermono/kreck_su.hpp>
#include <hypermono/pham.hpp>
#include <hypermono/quadform.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hypermono {

using ordered_json = nlohmann::ordered_json;

/* classical constants the extension theorem consumes; each entry quotes the
 * statement it stands for and names its classical source */
struct RegistryEntry {
    std::string name;
    std::string statement;
    std::string attribution;
};

inline const std::vector<RegistryEntry>& constants_registry()
{
    static const std::vector<RegistryEntry> entries = {
        {"stable_7_stem", "pi_7^s(S^0) = Z/240{sigma}",
         "image-of-J computation in the 7-stem"},
        {"seven_stem_of_quotient", "pi_7^s(SO/SO(6)) = Z/4",
         "Paechter's homotopy tables for Stiefel manifolds"},
        {"homotopy_7_spheres", "Theta_7 = Z/28", "Kervaire-Milnor"},
        {"sigma_mod_3_filtration", "sigma has F_3-Adams filtration 2",
         "odd-primary alpha family"},
        {"framed_handlebody_h1", "H_1 of the framed genus-g mapping class "
                                 "group extends Z/4 and Z/240 summands",
         "abelianization of framed mapping class groups, stable range"},
    };
    return entries;
}

struct PhamSummary {
    Int module_rank;
    bool torsion_free = false;
    Int quotient_rank;
    std::vector<Int> quotient_torsion;
    Int h0_module_order;
    bool ideal_map_zero = false;
    bool eta_vanishes = false;
};

struct ChartSummary {
    ExtChart chart;
    EInfReport e_infinity;
};

struct DegreeReport {
    long d = 0;
    bool degenerate = false; /* d <= 2: no S^3 x S^3 summands, trivial image */
    std::vector<std::string> notes;

    HypersurfaceInvariants invariants;
    kreck_su::MCGTableRow mcg;
    KerRhoDescription ker_rho;

    std::optional<int> arf; /* only refines the intersection form for odd d */
    std::vector<InvariantSubgroupReport> scans;

    std::optional<PhamSummary> pham;
    std::string pham_skip_reason;

    std::optional<JamesPeriodicityVerdict> jtheory;
    std::string jtheory_skip_reason;

    std::vector<ChartSummary> charts;

    std::vector<std::string> failures; /* empty iff every asserted check held */
    bool all_checks_passed() const { return failures.empty(); }
};

namespace detail {

inline void check_report(DegreeReport& r, bool ok, const std::string& what)
{
    if (!ok)
        r.failures.push_back(what);
}

} // namespace detail

inline DegreeReport build_report(long d)
{
    if (d < 1)
        throw std::invalid_argument("build_report: degree must be >= 1");

    DegreeReport r;
    r.d = d;
    r.degenerate = d <= 2;

    r.invariants = compute_invariants(d);
    r.mcg = kreck_su::table_row(d);
    r.ker_rho = ker_rho_description(d);

    if (r.degenerate) {
        r.notes.push_back("b3 = 0: no vanishing (co)cycles, monodromy image trivial");
        if (d == 1)
            r.notes.push_back("full mapping class group is Z/4");
    }

    detail::check_report(r,
                         r.mcg.ker_phi.order() * r.mcg.theta7_mod_ker.order() ==
                             28,
                         "kernel and disc-supported part multiply to 28");
    detail::check_report(r, r.mcg.theta7_mod_ker.is_cyclic(),
                         "disc-supported part cyclic");
    detail::check_report(r, r.invariants.euler_char == 4 - r.invariants.b3,
                         "euler characteristic matches 4 - b3");
    detail::check_report(r, r.invariants.spin == (d % 2 != 0),
                         "spin iff odd degree");

    int scan_arf = 0;
    if (d % 2 != 0) {
        r.arf = arf_of_hypersurface(d);
        scan_arf = *r.arf;
    }
    for (int n : {2, 3, 4}) {
        r.scans.push_back(invariant_subgroup_scan(n, 2, scan_arf));
        detail::check_report(r, r.scans.back().all_of_form_k_times_lattice,
                             "invariant subgroups of modulus " +
                                 std::to_string(n) + " all of standard form");
    }

    if (d >= 2 && d <= pham_degree_bound()) {
        PhamModule p = build_pham_module(d);
        LooijengaQuotient q = build_looijenga_quotient(d);
        IdealCoinvariantMap map = ideal_coinvariant_map(d);
        PhamSummary s;
        s.module_rank = p.rank;
        s.torsion_free = p.torsion_free;
        s.quotient_rank = q.quotient_rank;
        s.quotient_torsion = q.quotient_presentation.torsion_factors();
        s.h0_module_order = map.target_order;
        s.ideal_map_zero = map.is_zero;
        s.eta_vanishes = eta_vanishing_certificate(d);
        r.pham = s;
        detail::check_report(r, s.module_rank == Int(d - 1) * (d - 1) * (d - 1) * (d - 1),
                             "middle homology rank (d-1)^4");
        detail::check_report(r, s.torsion_free, "middle homology torsion-free");
        detail::check_report(r, s.quotient_rank == r.invariants.b3,
                             "quotient rank matches b3");
        detail::check_report(r, s.h0_module_order == d,
                             "coinvariants of middle homology have order d");
        if (d >= 3)
            detail::check_report(r, s.ideal_map_zero && s.eta_vanishes,
                                 "vanishing-cycle ideal dies in coinvariants");
    } else {
        r.pham_skip_reason = d < 2 ? "degree 1 has trivial middle homology data"
                                   : "degree above the configured bound";
    }

    if (d % 4 == 0) {
        r.jtheory = james_periodicity_check(d);
        detail::check_report(r, r.jtheory->holds,
                             "shifted bundle class lies in the 2-local J-kernel");
    } else {
        r.jtheory_skip_reason = "periodicity check needs 4 | d";
    }

    if (d % 2 == 0) {
        ChartSummary two;
        two.chart = thom_chart(d, 2);
        two.e_infinity = apply_differential_pattern(two.chart, d);
        const EInfOutcome& o = two.e_infinity.outcomes.front();
        detail::check_report(r, o.column_orders[5] == 4,
                             "2-local stem-5 order 4");
        detail::check_report(r,
                             o.column_orders[7] == (d % 8 == 0 ? 32 : 16),
                             "2-local stem-7 order from the residue of d mod 8");
        r.charts.push_back(std::move(two));
    }
    {
        ChartSummary three;
        three.chart = thom_chart(d, 3);
        if (!three.chart.differentials.empty())
            three.e_infinity = apply_differential_pattern(three.chart, d);
        if (d % 3 == 0) {
            detail::check_report(r, three.e_infinity.outcomes.size() == 2,
                                 "undecided 3-local differential keeps both outcomes");
            detail::check_report(
                r,
                three.e_infinity.outcomes[0].column_orders[7] == 9 &&
                    three.e_infinity.outcomes[1].column_orders[7] == 3,
                "3-local stem-7 order 9 or 3");
        }
        r.charts.push_back(std::move(three));
    }

    return r;
}

struct BatchResult {
    long d_from = 0, d_to = 0;
    std::vector<kreck_su::MCGTableRow> rows;
    std::vector<Int> b3_values;
    bool order_28_consistent = false;
};

inline BatchResult batch(long d_from, long d_to)
{
    if (d_to < d_from || d_from < 1)
        throw std::invalid_argument("batch: empty or invalid degree range");
    BatchResult out;
    out.d_from = d_from;
    out.d_to = d_to;
    out.order_28_consistent = true;
    for (long d = d_from; d <= d_to; ++d) {
        out.rows.push_back(kreck_su::table_row(d));
        out.b3_values.push_back(compute_invariants(d).b3);
        const auto& row = out.rows.back();
        if (row.ker_phi.order() * row.theta7_mod_ker.order() != 28)
            out.order_28_consistent = false;
    }
    return out;
}

/* ---- serialization ---------------------------------------------------- */

namespace detail {

inline std::string int_str(const Int& v) { return v.str(); }

inline ordered_json group_json(const FiniteAbelianGroup& g)
{
    ordered_json j;
    j["name"] = g.to_string();
    j["order"] = int_str(g.order());
    return j;
}

inline ordered_json chart_json(const ChartSummary& summary)
{
    const ExtChart& chart = summary.chart;
    ordered_json j;
    j["p"] = chart.p;
    j["context"] = chart.residue_context;
    j["s_max"] = chart.s_max;
    j["n_max"] = chart.n_max;
    j["dims"] = chart.dims; /* rows s = 0 .. s_max */
    ordered_json diffs = ordered_json::array();
    for (const auto& ann : chart.differentials) {
        ordered_json dj;
        dj["r"] = ann.r;
        dj["source"] = {ann.source_stem, ann.source_s};
        dj["target"] = {ann.target_stem, ann.target_s};
        switch (ann.kind) {
        case DifferentialAnnotation::Kind::always_iso:
            dj["kind"] = "always iso";
            break;
        case DifferentialAnnotation::Kind::iso_iff_d_mod_8_is_4:
            dj["kind"] = "iso iff d = 4 mod 8";
            break;
        case DifferentialAnnotation::Kind::undecided:
            dj["kind"] = "undecided";
            break;
        }
        diffs.push_back(std::move(dj));
    }
    j["differentials"] = std::move(diffs);
    if (chart.differentials.empty())
        j["e_infinity_note"] = "no differential pattern recorded for this residue";
    ordered_json outcomes = ordered_json::array();
    for (const auto& o : summary.e_infinity.outcomes) {
        ordered_json oj;
        oj["label"] = o.label;
        oj["class_counts"] = o.class_counts;
        oj["column_orders"] = o.column_orders;
        oj["has_tower"] = o.has_tower;
        outcomes.push_back(std::move(oj));
    }
    j["e_infinity"] = std::move(outcomes);
    return j;
}

} // namespace detail

inline ordered_json report_to_json(const DegreeReport& r)
{
    using detail::int_str;
    ordered_json j;
    j["schema"] = "hypermono/1";
    j["d"] = r.d;
    j["degenerate"] = r.degenerate;
    j["notes"] = r.notes;

    {
        ordered_json h;
        h["c1"] = int_str(r.invariants.c1);
        h["c2"] = int_str(r.invariants.c2);
        h["c3"] = int_str(r.invariants.c3);
        h["euler_characteristic"] = int_str(r.invariants.euler_char);
        h["b3"] = int_str(r.invariants.b3);
        h["genus"] = int_str(r.invariants.g);
        h["p1"] = int_str(r.invariants.p1_coeff);
        h["spin"] = r.invariants.spin;
        h["wu_v4_coefficient"] = r.invariants.v4_coeff_mod2;
        j["hypersurface"] = std::move(h);
    }

    {
        ordered_json m;
        m["ker_phi"] = detail::group_json(r.mcg.ker_phi);
        m["coker_phi"] = detail::group_json(r.mcg.coker_phi);
        m["theta7_mod_ker"] = detail::group_json(r.mcg.theta7_mod_ker);
        m["im_phi_order"] = int_str(r.mcg.im_phi_order);
        m["k_d_order"] = int_str(r.mcg.k_d_order);
        if (r.mcg.k_constant)
            m["k_constant"] = int_str(*r.mcg.k_constant);
        else
            m["k_constant"] = nullptr;
        j["mapping_class"] = std::move(m);
    }

    {
        ordered_json q;
        if (r.arf)
            q["arf"] = *r.arf;
        else
            q["arf"] = nullptr;
        q["ker_rho"] = r.ker_rho.to_string();
        ordered_json scans = ordered_json::array();
        for (const auto& s : r.scans) {
            ordered_json sj;
            sj["modulus"] = s.modulus;
            sj["genus"] = s.genus;
            sj["arf"] = s.arf;
            sj["subgroups_checked"] = s.subgroups_checked;
            sj["all_of_form_k_times_lattice"] = s.all_of_form_k_times_lattice;
            scans.push_back(std::move(sj));
        }
        q["transvection_scans"] = std::move(scans);
        j["quadratic_refinement"] = std::move(q);
    }

    {
        ordered_json p;
        p["applicable"] = bool(r.pham);
        if (r.pham) {
            p["module_rank"] = int_str(r.pham->module_rank);
            p["torsion_free"] = r.pham->torsion_free;
            p["quotient_rank"] = int_str(r.pham->quotient_rank);
            ordered_json torsion = ordered_json::array();
            for (const Int& t : r.pham->quotient_torsion)
                torsion.push_back(int_str(t));
            p["quotient_torsion"] = std::move(torsion);
            p["h0_order"] = int_str(r.pham->h0_module_order);
            p["ideal_map_zero"] = r.pham->ideal_map_zero;
            p["eta_vanishes"] = r.pham->eta_vanishes;
        } else {
            p["reason"] = r.pham_skip_reason;
        }
        j["pham"] = std::move(p);
    }

    {
        ordered_json t;
        t["applicable"] = bool(r.jtheory);
        if (r.jtheory) {
            t["shift"] = r.jtheory->target_shift;
            t["holds"] = r.jtheory->holds;
        } else {
            t["reason"] = r.jtheory_skip_reason;
        }
        j["jtheory"] = std::move(t);
    }

    {
        ordered_json charts = ordered_json::array();
        for (const auto& c : r.charts)
            charts.push_back(detail::chart_json(c));
        j["adams_charts"] = std::move(charts);
    }

    {
        ordered_json t;
        t["sequence"] =
            "0 -> Theta_7/Ker(Phi) -> Im(alpha) -> Aut(pi_3, lambda, mu) -> 0";
        t["disc_supported_part"] = detail::group_json(r.mcg.theta7_mod_ker);
        t["automorphism_target"] =
            "automorphisms of the middle homology preserving the intersection "
            "form and its quadratic refinement";
        t["congruence_kernel"] = r.ker_rho.to_string();
        if (r.degenerate)
            t["caveat"] = "monodromy image trivial for d <= 2";
        ordered_json consts = ordered_json::array();
        for (const auto& e : constants_registry()) {
            ordered_json ej;
            ej["name"] = e.name;
            ej["statement"] = e.statement;
            ej["attribution"] = e.attribution;
            consts.push_back(std::move(ej));
        }
        t["constants"] = std::move(consts);
        j["theorem_summary"] = std::move(t);
    }

    j["failures"] = r.failures;
    j["all_checks_passed"] = r.all_checks_passed();
    return j;
}

inline ordered_json batch_to_json(const BatchResult& b)
{
    using detail::int_str;
    ordered_json j;
    j["schema"] = "hypermono/1";
    j["d_from"] = b.d_from;
    j["d_to"] = b.d_to;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
        const auto& row = b.rows[i];
        ordered_json rj;
        rj["d"] = row.d;
        rj["ker_phi"] = row.ker_phi.to_string();
        rj["coker_phi"] = row.coker_phi.to_string();
        rj["theta7_mod_ker"] = row.theta7_mod_ker.to_string();
        rj["im_phi_order"] = int_str(row.im_phi_order);
        rj["k_d_order"] = int_str(row.k_d_order);
        if (row.k_constant)
            rj["k_constant"] = int_str(*row.k_constant);
        else
            rj["k_constant"] = nullptr;
        rj["b3"] = int_str(b.b3_values[i]);
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["order_28_consistent"] = b.order_28_consistent;
    return j;
}

inline std::string emit_report(const DegreeReport& r, const std::string& format)
{
    if (format == "json")
        return report_to_json(r).dump(2) + "\n";
    if (format != "text")
        throw std::invalid_argument("emit_report: format must be json or text");

    std::ostringstream out;
    out << "degree " << r.d << (r.degenerate ? " (degenerate)" : "") << "\n";
    for (const auto& n : r.notes)
        out << "  note: " << n << "\n";
    out << "  chern: c1=" << r.invariants.c1 << " c2=" << r.invariants.c2
        << " c3=" << r.invariants.c3 << "\n";
    out << "  chi=" << r.invariants.euler_char << " b3=" << r.invariants.b3
        << " p1(y)=" << r.invariants.p1_coeff << " spin="
        << (r.invariants.spin ? "yes" : "no") << "\n";
    out << "  ker(Phi)=" << r.mcg.ker_phi.to_string()
        << "  coker(Phi)=" << r.mcg.coker_phi.to_string()
        << "  Theta_7/Ker=" << r.mcg.theta7_mod_ker.to_string() << "\n";
    out << "  arf=" << (r.arf ? std::to_string(*r.arf) : std::string("n/a"))
        << "  congruence kernel=" << r.ker_rho.to_string() << "\n";
    if (r.pham)
        out << "  middle homology: rank=" << r.pham->module_rank
            << " quotient rank=" << r.pham->quotient_rank
            << " h0 order=" << r.pham->h0_module_order
            << " eta vanishes=" << (r.pham->eta_vanishes ? "yes" : "no")
            << "\n";
    else
        out << "  middle homology: skipped (" << r.pham_skip_reason << ")\n";
    if (r.jtheory)
        out << "  j-theory shift " << r.jtheory->target_shift << ": "
            << (r.jtheory->holds ? "holds" : "fails") << "\n";
    else
        out << "  j-theory: skipped (" << r.jtheory_skip_reason << ")\n";
    for (const auto& c : r.charts) {
        out << "  mod-" << c.chart.p << " chart (" << c.chart.residue_context
            << "):\n";
        std::istringstream grid(emit_chart(c.chart, "text"));
        std::string line;
        while (std::getline(grid, line))
            out << "    " << line << "\n";
    }
    out << "  checks: "
        << (r.all_checks_passed() ? "all passed"
                                  : std::to_string(r.failures.size()) +
                                        " failed")
        << "\n";
    for (const auto& f : r.failures)
        out << "    failed: " << f << "\n";
    return out.str();
}

} // namespace hypermono
