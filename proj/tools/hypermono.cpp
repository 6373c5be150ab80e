/* Command-line front end.  Subcommands map one-to-one onto the library
 * modules; everything prints to stdout and the exit code is 0 only when the
 * requested computation ran and its asserted invariants held. */

#include <hypermono/report.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace hypermono;

int run_report(long d, const std::string& emit)
{
    DegreeReport r = build_report(d);
    std::cout << emit_report(r, emit);
    return r.all_checks_passed() ? 0 : 1;
}

int run_mcg_table(long from, long to)
{
    BatchResult b = batch(from, to);
    std::cout << batch_to_json(b).dump(2) << "\n";
    return b.order_28_consistent ? 0 : 1;
}

int run_pham(long d, const std::string& emit)
{
    PhamModule p = build_pham_module(d);
    if (emit == "sparse") {
        std::cout << "%pham-sparse 1\n";
        std::cout << "% presentation d=" << d << " rows=" << p.presentation.rows()
                  << " cols=" << p.presentation.cols() << "\n";
        for (std::size_t i = 0; i < p.presentation.rows(); ++i)
            for (std::size_t j = 0; j < p.presentation.cols(); ++j)
                if (p.presentation(i, j) != 0)
                    std::cout << i << " " << j << " " << p.presentation(i, j)
                              << "\n";
        return 0;
    }
    LooijengaQuotient q = build_looijenga_quotient(d);
    IdealCoinvariantMap map = ideal_coinvariant_map(d);
    bool eta = eta_vanishing_certificate(d);
    ordered_json j;
    j["schema"] = "hypermono/1";
    j["d"] = d;
    j["module_rank"] = p.rank.str();
    j["torsion_free"] = p.torsion_free;
    j["quotient_rank"] = q.quotient_rank.str();
    ordered_json torsion = ordered_json::array();
    for (const Int& t : q.quotient_presentation.torsion_factors())
        torsion.push_back(t.str());
    j["quotient_torsion"] = std::move(torsion);
    j["h0_order"] = map.target_order.str();
    j["ideal_map_zero"] = map.is_zero;
    j["eta_vanishes"] = eta;
    std::cout << j.dump(2) << "\n";
    return (p.torsion_free && map.target_order == d && (d < 3 || eta)) ? 0 : 1;
}

int run_jtheory(long d, long shift)
{
    JamesPeriodicityVerdict v =
        shift >= 0 ? james_periodicity_check(d, shift)
                   : james_periodicity_check(d);
    ordered_json j;
    j["schema"] = "hypermono/1";
    j["d"] = v.d;
    j["shift"] = v.target_shift;
    j["holds"] = v.holds;
    std::cout << j.dump(2) << "\n";
    return v.holds ? 0 : 1;
}

int run_ext(int p, long d, int smax, int nmax, const std::string& emit)
{
    ExtChart chart = thom_chart(d, p, smax, nmax);
    if (emit == "json") {
        ChartSummary summary;
        summary.chart = chart;
        ordered_json j;
        j["schema"] = "hypermono/1";
        j["d"] = d;
        try {
            if (!chart.differentials.empty())
                summary.e_infinity = apply_differential_pattern(chart, d);
            j["chart"] = detail::chart_json(summary);
        } catch (const std::invalid_argument& e) {
            j["chart"] = detail::chart_json(summary);
            j["chart"]["e_infinity_error"] = e.what();
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << emit_chart(chart, emit);
    return 0;
}

int run_quadform_scan(int n, int g, int arf_value)
{
    InvariantSubgroupReport r = invariant_subgroup_scan(n, g, arf_value);
    ordered_json j;
    j["schema"] = "hypermono/1";
    j["modulus"] = r.modulus;
    j["genus"] = r.genus;
    j["arf"] = r.arf;
    j["subgroups_checked"] = r.subgroups_checked;
    j["all_of_form_k_times_lattice"] = r.all_of_form_k_times_lattice;
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : r.witnesses) {
        ordered_json wj;
        wj["content_gcd"] = w.content_gcd;
        wj["example_vector"] = w.vector;
        wj["closure_size"] = w.subgroup_size;
        wj["matches"] = w.matches;
        witnesses.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(witnesses);
    std::cout << j.dump(2) << "\n";
    return r.all_of_form_k_times_lattice ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"degree-d hypersurface monodromy computations"};
    app.require_subcommand(1);

    long report_d = 0;
    std::string report_emit = "json";
    CLI::App* report_cmd =
        app.add_subcommand("report", "run every module for one degree");
    report_cmd->add_option("--d", report_d, "degree of the hypersurface")
        ->required();
    report_cmd->add_option("--emit", report_emit, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    long mcg_from = 0, mcg_to = 0;
    CLI::App* mcg_cmd = app.add_subcommand(
        "mcg-table", "kernel/cokernel rows over a degree range");
    mcg_cmd->add_option("--from", mcg_from, "first degree")->required();
    mcg_cmd->add_option("--to", mcg_to, "last degree")->required();

    long pham_d = 0;
    std::string pham_emit = "json";
    CLI::App* pham_cmd = app.add_subcommand(
        "pham", "middle-homology module of the Fermat hypersurface");
    pham_cmd->add_option("--d", pham_d, "degree")->required();
    pham_cmd->add_option("--emit", pham_emit, "output format")
        ->check(CLI::IsMember({"json", "sparse"}));

    long jt_d = 0, jt_shift = -1;
    CLI::App* jt_cmd =
        app.add_subcommand("jtheory", "real K-theory computations");
    CLI::App* jt_check = jt_cmd->add_subcommand(
        "check", "shifted-class membership in the 2-local J-kernel");
    jt_check->add_option("--d", jt_d, "degree, must be divisible by 4")
        ->required();
    jt_check->add_option("--shift", jt_shift,
                         "override the default residue-derived shift");

    int ext_p = 2, ext_smax = 5, ext_nmax = 8;
    long ext_d = 0;
    std::string ext_emit = "text";
    CLI::App* ext_cmd =
        app.add_subcommand("ext", "Adams chart of the Thom module");
    ext_cmd->add_option("--p", ext_p, "prime, 2 or 3")->required();
    ext_cmd->add_option("--d", ext_d, "degree")->required();
    ext_cmd->add_option("--smax", ext_smax, "top filtration");
    ext_cmd->add_option("--nmax", ext_nmax, "top stem");
    ext_cmd->add_option("--emit", ext_emit, "output format")
        ->check(CLI::IsMember({"text", "svg", "json"}));

    int qf_n = 0, qf_g = 0, qf_arf = 0;
    CLI::App* qf_cmd =
        app.add_subcommand("quadform", "quadratic refinement computations");
    CLI::App* qf_scan = qf_cmd->add_subcommand(
        "scan", "transvection-invariant subgroups of the residue lattice");
    qf_scan->add_option("--n", qf_n, "modulus, 2 to 4")->required();
    qf_scan->add_option("--g", qf_g, "genus")->required();
    qf_scan->add_option("--arf", qf_arf, "arf invariant of the refinement")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*report_cmd)
            return run_report(report_d, report_emit);
        if (*mcg_cmd)
            return run_mcg_table(mcg_from, mcg_to);
        if (*pham_cmd)
            return run_pham(pham_d, pham_emit);
        if (*jt_check)
            return run_jtheory(jt_d, jt_shift);
        if (*jt_cmd) {
            std::cerr << "error: jtheory requires the check subcommand\n";
            return 2;
        }
        if (*ext_cmd)
            return run_ext(ext_p, ext_d, ext_smax, ext_nmax, ext_emit);
        if (*qf_scan)
            return run_quadform_scan(qf_n, qf_g, qf_arf);
        if (*qf_cmd) {
            std::cerr << "error: quadform requires the scan subcommand\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
