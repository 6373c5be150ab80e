#include <catch2/catch_amalgamated.hpp>

#include <hypermono/report.hpp>

#include <string>
#include <vector>

using namespace hypermono;

TEST_CASE("constants registry entries are complete and quoted", "[report]")
{
    const auto& reg = constants_registry();
    REQUIRE(reg.size() == 5);
    for (const auto& e : reg) {
        REQUIRE_FALSE(e.name.empty());
        REQUIRE_FALSE(e.statement.empty());
        REQUIRE_FALSE(e.attribution.empty());
    }
    REQUIRE(reg[0].statement == "pi_7^s(S^0) = Z/240{sigma}");
    REQUIRE(reg[1].statement == "pi_7^s(SO/SO(6)) = Z/4");
    REQUIRE(reg[2].statement == "Theta_7 = Z/28");
    REQUIRE(reg[3].statement == "sigma has F_3-Adams filtration 2");
}

TEST_CASE("report for degree 3 has the expected spot values", "[report]")
{
    DegreeReport r = build_report(3);

    REQUIRE_FALSE(r.degenerate);
    REQUIRE(r.all_checks_passed());
    /* kernel 2-part Z/2 from the residue 3 mod 16, times the Z/7 present
     * away from multiples of 7 */
    REQUIRE(r.mcg.ker_phi.to_string() == "Z/14");
    REQUIRE(r.mcg.theta7_mod_ker.to_string() == "Z/2");
    REQUIRE(r.arf.has_value());
    REQUIRE(*r.arf == 1);
    REQUIRE(r.pham.has_value());
    REQUIRE(r.pham->module_rank == 16);
    REQUIRE(r.pham->quotient_rank == 10);
    REQUIRE(r.pham->eta_vanishes);
    REQUIRE_FALSE(r.jtheory.has_value());
    /* mod-3 chart applies (3 | 3) and keeps both outcomes of the dashed
     * differential; no mod-2 chart for odd degree */
    REQUIRE(r.charts.size() == 1);
    REQUIRE(r.charts[0].chart.p == 3);
    REQUIRE(r.charts[0].e_infinity.outcomes.size() == 2);
}

TEST_CASE("report for degree 1 is degenerate with the recorded notes",
          "[report]")
{
    DegreeReport r = build_report(1);

    REQUIRE(r.degenerate);
    REQUIRE(r.all_checks_passed());
    bool mentions_mcg = false;
    for (const auto& n : r.notes)
        if (n.find("Z/4") != std::string::npos)
            mentions_mcg = true;
    REQUIRE(mentions_mcg);
    REQUIRE(r.invariants.b3 == 0);
    REQUIRE_FALSE(r.pham.has_value());
    REQUIRE_FALSE(r.pham_skip_reason.empty());
    /* skipped is not failed */
    REQUIRE(r.failures.empty());

    ordered_json j = report_to_json(r);
    REQUIRE(j["degenerate"] == true);
    REQUIRE(j["pham"]["applicable"] == false);
    REQUIRE(j["jtheory"]["applicable"] == false);
    REQUIRE(j["theorem_summary"]["caveat"] ==
            "monodromy image trivial for d <= 2");
}

TEST_CASE("report for degree 12 records the cokernel obstruction", "[report]")
{
    DegreeReport r = build_report(12);

    REQUIRE(r.mcg.coker_phi.to_string() == "Z/6");
    REQUIRE(r.mcg.ker_phi.to_string() == "Z/28");
    REQUIRE(r.jtheory.has_value());
    REQUIRE(r.jtheory->target_shift == 27);
    REQUIRE(r.jtheory->holds);
    /* both residue charts for an even degree divisible by 3 */
    REQUIRE(r.charts.size() == 2);
    REQUIRE(r.charts[0].chart.p == 2);
    REQUIRE(r.charts[1].chart.p == 3);
    REQUIRE(r.charts[0].e_infinity.outcomes.size() == 1);
    REQUIRE(r.charts[0].e_infinity.outcomes[0].column_orders[7] == 16);
    REQUIRE(r.charts[1].e_infinity.outcomes.size() == 2);
    REQUIRE(r.all_checks_passed());
}

TEST_CASE("json emission is deterministic and schema-tagged", "[report]")
{
    DegreeReport r = build_report(4);
    std::string a = emit_report(r, "json");
    std::string b = emit_report(build_report(4), "json");
    REQUIRE(a == b);
    REQUIRE(a.find("\"schema\": \"hypermono/1\"") != std::string::npos);
    REQUIRE(a.find("timestamp") == std::string::npos);

    ordered_json j = report_to_json(r);
    REQUIRE(j["all_checks_passed"] == true);
    /* arbitrary-precision values travel as decimal strings */
    REQUIRE(j["hypersurface"]["b3"] == "60");
    REQUIRE(j["hypersurface"]["p1"] == "-44");
    REQUIRE(j["pham"]["module_rank"] == "81");
    REQUIRE(j["pham"]["quotient_torsion"] ==
            ordered_json::array({"4"}));
    REQUIRE(j["mapping_class"]["ker_phi"]["name"] == "Z/28");
    REQUIRE(j["jtheory"]["shift"] == 27);
    /* the mod-3 chart for 4 = 1 mod 3 carries no differential pattern */
    REQUIRE(j["adams_charts"].size() == 2);
    REQUIRE(j["adams_charts"][1]["e_infinity_note"] ==
            "no differential pattern recorded for this residue");
    REQUIRE(j["adams_charts"][1]["e_infinity"].empty());

    std::string text = emit_report(r, "text");
    REQUIRE(text.find("degree 4") != std::string::npos);
    REQUIRE(text.find("checks: all passed") != std::string::npos);
    REQUIRE_THROWS_AS(emit_report(r, "yaml"), std::invalid_argument);
}

TEST_CASE("batch ranges and their consistency verdict", "[report]")
{
    BatchResult b = batch(3, 20);
    REQUIRE(b.rows.size() == 18);
    REQUIRE(b.order_28_consistent);
    REQUIRE(b.rows[0].d == 3);
    REQUIRE(b.b3_values[0] == 10);

    ordered_json j = batch_to_json(b);
    REQUIRE(j["rows"].size() == 18);
    REQUIRE(j["order_28_consistent"] == true);
    REQUIRE(j["rows"][3]["d"] == 6);
    REQUIRE(j["rows"][3]["ker_phi"] == "Z/28");

    BatchResult degenerate = batch(1, 2);
    REQUIRE(degenerate.rows.size() == 2);
    REQUIRE(degenerate.order_28_consistent);

    REQUIRE_THROWS_AS(batch(5, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(batch(0, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(build_report(0), std::invalid_argument);
}
