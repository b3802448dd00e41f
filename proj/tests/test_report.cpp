#include <doctest.h>

#include <sstream>

#include "perfkit/modelio.hpp"
#include "perfkit/report.hpp"

using namespace perfkit;
using namespace perfkit::qnsolver;

namespace {

OpenModel listing_open_model() {
    return {2.0, {{"st1", StationKind::queueing, 6, 0.01},
                  {"st2", StationKind::queueing, 7, 0.02}}};
}

ClosedModel listing_closed_model() {
    return {3, 5.0, {{"st1", StationKind::queueing, 15, 0.03},
                     {"st2", StationKind::queueing, 14, 0.05}}};
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("solred report carries the reference figures") {
    const auto open = report::solred_report(listing_open_model());
    CHECK(open.find("   0.5253 ") != std::string::npos);
    CHECK(open.find("   0.2626 ") != std::string::npos);
    CHECK(open.find("   0.2000 ") != std::string::npos);
    CHECK(open.find("   2.0000 ") != std::string::npos);
    CHECK(open.find("   7.1429 ") != std::string::npos);
    CHECK(open.find("Ropt = 0.2000") != std::string::npos);
    CHECK(open.find("Xopt = 7.1429") != std::string::npos);

    const auto closed = report::solred_report(listing_closed_model());
    CHECK(closed.find("   0.6539 ") != std::string::npos);
    CHECK(closed.find("   2.3461 ") != std::string::npos);
    CHECK(closed.find("   1.3937 ") != std::string::npos);
    CHECK(closed.find("   0.4692 ") != std::string::npos);
    CHECK(closed.find("N*") != std::string::npos);
    CHECK(closed.find("  9      ") != std::string::npos);
    CHECK(closed.find("Ropt = máx { 1.15, 0.70*N - 5.00 }") != std::string::npos);
    CHECK(closed.find("Xopt = mín { N/6.15, 1.43 }") != std::string::npos);
}

TEST_CASE("solred output is byte-stable across runs") {
    CHECK(report::solred_report(listing_open_model()) ==
          report::solred_report(listing_open_model()));
    CHECK(report::solred_report(listing_closed_model()) ==
          report::solred_report(listing_closed_model()));
}

TEST_CASE("zero-load open model renders a zero-utilization table") {
    OpenModel idle = listing_open_model();
    idle.arrival_rate = 0.0;
    const auto text = report::solred_report(idle);
    CHECK(text.find("   0.0000 ") != std::string::npos);
    CHECK(text.find("   0.2000 ") != std::string::npos);  // R collapses to D
}

TEST_CASE("mva trace table carries the iteration rows") {
    ClosedModel model{3, 5.0, {{"cpu", StationKind::queueing, 15, 0.03},
                               {"disk", StationKind::queueing, 14, 0.5}}};
    const auto text = report::mva_trace_table(model);
    CHECK(text.find("7.4500") != std::string::npos);
    CHECK(text.find("16.8098") != std::string::npos);
    CHECK(text.find("0.1376") != std::string::npos);
    CHECK(text.find("2.2468") != std::string::npos);
}

TEST_CASE("sweep: single point equals the solred numbers; R diverges near 1/Db") {
    modelio::Model model = listing_open_model();
    const auto one = report::sweep_report(model, 2.0, 2.0, 1.0, report::SweepFormat::gnuplot);
    CHECK(one.find("0.262626") != std::string::npos);

    const auto sweep = report::sweep_report(model, 0.5, 7.0, 0.5, report::SweepFormat::gnuplot);
    std::istringstream is(sweep);
    std::string line;
    std::getline(is, line);  // header
    double prev_r = 0.0;
    int rows = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        double load, r, x;
        ls >> load >> r >> x;
        CHECK(r >= prev_r);
        CHECK(x == doctest::Approx(load));
        prev_r = r;
        ++rows;
    }
    CHECK(rows == 14);
    CHECK(prev_r > 10 * 0.2);  // blown up near saturation (Xmax = 7.1429)

    // Closed sweep uses integer populations dominated by the bounds.
    modelio::Model closed = listing_closed_model();
    const auto cs = report::sweep_report(closed, 1, 15, 1, report::SweepFormat::csv);
    std::istringstream cis(cs);
    std::getline(cis, line);
    const auto bounds = asymptotic_bounds(listing_closed_model());
    while (std::getline(cis, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double n, r, x;
        ls >> n >> r >> x;
        CHECK(r >= bounds.response_opt(n) - 1e-9);
        CHECK(x <= bounds.throughput_opt(n) + 1e-6);  // printed at 6 decimals
    }
    CHECK_THROWS_AS(report::sweep_report(model, 1, 2, 0.0, report::SweepFormat::csv),
                    domain_error);
}

TEST_CASE("model file round trip") {
    const char* text =
        "# a comment\n"
        "closed 10 8\n"
        "cpu queueing 8 0.03\n"
        "disk q 7 0.1\n"
        "terms delay 1 2.5\n";
    std::istringstream in(text);
    const auto model = modelio::read_model(in);
    const auto& closed = std::get<ClosedModel>(model);
    CHECK(closed.population == 10);
    CHECK(closed.think_time == doctest::Approx(8.0));
    REQUIRE(closed.stations.size() == 3);
    CHECK(closed.stations[1].kind == StationKind::queueing);
    CHECK(closed.stations[2].kind == StationKind::delay);

    std::ostringstream out;
    modelio::write_model(out, model);
    std::istringstream in2(out.str());
    const auto again = std::get<ClosedModel>(modelio::read_model(in2));
    CHECK(again.stations[1].visits == doctest::Approx(7.0));
    CHECK(again.stations[2].kind == StationKind::delay);

    std::istringstream bad("open\n");
    CHECK_THROWS_AS(modelio::read_model(bad), parse_error);
    std::istringstream badkind("open 1\nst wrong 1 1\n");
    CHECK_THROWS_AS(modelio::read_model(badkind), parse_error);
    std::istringstream empty("");
    CHECK_THROWS_AS(modelio::read_model(empty), parse_error);
}

}  // TEST_SUITE
