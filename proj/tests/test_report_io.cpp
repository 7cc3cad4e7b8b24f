#include "spectra/report_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace spectra {
namespace {

TEST(SweepCsv, HeaderColumnsAndPrecision) {
    SweepRecord a;
    a.t = 0.0;
    a.lambda = 24.714145678912345;
    a.hadamard_deriv = -1.0 / 3.0;
    a.mesh_h = 0.01;
    a.solver_residual = 5e-11;
    a.iterations = 21;
    SweepRecord b = a;
    b.t = 0.5;
    b.fd_deriv = -0.25;
    const std::string csv = sweep_csv({a, b});
    std::istringstream lines(csv);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    EXPECT_EQ(header, "t,lambda,dlambda_hadamard,dlambda_fd,mesh_h,residual,iterations");
    EXPECT_EQ(row1, "0,24.7141456789,-0.333333333333,,0.01,5e-11,21");
    EXPECT_EQ(row2, "0.5,24.7141456789,-0.333333333333,-0.25,0.01,5e-11,21");
}

TEST(QuantityCsv, LeavesDerivativesEmpty) {
    QuantitySweep s;
    s.quantity = "J";
    s.records.push_back({0.0, 0.088, 0.089, 0.01, 1e-14, 0, 0.0});
    const std::string csv = quantity_csv(s);
    EXPECT_NE(csv.find("\n0,0.088,,,0.01,1e-14,0\n"), std::string::npos);
}

TEST(LinePlotSvg, HasCurveAndMarkers) {
    const std::string svg = line_plot_svg("title & more", "lambda(t)", {0.0, 0.5, 1.0}, {3.0, 2.0, 1.0});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find(">ON<"), std::string::npos);
    EXPECT_NE(svg.find(">OFF<"), std::string::npos);
    EXPECT_NE(svg.find("title &amp; more"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    // Flat data must not divide by zero.
    const std::string flat = line_plot_svg("flat", "y", {0.0, 1.0}, {2.0, 2.0});
    EXPECT_EQ(flat.find("nan"), std::string::npos);
    EXPECT_EQ(flat.find("inf"), std::string::npos);
}

TEST(ReportJson, CarriesMarginAndTolerance) {
    TheoremReport r;
    r.add({"a", true, 0.5, 0.1, "x"});
    r.add({"b", false, -1.0, 0.0, "y"});
    const auto j = to_json(r);
    EXPECT_FALSE(j["all_passed"].get<bool>());
    ASSERT_EQ(j["checks"].size(), 2u);
    EXPECT_EQ(j["checks"][0]["margin"].get<double>(), 0.5);
    EXPECT_EQ(j["checks"][0]["tolerance"].get<double>(), 0.1);
    SweepRecord rec;
    EXPECT_TRUE(to_json(rec)["dlambda_fd"].is_null());
    rec.fd_deriv = 2.0;
    EXPECT_EQ(to_json(rec)["dlambda_fd"].get<double>(), 2.0);
}

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(3.14159265358979), "3.14159265359");
    EXPECT_EQ(format_number(1e-20), "1e-20");
}

}  // namespace
}  // namespace spectra
