#include <clocale>
#include <cstdlib>
#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "mos/report_io.hpp"

namespace {

TEST(ReportIoTest, FormatDoubleRoundTrips) {
    for (double v : {0.1, -4.0, 1.0 / 3.0, 6.02214076e23, 5e-324, 0.23752648881998}) {
        const std::string s = mos::format_double(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
        EXPECT_EQ(s.find(','), std::string::npos);
    }
    EXPECT_EQ(mos::format_double(0.5), "0.5");
    EXPECT_EQ(mos::format_double(0.1), "0.10000000000000001");
}

TEST(ReportIoTest, CsvLayout) {
    mos::CsvTable t{{"a", "b"}, {}};
    t.add_row({"1", "2"});
    t.add_row({"3", "4"});
    EXPECT_THROW(t.add_row({"5"}), std::invalid_argument);
    const nlohmann::json config = {{"n", 100}, {"profile", "couette"}};
    const std::string csv = mos::render_csv(t, config);
    EXPECT_EQ(csv, "# config: {\"n\":100,\"profile\":\"couette\"}\na,b\n1,2\n3,4\n");
    EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(ReportIoTest, CurveTableHasSixCurveColumns) {
    const mos::CsvTable t = mos::curve_table(mos::curves(0.1, 5.0, 100));
    EXPECT_EQ(t.columns.size(), 7u);
    EXPECT_EQ(t.columns.front(), "alpha");
    EXPECT_EQ(t.rows.size(), 100u);
}

TEST(ReportIoTest, RegionTableColumnsAndEscaping) {
    mos::RegionPoint p;
    p.alpha = 1.0;
    p.r_effective = 100;
    p.q1 = 0.2;
    p.certified = true;
    p.error = "bad, worse\nworst";
    const mos::CsvTable t = mos::region_table({p});
    const std::vector<std::string> expected{"alpha", "rq1", "rq2", "certified", "max_ci", "spectrum_stable", "error"};
    EXPECT_EQ(t.columns, expected);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][3], "1");
    EXPECT_EQ(t.rows[0][4], "");
    EXPECT_EQ(t.rows[0][6], "bad; worse;worst");
}

TEST(ReportIoTest, JsonFields) {
    mos::WaveSpeedInterval w{-4.0, 1.0, 'g', "dg"};
    const nlohmann::json j = mos::to_json(w);
    EXPECT_EQ(j["case_label"], "g");
    EXPECT_EQ(j["lower"], -4.0);

    mos::BoundsReport r;
    r.derived.theorem1_applicable = false;
    const nlohmann::json b = mos::to_json(r);
    EXPECT_EQ(b["theorem1_section"], "skipped");
    EXPECT_TRUE(b["max_ci"].is_null());
    EXPECT_TRUE(b["ok"].get<bool>());

    mos::RegionPoint p;
    p.max_ci = -0.25;
    EXPECT_EQ(mos::to_json(p)["max_ci"], -0.25);
}

TEST(ReportIoTest, LocaleDoesNotChangeSeparator) {
    const char* previous = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "locale not installed";
    EXPECT_EQ(mos::format_double(0.5), "0.5");
    std::setlocale(LC_NUMERIC, saved.c_str());
}

}  // namespace
