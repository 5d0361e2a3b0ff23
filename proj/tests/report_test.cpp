#include "corrbits/report.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <string>

#include "corrbits/inequality.hpp"

using corrbits::append_preamble;
using corrbits::append_report;
using corrbits::Document;
using corrbits::EvalMode;
using corrbits::evaluate_chain;
using corrbits::format_bool;
using corrbits::format_real;
using corrbits::OutputFormat;
using corrbits::SourceKind;

TEST(FormatReal, SixDecimals) {
    EXPECT_EQ(format_real(0.5), "0.500000");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.333333");
    EXPECT_EQ(format_real(2.0 / 3.0), "0.666667");
    EXPECT_EQ(format_real(1.0), "1.000000");
    EXPECT_EQ(format_real(-0.25), "-0.250000");
    EXPECT_EQ(format_real(14.0 / 18.0), "0.777778");
}

TEST(FormatReal, ExactDecimalTiesRoundToEven) {
    // Each input is a dyadic rational, so the 7th decimal digit is an exact 5
    // and the rounding direction is decided purely by the tie rule.
    EXPECT_EQ(format_real(0.1015625), "0.101562");  // 13/128, even digit stays
    EXPECT_EQ(format_real(0.1171875), "0.117188");  // 15/128, odd digit bumps
    EXPECT_EQ(format_real(0.109375), "0.109375");   // 7/64, no rounding at all
}

TEST(FormatBool, Words) {
    EXPECT_EQ(format_bool(true), "true");
    EXPECT_EQ(format_bool(false), "false");
}

TEST(Document, TreeRenderGroupsDottedKeys) {
    Document doc;
    doc.add("alpha", "1");
    doc.add("group.first", 0.5);
    doc.add("group.second", true);
    doc.add("omega", std::uint64_t{7});
    EXPECT_EQ(doc.render(OutputFormat::tree),
              "alpha: 1\n"
              "group:\n"
              "  first: 0.500000\n"
              "  second: true\n"
              "omega: 7\n");
}

TEST(Document, TreeRenderAlignsTableColumns) {
    Document doc;
    doc.add("title", "t");
    auto& table = doc.table();
    table.header = {"name", "value"};
    table.rows = {{"x", "10"}, {"longer", "2"}};
    EXPECT_EQ(doc.render(OutputFormat::tree),
              "title: t\n"
              "\n"
              "name    value\n"
              "x       10\n"
              "longer  2\n");
}

TEST(Document, CsvRenderAndEscaping) {
    Document doc;
    doc.add("plain", "abc");
    doc.add("with_comma", "a,b");
    doc.add("with_quote", "say \"hi\"");
    EXPECT_EQ(doc.render(OutputFormat::csv),
              "key,value\n"
              "plain,abc\n"
              "with_comma,\"a,b\"\n"
              "with_quote,\"say \"\"hi\"\"\"\n");
}

TEST(Document, CsvRenderWithTable) {
    Document doc;
    doc.add("k", "v");
    auto& table = doc.table();
    table.header = {"a", "b"};
    table.rows = {{"1", "2,3"}};
    EXPECT_EQ(doc.render(OutputFormat::csv),
              "key,value\n"
              "k,v\n"
              "\n"
              "a,b\n"
              "1,\"2,3\"\n");
}

TEST(Preamble, ToolIdentity) {
    Document doc;
    append_preamble(doc);
    EXPECT_EQ(doc.render(OutputFormat::tree),
              "tool: corrbits\n"
              "version: 0.1.0\n"
              "rng_id: xoshiro256starstar/splitmix64-v1\n");
}

TEST(AppendReport, AnalyticFieldsExactText) {
    // At k = 1 every positive weight table yields a one-bit code, so all terms
    // render as exactly 1.000000 and the whole document is reproducible text.
    Document doc;
    append_report(doc, evaluate_chain(2, 1, EvalMode::analytic, SourceKind::singlet));
    EXPECT_EQ(doc.render(OutputFormat::tree),
              "n_settings: 2\n"
              "block_size_k: 1\n"
              "mode: analytic\n"
              "source: singlet\n"
              "lhs: 1.000000\n"
              "rhs_terms:\n"
              "  0: 1.000000\n"
              "  1: 1.000000\n"
              "  2: 1.000000\n"
              "rhs_sum: 3.000000\n"
              "correction: 0.000000\n"
              "violated: false\n");
}

TEST(AppendReport, MonteCarloAppendsSamplingFields) {
    Document doc;
    append_report(doc,
                  evaluate_chain(2, 1, EvalMode::monte_carlo, SourceKind::lhv, 200, 5, 0.0));
    const std::string text = doc.render(OutputFormat::csv);
    EXPECT_NE(text.find("violated_uncorrected,"), std::string::npos);
    EXPECT_NE(text.find("n_bits,200\n"), std::string::npos);
    EXPECT_NE(text.find("seed,5\n"), std::string::npos);
    EXPECT_NE(text.find("rng_id,xoshiro256starstar/splitmix64-v1\n"), std::string::npos);
    // sampling fields come after the verdict
    EXPECT_LT(text.find("violated,"), text.find("n_bits,"));
}

TEST(AppendReport, AnalyticOmitsSamplingFields) {
    Document doc;
    append_report(doc, evaluate_chain(3, 2, EvalMode::analytic, SourceKind::singlet));
    const std::string text = doc.render(OutputFormat::csv);
    EXPECT_EQ(text.find("violated_uncorrected"), std::string::npos);
    EXPECT_EQ(text.find("n_bits"), std::string::npos);
    EXPECT_EQ(text.find("seed"), std::string::npos);
    EXPECT_EQ(text.find("rng_id"), std::string::npos);
}
