#include <gtest/gtest.h>

#include <json.hpp>

#include "commands.hpp"
#include "qauth/errors.hpp"
#include "report.hpp"

using namespace qauth;
using namespace qauth::cli;
using nlohmann::json;

namespace {

Options json_opts() {
  Options o;
  o.format = "json";
  o.deterministic = true;
  return o;
}

}  // namespace

TEST(Report, RoundTripsThroughJson) {
  auto o = json_opts();
  o.n = 4;
  o.seed = 3;
  o.trials = 200;
  o.adversary = "intercept";
  const auto doc = json::parse(cmd_run("kanamori", o).output);
  const Report r = report_from_json(doc);
  EXPECT_EQ(r.protocol, "kanamori");
  ASSERT_TRUE(r.rates.has_value());
  EXPECT_TRUE(r.rates->detection.has_value());
  EXPECT_TRUE(r.rates->adversarial_cost.has_value());
  EXPECT_EQ(report_from_json(json::parse(to_json(r).dump())), r);
  EXPECT_EQ(json::parse(to_json(r).dump()), doc);
}

TEST(Report, DataOriginRoundTrip) {
  auto o = json_opts();
  o.m = 8;
  const auto doc = json::parse(cmd_run("li_zhang", o).output);
  const Report r = report_from_json(doc);
  ASSERT_TRUE(r.outcome.sent_message.has_value());
  EXPECT_EQ(r.outcome.sent_message, r.outcome.recovered_message);
  EXPECT_EQ(r.outcome.sent_message->size(), 8u);
  EXPECT_EQ(report_from_json(json::parse(to_json(r).dump())), r);
}

TEST(Run, SpecExamples) {
  auto o = json_opts();
  o.n = 8;
  o.seed = 1;
  auto res = cmd_run("kanamori", o);
  EXPECT_EQ(res.exit_code, kOk);
  auto doc = json::parse(res.output);
  EXPECT_EQ(doc["tally"]["qubits_sent"], 24);
  EXPECT_EQ(doc["model"], "Yao");
  o.s = 4;
  doc = json::parse(cmd_run("zeng_guo", o).output);
  EXPECT_EQ(doc["tally"]["classical_bits_sent"], 20);
  EXPECT_EQ(doc["model"], "CleveBuhrman");
  try {
    cmd_run("barnum_purity", o);
    FAIL() << "expected UnsupportedError";
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("analyze"), std::string::npos);
    EXPECT_EQ(exit_code_for(e), kUnsupported);
  }
  try {
    cmd_run("nonexistent", o);
    FAIL() << "expected UnknownProtocolError";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e), kUsage);
  }
}

TEST(Run, RejectedRunExitsOne) {
  auto o = json_opts();
  o.adversary = "substitute";
  o.m = 1;
  EXPECT_EQ(cmd_run("li_zhang", o).exit_code, kRejected);
}

TEST(Analyze, SimulableAndAccountingOnly) {
  const auto a = json::parse(cmd_analyze("li_zhang", json_opts()).output);
  EXPECT_EQ(a["fitted"]["expression"], "2m");
  EXPECT_EQ(a["declared"]["expression"], "2m");
  EXPECT_EQ(a["agreement"], true);
  const auto z = json::parse(cmd_analyze("zeng_zhang", json_opts()).output);
  EXPECT_EQ(z["declared"]["expression"], "Ω(4n)");
  EXPECT_EQ(z["declared"]["bound"], "LowerBound");
  EXPECT_EQ(z["simulable"], false);
  EXPECT_THROW(cmd_analyze("nonexistent", json_opts()), UnknownProtocolError);
}

TEST(Compare, SpecExamples) {
  auto tie = json::parse(cmd_compare({"li_zhang", "curty_santos"}, json_opts()).output);
  ASSERT_EQ(tie["groups"].size(), 1u);
  EXPECT_EQ(tie["groups"][0]["model"], "Hybrid");
  EXPECT_EQ(tie["groups"][0]["relations"][0]["relation"], "equivalent");

  auto cond = json::parse(cmd_compare({"barnum_purity", "yang_goppa"}, json_opts()).output);
  EXPECT_EQ(cond["groups"][0]["model"], "Yao");
  EXPECT_EQ(cond["groups"][0]["relations"][0]["relation"], "conditional");
  EXPECT_EQ(cond["groups"][0]["relations"][0]["condition"], "n < m");

  auto cross = json::parse(cmd_compare({"kanamori", "zeng_guo"}, json_opts()).output);
  EXPECT_EQ(cross["groups"].size(), 2u);
  EXPECT_FALSE(cross["cross_group"].empty());

  EXPECT_THROW(cmd_compare({"kanamori"}, json_opts()), ArgumentError);
  EXPECT_THROW(cmd_compare({"kanamori", "kanamori"}, json_opts()), ArgumentError);
}

TEST(Table, TenRows) {
  const auto t = json::parse(cmd_table(json_opts()).output);
  ASSERT_EQ(t["rows"].size(), 10u);
  for (const auto& row : t["rows"]) {
    if (row["id"] == "kanamori") EXPECT_EQ(row["verified"], true);
    if (row["id"] == "barnum_catalysis") {
      EXPECT_TRUE(row["verified"].is_null());
      EXPECT_NE(row["complexity"].get<std::string>().find("Ω(n)"), std::string::npos);
    }
  }
}

TEST(Output, TextAndJsonAgree) {
  auto o = json_opts();
  o.trials = 200;
  o.adversary = "intercept";
  const auto doc = json::parse(cmd_run("zhang_li_guo", o).output);
  o.format = "text";
  const auto text = cmd_run("zhang_li_guo", o).output;
  const std::string point = doc["rates"]["detection"]["point"].dump();
  EXPECT_NE(text.find(point), std::string::npos) << text;
  EXPECT_NE(text.find(doc["expression"].get<std::string>()), std::string::npos);
}

TEST(Output, DeterministicOmitsTimestamp) {
  auto o = json_opts();
  const auto a = cmd_run("kanamori", o).output;
  EXPECT_EQ(a, cmd_run("kanamori", o).output);
  EXPECT_FALSE(json::parse(a).contains("timestamp"));
  o.deterministic = false;
  EXPECT_TRUE(json::parse(cmd_run("kanamori", o).output).contains("timestamp"));
}

TEST(Config, FlagsOverrideFile) {
  Options o;
  apply_config(o, json{{"n", 6}, {"m", 3}, {"seed", 9}, {"adversary", "intercept"}}, {"n"});
  EXPECT_EQ(o.n, 4u);
  EXPECT_EQ(o.m, 3u);
  EXPECT_EQ(o.seed, 9u);
  EXPECT_EQ(o.adversary, "intercept");
  EXPECT_THROW(apply_config(o, json{{"bogus", 1}}, {}), ArgumentError);
  EXPECT_THROW(apply_config(o, json{{"n", "four"}}, {}), ArgumentError);
}
