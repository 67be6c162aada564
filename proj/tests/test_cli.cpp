#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ample/cli/cli.hpp"
#include "test_support.hpp"

namespace {

using namespace ample::cli;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ample");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Outcome o;
  o.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string model(const std::string& name) { return ample::testing::model_path(name).string(); }

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

TEST(Cli, KTheoryOfFullShift) {
  const Outcome o = invoke({"ktheory", model("sft_n3.json"), "--format", "structured"});
  ASSERT_EQ(o.code, exit_code::ok) << o.err;
  const Json j = o.json();
  EXPECT_EQ(j.at("model_kind"), "sft");
  EXPECT_EQ(j.at("verdict").at("type"), "assembled");
  EXPECT_EQ(j.at("verdict").at("K0").at("text"), "Z/2");
  EXPECT_EQ(j.at("verdict").at("K1").at("text"), "0");
  EXPECT_EQ(j.at("certificate").at("collapse_reason"), "vanishing_above_2");
  EXPECT_EQ(j.at("e2_page").at("vanishing_above"), 0);
}

TEST(Cli, StructuredReportHasEveryField) {
  const Outcome o = invoke({"report", model("odometer2.json"), "--format", "structured"});
  ASSERT_EQ(o.code, exit_code::ok) << o.err;
  const Json j = o.json();
  for (const char* key : {"model_kind", "homology", "reliable_up_to", "homology_tail", "e2_page", "verdict",
                          "certificate", "checks"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("homology").at(0).at("value").at("type"), "formal");
  EXPECT_EQ(j.at("checks").at("euler_rank"), "pass");
  EXPECT_EQ(j.at("checks").at("rank_constraint"), 0);
}

TEST(Cli, DihedralFixtureIsGuardRefusal) {
  const Outcome o = invoke({"ktheory", model("dihedral_odometer_even.json"), "--format", "structured"});
  EXPECT_EQ(o.code, exit_code::guard);
  const Json j = o.json();
  EXPECT_EQ(j.at("verdict").at("type"), "indeterminate");
  EXPECT_TRUE(j.at("verdict").at("guard_refusal").get<bool>());
  EXPECT_EQ(j.at("certificate").at("failed"), Json::array({"stabilizers_torsion_free"}));
  EXPECT_NE(o.err.find("stabilizers_torsion_free"), std::string::npos);
}

TEST(Cli, DihedralOdometerIsUnsupported) {
  const Outcome o = invoke({"homology", model("odometer_dihedral.json")});
  EXPECT_EQ(o.code, exit_code::guard);
  EXPECT_NE(o.err.find("supply the homology as a fixture"), std::string::npos);
}

TEST(Cli, ErrorCodes) {
  EXPECT_EQ(invoke({"homology", model("missing.json")}).code, exit_code::usage);
  EXPECT_EQ(invoke({"frobnicate", model("sft_n3.json")}).code, exit_code::usage);
  EXPECT_EQ(invoke({"homology", model("sft_n3.json"), "--format", "xml"}).code, exit_code::usage);
  EXPECT_EQ(invoke({"homology", model("sft_n3.json"), "--probe-primes", "4"}).code, exit_code::usage);
  EXPECT_EQ(invoke({"ktheory", model("sft_n3.json"), "--coefficients", "Z/2"}).code, exit_code::usage);
  EXPECT_EQ(invoke({"oracle", model("sft_n3.json")}).code, exit_code::usage);

  const auto bad_json = write_temp("ample_cli_bad.json", "{ not json");
  EXPECT_EQ(invoke({"validate", bad_json.string()}).code, exit_code::parse);
  const auto bad_model = write_temp("ample_cli_noncommuting.json",
                                    R"({"kind":"dr","matrices":[[[1,1],[0,1]],[[1,0],[1,1]]]})");
  const Outcome v = invoke({"validate", bad_model.string()});
  EXPECT_EQ(v.code, exit_code::validation);
  EXPECT_NE(v.err.find("matrices 1,2 do not commute"), std::string::npos);
}

TEST(Cli, BudgetExhaustionIsReported) {
  // The shift on Z^3 dies after three steps; a budget of one cannot see that.
  const auto shift = write_temp("ample_cli_shift.json",
                                R"({"kind":"bratteli","levels":[],"tail":[[[0,1,0],[0,0,1],[0,0,0]]]})");
  const Outcome tight = invoke({"homology", shift.string(), "--stab-budget", "1"});
  EXPECT_EQ(tight.code, exit_code::budget) << tight.out << tight.err;
  EXPECT_EQ(invoke({"homology", shift.string(), "--stab-budget", "8"}).code, exit_code::ok);
}

TEST(Cli, OracleForFiniteGroupoid) {
  const Outcome o = invoke({"oracle", model("cyclic2.json"), "--max-degree", "3", "--format", "structured"});
  ASSERT_EQ(o.code, exit_code::ok) << o.err;
  const Json j = o.json();
  EXPECT_EQ(j.at("homology").size(), 4u);
  EXPECT_EQ(j.at("homology").at(3).at("value").at("group"), "Z/2");
  EXPECT_FALSE(j.at("checks").at("principal").get<bool>());
}

TEST(Cli, FiniteGroupoidWithIsotropyIsIndeterminate) {
  const Outcome o = invoke({"ktheory", model("cyclic2.json"), "--format", "structured"});
  EXPECT_EQ(o.code, exit_code::guard);
  EXPECT_FALSE(o.json().at("e2_page").at("certified").get<bool>());
}

TEST(Cli, CoefficientsFlag) {
  const Outcome o = invoke({"homology", model("cyclic2.json"), "--coefficients", "Z/2", "--max-degree", "3",
                            "--format", "structured"});
  ASSERT_EQ(o.code, exit_code::ok) << o.err;
  for (const auto& entry : o.json().at("homology")) EXPECT_EQ(entry.at("value").at("group"), "Z/2");
}

TEST(Cli, DeterministicOutput) {
  for (const char* m : {"dr_3_3.json", "odometer23.json", "dihedral_odometer_odd.json", "klein_four.json"}) {
    const Outcome a = invoke({"report", model(m), "--format", "structured"});
    const Outcome b = invoke({"report", model(m), "--format", "structured"});
    EXPECT_EQ(a.out, b.out) << m;
  }
}

TEST(Cli, TextRenderingMatchesStructuredReport) {
  for (const char* m : {"sft_golden.json", "bratteli_car.json", "dihedral_odometer_even.json", "fixture_torus.json"}) {
    const Outcome structured = invoke({"report", model(m), "--format", "structured"});
    const Outcome text = invoke({"report", model(m)});
    EXPECT_EQ(structured.code, text.code);
    EXPECT_EQ(render_text(structured.json()), text.out) << m;
  }
}

TEST(Cli, ValidateReportsChecks) {
  const Outcome o = invoke({"validate", model("sft_golden.json"), "--format", "structured"});
  ASSERT_EQ(o.code, exit_code::ok);
  EXPECT_TRUE(o.json().at("checks").at("irreducible").get<bool>());
  EXPECT_TRUE(o.json().at("homology").is_null());
}

}  // namespace
