#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "asyncmodel/inertia.hpp"
#include "asyncmodel/io.hpp"
#include "cli.hpp"

using namespace asyncmodel;
namespace fs = std::filesystem;

namespace {

Signal chi(Rat a, Rat b) { return charfn({{a, b}}); }

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  std::string out;
  std::string err;

  void SetUp() override {
    dir = fs::temp_directory_path() / ("asyncmodel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string put(const std::string& name, const json& j) {
    const auto p = dir / name;
    write_json_file(p, j);
    return p.string();
  }
  std::string signal(const std::string& name, const Signal& x) { return put(name, signal_to_json(x)); }
  std::string model(const std::string& name, const LimitCondition& i) { return put(name, model_to_json(i)); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "asyncmodel");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    err = e.str();
    return code;
  }
};

}  // namespace

TEST_F(Cli, EvalFixedDelay) {
  const auto m = model("not.json", flc(BoolFn::negation(), Rat(1)));
  const auto u = signal("u.json", chi(0, 2));
  const auto o = (dir / "x.json").string();
  ASSERT_EQ(run({"eval", m, u, "-o", o}), 0) << err;
  EXPECT_EQ(signal_from_json(read_json_file(o)), make_signal(true, {{Rat(1), false}, {Rat(3), true}}));
  ASSERT_EQ(run({"eval", m, u}), 0);
  EXPECT_EQ(signal_from_json(json::parse(out)), make_signal(true, {{Rat(1), false}, {Rat(3), true}}));
}

TEST_F(Cli, EvalWitnessesPassCheck) {
  const auto m = model("blc.json", blc(BoolFn::identity(), BoolFn::identity(), {Rat(1), Rat(2), Rat(1), Rat(2)}));
  const auto u = signal("u.json", chi(0, 10));
  ASSERT_EQ(run({"eval", m, u, "--witness", "2", "-o", (dir / "w.json").string()}), 0) << err;
  std::istringstream paths(out);
  std::string path;
  int n = 0;
  while (std::getline(paths, path)) {
    ++n;
    EXPECT_EQ(run({"check", m, u, "-c", path}), 0) << path << ": " << out << err;
    EXPECT_EQ(out, "member\n");
  }
  EXPECT_EQ(n, 2);
}

TEST_F(Cli, EvalRefusesNonDeterministicModels) {
  const auto m = model("mc.json", mc(2));
  const auto a = signal("a.json", chi(0, 1));
  const auto b = signal("b.json", Signal::constant(false));
  EXPECT_EQ(run({"eval", m, a, b}), 2);
  EXPECT_NE(err.find("PreconditionViolated"), std::string::npos) << err;
}

TEST_F(Cli, CheckEnvelopesAndViolation) {
  const BlcParams p{Rat(1), Rat(2), Rat(1), Rat(2)};
  const auto m = model("blc.json", blc(BoolFn::identity(), BoolFn::identity(), p));
  const auto u = signal("u.json", chi(0, 10));
  EXPECT_EQ(run({"check", m, u, "-c", signal("lo.json", chi(2, 11))}), 0);
  EXPECT_EQ(run({"check", m, u, "-c", signal("hi.json", chi(1, 12))}), 0);
  EXPECT_EQ(run({"check", m, u, "-c", signal("one.json", Signal::constant(true))}), 1);
  EXPECT_NE(out.find("t=0"), std::string::npos) << out;
}

TEST_F(Cli, CheckInertialBounds) {
  EXPECT_EQ(run({"check", "-c", signal("short.json", chi(0, Rat(1, 2))), "--aic", "1", "1"}), 1);
  EXPECT_NE(out.find("t=0"), std::string::npos) << out;
  EXPECT_EQ(run({"check", "-c", signal("long.json", chi(0, 2)), "--aic", "1", "1"}), 0);
  EXPECT_EQ(run({"check", "-c", signal("x.json", chi(0, 2))}), 2);
}

TEST_F(Cli, ComposeFixedChain) {
  const auto a = model("a.json", flc(BoolFn::negation(), Rat(1)));
  const auto b = model("b.json", flc(BoolFn::negation(), Rat(2)));
  const auto o = (dir / "k.json").string();
  ASSERT_EQ(run({"compose", a, b, "-o", o}), 0) << err;
  const auto k = model_from_json(read_json_file(o));
  const auto spec = as_flc(k);
  ASSERT_TRUE(spec.has_value());
  EXPECT_EQ(spec->h, BoolFn::identity());
  EXPECT_EQ(spec->d, Rat(3));
}

TEST_F(Cli, ComposeAndOrExample) {
  const auto and2 = BoolFn::and_n(2);
  const auto or2 = BoolFn::or_n(2);
  const auto outer = model("o.json", blc(and2, or2, {Rat(1), Rat(2), Rat(1), Rat(2)}));
  const auto inner = model("i.json", blc(and2, or2, {Rat(1), Rat(3), Rat(1), Rat(3)}));
  ASSERT_EQ(run({"compose", outer, inner, inner}), 0) << err;
  const auto j = json::parse(out);
  EXPECT_EQ(j.at("params"), json::parse(R"({"m_r": "2", "d_r": "5", "m_f": "2", "d_f": "5"})"));
  EXPECT_EQ(j.at("f").at("table"), BoolFn::and_n(4).bits());
}

TEST_F(Cli, ComposeWithoutClosedForm) {
  const auto s = model("sc.json", sc());
  EXPECT_EQ(run({"compose", s, s}), 2);
  EXPECT_NE(err.find("NoClosedForm"), std::string::npos) << err;
}

TEST_F(Cli, PropsSingleTheorem) {
  EXPECT_EQ(run({"props", "--only", "4.5", "--cases", "50", "--dir", dir.string()}), 0) << err;
  EXPECT_EQ(out, "4.5 50 pass\n");
}

TEST_F(Cli, PropsFailureWritesCounterexamples) {
  EXPECT_EQ(run({"props", "--only", "4.8", "--dir", dir.string()}), 1);
  EXPECT_EQ(out.rfind("4.8 500 fail", 0), 0u) << out;
  const auto path = dir / "counterexample-4.8.json";
  ASSERT_TRUE(fs::exists(path));
  EXPECT_FALSE(read_json_file(path).at("failures").empty());
}

TEST_F(Cli, PropsUnknownTheorem) {
  EXPECT_EQ(run({"props", "--only", "bogus"}), 2);
  EXPECT_NE(err.find("UnknownTheorem"), std::string::npos) << err;
}

TEST_F(Cli, RenderAscii) {
  const auto x = signal("x.json", chi(0, 5));
  ASSERT_EQ(run({"render", x, "--from", "-1", "--to", "6"}), 0) << err;
  EXPECT_EQ(out, "  -1 0 5\nx  0 1 0\n");
}

TEST_F(Cli, RenderAlignsRows) {
  const auto a = signal("a.json", chi(0, 5));
  const auto b = signal("bb.json", chi(Rat(5, 2), 7));
  ASSERT_EQ(run({"render", a, b, "--from", "0", "--to", "10"}), 0) << err;
  EXPECT_EQ(out, "   0 5/2 5 7\na  1   1 0 0\nbb 0   1 1 0\n");
}

TEST_F(Cli, RenderVcd) {
  const auto x = signal("x.json", chi(0, 5));
  const auto v = dir / "x.vcd";
  ASSERT_EQ(run({"render", x, "--from", "0", "--to", "6", "--vcd", v.string()}), 0) << err;
  std::ifstream f(v);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("$timescale 1 s $end"), std::string::npos) << text;
  EXPECT_NE(text.find("#0\n$dumpvars\n1!\n"), std::string::npos) << text;
  EXPECT_NE(text.find("#5\n0!\n"), std::string::npos) << text;
}

TEST_F(Cli, RenderVcdScalesFractions) {
  const auto x = signal("x.json", chi(Rat(1, 3), Rat(1, 2)));
  const auto v = dir / "x.vcd";
  ASSERT_EQ(run({"render", x, "--from", "0", "--to", "1", "--vcd", v.string()}), 0) << err;
  std::ifstream f(v);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("$timescale 1/6 s $end"), std::string::npos) << text;
  EXPECT_NE(text.find("#2\n1!\n#3\n0!\n"), std::string::npos) << text;
}

TEST_F(Cli, RenderEmptyRange) {
  const auto x = signal("x.json", chi(0, 5));
  EXPECT_EQ(run({"render", x, "--from", "3", "--to", "3"}), 2);
}

TEST_F(Cli, MalformedFilesExitTwo) {
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  const auto m = model("not.json", flc(BoolFn::negation(), Rat(1)));
  EXPECT_EQ(run({"eval", m, bad.string()}), 2);
  EXPECT_EQ(run({"eval", m, (dir / "missing.json").string()}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
}
