#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qrenyi_cli_e2e";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliResult run(const std::string& args) {
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(QRENYI_BIN) + " " + args + " 2>" + err.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err)};
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string rho() { return write("rho.json", R"({"n":2,"field":"real","data":[0.5,0,0,0.5]})"); }
std::string sigma() { return write("sigma.json", R"({"n":2,"field":"real","data":[0.25,0,0,0.75]})"); }

}  // namespace

TEST(Cli, EntropyPetz) {
  const CliResult r = run("entropy --kind petz --alpha 2 --a " + rho() + " --b " + sigma());
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc.at("kind"), "petz");
  EXPECT_NEAR(doc.at("value").get<double>(), 0.287682, 1e-6);
}

TEST(Cli, EntropyAlphaZCollapsesToPetz) {
  const CliResult petz = run("entropy --kind petz --alpha 2 --a " + rho() + " --b " + sigma());
  const CliResult az = run("entropy --kind alpha-z --alpha 2 --z 1 --a " + rho() + " --b " + sigma());
  ASSERT_EQ(az.code, 0) << az.err;
  EXPECT_NEAR(json::parse(az.out).at("value").get<double>(), json::parse(petz.out).at("value").get<double>(),
              1e-12);
}

TEST(Cli, EntropyFidelityText) {
  const CliResult r = run("--format text entropy --kind fidelity --a " + rho() + " --b " + rho());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("value: 1.0"), std::string::npos) << r.out;
  const CliResult after = run("entropy --kind fidelity --a " + rho() + " --b " + rho() + " --format text");
  EXPECT_EQ(after.code, 0) << after.err;
  EXPECT_EQ(after.out, r.out);
}

TEST(Cli, PsiDiagonalInstance) {
  const std::string a = write("a28.json", R"({"n":2,"field":"real","data":[2,0,0,8]})");
  const std::string b = write("eye2.json", R"({"n":2,"field":"real","data":[1,0,0,1]})");
  const CliResult r = run("psi --p 1 --q 1 --s 0.5 --a " + a + " --b " + b);
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc.at("value").get<double>(), 4.242641, 1e-6);
  EXPECT_EQ(doc.at("tags"), "min_31,min_32,concave_42i");
  EXPECT_EQ(doc.at("norm"), "trace");
}

TEST(Cli, PsiTraceOfProduct) {
  const std::string a = write("a_c.json", R"({"n":2,"field":"complex","data":[[2,0],[0,1],[0,-1],[3,0]]})");
  const std::string b = write("b_r.json", R"({"n":2,"field":"real","data":[1,0.5,0.5,2]})");
  const CliResult r = run("psi --p 1 --q 1 --s 1 --a " + a + " --b " + b);
  ASSERT_EQ(r.code, 0) << r.err;
  // tr(AB) by hand: 2*1 + i*0.5 + (-i)*0.5 + 3*2 = 8.
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), 8.0, 1e-12);
}

TEST(Cli, VariationalCertifies) {
  const std::string a = write("va.json", R"({"n":3,"field":"real","data":[2,0.3,0,0.3,1,0.1,0,0.1,0.5]})");
  const std::string b = write("vb.json", R"({"n":3,"field":"real","data":[1,0,0.2,0,3,0,0.2,0,0.7]})");
  const CliResult r = run("variational --theorem 3.1 --p 1 --q 1 --s 0.5 --seed 1 --a " + a + " --b " + b);
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json doc = json::parse(r.out);
  EXPECT_LE(doc.at("relative_gap").get<double>(), 1e-7);
  EXPECT_TRUE(doc.at("certified").get<bool>());
  EXPECT_EQ(doc.at("bound_direction"), "lower");
  const std::string i = write("eye3.json", R"({"n":3,"field":"real","data":[1,0,0,0,1,0,0,0,1]})");
  const CliResult id = run("variational --theorem 3.2 --p 1 --q -1 --s 1 --form sum --seed 2 --a " + i + " --b " + i);
  ASSERT_EQ(id.code, 0) << id.err;
  EXPECT_EQ(json::parse(id.out).at("relative_gap").get<double>(), 0.0);
}

TEST(Cli, ExitCodeUsage) {
  const std::string a = write("eye2b.json", R"({"n":2,"field":"real","data":[1,0,0,1]})");
  const CliResult regime = run("variational --theorem 3.2 --p 1 --q 1 --s 1 --seed 1 --a " + a + " --b " + a);
  EXPECT_EQ(regime.code, 2);
  EXPECT_NE(regime.err.find("min_32"), std::string::npos) << regime.err;
  const CliResult noseed = run("verify --suite gelfand-naimark --dim 2 --trials 5");
  EXPECT_EQ(noseed.code, 2);
  const CliResult noseed_var = run("variational --theorem 3.1 --p 1 --q 1 --s 0.5 --a " + a + " --b " + a);
  EXPECT_EQ(noseed_var.code, 2);
  const std::string bad = write("bad.json", R"({"n":2,"field":"real","data":[1,0,0]})");
  const CliResult parse = run("entropy --kind fidelity --a " + bad + " --b " + a);
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("expected 4 entries"), std::string::npos) << parse.err;
  EXPECT_NE(parse.err.find("bad.json"), std::string::npos) << parse.err;
  const std::string notpd = write("notpd.json", R"({"n":2,"field":"real","data":[1,0,0,-1]})");
  EXPECT_EQ(run("entropy --kind fidelity --a " + notpd + " --b " + a).code, 2);
  EXPECT_EQ(run("entropy --kind petz --alpha 1 --a " + a + " --b " + a).code, 2);
  EXPECT_EQ(run("entropy --kind bogus --a " + a + " --b " + a).code, 2);
  EXPECT_EQ(run("verify --suite nosuch --seed 1").code, 2);
  EXPECT_EQ(run("").code, 2);
  const CliResult unknown = run("verify --suite convexity --p 3 --q 0 --s 1 --dim 2 --trials 5 --seed 1");
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("regime unknown"), std::string::npos) << unknown.err;
}

TEST(Cli, ExitCodeNumeric) {
  const std::string a = write("eye2c.json", R"({"n":2,"field":"real","data":[1,0,0,1]})");
  const std::string k = write("ksing.json", R"({"n":2,"field":"real","data":[1,0,0,0]})");
  const CliResult r = run("psi --p 1 --q 1 --s 0.5 --a " + a + " --b " + a + " --k " + k);
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.err.find("SingularCore"), std::string::npos) << r.err;
}

TEST(Cli, VerifyPassAndFail) {
  const fs::path out = work_dir() / "gn.json";
  const CliResult gn = run("verify --suite gelfand-naimark --dim 4 --trials 1000 --seed 42 --out " + out.string());
  ASSERT_EQ(gn.code, 0) << gn.err;
  const json rep = json::parse(slurp(out));
  EXPECT_TRUE(rep.at("pass").get<bool>());
  EXPECT_LE(rep.at("max_gap").get<double>(), 1e-9);
  for (const char* key : {"suite", "params", "trials", "seed", "tolerance", "violations", "max_gap", "pass"})
    EXPECT_TRUE(rep.contains(key)) << key;
  EXPECT_EQ(slurp(out), gn.out);

  const CliResult cv = run("verify --suite convexity --p 0.5 --q 0.5 --s 1 --dim 3 --trials 500 --seed 7");
  EXPECT_EQ(cv.code, 0) << cv.err;
  const CliResult neg = run(
      "verify --suite convexity --p 0.5 --q 0.5 --s 1 --dim 2 --trials 500 --seed 7 --assert-direction convex");
  EXPECT_EQ(neg.code, 4);
  EXPECT_FALSE(json::parse(neg.out).at("pass").get<bool>());
}

TEST(Cli, OutputIsByteIdentical) {
  const std::string args = "verify --suite dpi --alpha 2 --dim 2 --trials 20 --seed 3";
  const CliResult r1 = run(args), r2 = run(args);
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
  const std::string a = write("va2.json", R"({"n":2,"field":"real","data":[2,0.3,0.3,1]})");
  const std::string var = "variational --theorem 3.1 --p 2 --q -0.5 --s 1 --budget 300 --seed 9 --a " + a + " --b " + a;
  const CliResult v1 = run(var), v2 = run(var);
  EXPECT_EQ(v1.code, 0) << v1.err;
  EXPECT_EQ(v1.out, v2.out);
}
