#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

const std::string kCli = QUADMORPH_CLI_PATH;
const std::string kData = QUADMORPH_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("quadmorph_cli_" + name)).string();
}

}  // namespace

TEST(Cli, Sigma) {
  const auto r = run("sigma 16");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sigma=9"), std::string::npos);
  EXPECT_NE(run("sigma 12").out.find("sigma=4"), std::string::npos);
}

TEST(Cli, VerifyGoldenMap) {
  EXPECT_EQ(run("verify " + kData + "/two_scale_qhm.json").code, 0);
}

TEST(Cli, ClassifyGoldenMap) {
  const auto r = run("classify " + kData + "/two_scale_qhm.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"q_rank\": 8"), std::string::npos);
}

TEST(Cli, ConstructThenVerify) {
  const std::string path = temp_path("hopf.json");
  ASSERT_EQ(run("construct qhm --hopf 8 --out " + path).code, 0);
  EXPECT_EQ(run("verify " + path).code, 0);
  EXPECT_EQ(run("extend " + path).code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, ConvertRoundTrip) {
  const std::string os = temp_path("os.json");
  const std::string cs = temp_path("cs.json");
  const std::string back = temp_path("back.json");
  ASSERT_EQ(run("construct osystem --m 8 --out " + os).code, 0);
  ASSERT_EQ(run("convert " + os + " --to clifford --out " + cs).code, 0);
  ASSERT_EQ(run("convert " + cs + " --to osystem --out " + back).code, 0);
  std::ifstream a(os), b(back);
  const std::string ta((std::istreambuf_iterator<char>(a)), {});
  const std::string tb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_NE(ta.find("\"matrices\""), std::string::npos);
  auto matrices = [](const std::string& t) {
    const auto b = t.find("\"matrices\"");
    return t.substr(b, t.find("\"meta\"") - b);
  };
  EXPECT_EQ(matrices(ta), matrices(tb));
  for (const auto& p : {os, cs, back}) std::filesystem::remove(p);
}

TEST(Cli, Evaluate) {
  const auto r = run("eval " + kData + "/two_scale_qhm.json --x 1,0,0,0,0,0,0,0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find('2'), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << "{\"kind\": \"qhm\"";
  EXPECT_EQ(run("verify " + bad).code, 2);
  const std::string nonharmonic = temp_path("nonharmonic.json");
  std::ofstream(nonharmonic)
      << R"({"kind":"qhm","dims":[2,1],"scalars":"rational","matrices":[[["1","0"],["0","1"]]],"meta":{}})";
  EXPECT_EQ(run("verify " + nonharmonic).code, 1);
  EXPECT_EQ(run("convert " + kData + "/two_scale_qhm.json --to clifford").code, 1);
  EXPECT_EQ(run("verify /nonexistent/file.json").code, 2);
  std::filesystem::remove(bad);
  std::filesystem::remove(nonharmonic);
}

TEST(Cli, SeedIsDeterministic) {
  const auto a = run("construct qhm --n 3 --seed 5");
  const auto b = run("construct qhm --n 3 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
