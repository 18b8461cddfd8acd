#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "qlab/io.hpp"

using namespace qlab;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QLAB_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path dir() {
  auto d = std::filesystem::temp_directory_path() / "qlab_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

std::string file(const std::string& name) { return (dir() / name).string(); }

}  // namespace

TEST(Cli, GenerateChainAndBoolean) {
  auto r = run("gen chain 4 --out " + file("c4.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("n=4"), std::string::npos) << r.out;
  auto l = load_lattice(file("c4.json"));
  EXPECT_EQ(l->size(), 4u);
  auto b = run("gen boolean 3 --out " + file("b3.json"));
  ASSERT_EQ(b.status, 0);
  EXPECT_NE(b.out.find("n=8 ji=3 is_distributive=true"), std::string::npos) << b.out;
  auto m = run("gen m3 --out " + file("m3.json"));
  ASSERT_EQ(m.status, 0);
  EXPECT_NE(m.out.find("is_distributive=false"), std::string::npos) << m.out;
}

TEST(Cli, WedgeMethodsAgree) {
  ASSERT_EQ(run("gen boolean 3 --out " + file("b3w.json")).status, 0);
  ASSERT_EQ(run("wedge " + file("b3w.json") + " --method oracle --out " + file("w_oracle.json")).status, 0);
  ASSERT_EQ(run("wedge " + file("b3w.json") + " --method fast --out " + file("w_fast.json")).status, 0);
  auto a = parse_json(read_file(file("w_oracle.json")), "a");
  auto b = parse_json(read_file(file("w_fast.json")), "b");
  EXPECT_EQ(a["pairs"], b["pairs"]);
}

TEST(Cli, ComposeDot) {
  write_file(file("g.json"), R"j({"lattice":"chain(2)","image":[1,1]})j");
  write_file(file("f.json"), R"j({"lattice":"chain(2)","image":[0,1]})j");
  auto r = run("compose --op dot " + file("g.json") + " " + file("f.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  // ⊤̅ · id sends 0 to the empty join, so the result is the top sup-preserving map.
  EXPECT_NE(r.out.find(R"("image":[0,1])"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sup_preserving=true"), std::string::npos) << r.out;
}

TEST(Cli, AuditExitCodes) {
  ASSERT_EQ(run("gen chain 3 --out " + file("c3.json")).status, 0);
  auto ok = run("audit " + file("c3.json") + " --claims \"Thm 3.8\"");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_NE(ok.out.find("Thm 3.8: PASS"), std::string::npos) << ok.out;
  ASSERT_EQ(run("gen chain 2 --out " + file("c2.json")).status, 0);
  auto suspect = run("audit " + file("c2.json") + " --claims \"Cor 3.13(4)\"");
  EXPECT_EQ(suspect.status, 0) << suspect.out;
  EXPECT_NE(suspect.out.find("FAIL"), std::string::npos);
  ASSERT_EQ(run("gen m3 --out " + file("m3a.json")).status, 0);
  auto m3 = run("audit " + file("m3a.json"));
  EXPECT_EQ(m3.status, 0) << m3.out;
  EXPECT_NE(m3.out.find("NotDistributive"), std::string::npos);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("audit " + file("missing.json")).status, 2);
  EXPECT_EQ(run("audit " + file("c3.json") + " --claims \"Nope 1\"").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  write_file(file("cyc.json"), R"({"n":2,"covers":[[0,1],[1,0]]})");
  auto r = run("wedge " + file("cyc.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error:"), std::string::npos);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, LawsQuantale) {
  ASSERT_EQ(run("gen chain 2 --out " + file("c2l.json")).status, 0);
  auto r = run("laws " + file("c2l.json") + " --structure dot");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("quantale: PASS"), std::string::npos) << r.out;
  auto circ = run("laws " + file("c2l.json") + " --structure circ");
  EXPECT_EQ(circ.status, 0) << circ.out;
  EXPECT_NE(circ.out.find("FAIL"), std::string::npos) << circ.out;
}
