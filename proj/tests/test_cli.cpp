#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "digitspace/rat.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                    std::string(DIGITSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 256> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/digitspace_cli_test_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::string first_line(const std::string& s) {
  auto nl = s.find('\n');
  return nl == std::string::npos ? s : s.substr(0, nl);
}

}  // namespace

TEST_CASE("expand") {
  RunResult zero = run("expand --space sd --value 0 --digits 4");
  CHECK(zero.exit_code == 0);
  CHECK(first_line(zero.out) == "0 0 0 0");
  CHECK(zero.out.find("residual 1/8") != std::string::npos);

  RunResult one = run("expand --space sd --value 1 --digits 3");
  CHECK(one.exit_code == 0);
  CHECK(first_line(one.out) == "1 1 1");
  CHECK(one.out.find("residual 1/4") != std::string::npos);

  CHECK(run("expand --space sd --value 2 --digits 3").exit_code == 2);
}

TEST_CASE("expand partial sums stay near the value") {
  using namespace digitspace;
  RunResult r = run("expand --space sd --value 5/7 --digits 10");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(first_line(r.out));
  Rat sum(0);
  std::string tok;
  Rat w(1, 2);
  while (is >> tok) {
    sum += parse_rat(tok) * w;
    w /= 2;
  }
  CHECK(rat_abs(sum - Rat(5, 7)) <= pow2(-10));
}

TEST_CASE("convert both ways") {
  std::string ones = write_file("ones.tree", "(letrec ((t (1 t))) t)");
  RunResult r = run("convert --space sd --tree " + ones + " --precision 4");
  REQUIRE(r.exit_code == 0);
  digitspace::Rat u = digitspace::parse_rat(first_line(r.out));
  CHECK(digitspace::rat_abs(digitspace::Rat(1) - u) < digitspace::Rat(1, 16));

  RunResult back = run("convert --space sd --from-cauchy --value 1/2 --depth 4");
  CHECK(back.exit_code == 0);
  CHECK(first_line(back.out).substr(0, 2) == "(1");

  std::string empty = write_file("empty.tree", "   \n");
  CHECK(run("convert --space sd --tree " + empty + " --precision 4").exit_code == 2);
}

TEST_CASE("eval and fuel") {
  std::string ones = write_file("ones.tree", "(letrec ((t (1 t))) t)");
  std::string neg = write_file(
      "neg.fun",
      "(letrec ((neg 1 (R 1 (-1 -> (W 1 neg)) (0 -> (W 0 neg)) (1 -> (W -1 neg))))) neg)");
  RunResult r = run("eval --space sd --fun " + neg + " --args " + ones + " --depth 5");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "(-1 (-1 (-1 (-1 (-1 (-1))))))");

  std::string id = write_file(
      "id.fun", "(letrec ((id 1 (R 1 (-1 -> (W -1 id)) (0 -> (W 0 id)) (1 -> (W 1 id))))) id)");
  RunResult ri = run("eval --space sd --fun " + id + " --args " + ones + " --depth 3");
  CHECK(ri.exit_code == 0);
  CHECK(first_line(ri.out) == "(1 (1 (1 (1))))");

  std::string loop = write_file(
      "loop.fun", "(letrec ((f 1 (R 1 (-1 -> f) (0 -> f) (1 -> f)))) f)");
  CHECK(run("eval --space sd --fun " + loop + " --args " + ones + " --depth 2").exit_code == 3);
}

TEST_CASE("hyper approximation") {
  std::string h0 = write_file("h0.tree", "(letrec ((t ([0] t))) t)");
  RunResult r = run("hyper --space sd --tree " + h0 + " --depth 5");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "[-1/64,1/64]");

  std::string hpm = write_file("hpm.tree", "(letrec ((t ([-1,1] t t))) t)");
  RunResult rd = run("hyper --space sd --tree " + hpm + " --depth 3 --hausdorff [-1,1]");
  CHECK(rd.exit_code == 0);
  CHECK(rd.out.find("distance 0") != std::string::npos);

  std::string bad = write_file("bad.tree", "(letrec ((t ([zz] t))) t)");
  CHECK(run("hyper --space sd --tree " + bad + " --depth 2").exit_code == 2);
}

TEST_CASE("michael flattening") {
  std::string m0 = write_file("m0.tree", "(letrec ((t ([K(0)] t))) t)");
  RunResult r = run("michael --space sd --tree " + m0 + " --depth 4");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "([0] ([0] ([0] ([0] ([0])))))");
  CHECK(r.out.find("distance 0") != std::string::npos);

  std::string mixed = write_file(
      "mixed.tree", "(letrec ((a ([K(-1),K(1)] a b)) (b ([K(0)] a))) a)");
  RunResult rm = run("michael --space sd --tree " + mixed + " --depth 3");
  CHECK(rm.exit_code == 0);
  // Verification distance against the brute-force union, within 2 q^n M.
  auto pos = rm.out.find("distance ");
  REQUIRE(pos != std::string::npos);
  digitspace::Rat d = digitspace::parse_rat(
      rm.out.substr(pos + 9, rm.out.find('\n', pos) - pos - 9));
  CHECK(d <= digitspace::Rat(2) * digitspace::pow2(-3) * 2);

  std::string notlifted = write_file("nl.tree", "(letrec ((t ([0] t))) t)");
  CHECK(run("michael --space sd --tree " + notlifted + " --depth 2").exit_code == 2);
}

TEST_CASE("michael rewrite of a general union node") {
  std::string general = write_file("gen.tree",
                                   "(letrec ((c1 ([K(0)] c1))"
                                   " (c2 ([<K(-1),K(1)>] c2)))"
                                   " ([[0],[0,1]] c1 c2))");
  RunResult r = run("michael --space sd --tree " + general + " --depth 2 --rewrite");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "([0,1] ([0,-1] ([0]) ([-1])) ([1] ([1])))");
  CHECK(r.out.find("distance 0") != std::string::npos);
  // Without the flag the non-lifted root is rejected.
  CHECK(run("michael --space sd --tree " + general + " --depth 2").exit_code == 2);
}

TEST_CASE("read fuel override via the environment") {
  std::string ones = write_file("ones.tree", "(letrec ((t (1 t))) t)");
  // Two consecutive reads per written digit.
  std::string nn = write_file(
      "two_reads.fun",
      "(letrec ((nn 1 (R 1 (-1 -> (R 1 (-1 -> (W -1 nn)) (0 -> (W 0 nn)) (1 -> (W 1 nn))))"
      " (0 -> (R 1 (-1 -> (W -1 nn)) (0 -> (W 0 nn)) (1 -> (W 1 nn))))"
      " (1 -> (R 1 (-1 -> (W -1 nn)) (0 -> (W 0 nn)) (1 -> (W 1 nn)))))))"
      " nn)");
  std::string args = "eval --space sd --fun " + nn + " --args " + ones + " --depth 2";
  CHECK(run(args).exit_code == 0);
  CHECK(run(args, "DIGITSPACE_READ_FUEL=1").exit_code == 3);
  CHECK(run(args, "DIGITSPACE_READ_FUEL=2").exit_code == 0);
}

TEST_CASE("user space file") {
  std::string space = write_file("thirds.space", R"(digitspace
dim 1
box -1 1
bound 2
factor 1/3
wellcovering 1/12
base 0
digits 5
digit t-2 1
1/3
-2/3
digit t-1 1
1/3
-1/3
digit t0 1
1/3
0
digit t1 1
1/3
1/3
digit t2 1
1/3
2/3
)");
  RunResult r = run("expand --space " + space + " --value 1/2 --digits 6");
  CHECK(r.exit_code == 0);
}
