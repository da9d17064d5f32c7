#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KREIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) { return std::string(KREIN_TEST_TMPDIR) + "/" + name; }

std::string write(const std::string& name, const std::string& text) {
  const std::string path = tmp(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli analyze") {
  const auto onb = write("onb.json", R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]],[[0,0],[1,0]]]})");
  auto r = run("analyze --json " + onb);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdicts"]["gram"]["is_riesz"] == true);
  CHECK(j["bounds"]["A"] == 1.0);

  const auto dup = write("dup.json", R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]],[[1,0],[0,0]],[[0,0],[1,0]]]})");
  r = run("analyze --json " + dup);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdicts"]["gram"]["failure_reason"] == "gram_singular_plus");

  const auto bad = write("bad.json", "{\"version\": ");
  CHECK(run("analyze " + bad).code == 2);
  CHECK(run("analyze " + tmp("missing.json")).code == 2);
  CHECK(run("analyze --rank-tol 2 " + onb).code == 2);
  CHECK(run("analyze").code == 2);
}

TEST_CASE("cli certify and duals") {
  const auto onb = write("onb.json", R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]],[[0,0],[1,0]]]})");
  auto r = run("certify --json " + onb);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["certificate"]["biorthogonality_residual"].get<double>() <= 1e-12);

  const auto two = write("two.json", R"({"version":"krein/1","metric":{"signature":[1,0]},
    "family":[[[2,0]]]})");
  r = run("duals " + two);
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["duals"][0][0][0] == 0.5);
  CHECK(run("certify --duals-only " + two).out == r.out);

  const auto miss = write("miss.json", R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]]]})");
  r = run("certify --json " + miss);
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out).contains("certificate") == false);
}

TEST_CASE("cli gen is byte-identical and feeds analyze") {
  const auto a = run("gen --seed 1 --signature 1,1");
  const auto b = run("gen --seed 1 --signature 1,1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("gen --seed 1 --signature 1,1 --out " + tmp("g1.json")).code == 0);
  CHECK(slurp(tmp("g1.json")) == a.out);

  CHECK(run("gen --seed 3 --dim 4 --defect duplicate_vector --out " + tmp("g2.json")).code == 0);
  const auto r = run("analyze --json " + tmp("g2.json"));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdicts"]["gram"]["is_riesz"] == false);

  CHECK(run("gen --dim 0").code == 2);
  CHECK(run("gen --dim 3 --signature 1,2").code == 2);
  CHECK(run("gen --defect nope").code == 2);
  CHECK(run("gen --signature 1").code == 2);
  CHECK(run("gen --signature 1,0 --defect drop_vector").code == 2);
}

TEST_CASE("cli verify is deterministic") {
  const auto a = run("verify --trials 5 --seed 11");
  const auto b = run("verify --trials 5 --seed 11 --threads 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify --trials 1 --seed 2").out == run("verify --trials 1 --seed 2").out);
  CHECK(run("verify --dims 5").code == 2);
}
