// Integration tests driving the installed CLI binary (path in argv[1]).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

int run(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >" + (g_dir / "stdout.txt").string() + " 2>" +
                    (g_dir / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string out_text() { return slurp(g_dir / "stdout.txt"); }
std::string err_text() { return slurp(g_dir / "stderr.txt"); }

constexpr const char* kAlogCsv =
    "case_id,activity,start_time,end_time\n"
    "1,A,2023-03-06T09:00:00+00:00,2023-03-06T09:30:00+00:00\n"
    "1,B,2023-03-06T10:00:00+00:00,2023-03-06T10:30:00+00:00\n"
    "2,A,2023-03-06T11:00:00+00:00,2023-03-06T11:20:00+00:00\n";

constexpr const char* kGlogCsv =
    "case_id,activity,start_time,end_time\n"
    "1,A,2023-03-06T09:00:00+00:00,2023-03-06T09:40:00+00:00\n"
    "1,B,2023-03-06T12:00:00+00:00,2023-03-06T12:30:00+00:00\n"
    "2,A,2023-03-06T11:00:00+00:00,2023-03-06T11:20:00+00:00\n"
    "2,C,2023-03-06T12:00:00+00:00,2023-03-06T12:10:00+00:00\n"
    "3,A,2023-03-06T14:00:00+00:00,2023-03-06T14:30:00+00:00\n";

}  // namespace

TEST_CASE("compare writes a JSON report with the requested measures") {
  spit(g_dir / "alog.csv", kAlogCsv);
  spit(g_dir / "g1.csv", kAlogCsv);
  spit(g_dir / "g2.csv", kAlogCsv);
  int rc = run("compare " + (g_dir / "alog.csv").string() + " " + (g_dir / "g1.csv").string() +
               " " + (g_dir / "g2.csv").string() + " --measures ngd,aed --format json --out " +
               (g_dir / "r.json").string());
  CHECK(rc == 0);
  std::string json = slurp(g_dir / "r.json");
  CHECK(json.find("\"k\": 2") != std::string::npos);
  CHECK(json.find("\"ngd\"") != std::string::npos);
  CHECK(json.find("\"aed\"") != std::string::npos);
  CHECK(json.find("\"cfld\"") == std::string::npos);
}

TEST_CASE("compare reports a missing file on exit code 2, naming the path") {
  spit(g_dir / "alog.csv", kAlogCsv);
  int rc = run("compare " + (g_dir / "alog.csv").string() + " " + (g_dir / "nope.csv").string());
  CHECK(rc == 2);
  CHECK(err_text().find("nope.csv") != std::string::npos);
}

TEST_CASE("cfld precondition failures are errors only under --strict") {
  spit(g_dir / "alog.csv", kAlogCsv);   // 2 cases
  spit(g_dir / "glog.csv", kGlogCsv);   // 3 cases
  std::string base = "compare " + (g_dir / "alog.csv").string() + " " +
                     (g_dir / "glog.csv").string() + " --measures cfld --format json --out " +
                     (g_dir / "r.json").string();
  CHECK(run(base) == 0);
  CHECK(slurp(g_dir / "r.json").find("\"error\"") != std::string::npos);
  CHECK(run(base + " --strict") == 3);
}

TEST_CASE("simulate is reproducible byte-for-byte for a fixed seed") {
  CHECK(run("scenarios --dump GT --out " + (g_dir / "model.json").string()) == 0);
  std::string base = "simulate --model " + (g_dir / "model.json").string() +
                     " --cases 20 --seed 11 --out ";
  CHECK(run(base + (g_dir / "log1.csv").string()) == 0);
  CHECK(run(base + (g_dir / "log2.csv").string()) == 0);
  std::string a = slurp(g_dir / "log1.csv");
  CHECK(a == slurp(g_dir / "log2.csv"));
  CHECK(a.find("case_id,activity,start_time,end_time") == 0);
  CHECK(run("simulate --model " + (g_dir / "model.json").string() +
            " --cases 20 --seed 12 --out " + (g_dir / "log3.csv").string()) == 0);
  CHECK(a != slurp(g_dir / "log3.csv"));
}

TEST_CASE("scenario list names all eight models") {
  CHECK(run("scenarios --list") == 0);
  std::string text = out_text();
  for (const char* name : {"GT", "SEQ", "S-G", "ARR", "DUR", "RC", "CAL", "EXT"})
    CHECK(text.find(name) != std::string::npos);
}

TEST_CASE("evaluate-scenarios emits byte-identical JSON for the same seed") {
  std::string base = "evaluate-scenarios --seed 7 --k 2 --cases 16 --format json --out ";
  CHECK(run(base + (g_dir / "s1.json").string()) == 0);
  CHECK(run(base + (g_dir / "s2.json").string()) == 0);
  std::string a = slurp(g_dir / "s1.json");
  CHECK(!a.empty());
  CHECK(a == slurp(g_dir / "s2.json"));
  CHECK(a.find("\"scenarios\"") != std::string::npos);
  // Text format renders the scenario-by-measure table.
  CHECK(run("evaluate-scenarios --seed 7 --k 2 --cases 16") == 0);
  CHECK(out_text().find("scenario") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-logdist-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "logdist_cli_test";
  std::filesystem::create_directories(g_dir);
  doctest::Context context;
  int res = context.run();
  std::filesystem::remove_all(g_dir);
  return res;
}
