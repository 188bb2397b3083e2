#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status;
    std::string out;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir()
{
    fs::path d = fs::temp_directory_path() / "rislink_cli_test";
    fs::create_directories(d);
    return d;
}

RunResult run_cli(const std::string& args, const std::string& env = "")
{
    fs::path cap = scratch_dir() / "capture.txt";
    std::string cmd = env + " \"" RISLINK_CLI_PATH "\" " + args + " > \"" +
                      cap.string() + "\" 2>&1";
    int rc = std::system(cmd.c_str());
    int status = -1;
    if (rc != -1)
        status = WEXITSTATUS(rc);
    return {status, slurp(cap)};
}

fs::path write_file(const std::string& name, const std::string& body)
{
    fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
}

std::string outage_scenario(const std::string& out_csv, int elements)
{
    std::ostringstream s;
    s << R"({
  "rislink_scenario": 1,
  "kind": "link-outage",
  "threshold_db": 0,
  "sweep": {"variable": "snr_db", "start": 0, "stop": 10, "points": 3},
  "output": ")" << out_csv << R"(",
  "curves": [{
    "label": "naka",
    "elements": )" << elements << R"(,
    "hops": [{"h": {"model": "nakagami", "m": 1.0}, "g": {"model": "nakagami", "m": 2.0}}]
  }]
})";
    return s.str();
}

} // namespace

TEST_CASE("model catalog listing")
{
    RunResult r = run_cli("list-models");
    CHECK(r.status == 0);
    for (const char* name :
         {"rayleigh", "nakagami", "alpha-mu", "fisher-f", "generalized-k"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("validate reports strips per hop")
{
    fs::path csv = scratch_dir() / "unused.csv";
    fs::path sc = write_file("validate_ok.json", outage_scenario(csv.string(), 2));
    RunResult r = run_cli("validate \"" + sc.string() + "\"");
    CHECK(r.status == 0);
    CHECK(r.out.find("ok") != std::string::npos);
    CHECK(r.out.find("nakagami") != std::string::npos);
    CHECK(r.out.find("strip") != std::string::npos);
}

TEST_CASE("run writes a csv sweep and reruns byte-identically")
{
    fs::path csv = scratch_dir() / "sweep.csv";
    fs::path sc = write_file("run_ok.json", outage_scenario(csv.string(), 1));
    RunResult r = run_cli("run \"" + sc.string() + "\"");
    CHECK(r.status == 0);
    std::string first = slurp(csv);
    CHECK(first.find("label,snr_db") == 0);
    CHECK(first.find("value") != std::string::npos);
    CHECK(first.find("upper_bound") != std::string::npos);
    // three sweep points -> header plus three rows
    int lines = 0;
    for (char ch : first)
        if (ch == '\n')
            ++lines;
    CHECK(lines == 4);

    fs::remove(csv);
    RunResult again = run_cli("run \"" + sc.string() + "\"");
    CHECK(again.status == 0);
    CHECK(slurp(csv) == first);
}

TEST_CASE("worker override leaves results unchanged")
{
    fs::path csv = scratch_dir() / "workers.csv";
    fs::path sc = write_file("run_workers.json", outage_scenario(csv.string(), 2));
    RunResult wide = run_cli("run \"" + sc.string() + "\"");
    CHECK(wide.status == 0);
    std::string baseline = slurp(csv);
    fs::remove(csv);
    RunResult narrow = run_cli("run \"" + sc.string() + "\"", "RISLINK_WORKERS=1");
    CHECK(narrow.status == 0);
    CHECK(slurp(csv) == baseline);
}

TEST_CASE("stdout output when no file is named")
{
    fs::path sc = write_file("run_stdout.json", outage_scenario("", 1));
    RunResult r = run_cli("run \"" + sc.string() + "\"");
    CHECK(r.status == 0);
    CHECK(r.out.find("label,snr_db") == 0);
}

TEST_CASE("config errors exit with status 1")
{
    fs::path bad_json = write_file("bad.json", "{ not json");
    CHECK(run_cli("run \"" + bad_json.string() + "\"").status == 1);

    fs::path no_magic = write_file("nomagic.json", R"({"kind": "link-outage"})");
    CHECK(run_cli("run \"" + no_magic.string() + "\"").status == 1);

    std::string unknown = outage_scenario("", 1);
    size_t pos = unknown.find("nakagami");
    unknown.replace(pos, 8, "weibullx");
    fs::path bad_model = write_file("badmodel.json", unknown);
    RunResult r = run_cli("run \"" + bad_model.string() + "\"");
    CHECK(r.status == 1);
    CHECK(r.out.find("error") != std::string::npos);

    CHECK(run_cli("run \"/nonexistent/file.json\"").status == 1);
    CHECK(run_cli("frobnicate").status != 0);
}

TEST_CASE("compare agrees with its own simulator")
{
    fs::path csv = scratch_dir() / "compare.csv";
    std::ostringstream s;
    s << R"({
  "rislink_scenario": 1,
  "kind": "compare",
  "compare_metric": "outage",
  "threshold_db": 0,
  "sweep": {"variable": "snr_db", "start": 2, "stop": 8, "points": 2},
  "mc": {"trials": 200000, "seed": 7},
  "output": ")" << csv.string() << R"(",
  "curves": [{
    "label": "ray",
    "elements": 1,
    "hops": [{"h": {"model": "rayleigh"}, "g": {"model": "rayleigh"}}]
  }]
})";
    fs::path sc = write_file("compare.json", s.str());
    RunResult r = run_cli("compare \"" + sc.string() + "\"");
    CHECK(r.status == 0);
    std::string body = slurp(csv);
    CHECK(body.find("mc_mean") != std::string::npos);
    CHECK(body.find("z_score") != std::string::npos);
}

TEST_CASE("compare without an mc block is a config error")
{
    std::string body = outage_scenario("", 1);
    body.replace(body.find("link-outage"), 11, "compare");
    fs::path sc = write_file("compare_nomc.json", body);
    CHECK(run_cli("compare \"" + sc.string() + "\"").status == 1);
}

TEST_CASE("dimension overflow falls back to bounds for outage")
{
    fs::path csv = scratch_dir() / "bounds.csv";
    fs::path sc = write_file("wide.json", outage_scenario(csv.string(), 12));
    RunResult r = run_cli("run \"" + sc.string() + "\"");
    CHECK(r.status == 0);
    std::string body = slurp(csv);
    CHECK(body.find("bounds") != std::string::npos);
}

TEST_CASE("dimension overflow on capacity marks the rows failed")
{
    fs::path csv = scratch_dir() / "failcap.csv";
    std::string body = outage_scenario(csv.string(), 12);
    body.replace(body.find("link-outage"), 11, "link-capacity");
    fs::path sc = write_file("widecap.json", body);
    RunResult r = run_cli("run \"" + sc.string() + "\"");
    CHECK(r.status == 2);
    std::string out = slurp(csv);
    CHECK(out.find("failed") != std::string::npos);
}
