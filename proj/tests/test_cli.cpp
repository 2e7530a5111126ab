// End-to-end checks of the installed command-line surface: exit codes,
// output schemas and byte-stable golden output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <string>

#ifndef PINFOLD_CLI_PATH
#error "PINFOLD_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunOutput {
  int exit_code = -1;
  std::string stdout_text;
};

RunOutput run_cli(const std::string& args)
{
  const std::string cmd = std::string(PINFOLD_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunOutput out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    out.stdout_text.append(buf.data(), got);
  const int status = pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string temp_path(const std::string& name)
{
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("simulate: worked example, counts and exit codes")
{
  const RunOutput g1 = run_cli("simulate --scenario four-disc --schedule gamma1");
  CHECK(g1.exit_code == 0);
  const auto j1 = nlohmann::json::parse(g1.stdout_text);
  CHECK(j1.at("collisions") == 4);
  CHECK(j1.contains("final_sqrt3"));  // the exact path is the default here

  const RunOutput g2 = run_cli("simulate --scenario four-disc --schedule gamma2");
  CHECK(nlohmann::json::parse(g2.stdout_text).at("collisions") == 5);

  // Truncated run: not absorbed when the budget ends -> exit 3, partial log.
  const RunOutput cut = run_cli("simulate --scenario four-disc --schedule gamma1 --max-steps 2");
  CHECK(cut.exit_code == 3);
  CHECK(nlohmann::json::parse(cut.stdout_text).at("collisions") == 2);

  // Unknown scenario and bad flags are validation errors.
  CHECK(run_cli("simulate --scenario nope").exit_code == 2);
  CHECK(run_cli("simulate").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("simulate: schedule referencing a non-edge exits 2")
{
  const std::string req = temp_path("badreq.json");
  {
    std::ofstream out(req);
    out << R"({"config": {"dimension": 1, "centers": [[0], [2], [4]]},
               "velocities": [[1], [0], [0]],
               "schedule": {"kind": "explicit", "edges": [[1, 3]]},
               "max_steps": 10})";
  }
  CHECK(run_cli("simulate --request " + req).exit_code == 2);
  std::remove(req.c_str());
}

TEST_CASE("simulate: exact request end to end")
{
  // Four-disc configuration and start velocities as coefficient quadruples;
  // the first reference sequence must end at v_B = (11 sqrt3/32, 43/32).
  const std::string req = temp_path("exactreq.json");
  {
    std::ofstream out(req);
    out << R"({"config": {"dimension": 2,
                "centers": [[0,-2],[0,0],[-1,1.732],[1,1.732]],
                "sqrt3": [[[0,1,0,1],[-2,1,0,1]], [[0,1,0,1],[0,1,0,1]],
                          [[-1,1,0,1],[0,1,1,1]], [[1,1,0,1],[0,1,1,1]]]},
               "velocities_sqrt3": [[[0,1,0,1],[2,1,0,1]], [[0,1,0,1],[1,1,0,1]],
                                    [[0,1,0,1],[0,1,0,1]], [[0,1,0,1],[0,1,0,1]]],
               "schedule": {"kind": "explicit", "edges": [[2,3],[2,4],[1,2],[2,3]]},
               "max_steps": 100})";
  }
  const RunOutput res = run_cli("simulate --request " + req);
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  CHECK(j.at("collisions") == 4);
  const auto vb = j.at("final_sqrt3")[1];
  CHECK(vb[0] == nlohmann::json::array({0, 1, 11, 32}));
  CHECK(vb[1] == nlohmann::json::array({43, 32, 0, 1}));
  std::remove(req.c_str());
}

TEST_CASE("simulate: malformed request JSON and forced floating path")
{
  const std::string req = temp_path("broken.json");
  {
    std::ofstream out(req);
    out << "{not json";
  }
  CHECK(run_cli("simulate --request " + req).exit_code == 2);
  std::remove(req.c_str());

  const RunOutput f = run_cli("simulate --scenario four-disc --schedule gamma1 --no-exact");
  CHECK(f.exit_code == 0);
  const auto j = nlohmann::json::parse(f.stdout_text);
  CHECK(j.at("collisions") == 4);
  CHECK(!j.contains("final_sqrt3"));
}

TEST_CASE("simulate: zero-velocity request absorbs at step 0")
{
  const std::string req = temp_path("zeroreq.json");
  {
    std::ofstream out(req);
    out << R"({"config": {"dimension": 1, "centers": [[0], [2]]},
               "schedule": {"kind": "round_robin"}, "max_steps": 10})";
  }
  const RunOutput res = run_cli("simulate --request " + req);
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  CHECK(j.at("collisions") == 0);
  CHECK(j.at("absorbed") == true);
  CHECK(j.at("steps") == 0);
  std::remove(req.c_str());
}

TEST_CASE("golden stability: identical bytes across runs, 17-digit floats")
{
  const std::string flags = "simulate --scenario four-disc --schedule gamma1 --csv " +
                            temp_path("jumps.csv");
  const RunOutput a = run_cli(flags);
  const RunOutput b = run_cli(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text.find("0.59539246510180155") != std::string::npos);  // 11 sqrt3/32 + 43/32 block

  std::ifstream csv(temp_path("jumps.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "step,edge,delta_norm");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 4);
  std::remove(temp_path("jumps.csv").c_str());
}

TEST_CASE("golden files: byte-for-byte against the committed reference output")
{
  // The exact path never touches libm, so these bytes are portable: the
  // quadruples are integers and the floats are rounded conversions of them.
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const RunOutput log = run_cli("simulate --scenario four-disc --schedule gamma1 --csv " +
                                temp_path("golden_jumps.csv"));
  CHECK(log.stdout_text == slurp(std::string(PINFOLD_SOURCE_DIR) +
                                 "/tests/golden/four_disc_gamma1.json"));
  CHECK(slurp(temp_path("golden_jumps.csv")) ==
        slurp(std::string(PINFOLD_SOURCE_DIR) + "/tests/golden/four_disc_gamma1_jumps.csv"));
  std::remove(temp_path("golden_jumps.csv").c_str());
}

TEST_CASE("bounds: headline value and table shape")
{
  const RunOutput res = run_cli("bounds --n 4 --d 2 --tau 6");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  bool found = false;
  for (const auto& row : j.at("bounds")) {
    CHECK(row.contains("formula"));
    CHECK(row.contains("inputs"));
    CHECK(row.contains("log2"));
    CHECK(row.contains("log10"));
    if (row.at("formula") == "collision-bound") {
      found = true;
      CHECK(row.at("log2") == 194.0);
    }
  }
  CHECK(found);
  CHECK(j.at("kissing").at("exact") == 6);
  CHECK(run_cli("bounds --n 4").exit_code == 2);  // dimension still missing

  // From a concrete configuration the span gap is computed exactly and the
  // configuration-dependent bound appears in the table.
  const RunOutput sg = run_cli("bounds --scenario chain:3:1");
  CHECK(sg.exit_code == 0);
  const auto js = nlohmann::json::parse(sg.stdout_text);
  CHECK(js.at("span_gap").get<double>() == doctest::Approx(0.8660254037844386).epsilon(1e-12));
  bool has_config_bound = false;
  for (const auto& row : js.at("bounds"))
    has_config_bound |= row.at("formula") == "configuration-bound";
  CHECK(has_config_bound);
}

TEST_CASE("orbit: wedge run stays within the two half-space bound")
{
  const RunOutput res = run_cli("orbit --wedge 0.0314 --start-angle auto");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  CHECK(j.at("absorbed") == true);
  CHECK(j.at("jumps").get<double>() <= 3.14159265358979 / 0.0314 + 1.0);
  CHECK(j.at("jumps").get<int>() >= 80);
}

TEST_CASE("scenario: list and export")
{
  const RunOutput names = run_cli("scenario --list");
  CHECK(names.exit_code == 0);
  CHECK(names.stdout_text.find("four-disc") != std::string::npos);

  const std::string path = temp_path("fourdisc.json");
  CHECK(run_cli("scenario --name four-disc --export " + path + " --exact").exit_code == 0);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j.at("dimension") == 2);
  CHECK(j.at("centers").size() == 4);
  CHECK(j.at("sqrt3").size() == 4);
  std::remove(path.c_str());

  CHECK(run_cli("scenario").exit_code == 2);
}

TEST_CASE("search: certified exhaustive result via the CLI")
{
  const RunOutput res = run_cli(
      "search --scenario four-disc --v0 scenario --strategy exhaustive --len 5");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  CHECK(j.at("best_count") == 5);
  CHECK(j.at("best_schedule").size() == 5);

  const RunOutput sweep_res = run_cli(
      "search --sweep chain:3:1,chain:4:1 --strategy random --budget 16");
  CHECK(sweep_res.exit_code == 0);
  CHECK(sweep_res.stdout_text.rfind("name,n,d,edges,strategy,best_count", 0) == 0);
}

TEST_CASE("verify-paper: passes with the single documented warning")
{
  const RunOutput res = run_cli("verify-paper");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text.find("WARN  gamma2-step3-ball1") != std::string::npos);
  CHECK(res.stdout_text.find("FAIL") == std::string::npos);
  CHECK(res.stdout_text.find("OK:") != std::string::npos);
}
