#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests against the installed binary. The build passes the
// binary's location in ENTCARD_CLI_PATH.

namespace {

namespace fs = std::filesystem;

const std::string kCli = ENTCARD_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "entcard_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter++));
  const std::string command = env + (env.empty() ? "" : " ") + kCli + " " + args +
                              " > " + out_path.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.stdout_text = slurp(out_path);
  return result;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += (c == '\n');
  return lines;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("descend emits a jsonl trajectory and succeeds") {
  const auto result = run_cli("descend --masses 1,2,4 --draws 2,5");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"t\":0") != std::string::npos);
  CHECK(result.stdout_text.find("\"masses\":[1,2,4]") != std::string::npos);
  CHECK(result.stdout_text.find("\"entropy\":") != std::string::npos);
  CHECK(result.stdout_text.find("\"expected_cardinalities\":{\"2\":") !=
        std::string::npos);
  CHECK(result.stdout_text.find("\"termination_reason\":\"cardinality_one\"") !=
        std::string::npos);
}

TEST_CASE("descend csv format uses the frozen header") {
  const auto result = run_cli("descend --masses 1,2 --format csv --max-steps 5 "
                              "--stop-mode max-steps-only");
  CHECK(result.exit_code == 0);
  CHECK(first_line(result.stdout_text) ==
        "t,entropy,total_mass,cardinality,masses,clamped_indices");
  // header + records for t = 0..5 + termination line
  CHECK(count_lines(result.stdout_text) == 8);
  CHECK(result.stdout_text.find("max_steps") != std::string::npos);
}

TEST_CASE("descend rejects all-zero masses with a usage error") {
  CHECK(run_cli("descend --masses 0,0").exit_code == 2);
  CHECK(run_cli("descend --masses 1,-2").exit_code == 2);
  CHECK(run_cli("descend").exit_code == 2);  // --masses is required
}

TEST_CASE("descend writes to a file and honors ENTCARD_OUTDIR") {
  const fs::path dir = scratch_dir() / "outdir";
  fs::create_directories(dir);
  const auto result = run_cli("descend --masses 1,2 -o traj.jsonl",
                              "ENTCARD_OUTDIR=" + dir.string());
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.empty());
  const std::string written = slurp(dir / "traj.jsonl");
  CHECK(written.find("\"termination_reason\"") != std::string::npos);
}

TEST_CASE("figure subcommand emits frozen headers and row counts") {
  const auto fig1 = run_cli("figure 1 --n 200");
  CHECK(fig1.exit_code == 0);
  CHECK(first_line(fig1.stdout_text) == "p0,p1,p2,entropy,nonzero_count,seed");
  CHECK(count_lines(fig1.stdout_text) == 201);

  const auto fig2 = run_cli("figure 2 --n 150 --s-max 20 --m-max 20");
  CHECK(fig2.exit_code == 0);
  CHECK(first_line(fig2.stdout_text) == "s,m,entropy,expected_cardinality,seed");
  CHECK(count_lines(fig2.stdout_text) == 151);

  const auto fig3 = run_cli("figure 3 --n 150");
  CHECK(fig3.exit_code == 0);
  CHECK(first_line(fig3.stdout_text) == "s,m,entropy,expected_cardinality,seed");
  CHECK(count_lines(fig3.stdout_text) == 151);

  CHECK(run_cli("figure 9 --n 10").exit_code == 2);
}

TEST_CASE("figure output is byte-identical across runs and seed-sensitive") {
  const auto a = run_cli("figure 1 --n 100");
  const auto b = run_cli("figure 1 --n 100");
  CHECK(a.stdout_text == b.stdout_text);
  const auto c = run_cli("figure 1 --n 100 --seed 7");
  CHECK(c.stdout_text != a.stdout_text);
  // the env variable sets the seed too
  const auto d = run_cli("figure 1 --n 100", "ENTCARD_SEED=7");
  CHECK(d.stdout_text == c.stdout_text);
}

TEST_CASE("oracle subcommands") {
  const auto lemmas = run_cli("oracle lemmas --trials 50");
  CHECK(lemmas.exit_code == 0);
  CHECK(lemmas.stdout_text.rfind("pass lemmas", 0) == 0);

  const auto gradcheck = run_cli("oracle gradcheck --trials 20");
  CHECK(gradcheck.exit_code == 0);
  CHECK(gradcheck.stdout_text.rfind("pass gradcheck", 0) == 0);

  const auto bruteforce = run_cli("oracle bruteforce --max-s 4 --max-m 4 --per-pair 5");
  CHECK(bruteforce.exit_code == 0);
  CHECK(bruteforce.stdout_text.rfind("pass bruteforce", 0) == 0);

  const auto mc = run_cli("oracle montecarlo --masses 1,1 --m 2 --mc-trials 20000");
  CHECK(mc.exit_code == 0);
  CHECK(mc.stdout_text.rfind("pass montecarlo", 0) == 0);

  CHECK(run_cli("oracle nonsense").exit_code == 2);
}

TEST_CASE("verify subcommand reports per-check lines") {
  const auto ok = run_cli("verify --trials 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text.find("pass gradient_sign_at_extremes") != std::string::npos);
  CHECK(ok.stdout_text.find("FAIL") == std::string::npos);

  const auto self_test = run_cli("verify --trials 3 --self-test");
  CHECK(self_test.exit_code == 1);
  CHECK(self_test.stdout_text.find("FAIL gradient_sign_at_extremes") !=
        std::string::npos);
}

TEST_CASE("continuous subcommands") {
  const auto uniform = run_cli("continuous uniform --a 0 --b 2");
  CHECK(uniform.exit_code == 0);
  CHECK(first_line(uniform.stdout_text) == "0.69314718055994529");

  const auto gaussian = run_cli("continuous gaussian --variances 1");
  CHECK(gaussian.exit_code == 0);
  CHECK(first_line(gaussian.stdout_text) == "1.4189385332046727");

  const auto cover = run_cli("continuous cover --a 0 --b 2 --eps 0.25");
  CHECK(cover.exit_code == 0);
  CHECK(first_line(cover.stdout_text) == "4");

  const auto contract = run_cli("continuous contract --points 0,2 --lr 0.5 --steps 1");
  CHECK(contract.exit_code == 0);
  CHECK(first_line(contract.stdout_text) == "step,dim,mean,variance");
  CHECK(contract.stdout_text.find("1,0,1,0.25") != std::string::npos);

  const auto descent =
      run_cli("continuous uniform --a 0 --b 2 --eps 0.25 --lr 0.5");
  CHECK(descent.exit_code == 0);
  CHECK(first_line(descent.stdout_text) == "step,a,b,entropy,covering_number");
  CHECK(descent.stdout_text.find(",1\n") != std::string::npos);

  CHECK(run_cli("continuous uniform --a 2 --b 1").exit_code == 2);
  CHECK(run_cli("continuous gaussian --variances 0").exit_code == 2);
}

TEST_CASE("top level usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("unknowncmd").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
