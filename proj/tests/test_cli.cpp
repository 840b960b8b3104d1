#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tropfactor/pipeline.hpp"
#include "tropfactor/serialize.hpp"

namespace fs = std::filesystem;
using namespace tropfactor;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() / ("tropfactor_cli_out_" + std::to_string(counter++));
  const std::string cmd =
      std::string(TROPFACTOR_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out_path);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("analyze exits 0 on the worked pair and prints the germ") {
  Rng rng(601);
  const SparsePoly r =
      parse_poly("2*x*y + x^2*y + 9*x*y^2 + 7*x^3*y + x^4*y + 9*x^3*y^2");
  const SparsePoly f = multiply(r, troptest::random_test_poly(rng, 10));
  const SparsePoly g = multiply(r, troptest::random_test_poly(rng, 10));
  const fs::path pf = write_temp("cli_worked_f.txt", format_poly(f));
  const fs::path pg = write_temp("cli_worked_g.txt", format_poly(g));

  const RunResult res = run_cli("analyze " + pf.string() + " " + pg.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("factor_likely") != std::string::npos);
  CHECK(res.out.find("(1, 0)") != std::string::npos);
  CHECK(res.out.find("-0.22222") != std::string::npos);
  CHECK(res.out.find("-0.11111") != std::string::npos);

  // structured output parses back into the same certificate
  const RunResult sres =
      run_cli("analyze --format structured " + pf.string() + " " + pg.string());
  CHECK(sres.exit_code == 0);
  const Certificate direct = preprocess(f, g);
  CHECK(certificate_from_json(Json::parse(sres.out)) == direct);
}

TEST_CASE("analyze exits 1 on a NoTropism pair") {
  const fs::path pf = write_temp("cli_disj_f.txt", "1 + x^2*y + x*y^3");
  const fs::path pg = write_temp("cli_disj_g.txt", "x + y + x^3*y^3");
  const RunResult res = run_cli("analyze " + pf.string() + " " + pg.string());
  CHECK(res.exit_code == 1);
  CHECK(res.out.find("no_tropism") != std::string::npos);
}

TEST_CASE("analyze exits 2 on bad input") {
  const fs::path empty = write_temp("cli_empty.txt", "");
  const fs::path ok = write_temp("cli_ok.txt", "1 + x + y");
  CHECK(run_cli("analyze " + empty.string() + " " + ok.string()).exit_code == 2);
  CHECK(run_cli("analyze " + ok.string() + " /nonexistent/file.txt").exit_code == 2);
  const fs::path bad = write_temp("cli_bad.txt", "2*x + @");
  const RunResult res = run_cli("analyze " + bad.string() + " " + ok.string());
  CHECK(res.exit_code == 2);
  CHECK(res.out.find("position 6") != std::string::npos);
  CHECK(res.out.find("cli_bad.txt") != std::string::npos);
}

TEST_CASE("gen is deterministic and its instances analyze to exit 0") {
  const fs::path prefix1 = fs::temp_directory_path() / "cli_gen_a";
  const fs::path prefix2 = fs::temp_directory_path() / "cli_gen_b";
  CHECK(run_cli("gen --seed 7 --deg-factor 3 --deg-cofactor 5 --out " +
                prefix1.string())
            .exit_code == 0);
  CHECK(run_cli("gen --seed 7 --deg-factor 3 --deg-cofactor 5 --out " +
                prefix2.string())
            .exit_code == 0);
  CHECK(slurp(prefix1.string() + "_f.txt") == slurp(prefix2.string() + "_f.txt"));
  CHECK(slurp(prefix1.string() + "_g.txt") == slurp(prefix2.string() + "_g.txt"));
  CHECK(slurp(prefix1.string() + "_truth.json") ==
        slurp(prefix2.string() + "_truth.json"));

  const RunResult res = run_cli("analyze " + prefix1.string() + "_f.txt " +
                                prefix1.string() + "_g.txt");
  CHECK(res.exit_code == 0);

  CHECK(run_cli("gen --deg-factor 0 --out " +
                (fs::temp_directory_path() / "cli_gen_bad").string())
            .exit_code == 2);
}

TEST_CASE("plot writes svg with the expected combinatorics") {
  const fs::path pf = write_temp(
      "cli_plot_f.txt", "x^3*y + x^2*y^3 + x^5*y^3 + x^4*y^5 + x^2*y^7 + x^3*y^7");
  const fs::path svg = fs::temp_directory_path() / "cli_plot_f.svg";
  const RunResult res =
      run_cli("plot " + pf.string() + " --out " + svg.string() + " --what both");
  CHECK(res.exit_code == 0);
  const std::string content = slurp(svg);
  // exact hull: five vertices, five edges, five rays ((4,5) lies on an edge)
  std::size_t rays = 0;
  for (std::size_t pos = content.find("class=\"ray\""); pos != std::string::npos;
       pos = content.find("class=\"ray\"", pos + 1))
    ++rays;
  CHECK(rays == 5);

  // overlay: common rays equal the tropism intersection count
  Rng rng(602);
  const SparsePoly r = troptest::random_test_poly(rng, 2);
  const SparsePoly f2 = multiply(r, troptest::random_test_poly(rng, 4));
  const SparsePoly g2 = multiply(r, troptest::random_test_poly(rng, 4));
  const fs::path p2 = write_temp("cli_plot_f2.txt", format_poly(f2));
  const fs::path p3 = write_temp("cli_plot_g2.txt", format_poly(g2));
  const fs::path svg2 = fs::temp_directory_path() / "cli_plot_overlay.svg";
  CHECK(run_cli("plot " + p2.string() + " --overlay " + p3.string() + " --out " +
                svg2.string())
            .exit_code == 0);
  const std::string overlay = slurp(svg2);
  const auto common = tropism_intersection(tropicalization(f2), tropicalization(g2));
  std::size_t commons = 0;
  for (std::size_t pos = overlay.find("class=\"common\""); pos != std::string::npos;
       pos = overlay.find("class=\"common\"", pos + 1))
    ++commons;
  CHECK(commons == common.size());

  // failed parse must not create the output file
  const fs::path bad = write_temp("cli_plot_bad.txt", "x + ");
  const fs::path svg3 = fs::temp_directory_path() / "cli_plot_never.svg";
  fs::remove(svg3);
  CHECK(run_cli("plot " + bad.string() + " --out " + svg3.string()).exit_code == 2);
  CHECK_FALSE(fs::exists(svg3));
}

TEST_CASE("demo-amoeba renders sample points") {
  const fs::path svg = fs::temp_directory_path() / "cli_amoeba.svg";
  const RunResult res = run_cli("demo-amoeba --thetas 12 --radii 30 --out " +
                                svg.string());
  CHECK(res.exit_code == 0);
  const std::string content = slurp(svg);
  CHECK(content.find("class=\"amoeba\"") != std::string::npos);
  CHECK(content.find("<svg") != std::string::npos);
}
