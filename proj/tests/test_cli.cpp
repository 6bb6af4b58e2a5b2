#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "bernlab_cli_test";

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(BERNLAB_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

struct Setup {
  Setup() {
    fs::create_directories(kWork);
    write(kWork / "zn10.json",
          R"({"kind":"polynomial","coeffs":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]})");
    write(kWork / "z3.json", R"({"kind":"polynomial","coeffs":[[0,0],[0,0],[0,0],[1,0]]})");
    write(kWork / "z4.json", R"({"kind":"polynomial","coeffs":[[0,0],[0,0],[0,0],[0,0],[1,0]]})");
    write(kWork / "zero.json", R"({"kind":"polynomial","coeffs":[[0,0]]})");
    write(kWork / "blaschke.json",
          R"({"kind":"blaschke","zeros":[[0.5,0],[-0.3,0.2],[0.1,-0.6],[0,0.45]]})");
    write(kWork / "geom.json", [] {
      std::string s = R"({"coeffs":[)";
      double v = 1.0;
      for (int k = 0; k <= 40; ++k) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s[%.17g,0]", k ? "," : "", v);
        s += buf;
        v *= 0.5;
      }
      return s + "]}";
    }());
  }
};
const Setup setup_once;

}  // namespace

TEST_CASE("norm subcommand and exit codes") {
  SUBCASE("a1-deriv of z^10") {
    REQUIRE(run("norm --function " + (kWork / "zn10.json").string() +
                " --functional a1-deriv --out " + (kWork / "n1.json").string()) == 0);
    const auto j = load_json(kWork / "n1.json");
    CHECK(std::abs(j["report"]["value"].get<double>() - 5.7119866) < 1e-6);
    CHECK(j["report"]["grid"]["panels"] == 40);
    CHECK(j["manifest"]["command"] == "norm");
  }
  SUBCASE("hardy norm of a blaschke product is 1") {
    REQUIRE(run("norm --function " + (kWork / "blaschke.json").string() +
                " --functional hardy --p 4 --out " + (kWork / "n2.json").string()) == 0);
    CHECK(std::abs(load_json(kWork / "n2.json")["report"]["value"].get<double>() - 1.0) < 1e-10);
  }
  SUBCASE("missing --p is a parameter error (2)") {
    CHECK(run("norm --function " + (kWork / "zn10.json").string() + " --functional hardy") == 2);
  }
  SUBCASE("unknown functional is a usage error (64)") {
    CHECK(run("norm --function " + (kWork / "zn10.json").string() + " --functional woble") == 64);
  }
  SUBCASE("unknown flag is a usage error (64)") {
    CHECK(run("norm --wat 3") == 64);
  }
}

TEST_CASE("sweep subcommand") {
  const fs::path out1 = kWork / "sweep1";
  SUBCASE("lacunary theorem-1 sweep emits csv, summary, plot") {
    REQUIRE(run("sweep --theorem 1 --family lacunary --n 4..7 --p 2 --plot --out " +
                out1.string()) == 0);
    const std::string csv = slurp(out1 / "sweep.csv");
    CHECK(csv.rfind("#schema=bernlab.sweep.theorem1.v1", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 4);  // schema + header + rows
    const auto j = load_json(out1 / "summary.json");
    CHECK(j["summary"]["fit"]["gamma_fixed"] == false);
    CHECK(slurp(out1 / "plot.svg").find("<svg") != std::string::npos);
  }
  SUBCASE("identical manifests give byte-identical csv, independent of threads") {
    const fs::path a = kWork / "det_a", b = kWork / "det_b", c = kWork / "det_c";
    REQUIRE(run("sweep --theorem 3 --family clustered-blaschke --n 16,32 --p 2 --g one --seed 5 "
                "--out " + a.string()) == 0);
    REQUIRE(run("sweep --theorem 3 --family clustered-blaschke --n 16,32 --p 2 --g one --seed 5 "
                "--out " + b.string()) == 0);
    REQUIRE(run("sweep --theorem 3 --family clustered-blaschke --n 16,32 --p 2 --g one --seed 5 "
                "--out " + c.string(), "BERNLAB_THREADS=1") == 0);
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
    CHECK(slurp(a / "sweep.csv") == slurp(c / "sweep.csv"));
  }
  SUBCASE("hypothesis violations exit 2 naming the inequality") {
    CHECK(run("sweep --theorem 2 --family power --n 16,32,64 --alpha 0.6 --out " +
              (kWork / "x").string()) == 2);
  }
  SUBCASE("singleton n gives a table but no fit") {
    const fs::path out = kWork / "sweep_single";
    REQUIRE(run("sweep --theorem 1 --family power --n 8 --p 2 --out " + out.string()) == 0);
    const auto j = load_json(out / "summary.json");
    CHECK(j["fit"].is_null());
  }
  SUBCASE("unknown theorem id exits 64") {
    CHECK(run("sweep --theorem 9 --family power --n 4..8 --out " + (kWork / "y").string()) == 64);
  }
}

TEST_CASE("valence subcommand") {
  REQUIRE(run("valence --function " + (kWork / "z3.json").string() +
              " --R 0.5 --claim 3 --out " + (kWork / "v.json").string() + " --csv " +
              (kWork / "v.csv").string()) == 0);
  const auto j = load_json(kWork / "v.json");
  CHECK(j["certify"]["passed"] == true);
  CHECK(std::abs(j["certify"]["rows"][0]["mean_valence"].get<double>() - 0.75) < 1e-6);
  const std::string csv = slurp(kWork / "v.csv");
  CHECK(csv.rfind("#schema=bernlab.valence_profile.v1", 0) == 0);
}

TEST_CASE("hayman subcommand") {
  SUBCASE("witness for z^4") {
    REQUIRE(run("hayman --function " + (kWork / "z4.json").string() +
                " --r 0.9 --lambda 1 --n 4 --out " + (kWork / "h.json").string()) == 0);
    const auto j = load_json(kWork / "h.json");
    CHECK(j["witness"]["found"] == true);
    const double rt = j["witness"]["r_tilde"].get<double>();
    CHECK(rt >= 0.8 - 1e-12);
    CHECK(rt <= 0.9 + 1e-12);
  }
  SUBCASE("identically-zero input is a numerical error (3)") {
    CHECK(run("hayman --function " + (kWork / "zero.json").string() +
              " --r 0.9 --lambda 1 --n 1") == 3);
  }
}

TEST_CASE("counterexample subcommand") {
  REQUIRE(run("counterexample --phi log --blocks 6 --out " + (kWork / "c.json").string()) == 0);
  const auto j = load_json(kWork / "c.json");
  for (const char* cert : {"divergence", "weighted_convergence", "h2_membership", "en_series"})
    CHECK(j["report"]["certificates"][cert] == true);
  CHECK(j["function"]["kind"] == "lacunary");
}

TEST_CASE("inverse subcommand") {
  REQUIRE(run("inverse --coeffs " + (kWork / "geom.json").string() +
              " --weight sqrtlog --out " + (kWork / "i.json").string()) == 0);
  CHECK(load_json(kWork / "i.json")["diagnosis"]["verdict"] == "converges");
  CHECK(run("inverse --coeffs " + (kWork / "geom.json").string() + " --weight bogus") == 64);
}
