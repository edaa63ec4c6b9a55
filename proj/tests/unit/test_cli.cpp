#include "skewstab/cli/run.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using skewstab::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "skewstab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("skewstab_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kSystem =
    R"({"base":{"kind":"linear","l":2},"fiber":{"kind":"translation","theta":"golden","indicator":[[0.5,1.0]]}})";

}  // namespace

TEST_CASE("bound prints the closed form") {
  const Result r = call({"bound", "--phi", "power:1,1", "--M", "1", "--C", "1", "--eps", "0.01"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.302843\n");
}

TEST_CASE("validation errors exit with 2") {
  CHECK(call({"bound", "--phi", "cubic:1", "--M", "1", "--C", "1", "--eps", "0.01"}).code == 2);
  CHECK(call({"example", "prop-30", "--j", "3"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const fs::path d = scratch("strict");
  write(d / "sys.json", R"({"base":{"kind":"linear","l":2},"fiber":{"kind":"identity"},"extra":1})");
  CHECK(call({"--out-dir", d.string(), "decay", "--config", (d / "sys.json").string()}).code == 2);
}

TEST_CASE("validate reports diagnostics without failing") {
  const fs::path d = scratch("validate");
  write(d / "sys.json", kSystem);
  const Result ok = call({"validate", "--config", (d / "sys.json").string(), "--N", "256"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["diagnostics"].empty());
  const Result bad = call({"validate", "--config", (d / "sys.json").string(), "--N", "100"});
  CHECK(bad.code == 0);
  CHECK(bad.out.find("N must be multiple of branch count power") != std::string::npos);
}

TEST_CASE("norm of Lebesgue") {
  const fs::path d = scratch("norm");
  write(d / "sys.json", kSystem);
  write(d / "leb.json", R"({"kind":"lebesgue","n_cells":64,"atoms":8})");
  const Result r = call({"norm", "--config", (d / "sys.json").string(), "--measure", (d / "leb.json").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["l1"].get<double>() == doctest::Approx(1.0));
  CHECK(j["var_p"].get<double>() == doctest::Approx(0.0));
  CHECK(j["pbv"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("non-convergence exits with 3 unless partial results are allowed") {
  const fs::path d = scratch("partial");
  write(d / "sys.json",
        R"({"base":{"kind":"linear_precomposed","l":2,"sigma":{"kind":"sine","delta":0.05}},"fiber":{"kind":"identity"}})");
  const std::string cfg = (d / "sys.json").string();
  CHECK(call({"--out-dir", d.string(), "invariant", "--config", cfg, "--N", "64", "--nmax", "2", "--tol", "1e-14"})
            .code == 3);
  CHECK_FALSE(fs::exists(d / "invariant.json"));
  const Result r = call({"--out-dir", d.string(), "--allow-partial", "invariant", "--config", cfg, "--N", "64",
                         "--nmax", "2", "--tol", "1e-14"});
  CHECK(r.code == 0);
  const auto meta = nlohmann::json::parse(slurp(d / "invariant.json.meta.json"));
  CHECK(meta["partial"] == true);
}

TEST_CASE("decay and sweep outputs are byte-identical across runs") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const fs::path& d : {a, b}) {
    write(d / "sys.json", kSystem);
    write(d / "family.json", R"({"members":[{"kind":"prop_bahh","j":1},{"kind":"prop_bahh","j":2}]})");
    REQUIRE(call({"--seed", "7", "--out-dir", d.string(), "decay", "--config", (d / "sys.json").string(), "--N",
                  "128", "--nmax", "30"})
                .code == 0);
    REQUIRE(call({"--seed", "7", "--out-dir", d.string(), "sweep", "--config", (d / "family.json").string(),
                  "--gamma", "3"})
                .code == 0);
  }
  for (const char* f : {"decay.csv", "decay.csv.meta.json", "sweep.csv", "sweep.csv.meta.json"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK_FALSE(slurp(a / f).empty());
  }
  const std::string csv = slurp(a / "decay.csv");
  CHECK(csv.rfind("n,norm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 32);
  const std::string sweep = slurp(a / "sweep.csv");
  CHECK(sweep.rfind("delta,distance,lower_bound,upper_bound_fit\n", 0) == 0);
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 3);
  const auto meta = nlohmann::json::parse(slurp(a / "decay.csv.meta.json"));
  CHECK(meta["seed"] == 7);
  CHECK(meta["partial"] == false);
  CHECK(meta.contains("version"));
  CHECK(meta["config"].contains("system"));
}

TEST_CASE("diophantine report") {
  const Result r = call({"diophantine", "--theta", "lacunary:4", "--depth", "100", "--dyadic", "1", "--dyadic", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["dyadic_local_exponents"][0]["exponent"] == "3");
  CHECK(j["dyadic_local_exponents"][1]["exponent"] == "3");
}
