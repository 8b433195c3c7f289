// Copyright 2026 The Shapeholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the shapeholo executable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = SHAPEHOLO_CLI_PATH;
const fs::path kConfigs = SHAPEHOLO_CONFIG_DIR;

struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() / ("shapeholo_cli_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() { fs::remove_all(root); }
};

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const Scratch& s, const std::string& args, const std::string& env = "") {
  const fs::path out = s.root / "stdout.txt", err = s.root / "stderr.txt";
  const std::string cmd = env + " '" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const Scratch& s, const std::string& name, const std::string& text) {
  const fs::path p = s.root / name;
  std::ofstream(p) << text;
  return p;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Checks the manifest against the directory and returns the listed files.
std::set<std::string> check_manifest(const fs::path& dir) {
  const json m = json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("artifact") == "shapeholo");
  CHECK(m.contains("config"));
  CHECK(m.contains("timings"));
  std::set<std::string> listed;
  for (const auto& o : m.at("outputs")) {
    const std::string name = o.at("file");
    const std::string bytes = slurp(dir / name);
    CHECK(o.at("bytes").get<std::size_t>() == bytes.size());
    CHECK(o.at("fnv1a64").get<std::string>() == fnv1a64(bytes));
    listed.insert(name);
  }
  std::set<std::string> present;
  for (const auto& e : fs::directory_iterator(dir)) present.insert(e.path().filename().string());
  present.erase("manifest.json");
  CHECK(present == listed);
  return listed;
}

bool same_outputs(const fs::path& a, const fs::path& b) {
  const auto la = check_manifest(a), lb = check_manifest(b);
  if (la != lb) return false;
  for (const auto& f : la)
    if (slurp(a / f) != slurp(b / f)) return false;
  json ma = json::parse(slurp(a / "manifest.json")), mb = json::parse(slurp(b / "manifest.json"));
  ma.erase("timings");
  mb.erase("timings");
  return ma == mb;
}

std::string cfg(const std::string& name) { return "'" + (kConfigs / name).string() + "'"; }

}  // namespace

TEST_CASE("version and usage") {
  Scratch s;
  const auto v = run(s, "--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("shapeholo 1.0.0") != std::string::npos);
  CHECK(run(s, "").code == 2);
  CHECK(run(s, "frobnicate").code == 2);
  CHECK(run(s, "run").code == 2);
  CHECK(run(s, "run " + cfg("gate_pi2.json") + " --threads nope").code == 2);
}

TEST_CASE("every example config runs with a consistent manifest") {
  Scratch s;
  const std::map<std::string, std::set<std::string>> expected{
      {"gate_pi2.json", {"gate.json"}},
      {"gate_hadamard.json", {"gate.json"}},
      {"gate_cnot.json", {"gate.json"}},
      {"trace_sweep.json", {"trace_sweep.csv"}},
      {"trimer_reference.json", {"trimer.csv", "trimer_summary.json"}},
      {"phase_sweep.json", {"phase_sweep.csv"}},
      {"linking_hopf.json", {"linking.json"}},
      {"demo_budget.json", {"budget.json", "drive_loop.csv"}},
      {"ramsey.json", {"ramsey.json", "fringe.csv"}},
  };
  for (const auto& [name, files] : expected) {
    CAPTURE(name);
    const fs::path out = s.root / name;
    const auto r = run(s, "run " + cfg(name) + " --out '" + out.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("ok:") == 0);
    CHECK(check_manifest(out) == files);
  }

  const json gate = json::parse(slurp(s.root / "gate_pi2.json" / "gate.json"));
  CHECK(gate.at("fidelity").get<double>() > 1.0 - 1e-3);
  CHECK(gate.at("matrix").size() == 4);
  const json had = json::parse(slurp(s.root / "gate_hadamard.json" / "gate.json"));
  CHECK(had.at("fidelity").get<double>() > 0.98);
  const json cnot = json::parse(slurp(s.root / "gate_cnot.json" / "gate.json"));
  CHECK(cnot.at("dim") == 4);
  CHECK(cnot.at("fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  const std::string trimer = slurp(s.root / "trimer_reference.json" / "trimer.csv");
  CHECK(trimer.rfind("t,xi12,xi13,xi23,theta,L_eff\n", 0) == 0);
  const json summary = json::parse(slurp(s.root / "trimer_reference.json" / "trimer_summary.json"));
  CHECK(summary.at("late_fit").at("r2").get<double>() > 0.99);

  const json link = json::parse(slurp(s.root / "linking_hopf.json" / "linking.json"));
  CHECK(link.dump().find("3.14159") != std::string::npos);

  // Floats round-trip: every CSV number has at most 17 significant digits
  // and parses back to itself.
  std::istringstream sweep(slurp(s.root / "phase_sweep.json" / "phase_sweep.csv"));
  std::string line;
  std::getline(sweep, line);
  int rows = 0;
  while (std::getline(sweep, line)) {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", std::strtod(cell.c_str(), nullptr));
      CHECK(std::string(buf) == cell);
    }
    ++rows;
  }
  CHECK(rows == 33);
}

TEST_CASE("determinism") {
  Scratch s;
  const fs::path a = s.root / "a", b = s.root / "b", c = s.root / "c";
  REQUIRE(run(s, "run " + cfg("trace_sweep.json") + " --out '" + a.string() + "'").code == 0);
  REQUIRE(run(s, "run " + cfg("trace_sweep.json") + " --out '" + b.string() + "'").code == 0);
  CHECK(same_outputs(a, b));
  REQUIRE(run(s, "run " + cfg("trace_sweep.json") + " --seed 8 --out '" + c.string() + "'").code == 0);
  CHECK(slurp(a / "trace_sweep.csv") != slurp(c / "trace_sweep.csv"));
  CHECK(json::parse(slurp(c / "manifest.json")).at("seed") == 8);

  const fs::path p1 = s.root / "p1", p4 = s.root / "p4";
  REQUIRE(run(s, "run " + cfg("phase_sweep.json") + " --threads 1 --out '" + p1.string() + "'").code == 0);
  REQUIRE(run(s, "run " + cfg("phase_sweep.json") + " --threads 4 --out '" + p4.string() + "'").code == 0);
  CHECK(slurp(p1 / "phase_sweep.csv") == slurp(p4 / "phase_sweep.csv"));

  const fs::path d1 = s.root / "d1", d2 = s.root / "d2";
  REQUIRE(run(s, "run " + cfg("demo_budget.json") + " --out '" + d1.string() + "'").code == 0);
  REQUIRE(run(s, "run " + cfg("demo_budget.json") + " --out '" + d2.string() + "'").code == 0);
  CHECK(same_outputs(d1, d2));
}

TEST_CASE("failures exit with the documented codes and write nothing") {
  Scratch s;
  const fs::path out = s.root / "never";
  const std::string to = " --out '" + out.string() + "'";
  const std::map<std::string, std::string> invalid{
      {"malformed.json", "{\"schema_version\": 1, \"scenario\": "},
      {"schema.json", R"({"schema_version": 2, "scenario": "ramsey"})"},
      {"scenario.json", R"({"schema_version": 1, "scenario": "teleport"})"},
      {"unknown_key.json", R"({"schema_version": 1, "scenario": "ramsey", "params": {"qq": 3}})"},
      {"wrong_type.json", R"({"schema_version": 1, "scenario": "ramsey", "params": {"q": "big"}})"},
      {"epsilon.json", R"({"schema_version": 1, "scenario": "demo-budget", "params": {"epsilon": 0.9}})"},
      {"missing_curve.json",
       R"({"schema_version": 1, "scenario": "linking", "params": {"curves": ["nope_a.csv", "nope_b.csv"]}})"},
  };
  for (const auto& [name, text] : invalid) {
    CAPTURE(name);
    const auto r = run(s, "run '" + write_config(s, name, text).string() + "'" + to);
    CHECK(r.code == 2);
    CHECK(r.err.find("shapeholo: ") == 0);
    CHECK_FALSE(fs::exists(out));
  }
  CHECK(run(s, "run '" + (s.root / "absent.json").string() + "'" + to).code == 2);

  const std::map<std::string, std::string> numerical{
      {"dyson.json", R"({"schema_version": 1, "scenario": "trace-sweep", "params": {"psi_values": [3.0], "steps": 1024}})"},
      {"coarse.json",
       R"({"schema_version": 1, "scenario": "linking", "params": {"hopf": {"r1": 1.0, "r2": 0.1, "samples": 16}}})"},
  };
  for (const auto& [name, text] : numerical) {
    CAPTURE(name);
    const auto r = run(s, "run '" + write_config(s, name, text).string() + "'" + to);
    CHECK(r.code == 3);
    CHECK(r.err.find("numerical") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
  }
  // No staging leftovers next to the target.
  for (const auto& e : fs::directory_iterator(s.root))
    CHECK(e.path().filename().string().find(".staging") == std::string::npos);
}

TEST_CASE("validate never writes") {
  Scratch s;
  const fs::path target = s.root / "validate_target";
  const std::string text = R"({"schema_version": 1, "scenario": "demo-budget", "output_dir": ")" + target.string() +
                           R"(", "params": {}})";
  const auto ok = run(s, "validate '" + write_config(s, "ok.json", text).string() + "'");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("pass") != std::string::npos);
  CHECK(ok.out.find("window ratios") != std::string::npos);
  CHECK_FALSE(fs::exists(target));

  const auto eps = run(s, "validate '" +
                               write_config(s, "eps.json",
                                            R"({"schema_version": 1, "scenario": "demo-budget", "params": {"epsilon": 0.9}})")
                                   .string() +
                               "'");
  CHECK(eps.code == 2);
  CHECK(eps.err.find("epsilon") != std::string::npos);

  const auto gap = run(s, "validate '" +
                              write_config(s, "gap.json",
                                           R"({"schema_version": 1, "scenario": "demo-budget",
                                               "params": {"E_A": 2e7, "E_E1": 3e7, "E_E2": 1e6}})")
                                  .string() +
                              "'");
  CHECK(gap.code == 2);
  CHECK(gap.err.find("delta_E exceeds Delta_gap") != std::string::npos);

  for (const auto& name : {"gate_pi2.json", "trimer_reference.json", "phase_sweep.json", "linking_hopf.json"})
    CHECK(run(s, "validate " + cfg(name)).code == 0);
  for (const auto& e : fs::directory_iterator(s.root)) CHECK_FALSE(e.is_directory());
}

TEST_CASE("output directory precedence") {
  Scratch s;
  const std::string plain = R"({"schema_version": 1, "scenario": "linking", "params": {"hopf": {"samples": 128}}})";
  const fs::path env_dir = s.root / "from_env", flag_dir = s.root / "from_flag", cfg_dir = s.root / "from_config";
  const std::string env = "SHAPEHOLO_OUT_DIR='" + env_dir.string() + "'";

  const fs::path p = write_config(s, "plain.json", plain);
  CHECK(run(s, "run '" + p.string() + "'", env).code == 0);
  CHECK(fs::exists(env_dir / "manifest.json"));

  CHECK(run(s, "run '" + p.string() + "' --out '" + flag_dir.string() + "'", env).code == 0);
  CHECK(fs::exists(flag_dir / "linking.json"));

  const std::string with_dir = R"({"schema_version": 1, "scenario": "linking", "output_dir": ")" + cfg_dir.string() +
                               R"(", "params": {"hopf": {"samples": 128}}})";
  CHECK(run(s, "run '" + write_config(s, "dir.json", with_dir).string() + "'", env).code == 0);
  CHECK(fs::exists(cfg_dir / "linking.json"));

  // Rerunning into an existing directory replaces its outputs.
  CHECK(run(s, "run '" + p.string() + "'", env).code == 0);
  check_manifest(env_dir);
}
