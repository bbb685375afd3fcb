#include "doctest.h"
#include "skewlie/codec.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/random.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace skewlie;
using codec::json;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("skewlie_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(SKEWLIE_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(const std::string& path, const json& j) { std::ofstream(path) << codec::render(j); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("reconstruct: round trip, incomplete table, tampered table") {
    Scratch tmp;
    const Ring& f = Ring::prime_field(5);
    Rng rng(131);
    const SkewMatrix a = random_skew(f, 4, rng);
    BasisImageTable table = BasisImageTable::forward(a);
    write(tmp.path("table.json"), codec::encode(table));
    CHECK(run("reconstruct --ring gf5 --n 4 --input " + tmp.path("table.json") + " --output " + tmp.path("r.json")) == 0);
    json report = load(tmp.path("r.json"));
    CHECK(codec::decode_skew(f, report["generator"]) == a);

    json partial = codec::encode(table);
    partial["images"].erase(partial["images"].begin() + 2);
    write(tmp.path("partial.json"), partial);
    CHECK(run("reconstruct --ring gf5 --n 4 --input " + tmp.path("partial.json") + " --output " + tmp.path("p.json")) ==
          2);

    table.set(1, 2, table.at(1, 2) + s_unit(f, 4, 3, 4));
    write(tmp.path("bad.json"), codec::encode(table));
    CHECK(run("reconstruct --ring gf5 --n 4 --input " + tmp.path("bad.json") + " --output " + tmp.path("b.json")) == 1);
    json bad = load(tmp.path("b.json"));
    CHECK(bad["generator"].is_null());
    CHECK(bad["conflicts"].size() + bad["residuals"].size() > 0);

    CHECK(run("reconstruct --ring gf5 --n 5 --input " + tmp.path("table.json") + " --output " + tmp.path("x.json")) == 2);
    CHECK(run("reconstruct --ring gf4 --n 4 --input " + tmp.path("table.json") + " --output " + tmp.path("x.json")) == 2);
    CHECK(run("reconstruct --ring gf5 --n 4 --input " + tmp.path("missing.json") + " --output " + tmp.path("x.json")) == 2);
  }

  TEST_CASE("verify: inner, tampered tabulated, vacuous budget") {
    Scratch tmp;
    const Ring& f = Ring::prime_field(3);
    Rng rng(132);
    const SkewMatrix a = random_skew(f, 4, rng);
    write(tmp.path("inner.json"), codec::encode_model(TwoLocalModel::inner(a)));
    CHECK(run("verify --ring gf3 --n 4 --model " + tmp.path("inner.json") + " --budget 20 --seed 1 --output " +
              tmp.path("v.json")) == 0);
    json v = load(tmp.path("v.json"));
    CHECK(v["passed"] == true);
    CHECK(v["two_local"]["pairs_checked"] == 20);

    std::vector<std::pair<SkewMatrix, SkewMatrix>> entries;
    for (std::size_t k = 0; k < 6; ++k) {
      auto [i, j] = SkewMatrix::packed_pair(4, k);
      SkewMatrix s = s_unit(f, 4, i, j);
      entries.emplace_back(s, apply_lie_derivation(a, s));
    }
    const SkewMatrix x0 = s_unit(f, 4, 1, 3) + s_unit(f, 4, 2, 4);
    entries.emplace_back(x0, apply_lie_derivation(a, x0) + s_unit(f, 4, 1, 2));
    write(tmp.path("tab.json"), codec::encode_model(TwoLocalModel::tabulated(f, 4, entries)));
    CHECK(run("verify --ring gf3 --n 4 --model " + tmp.path("tab.json") + " --budget 5 --seed 1 --output " +
              tmp.path("t.json")) == 1);
    json t = load(tmp.path("t.json"));
    CHECK(t["globality"]["violations"].size() == 1);
    CHECK(t["two_local"]["failures"].size() > 0);

    CHECK(run("verify --ring gf3 --n 4 --model " + tmp.path("inner.json") + " --budget 0 --seed 1 --output " +
              tmp.path("z.json")) == 0);
    CHECK(load(tmp.path("z.json"))["vacuous"] == true);

    entries.pop_back();
    entries.erase(entries.begin());
    write(tmp.path("nobasis.json"), codec::encode_model(TwoLocalModel::tabulated(f, 4, entries)));
    CHECK(run("verify --ring gf3 --n 4 --model " + tmp.path("nobasis.json") + " --budget 5 --seed 1") == 2);
  }

  TEST_CASE("fuzz: detection, empty runs, exploratory flag, unknown adversary, determinism") {
    Scratch tmp;
    CHECK(run("fuzz --ring gf3 --n 4 --trials 100 --seed 7 --adversary tamper-basis --output " + tmp.path("f.json")) ==
          0);
    json f = load(tmp.path("f.json"));
    CHECK(f["detected"] == 100);
    CHECK(f["outside_theorem_hypothesis"] == false);

    CHECK(run("fuzz --ring gf3 --n 4 --trials 100 --seed 7 --adversary tamper-basis --output " + tmp.path("g.json")) ==
          0);
    CHECK(slurp(tmp.path("f.json")) == slurp(tmp.path("g.json")));

    CHECK(run("fuzz --ring q --n 5 --trials 20 --seed 8 --adversary tamper-point --output " + tmp.path("p.json")) == 0);
    CHECK(load(tmp.path("p.json"))["pair_route"]["detected"] == 20);
    CHECK(run("fuzz --ring q[t] --n 4 --trials 10 --seed 8 --adversary tamper-point --output " + tmp.path("pp.json")) ==
          0);
    CHECK(load(tmp.path("pp.json"))["pair_route"].is_null());
    CHECK(run("fuzz --ring gf5^2 --n 4 --trials 20 --seed 9 --adversary permute-witness --output " +
              tmp.path("w.json")) == 0);

    CHECK(run("fuzz --ring gf3 --n 4 --trials 0 --seed 7 --adversary tamper-basis --output " + tmp.path("e.json")) == 0);
    json e = load(tmp.path("e.json"));
    CHECK(e["detected"] == 0);
    CHECK(e["detection_rate"].is_null());

    CHECK(run("fuzz --ring gf3 --n 3 --trials 20 --seed 7 --adversary tamper-basis --output " + tmp.path("3.json")) ==
          0);
    CHECK(load(tmp.path("3.json"))["outside_theorem_hypothesis"] == true);

    CHECK(run("fuzz --ring gf3 --n 4 --trials 5 --seed 7 --adversary bribe") != 0);
    CHECK(run("fuzz --ring gf3 --n 2 --trials 5 --seed 7 --adversary tamper-basis") == 2);
  }

  TEST_CASE("oracle: verdict files, the abelian case, and the cap") {
    Scratch tmp;
    CHECK(run("oracle --n 4 --p 3 --output " + tmp.path("o.json")) == 0);
    json o = load(tmp.path("o.json"));
    for (const auto& [key, v] : o.items()) CHECK_MESSAGE(v["verdict"] == true, key);
    CHECK(o.contains("extraction_identity(n=4,p=3)"));

    CHECK(run("oracle --n 2 --p 3 --output " + tmp.path("two.json")) == 0);
    CHECK(load(tmp.path("two.json"))["bracket_vanishes(n=2,p=3)"]["verdict"] == true);

    CHECK(run("oracle --n 5 --p 3 --cap 10 --output " + tmp.path("cap.json")) != 0);
    CHECK(run("oracle --n 5 --p 3 --output " + tmp.path("cap.json"), "SKEWLIE_CAP=10") != 0);
    CHECK(run("oracle --n 3 --p 3 --cap 100 --output " + tmp.path("flag.json"), "SKEWLIE_CAP=10") == 0);
  }

  TEST_CASE("funcspace: pass, tamper, rejected m, omega = 1 against reconstruct") {
    Scratch tmp;
    CHECK(run("funcspace --omega 3 --m 4 --base gf3 --subalgebra constant --seed 5 --trials 10 --output " +
              tmp.path("c.json")) == 0);
    CHECK(load(tmp.path("c.json"))["passed"] == true);
    CHECK(run("funcspace --omega 3 --m 4 --base gf3 --subalgebra constant --seed 5 --trials 10 --output " +
              tmp.path("c2.json")) == 0);
    CHECK(slurp(tmp.path("c.json")) == slurp(tmp.path("c2.json")));

    CHECK(run("funcspace --omega 3 --m 4 --base gf3 --subalgebra constant --seed 5 --trials 10 --tamper --output " +
              tmp.path("t.json")) == 1);
    CHECK(load(tmp.path("t.json"))["failed_trials"].size() == 10);

    CHECK(run("funcspace --omega 2 --m 2 --base q --subalgebra full --seed 5 --trials 2") == 2);
    CHECK(run("funcspace --omega 2 --m 3 --base q --subalgebra full --seed 5 --trials 2 --output " + tmp.path("m3.json")) ==
          0);
    CHECK(load(tmp.path("m3.json"))["exploratory"] == true);

    CHECK(run("funcspace --omega 1 --m 4 --base gf5 --subalgebra full --seed 6 --trials 1 --output " +
              tmp.path("one.json")) == 0);
    json one = load(tmp.path("one.json"))["sample"]["per_omega"][0];
    write(tmp.path("one_table.json"), one["table"]);
    CHECK(run("reconstruct --ring gf5 --n 4 --input " + tmp.path("one_table.json") + " --output " +
              tmp.path("one_rec.json")) == 0);
    CHECK(load(tmp.path("one_rec.json"))["generator"] == one["generator"]);
  }
}
