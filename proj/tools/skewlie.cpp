// skewlie: command-line driver for reconstruction, verification, fuzzing, oracle runs and
// the function-space scenario.
//
// Exit status: 0 pass, 1 verdict failure, 2 malformed input or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skewlie/adversary.hpp"
#include "skewlie/codec.hpp"
#include "skewlie/error.hpp"
#include "skewlie/funcspace.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/oracle.hpp"
#include "skewlie/random.hpp"
#include "skewlie/reconstruct.hpp"
#include "skewlie/twolocal.hpp"

using namespace skewlie;
using codec::json;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit(const json& report, const std::string& output) {
  if (output.empty()) {
    std::cout << codec::render(report);
  } else {
    write_file(output, codec::render(report));
  }
}

SkewMatrix single_entry(const Ring& ring, std::size_t n, Rng& rng) {
  SkewMatrix delta(ring, n);
  auto [r, c] = SkewMatrix::packed_pair(n, rng.below(SkewMatrix::packed_size(n)));
  delta.set(r, c, random_nonzero_scalar(ring, rng));
  return delta;
}

// ---------------------------------------------------------------------------

struct ReconstructArgs {
  std::string ring;
  std::size_t n = 0;
  std::string input;
  std::string output;
};

int run_reconstruct(const ReconstructArgs& args) {
  const Ring& ring = codec::ring_from_text(args.ring);
  BasisImageTable table = codec::decode_table(ring, codec::parse_document(read_file(args.input)));
  if (table.dim() != args.n) {
    throw SchemaError("table has n = " + std::to_string(table.dim()) + " but --n is " + std::to_string(args.n));
  }
  if (args.n == 3) std::cerr << "warning: n = 3 is outside the theorem hypothesis (n > 3); exploratory run\n";
  ReconstructionReport report = assemble_generator(table);
  write_file(args.output, codec::render(codec::encode(report)));
  std::cout << "reconstruct " << ring.name() << " n=" << args.n << ": "
            << (report.succeeded() ? "generator found" : "no generator") << " (" << report.conflicts.size()
            << " conflicts, " << report.residuals.size() << " residuals)\n";
  return report.succeeded() ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string ring;
  std::size_t n = 0;
  std::string model;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int run_verify(const VerifyArgs& args) {
  const Ring& ring = codec::ring_from_text(args.ring);
  TwoLocalModel model = codec::decode_model(ring, args.n, codec::parse_document(read_file(args.model)));
  if (args.budget == 0) std::cerr << "warning: budget 0 samples nothing; the pass is vacuous\n";
  if (args.n == 3) std::cerr << "warning: n = 3 is outside the theorem hypothesis (n > 3); exploratory run\n";

  BasisImageTable table = [&] {
    try {
      return BasisImageTable::from_map(ring, args.n, [&](const SkewMatrix& x) { return model(x); });
    } catch (const PreconditionViolated&) {
      throw SchemaError("tabulated model must list every s_{i,j}");
    }
  }();
  ReconstructionReport rec = assemble_generator(table);

  json two_local = nullptr;
  bool two_local_ok = true;
  if (ring.supports_solving()) {
    TwoLocalReport r = check_two_local(model, args.budget, args.seed);
    two_local_ok = r.passed();
    two_local = codec::encode(r);
  } else {
    std::cerr << "note: " << ring.name() << " does not support solving; pair check skipped\n";
  }

  json globality = nullptr;
  bool globality_ok = false;
  if (rec.generator) {
    GlobalityReport g = verify_globality(model, *rec.generator, args.budget, args.seed);
    globality_ok = g.passed();
    globality = codec::encode(g);
  }

  const bool passed = rec.succeeded() && two_local_ok && globality_ok;
  json report{{"command", "verify"},
              {"ring", codec::encode(ring)},
              {"n", args.n},
              {"budget", args.budget},
              {"seed", args.seed},
              {"vacuous", args.budget == 0},
              {"outside_theorem_hypothesis", args.n < 4},
              {"reconstruction", codec::encode(rec)},
              {"two_local", two_local},
              {"globality", globality},
              {"passed", passed}};
  emit(report, args.output);
  if (!args.output.empty()) {
    std::cout << "verify " << ring.name() << " n=" << args.n << ": " << (passed ? "pass" : "FAIL") << "\n";
  }
  return passed ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

struct FuzzArgs {
  std::string ring;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string adversary;
  std::size_t budget = 32;
  std::string output;
};

struct FuzzTrial {
  bool detected = false;
  bool pair_route = false;
};

FuzzTrial fuzz_trial(const FuzzArgs& args, const Ring& ring, std::uint64_t t) {
  const std::size_t n = args.n;
  Rng rng = Rng::derive(args.seed, t);
  const SkewMatrix a = random_skew(ring, n, rng);
  const TwoLocalModel model = TwoLocalModel::inner(a);
  FuzzTrial out;

  if (args.adversary == "tamper-basis") {
    auto [i, j] = SkewMatrix::packed_pair(n, rng.below(SkewMatrix::packed_size(n)));
    TwoLocalModel tampered = tamper_basis(model, i, j, single_entry(ring, n, rng));
    BasisImageTable table = BasisImageTable::from_map(ring, n, [&](const SkewMatrix& x) { return tampered(x); });
    out.detected = !assemble_generator(table, Exec::serial).succeeded();
    return out;
  }

  if (args.adversary == "tamper-point") {
    const SkewMatrix x0 = random_skew(ring, n, rng);
    TwoLocalModel tampered = tamper_point(model, x0, single_entry(ring, n, rng));
    BasisImageTable table = BasisImageTable::from_map(ring, n, [&](const SkewMatrix& x) { return tampered(x); });
    ReconstructionReport rec = assemble_generator(table, Exec::serial);
    if (!rec.succeeded()) {
      out.detected = out.pair_route = true;
      return out;
    }
    std::vector<SkewMatrix> probes{x0};
    for (std::size_t k = 0; k < args.budget; ++k) probes.push_back(random_probe(ring, n, rng));
    out.detected = !verify_globality_at(tampered, *rec.generator, probes, Exec::serial).passed();
    if (ring.supports_solving()) {
      const SkewMatrix dx0 = tampered(x0);
      for (std::size_t k = 0; k < SkewMatrix::packed_size(n) && !out.pair_route; ++k) {
        auto [i, j] = SkewMatrix::packed_pair(n, k);
        const SkewMatrix s = s_unit(ring, n, i, j);
        out.pair_route = !find_pair_witness(s, tampered(s), x0, dx0).has_value();
      }
    }
    return out;
  }

  // permute-witness: every pooled witness differs from the true generator.
  std::vector<SkewMatrix> pool;
  while (pool.size() < 3) {
    SkewMatrix c = random_skew(ring, n, rng);
    if (!c.is_zero()) pool.push_back(a + c);
  }
  TwoLocalModel tampered = permute_witness(model, std::move(pool));
  out.detected = !cross_check_witnesses(tampered, args.budget, rng.next(), Exec::serial).passed();
  return out;
}

int run_fuzz(const FuzzArgs& args) {
  const Ring& ring = codec::ring_from_text(args.ring);
  if (args.n < 3) throw DimensionMismatch("fuzz needs n >= 3");
  const bool exploratory = args.n < 4;
  if (exploratory) std::cerr << "warning: n = 3 is outside the theorem hypothesis (n > 3); exploratory run\n";

  std::vector<FuzzTrial> results(args.trials);
  parallel_for(args.trials, Exec::parallel, [&](std::size_t t) { results[t] = fuzz_trial(args, ring, t); });

  std::size_t detected = 0;
  std::size_t pair_detected = 0;
  json undetected = json::array();
  for (std::size_t t = 0; t < results.size(); ++t) {
    if (results[t].detected) {
      ++detected;
    } else {
      undetected.push_back(t);
    }
    if (results[t].pair_route) ++pair_detected;
  }
  json report{{"command", "fuzz"},
              {"ring", codec::encode(ring)},
              {"n", args.n},
              {"seed", args.seed},
              {"adversary", args.adversary},
              {"trials", args.trials},
              {"budget", args.budget},
              {"outside_theorem_hypothesis", exploratory},
              {"detected", detected},
              {"detection_rate", args.trials ? json(static_cast<double>(detected) / args.trials) : json(nullptr)},
              {"undetected_trials", undetected}};
  if (args.adversary == "tamper-point") {
    report["pair_route"] = ring.supports_solving() ? json{{"detected", pair_detected}} : json(nullptr);
  }
  emit(report, args.output);
  std::cout << "fuzz " << args.adversary << " " << ring.name() << " n=" << args.n << ": detected " << detected << "/"
            << args.trials << (exploratory ? " (exploratory)" : "") << "\n";
  if (exploratory) return exit_pass;
  return detected == args.trials ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::size_t n = 0;
  std::uint64_t p = 0;
  std::optional<std::uint64_t> cap;
  std::string output = "oracle_results.json";
};

std::uint64_t resolve_cap(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SKEWLIE_CAP")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const unsigned long long cap = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return cap;
    } catch (const std::exception&) {
      throw SchemaError(std::string("SKEWLIE_CAP is not a non-negative integer: ") + env);
    }
  }
  return default_oracle_cap;
}

int run_oracle(const OracleArgs& args) {
  const std::uint64_t cap = resolve_cap(args.cap);
  OracleResults results = run_oracle_suites(args.n, args.p, cap);
  write_file(args.output, codec::render(codec::encode(results)));
  bool all = true;
  for (const auto& [descriptor, v] : results) {
    std::cout << (v.verdict ? "true  " : "FALSE ") << descriptor << " (" << v.checked << " checked)\n";
    all = all && v.verdict;
  }
  return all ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

struct FuncspaceArgs {
  std::size_t omega = 0;
  std::size_t m = 0;
  std::string base;
  std::string subalgebra;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t budget = 16;
  bool tamper = false;
  std::string output;
};

struct FuncspaceTrial {
  bool passed = false;
  std::optional<SkewMatrix> generator;
  std::optional<BasisImageTable> table;
};

FuncspaceTrial funcspace_trial(const FuncspaceArgs& args, const SpatialSetting& setting,
                               const SubalgebraSpec& subalgebra, std::uint64_t t) {
  const Ring& ambient = setting.ambient();
  const std::size_t m = setting.m();
  Rng rng = Rng::derive(args.seed, t);
  const SkewMatrix a = random_skew(ambient, m, rng);
  TwoLocalModel model = spatial_model(setting, subalgebra, a);
  const SkewMatrix x0 = subalgebra.sample(rng);
  if (args.tamper) model = tamper_point(model, x0, single_entry(ambient, m, rng));

  FuncspaceTrial out;
  out.table = BasisImageTable::from_map(ambient, m, [&](const SkewMatrix& x) { return model(x); });
  ReconstructionReport rec = reconstruct_spatial(setting, subalgebra, *out.table, Exec::serial);
  if (!rec.generator) return out;
  out.generator = rec.generator;
  bool ok = args.tamper || *rec.generator == a;
  ok = ok && reconstruct_per_omega(setting, *out.table, Exec::serial) == rec.generator;

  std::vector<SkewMatrix> probes{x0};
  for (std::size_t k = 0; k < args.budget; ++k) probes.push_back(subalgebra.sample(rng));
  ok = ok && verify_spatial_at(setting, subalgebra, model, *rec.generator, probes, Exec::serial).passed();

  // Projection identities for a b agreeing with a on s_{i,j}.
  auto [i, j] = SkewMatrix::packed_pair(m, rng.below(SkewMatrix::packed_size(m)));
  SkewMatrix b = a + random_scalar(ambient, rng) * s_unit(ambient, m, i, j);
  for (std::size_t p = 1; p <= m; ++p) {
    for (std::size_t q = p + 1; q <= m; ++q) {
      if (p != i && p != j && q != i && q != j) b.set(p, q, random_scalar(ambient, rng));
    }
  }
  ok = ok && lemma_3_2_check(setting, a, b, i, j);
  out.passed = ok;
  return out;
}

int run_funcspace(const FuncspaceArgs& args) {
  const Ring& base = codec::ring_from_text(args.base);
  SpatialSetting setting(args.omega, args.m, base);
  if (setting.exploratory()) std::cerr << "warning: m = 3 is outside the theorem hypothesis; exploratory run\n";
  SubalgebraSpec subalgebra =
      args.subalgebra == "full" ? SubalgebraSpec::full(setting) : SubalgebraSpec::constant_maps(setting);

  std::vector<FuncspaceTrial> results(args.trials);
  parallel_for(args.trials, Exec::parallel,
               [&](std::size_t t) { results[t] = funcspace_trial(args, setting, subalgebra, t); });

  json failures = json::array();
  for (std::size_t t = 0; t < results.size(); ++t) {
    if (!results[t].passed) failures.push_back(t);
  }
  json sample = nullptr;
  if (!results.empty()) {
    json per_omega = json::array();
    for (std::size_t w = 0; w < setting.omega_size(); ++w) {
      json entry{{"omega", w}, {"table", codec::encode(project_table(*results[0].table, w))}};
      entry["generator"] = results[0].generator ? codec::encode(project_omega(*results[0].generator, w)) : json(nullptr);
      per_omega.push_back(entry);
    }
    sample = json{{"trial", 0},
                  {"generator", results[0].generator ? codec::encode(*results[0].generator) : json(nullptr)},
                  {"per_omega", per_omega}};
  }
  const bool passed = failures.empty();
  json report{{"command", "funcspace"},
              {"setting", codec::encode(setting)},
              {"subalgebra", args.subalgebra},
              {"seed", args.seed},
              {"trials", args.trials},
              {"budget", args.budget},
              {"tamper", args.tamper},
              {"exploratory", setting.exploratory()},
              {"failed_trials", failures},
              {"passed", passed},
              {"sample", sample}};
  emit(report, args.output);
  std::cout << "funcspace omega=" << args.omega << " m=" << args.m << " " << base.name() << " " << args.subalgebra
            << ": " << (results.size() - failures.size()) << "/" << results.size() << " trials passed\n";
  return passed ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reconstruction and verification of 2-local inner derivations on K_n(R)"};
  app.require_subcommand(1);

  ReconstructArgs rec;
  auto* cmd_rec = app.add_subcommand("reconstruct", "Rebuild the generator from a basis image table");
  cmd_rec->add_option("--ring", rec.ring, "Ring descriptor (compact text or JSON)")->required();
  cmd_rec->add_option("--n", rec.n, "Matrix dimension")->required();
  cmd_rec->add_option("--input", rec.input, "Basis image table JSON")->required();
  cmd_rec->add_option("--output", rec.output, "Report JSON path")->required();

  VerifyArgs ver;
  auto* cmd_ver = app.add_subcommand("verify", "Reconstruct, then check 2-locality and globality of a model");
  cmd_ver->add_option("--ring", ver.ring, "Ring descriptor")->required();
  cmd_ver->add_option("--n", ver.n, "Matrix dimension")->required();
  cmd_ver->add_option("--model", ver.model, "Model JSON (tabulated or inner)")->required();
  cmd_ver->add_option("--budget", ver.budget, "Sampled pairs/inputs; 0 is a vacuous pass")->required();
  cmd_ver->add_option("--seed", ver.seed, "64-bit seed")->required();
  cmd_ver->add_option("--output", ver.output, "Report JSON path (default: standard output)");

  FuzzArgs fuzz;
  auto* cmd_fuzz = app.add_subcommand("fuzz", "Detection statistics against seeded adversaries");
  cmd_fuzz->add_option("--ring", fuzz.ring, "Ring descriptor")->required();
  cmd_fuzz->add_option("--n", fuzz.n, "Matrix dimension (>= 3)")->required();
  cmd_fuzz->add_option("--trials", fuzz.trials, "Number of trials")->required();
  cmd_fuzz->add_option("--seed", fuzz.seed, "64-bit seed")->required();
  cmd_fuzz->add_option("--adversary", fuzz.adversary, "Adversary")
      ->required()
      ->check(CLI::IsMember({"tamper-point", "tamper-basis", "permute-witness"}));
  cmd_fuzz->add_option("--budget", fuzz.budget, "Probes per trial for the sampled checks")->capture_default_str();
  cmd_fuzz->add_option("--output", fuzz.output, "Report JSON path (default: standard output)");

  OracleArgs ora;
  auto* cmd_ora = app.add_subcommand("oracle", "Exhaustive scans over K_n(GF(p))");
  cmd_ora->add_option("--n", ora.n, "Matrix dimension")->required();
  cmd_ora->add_option("--p", ora.p, "Odd prime")->required();
  cmd_ora->add_option("--cap", ora.cap, "Largest allowed scan (default: SKEWLIE_CAP, else 10^7)");
  cmd_ora->add_option("--output", ora.output, "Results file")->capture_default_str();

  FuncspaceArgs fs;
  auto* cmd_fs = app.add_subcommand("funcspace", "Spatial reconstruction over maps from a finite set");
  cmd_fs->add_option("--omega", fs.omega, "Size of the finite set")->required();
  cmd_fs->add_option("--m", fs.m, "Matrix dimension (>= 3)")->required();
  cmd_fs->add_option("--base", fs.base, "Base field descriptor")->required();
  cmd_fs->add_option("--subalgebra", fs.subalgebra, "Subalgebra")
      ->required()
      ->check(CLI::IsMember({"full", "constant"}));
  cmd_fs->add_option("--seed", fs.seed, "64-bit seed")->required();
  cmd_fs->add_option("--trials", fs.trials, "Number of trials")->required();
  cmd_fs->add_option("--budget", fs.budget, "Sampled inputs per trial")->capture_default_str();
  cmd_fs->add_flag("--tamper", fs.tamper, "Tamper the map at one sampled subalgebra point");
  cmd_fs->add_option("--output", fs.output, "Report JSON path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_pass : exit_input;
  }

  try {
    if (cmd_rec->parsed()) return run_reconstruct(rec);
    if (cmd_ver->parsed()) return run_verify(ver);
    if (cmd_fuzz->parsed()) return run_fuzz(fuzz);
    if (cmd_ora->parsed()) return run_oracle(ora);
    if (cmd_fs->parsed()) return run_funcspace(fs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
