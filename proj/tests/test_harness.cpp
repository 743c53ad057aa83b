#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "symslocc/cli.hpp"
#include "symslocc/dicke.hpp"
#include "symslocc/equivalence.hpp"
#include "symslocc/fixtures.hpp"
#include "symslocc/fuzz.hpp"
#include "symslocc/io.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/random.hpp"

using namespace symslocc;
using namespace symslocc::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "symslocc_unit";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

TEST_CASE("GHZ_3 tuple family") {
  const auto t = ghz3_symmetric_tuple(1, 1, 1, 2, 3);
  CHECK(symmetry_residual(apply_general(t, to_full(make_ghz(3)))) <= 1e-12);

  const auto eq = ghz3_symmetric_tuple(1, 1, 1, 1, 1);
  CHECK(eq[0] == eq[1]);
  CHECK(eq[1] == eq[2]);

  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    auto nz = [&] { return rng.disc() + Complex(0.1, 0.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0); };
    const auto r = ghz3_symmetric_tuple(nz(), nz(), nz(), nz(), nz());
    REQUIRE(symmetry_residual(apply_general(r, to_full(make_ghz(3)))) <= 1e-10);
  }
  CHECK_THROWS_AS(ghz3_symmetric_tuple(0, 1, 1, 1, 1), Error);
}

TEST_CASE("fixtures are valid") {
  for (ClassTag cls : {ClassTag::Separable, ClassTag::W, ClassTag::GHZ}) {
    for (int n = (cls == ClassTag::W ? 3 : 2); n <= 8; ++n) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FixtureBundle b = generate_nonsymmetric_connector(cls, n, seed);
        REQUIRE(bundle_violation(b) <= 1e-8);
        REQUIRE(b.intended_class == cls);
      }
    }
  }
  const FixtureBundle sep = generate_nonsymmetric_connector(ClassTag::Separable, 2, 9);
  CHECK(classify(sep.psi) == ClassTag::Separable);
  CHECK_THROWS_AS(generate_nonsymmetric_connector(ClassTag::W, 2, 0), Error);
  CHECK_THROWS_AS(generate_nonsymmetric_connector(ClassTag::Other, 4, 0), Error);
}

TEST_CASE("state and operator files round trip bit-exactly") {
  Rng rng(123);
  for (int t = 0; t < 50; ++t) {
    const SymmetricState s = random_symmetric_state(rng, 2 + t % 9);
    const fs::path p = scratch("state.json");
    write_state_file(p, s);
    const SymmetricState back = read_state_file(p);
    REQUIRE(back.n() == s.n());
    for (int k = 0; k <= s.n(); ++k) REQUIRE(back[k] == s[k]);

    const IloTuple ops{random_invertible(rng), random_invertible(rng), random_invertible(rng)};
    const fs::path q = scratch("ilo.json");
    write_ilo_file(q, ops);
    const IloTuple got = read_ilo_file(q);
    REQUIRE(got.size() == ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) REQUIRE(got[i] == ops[i]);
  }
}

TEST_CASE("file validation") {
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(
                      R"({"n":3,"basis":"dicke-unnormalized","coeffs":[[1,0],[0,0]]})")),
                  Error);
  CHECK_THROWS_AS(ilo_from_json(nlohmann::json::parse(R"({"ops":[[[[1,0],[1,0]],[[1,0],[1,0]]]]})")), Error);
  CHECK_THROWS_AS(read_state_file(scratch("does_not_exist.json")), Error);
}

TEST_CASE("fuzz campaign") {
  FuzzConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 4;
  cfg.trials = 5;
  const FuzzReport r = fuzz_theorem(cfg);
  CHECK(r.total_trials() == 30);
  CHECK(r.ok());
  for (const auto& c : r.cells) CHECK(c.corrupt_rejected == c.corrupt_checked);

  cfg.trials = 0;
  const FuzzReport empty = fuzz_theorem(cfg);
  CHECK(empty.total_trials() == 0);
  CHECK(empty.ok());

  cfg.trials = 4;
  cfg.threads = 1;
  const std::string one = dump(to_json(fuzz_theorem(cfg)));
  cfg.threads = 4;
  CHECK(dump(to_json(fuzz_theorem(cfg))) == one);
}

TEST_CASE("CLI subcommands") {
  const fs::path ghz = scratch("ghz3.json");
  const fs::path w = scratch("w3.json");
  write_state_file(ghz, make_ghz(3));
  write_state_file(w, make_w(3));

  std::string out;
  CHECK(cli({"classify", ghz.string()}, &out) == 0);
  CHECK(out.find("GHZ") != std::string::npos);

  CHECK(cli({"equiv", w.string(), ghz.string(), "--mode", "exact"}, &out) == 1);
  CHECK(out.find("INEQUIVALENT") != std::string::npos);

  const FixtureBundle b = generate_nonsymmetric_connector(ClassTag::GHZ, 4, 7);
  const fs::path psi = scratch("psi.json"), phi = scratch("phi.json"), tup = scratch("tuple.json");
  write_state_file(psi, b.psi);
  write_state_file(phi, b.phi);
  write_ilo_file(tup, b.tuple);
  CHECK(cli({"symmetrize", psi.string(), phi.string(), tup.string()}, &out) == 0);
  CHECK(out.find("residual") != std::string::npos);

  CHECK(cli({"classify", scratch("missing.json").string()}) == 2);
  CHECK(cli({"nonsense"}) == 2);

  const fs::path w4 = scratch("w4.json");
  write_state_file(w4, make_w(4));
  CHECK(cli({"equiv", w.string(), w4.string()}) == 2);
}

TEST_CASE("CLI reports are deterministic") {
  const fs::path r1 = scratch("r1.json"), r2 = scratch("r2.json");
  const fs::path st = scratch("haar.json");
  REQUIRE(cli({"--seed", "5", "random", "--n", "5", "--class", "haar", "-o", st.string()}) == 0);
  const int first = cli({"--seed", "5", "--report", r1.string(), "equiv", st.string(), st.string(), "--mode",
                         "numeric", "--restarts", "3"});
  const int second = cli({"--seed", "5", "--report", r2.string(), "equiv", st.string(), st.string(), "--mode",
                          "numeric", "--restarts", "3"});
  CHECK(first == second);
  CHECK(first != 2);
  CHECK(slurp(r1) == slurp(r2));
}

#ifdef SYMSLOCC_CLI_PATH
TEST_CASE("installed CLI binary runs") {
  const fs::path ghz = scratch("ghz3_bin.json");
  write_state_file(ghz, make_ghz(3));
  const std::string cmd = std::string("\"") + SYMSLOCC_CLI_PATH + "\" classify \"" + ghz.string() + "\" > " +
                          (scratch("bin_out.txt")).string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(scratch("bin_out.txt")).find("GHZ") != std::string::npos);
}
#endif
