#include <cmath>
#include <variant>

#include "doctest.h"
#include "symslocc/dicke.hpp"
#include "symslocc/equivalence.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/random.hpp"
#include "test_util.hpp"

using namespace symslocc;

namespace {

bool verified_equivalent(const EquivalenceVerdict& v, const SymmetricState& psi, const SymmetricState& phi) {
  const auto* eq = std::get_if<Equivalent>(&v);
  return eq && witness_residual(eq->witness, psi, phi) <= Tolerances{}.eps_match;
}

}  // namespace

TEST_CASE("classify canonical states") {
  CHECK(classify(make_sep(6)) == ClassTag::Separable);
  CHECK(classify(make_dicke(4, 2)) == ClassTag::Other);
  CHECK(classify(make_ghz(2)) == ClassTag::GHZ);
  CHECK(classify(make_sep(2)) == ClassTag::Separable);
  for (int n = 3; n <= 8; ++n) {
    CHECK(classify(make_w(n)) == ClassTag::W);
    CHECK(classify(make_ghz(n)) == ClassTag::GHZ);
  }
}

TEST_CASE("classification is invariant under A^(x)n") {
  Rng rng(51);
  for (int n = 3; n <= 7; ++n) {
    for (const SymmetricState& s : {make_sep(n), make_w(n), make_ghz(n), make_dicke(n, n / 2)}) {
      const ClassTag base = classify(s);
      for (int t = 0; t < 10; ++t) {
        REQUIRE(classify(apply_symmetric(random_invertible(rng), s)) == base);
      }
    }
  }
}

TEST_CASE("exact and numeric agree on constructed pairs") {
  Rng rng(505);
  for (int t = 0; t < 10; ++t) {
    const SymmetricState psi = random_symmetric_state(rng, 5);
    const SymmetricState phi = apply_symmetric(random_invertible(rng), psi);
    CHECK(verified_equivalent(check_equivalence(psi, phi, SearchMode::Exact), psi, phi));
    const EquivalenceVerdict num = check_equivalence(psi, phi, SearchMode::Numeric, {}, static_cast<std::uint64_t>(t));
    if (std::holds_alternative<Equivalent>(num)) {
      CHECK(verified_equivalent(num, psi, phi));
    } else {
      CHECK(std::holds_alternative<Undecided>(num));
    }
  }
}

TEST_CASE("W and GHZ are inequivalent") {
  for (int n = 3; n <= 8; ++n) {
    const auto v = check_equivalence(make_w(n), make_ghz(n), SearchMode::Exact);
    CHECK(std::holds_alternative<Inequivalent>(v));
  }
  const auto d = check_equivalence(make_dicke(4, 2), make_ghz(4), SearchMode::Exact);
  REQUIRE(std::holds_alternative<Inequivalent>(d));
  CHECK(std::get<Inequivalent>(d).reason.find("multiplicity pattern") != std::string::npos);
}

TEST_CASE("numeric mode never reports inequivalence") {
  Tolerances tol;
  tol.restarts = 5;
  const auto v = check_equivalence(make_w(4), make_ghz(4), SearchMode::Numeric, tol, 3);
  REQUIRE(std::holds_alternative<Undecided>(v));
  CHECK(std::get<Undecided>(v).best_residual > tol.eps_match);
}

TEST_CASE("no false negatives on images of one seed state") {
  Rng rng(9000);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 7;
    const SymmetricState psi = random_symmetric_state(rng, n);
    const SymmetricState phi = apply_symmetric(random_invertible(rng), psi);
    REQUIRE(verified_equivalent(check_equivalence(psi, phi, SearchMode::Exact), psi, phi));
  }
}

TEST_CASE("reflexive and symmetric") {
  Rng rng(17);
  for (int n = 2; n <= 8; ++n) {
    const SymmetricState s = random_symmetric_state(rng, n);
    const auto self = check_equivalence(s, s, SearchMode::Exact);
    REQUIRE(std::holds_alternative<Equivalent>(self));
    CHECK(testutil::proportional_to(std::get<Equivalent>(self).witness, LocalOp::Identity(), 1e-6));

    const SymmetricState t = apply_symmetric(random_invertible(rng), s);
    const auto fwd = check_equivalence(s, t, SearchMode::Exact);
    const auto back = check_equivalence(t, s, SearchMode::Exact);
    CHECK(fwd.index() == back.index());
  }
  for (int n = 3; n <= 6; ++n) {
    const auto a = check_equivalence(make_ghz(n), make_w(n), SearchMode::Exact);
    const auto b = check_equivalence(make_w(n), make_ghz(n), SearchMode::Exact);
    CHECK(a.index() == b.index());
  }
}

TEST_CASE("dimension mismatch") {
  CHECK_THROWS_WITH_AS(check_equivalence(make_w(3), make_w(4), SearchMode::Exact),
                       doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("polish_witness never gets worse") {
  Rng rng(44);
  const SymmetricState psi = random_symmetric_state(rng, 5);
  const LocalOp a = random_invertible(rng);
  const SymmetricState phi = apply_symmetric(a, psi);
  LocalOp near = a;
  near(0, 1) += 1e-6;
  const LocalOp p = polish_witness(near, psi, phi);
  CHECK(witness_residual(p, psi, phi) <= witness_residual(near, psi, phi));
  CHECK(witness_residual(p, psi, phi) <= 1e-8);
}
