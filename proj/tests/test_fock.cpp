#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncw/analytic.hpp"
#include "ncw/fock.hpp"
#include "ncw/states.hpp"

using namespace ncw;

namespace {

FockMatrix random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  FockMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cxd(gauss(rng), gauss(rng));
  return FockMatrix(0.5 * (a + a.adjoint()));
}

}  // namespace

TEST_CASE("annihilation operator entries") {
  CHECK_THROWS_AS(annihilation(0), InvalidDimension);

  const auto a1 = annihilation(1);
  CHECK(a1.cwiseAbs().maxCoeff() == 0.0);  // no levels to lower into

  const auto a3 = annihilation(3);
  CHECK(a3(0, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a3(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(a3(1, 0)) == 0.0);
  CHECK(std::abs(a3(2, 2)) == 0.0);

  const auto a4 = annihilation(4);
  const FockMatrix num = a4.adjoint() * a4;
  for (int n = 0; n < 4; ++n) CHECK(num(n, n).real() == doctest::Approx(double(n)));
  CHECK((num - number_operator(4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("commutator [a, a+] is identity on the top-left block") {
  for (int dim : {2, 5, 16}) {
    const auto a = annihilation(dim);
    const FockMatrix comm = a * a.adjoint() - a.adjoint() * a;
    const FockMatrix block = comm.topLeftCorner(dim - 1, dim - 1);
    CHECK((block - FockMatrix::Identity(dim - 1, dim - 1)).cwiseAbs().maxCoeff() < 1e-13);
    // truncation corrupts only the last diagonal entry
    CHECK(comm(dim - 1, dim - 1).real() == doctest::Approx(-(dim - 1.0)));
  }
}

TEST_CASE("displaced Hamiltonian") {
  CHECK_THROWS_AS(displaced_hamiltonian(+1, 0.5, 1.0, 1), InvalidDimension);
  CHECK_THROWS_AS(displaced_hamiltonian(2, 0.5, 1.0, 4), DomainError);

  SUBCASE("beta = 0 is the bare oscillator") {
    const double omega = 1.7;
    const auto h = displaced_hamiltonian(+1, 0.0, omega, 5);
    for (int n = 0; n < 5; ++n) CHECK(h(n, n).real() == doctest::Approx(omega * n));
    CHECK((h - FockMatrix(omega * number_operator(5))).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("dim = 2 entries") {
    const auto h = displaced_hamiltonian(+1, 0.5, 1.0, 2);
    CHECK(h(0, 0).real() == doctest::Approx(0.0));
    CHECK(h(0, 1).real() == doctest::Approx(0.5));
    CHECK(h(1, 0).real() == doctest::Approx(0.5));
    CHECK(h(1, 1).real() == doctest::Approx(1.0));
  }

  SUBCASE("sign symmetry H+(beta) = H-(-beta)") {
    const auto hp = displaced_hamiltonian(+1, 0.37, 2.0, 8);
    const auto hm = displaced_hamiltonian(-1, -0.37, 2.0, 8);
    CHECK((hp - hm).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("result is Hermitian") {
    CHECK(is_hermitian(displaced_hamiltonian(-1, 0.9, 1.0, 12)));
  }
}

TEST_CASE("herm_expm basics") {
  const FockMatrix zero = FockMatrix::Zero(4, 4);
  CHECK((herm_expm(zero, cxd(0.0, -1.0)) - FockMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);

  const auto h = displaced_hamiltonian(+1, 0.5, 1.0, 4);
  CHECK((herm_expm(h, cxd(0.0, 0.0)) - FockMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);

  FockMatrix bad = FockMatrix::Zero(3, 3);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(herm_expm(bad, cxd(0.0, -1.0)), ContractViolation);
}

TEST_CASE("imaginary-scale herm_expm is unitary and trace-preserving") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + int(rng() % 15);  // dims up to 16
    const auto h = random_hermitian(dim, rng);
    const double t = 0.1 + 3.0 * std::generate_canonical<double, 53>(rng);
    const auto u = herm_expm(h, cxd(0.0, -t));
    const auto u_inv = herm_expm(h, cxd(0.0, t));
    const FockMatrix eye = FockMatrix::Identity(dim, dim);
    CHECK((u * u_inv - eye).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((u * u.adjoint() - eye).cwiseAbs().maxCoeff() < 1e-10);

    FockMatrix rho = FockMatrix::Zero(dim, dim);  // geometric diagonal density
    double p = 1.0, total = 0.0;
    for (int n = 0; n < dim; ++n, p *= 0.5) {
      rho(n, n) = p;
      total += p;
    }
    rho /= total;
    const FockMatrix conj = u * rho * u.adjoint();
    CHECK(std::abs(conj.trace() - rho.trace()) < 1e-10);
  }
}

TEST_CASE("herm_expm is deterministic within one build") {
  const auto h = displaced_hamiltonian(+1, 0.4, 1.0, 8);
  const auto u1 = herm_expm(h, cxd(0.0, -2.5));
  const auto u2 = herm_expm(h, cxd(0.0, -2.5));
  CHECK((u1 - u2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("truncation policy validation") {
  CHECK_THROWS_AS((TruncationPolicy{.initial_dim = 64, .max_dim = 32}.validate()),
                  InvalidDimension);
  CHECK_THROWS_AS((TruncationPolicy{.tail_tolerance = 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((TruncationPolicy{.tail_tolerance = 1.5}.validate()), DomainError);
  CHECK_THROWS_AS((TruncationPolicy{.growth_factor = 1}.validate()), DomainError);
  CHECK_NOTHROW(TruncationPolicy{}.validate());
}

TEST_CASE("adaptive_dim") {
  SUBCASE("vacuum accepts an adequate initial_dim immediately") {
    // ground state has no tail; at weak coupling dim 16 is already converged
    CHECK(adaptive_dim(OscillatorStateSpec::coherent({0.0, 0.0}), 0.1, {}) ==
          TruncationPolicy{}.initial_dim);
    const TruncationPolicy wide{.initial_dim = 32};
    CHECK(adaptive_dim(OscillatorStateSpec::coherent({0.0, 0.0}), 0.5, wide) == 32);
  }

  SUBCASE("Fock N=1 converges from a small start") {
    const TruncationPolicy policy{.initial_dim = 8, .tail_tolerance = 1e-12};
    const int dim = adaptive_dim(OscillatorStateSpec::fock(1), 0.5, policy);
    CHECK(dim >= 8);
    CHECK(dim <= 128);
  }

  SUBCASE("cat alpha0=5 needs dozens of levels") {
    const int dim = adaptive_dim(OscillatorStateSpec::cat(5.0), 0.5, {});
    CHECK(dim >= 48);
    CHECK(dim <= 512);
  }

  SUBCASE("unreachable max_dim raises truncation failure") {
    const TruncationPolicy policy{.initial_dim = 4, .tail_tolerance = 1e-12, .max_dim = 8};
    CHECK_THROWS_AS(adaptive_dim(OscillatorStateSpec::cat(5.0), 0.5, policy),
                    TruncationFailure);
  }
}
