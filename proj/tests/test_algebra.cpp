#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hdc/algebra.hpp"
#include "hdc/oracle.hpp"
#include "hdc/stats.hpp"

using namespace hdc;

namespace {

double max_abs_diff(const HrrVector& a, const HrrVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

HrrVector vec(std::initializer_list<double> xs) {
  HrrVector v(static_cast<Eigen::Index>(xs.size()));
  std::copy(xs.begin(), xs.end(), v.data());
  return v;
}

}  // namespace

TEST_CASE("random_unit draws unit vectors") {
  RandomStream rng(11);
  const HrrVector v = random_unit(256, rng);
  CHECK(std::abs(v.norm() - 1.0) < 1e-12);

  const HrrVector c = random_unit(2, rng);
  CHECK(std::abs(c[0] * c[0] + c[1] * c[1] - 1.0) < 1e-12);

  CHECK_THROWS_AS(random_unit(1, rng), InvalidDimension);
  CHECK_THROWS_AS(random_unit(0, rng), InvalidDimension);
}

TEST_CASE("independent unit vectors are quasi-orthogonal") {
  RandomStream rng(12);
  const double strong = thresholds(512).strong;
  CHECK(strong == doctest::Approx(0.1326).epsilon(1e-3));
  int below = 0;
  for (int i = 0; i < 1000; ++i) {
    const HrrVector a = random_unit(512, rng);
    const HrrVector b = random_unit(512, rng);
    below += std::abs(similarity(a, b)) < strong;
  }
  CHECK(below >= 990);
}

TEST_CASE("child streams are reproducible and independent of sibling draws") {
  const RandomStream root(99);
  RandomStream a = root.derive({1, 2, 3});
  RandomStream b = root.derive({1, 2, 3});
  RandomStream other = root.derive({1, 2, 4});
  for (int i = 0; i < 100; ++i) (void)other.normal();
  CHECK(a.key() == b.key());
  CHECK(a.key() != other.key());
  CHECK(max_abs_diff(random_unit(64, a), random_unit(64, b)) == 0.0);
}

TEST_CASE("random_unitary has a unit-magnitude Hermitian spectrum") {
  RandomStream rng(13);
  for (Eigen::Index dim : {2, 3, 7, 64, 512}) {
    const HrrVector u = random_unitary(dim, rng);
    const Spectrum<double> s = oracle::naive_dft(u);
    CHECK(((s.array().abs() - 1.0).abs() < 1e-10).all());
    // Parseval with the unnormalized forward transform: ||u||^2 = sum|U|^2 / D.
    CHECK(std::abs(u.norm() - 1.0) < 1e-10);
    CHECK(is_unitary(u));
    CHECK(std::abs(s[0] - std::complex<double>(1, 0)) < 1e-10);
  }
  CHECK_THROWS_AS(random_unitary(1, rng), InvalidDimension);
}

TEST_CASE("random_unitary with random-sign edge bins draws both signs") {
  RandomStream rng(14);
  int negative_dc = 0, negative_nyquist = 0;
  for (int i = 0; i < 40; ++i) {
    const HrrVector u = random_unitary(16, rng, EdgeBins::random_sign);
    const Spectrum<double> s = oracle::naive_dft(u);
    CHECK(is_unitary(u));
    negative_dc += s[0].real() < 0;
    negative_nyquist += s[8].real() < 0;
  }
  CHECK(negative_dc > 5);
  CHECK(negative_dc < 35);
  CHECK(negative_nyquist > 5);
  CHECK(negative_nyquist < 35);
}

TEST_CASE("binding with a unitary vector preserves norms") {
  RandomStream rng(15);
  const HrrVector u = random_unitary(512, rng);
  for (int i = 0; i < 100; ++i) {
    const HrrVector v = random_unit(512, rng);
    CHECK(std::abs(bind(v, u).norm() - v.norm()) < 1e-9);
  }
}

TEST_CASE("bind is circular convolution") {
  const HrrVector e0 = identity(4);
  const HrrVector v = vec({0.3, -1.2, 2.5, 0.7});
  CHECK(max_abs_diff(bind(e0, v), v) < 1e-12);
  CHECK(max_abs_diff(bind(vec({1, 2, 0, 0}), vec({0, 1, 0, 0})), vec({0, 1, 2, 0})) < 1e-12);

  RandomStream rng(16);
  for (Eigen::Index dim : {4, 5, 8, 9, 64, 256}) {
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const HrrVector a = random_unit(dim, rng);
      const HrrVector b = random_unit(dim, rng);
      worst = std::max(worst, max_abs_diff(bind(a, b), oracle::circular_convolution(a, b)));
    }
    CAPTURE(dim);
    CHECK(worst < 1e-10);
  }
  CHECK_THROWS_AS(bind(HrrVector::Zero(4), HrrVector::Zero(5)), DimensionMismatch);
}

TEST_CASE("bind is commutative and associative") {
  RandomStream rng(17);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.below(300));
    const HrrVector a = random_unit(dim, rng);
    const HrrVector b = random_unit(dim, rng);
    const HrrVector c = random_unit(dim, rng);
    CAPTURE(dim);
    CHECK(max_abs_diff(bind(a, b), bind(b, a)) < 1e-10);
    CHECK(max_abs_diff(bind(bind(a, b), c), bind(a, bind(b, c))) < 1e-10);
  }
}

TEST_CASE("bind accepts Eigen expressions and other scalar types") {
  RandomStream rng(18);
  const HrrVector a = random_unit(32, rng);
  const HrrVector b = random_unit(32, rng);
  CHECK(max_abs_diff(bind(2.0 * a, b), 2.0 * bind(a, b)) < 1e-12);

  const Vector<float> af = a.cast<float>();
  const Vector<float> bf = b.cast<float>();
  CHECK((bind(af, bf).cast<double>() - bind(a, b)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("superpose sums without normalizing") {
  RandomStream rng(19);
  const HrrVector v = random_unit(32, rng);
  const HrrVector w = random_unit(32, rng);
  CHECK(max_abs_diff(superpose(std::vector{v}), v) == 0.0);
  CHECK(superpose(std::vector<HrrVector>{v, HrrVector(-v)}).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(superpose(std::vector{v, w}), v + w) == 0.0);
  CHECK_THROWS_AS(superpose(std::vector<HrrVector>{}), InvalidArgument);
  CHECK_THROWS_AS(superpose(std::vector<HrrVector>{v, HrrVector::Zero(8)}), DimensionMismatch);
}

TEST_CASE("similarity distributes over superposition") {
  RandomStream rng(20);
  for (int i = 0; i < 100; ++i) {
    const HrrVector a = random_unit(128, rng);
    const HrrVector b = random_unit(128, rng);
    const HrrVector c = random_unit(128, rng);
    const double lhs = similarity(superpose(std::vector{a, b}), c);
    CHECK(std::abs(lhs - (similarity(a, c) + similarity(b, c))) < 1e-12);
  }
}

TEST_CASE("superposition of 50 vectors at D=256 keeps members above the weak threshold") {
  const double weak = thresholds(256).weak;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream rng(seed);
    std::vector<HrrVector> vs;
    for (int i = 0; i < 50; ++i) vs.push_back(random_unit(256, rng));
    const HrrVector s = superpose(vs);
    std::vector<double> sims;
    for (const auto& v : vs) sims.push_back(cosine(s, v));
    CAPTURE(seed);
    CHECK(median(sims) > weak);
  }
}

TEST_CASE("power: identity exponents") {
  RandomStream rng(21);
  const HrrVector v = random_unit(64, rng);
  CHECK(max_abs_diff(power(v, 1.0), v) < 1e-10);
  CHECK(max_abs_diff(power(v, 0.0), identity(64)) < 1e-10);

  const HrrVector u = random_unitary(64, rng);
  CHECK(max_abs_diff(power(u, 1.0), u) < 1e-10);
  CHECK(max_abs_diff(power(u, 0.0), identity(64)) < 1e-10);
  CHECK(max_abs_diff(power(u, -1.0), involution(u)) < 1e-10);
}

TEST_CASE("power: exponent additivity matches the spectral-phase oracle") {
  RandomStream rng(22);
  for (Eigen::Index dim : {8, 64, 255, 512}) {
    const HrrVector u = random_unitary(dim, rng);
    const HrrVector lhs = bind(power(u, 1.3), power(u, 0.9));
    CAPTURE(dim);
    CHECK(max_abs_diff(lhs, power(u, 2.2)) < 1e-8);
    CHECK(max_abs_diff(lhs, oracle::unitary_power_from_phases(u, 2.2)) < 1e-8);
  }
  for (int i = 0; i < 30; ++i) {
    const HrrVector u = random_unitary(128, rng);
    const double a = rng.uniform(-4.0, 4.0);
    const double b = rng.uniform(-4.0, 4.0);
    CHECK(max_abs_diff(bind(power(u, a), power(u, b)), power(u, a + b)) < 1e-8);
  }
}

TEST_CASE("power: integer exponents equal repeated binding") {
  RandomStream rng(23);
  const HrrVector u = random_unitary(256, rng);
  HrrVector acc = u;
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(max_abs_diff(power(u, static_cast<double>(n)), acc) < 1e-8);
    acc = bind(acc, u);
  }
  // Integer powers need no unitarity.
  const HrrVector v = random_unit(64, rng);
  CHECK(max_abs_diff(power(v, 3.0), bind(bind(v, v), v)) < 1e-10);
}

TEST_CASE("power: singular and non-unitary spectra") {
  const HrrVector flat = vec({1, 1, 1, 1});  // spectrum (4, 0, 0, 0)
  CHECK_THROWS_AS(power(flat, 0.5), SingularSpectrum);
  CHECK_THROWS_AS(power(flat, -1.0), SingularSpectrum);
  CHECK_NOTHROW(power(flat, 2.0));

  RandomStream rng(24);
  const HrrVector v = random_unit(64, rng);
  CHECK_THROWS_AS(power(v, 0.5), SingularSpectrum);
  CHECK_NOTHROW(power(v, -2.0));
  CHECK_THROWS_AS(power(v, std::nan("")), InvalidArgument);
}

TEST_CASE("power: a -1 edge bin breaks additivity by about sin(pi a) sin(pi b) / D") {
  // With a -1 at frequency 0 its fractional powers are complex; the real part
  // kept by power() makes bind(u^a, u^b) differ from u^(a+b).
  RandomStream rng(25);
  for (int tries = 0; tries < 64; ++tries) {
    const HrrVector u = random_unitary(64, rng, EdgeBins::random_sign);
    if (oracle::naive_dft(u)[0].real() > 0) continue;
    const double gap = max_abs_diff(bind(power(u, 0.5), power(u, 0.5)), power(u, 1.0));
    CHECK(gap > 1e-3);
    return;
  }
  FAIL("no draw with a negative DC bin");
}

TEST_CASE("involution reverses indices and inverts unitary vectors") {
  CHECK(max_abs_diff(involution(vec({1, 2, 3, 4})), vec({1, 4, 3, 2})) == 0.0);

  RandomStream rng(26);
  const HrrVector v = random_unit(33, rng);
  CHECK(max_abs_diff(involution(involution(v)), v) == 0.0);
  const Spectrum<double> sv = oracle::naive_dft(v);
  const Spectrum<double> si = oracle::naive_dft(involution(v));
  CHECK((si - sv.conjugate()).cwiseAbs().maxCoeff() < 1e-10);

  for (int i = 0; i < 20; ++i) {
    const HrrVector u = random_unitary(512, rng);
    const HrrVector a = random_unit(512, rng);
    CHECK(max_abs_diff(bind(u, involution(u)), identity(512)) < 1e-10);
    CHECK(std::abs(similarity(bind(bind(a, u), involution(u)), a) - 1.0) < 1e-9);
  }
}

TEST_CASE("similarity is the symmetric dot product") {
  RandomStream rng(27);
  const HrrVector v = random_unit(64, rng);
  const HrrVector w = 3.0 * random_unit(64, rng);
  CHECK(similarity(v, v) == doctest::Approx(v.squaredNorm()));
  CHECK(similarity(w, w) == doctest::Approx(9.0));
  CHECK(similarity(v, w) == similarity(w, v));
  CHECK_THROWS_AS(similarity(v, HrrVector::Zero(3)), DimensionMismatch);
  CHECK(cosine(v, HrrVector::Zero(64)) == 0.0);
}

TEST_CASE("similarity of random unit pairs has mean 0 and sd 1/sqrt(D)") {
  RandomStream rng(28);
  for (int dim : {256, 512, 1024}) {
    std::vector<double> sims;
    sims.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
      const HrrVector a = random_unit(dim, rng);
      const HrrVector b = random_unit(dim, rng);
      sims.push_back(similarity(a, b));
    }
    const double mean = std::accumulate(sims.begin(), sims.end(), 0.0) / sims.size();
    double var = 0;
    for (double s : sims) var += (s - mean) * (s - mean);
    const double sd = std::sqrt(var / (sims.size() - 1));
    CAPTURE(dim);
    CHECK(std::abs(mean) < 0.005);
    CHECK(std::abs(sd * std::sqrt(dim) - 1.0) < 0.1);
  }
}

TEST_CASE("similarity thresholds") {
  CHECK(thresholds(256).weak == 0.125);
  CHECK(thresholds(256).strong == 0.1875);
  CHECK(thresholds(1024).weak == 0.0625);
  CHECK(thresholds(1024).strong == 0.09375);
  const auto degenerate = thresholds(4);
  CHECK(degenerate.weak == 1.0);
  CHECK(degenerate.strong == 1.5);
  for (int dim = 10; dim < 2000; dim += 37) {
    const auto t = thresholds(dim);
    CHECK(0 < t.weak);
    CHECK(t.weak < t.strong);
    CHECK(t.strong < 1);
  }
  CHECK_THROWS_AS(thresholds(1), InvalidDimension);
}
