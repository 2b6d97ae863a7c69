#include <cstring>
#include <random>
#include <vector>

#include "bhs/simd/kernels.hpp"
#include "doctest.h"

using namespace bhs::simd;

namespace {

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("vector kernels agree with the scalar reference") {
  const KernelTable& ref = scalar_kernels();
  for (Backend backend : available_backends()) {
    const KernelTable& vec = kernels(backend);
    CAPTURE(vec.name);
    std::mt19937_64 rng(7);
    // Odd lengths exercise the remainder loops.
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      CAPTURE(n);
      auto dens = random_vec(rng, n + 1, 0.0, 1.05);
      dens[0] = 0.0;
      if (n > 2) dens[2] = 1e-310;  // subnormal input
      auto w = random_vec(rng, n + 1, -1.0, 1.0);
      auto flux = random_vec(rng, n + 1, -0.5, 0.5);

      std::vector<double> pa(n + 1), pb(n + 1);
      ref.pressure(dens, pa, 100.0);
      vec.pressure(dens, pb, 100.0);
      for (std::size_t i = 0; i <= n; ++i) {
        CHECK(pb[i] == doctest::Approx(pa[i]).epsilon(1e-13));
        if (pa[i] == 0.0) CHECK(pb[i] == 0.0);
      }

      std::vector<double> ua(n), ub(n);
      ref.face_velocity(w, ua, 500.0);
      vec.face_velocity(w, ub, 500.0);
      CHECK(bits_equal(ua, ub));

      // Signed zeros must take the same branch in both.
      if (n > 1) ua[1] = ub[1] = -0.0;
      std::vector<double> fa(n), fb(n);
      ref.upwind_flux(ua, dens, fa);
      vec.upwind_flux(ub, dens, fb);
      CHECK(bits_equal(fa, fb));

      std::vector<double> ga(n), gb(n);
      ref.affine_growth(pa, ga, 1.0, -1.0);
      vec.affine_growth(pa, gb, 1.0, -1.0);
      CHECK(bits_equal(ga, gb));

      std::vector<double> oa(n), ob(n);
      ref.upwind_update(dens, flux, ga, oa, 0.3, 1e-3);
      vec.upwind_update(dens, flux, ga, ob, 0.3, 1e-3);
      CHECK(bits_equal(oa, ob));

      CHECK(vec.sum(w) == doctest::Approx(ref.sum(w)).epsilon(1e-12));
      CHECK(vec.max(w) == ref.max(w));
      CHECK(vec.weighted_abs_residual(pa, w, 1.0, 1.0, -1.0) ==
            doctest::Approx(ref.weighted_abs_residual(pa, w, 1.0, 1.0, -1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("backend selection") {
  CHECK(kernels(Backend::Scalar).backend == Backend::Scalar);
  if (!avx2_available()) CHECK_THROWS(kernels(Backend::Avx2));
  CHECK(!available_backends().empty());
}
