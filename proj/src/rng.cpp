#include "gwt/rng.hpp"

#include <cmath>
#include <numbers>

namespace gwt {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGamma) ^ mix64(stream * 0xd1b54a32d192ed03ULL + 1))) {}

std::uint64_t StreamRng::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double StreamRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t StreamRng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double StreamRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DenseOperator random_unitary(std::size_t dim, StreamRng& rng) {
  // Modified Gram-Schmidt on Ginibre columns. R gets a positive real
  // diagonal, which makes Q Haar-distributed.
  std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
  for (auto& col : cols)
    for (auto& x : col) x = cplx(rng.normal(), rng.normal());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx proj = 0.0;
      for (std::size_t r = 0; r < dim; ++r) proj += std::conj(cols[j][r]) * cols[k][r];
      for (std::size_t r = 0; r < dim; ++r) cols[k][r] -= proj * cols[j][r];
    }
    double nrm = 0.0;
    for (const auto& x : cols[k]) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (auto& x : cols[k]) x /= nrm;
  }
  DenseOperator u(dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
  return u;
}

std::vector<cplx> random_ket(std::size_t dim, StreamRng& rng) {
  std::vector<cplx> v(dim);
  double nrm = 0.0;
  for (auto& x : v) {
    x = cplx(rng.normal(), rng.normal());
    nrm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(nrm);
  return v;
}

DenseOperator random_density_matrix(std::size_t dim, StreamRng& rng) {
  DenseOperator g(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = cplx(rng.normal(), rng.normal());
  DenseOperator rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // Exact Hermiticity.
  for (std::size_t r = 0; r < dim; ++r) {
    rho(r, r) = rho(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) rho(c, r) = std::conj(rho(r, c));
  }
  return rho;
}

DenseOperator random_hermitian(std::size_t dim, StreamRng& rng) {
  DenseOperator h(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    h(r, r) = rng.normal();
    for (std::size_t c = r + 1; c < dim; ++c) {
      h(r, c) = cplx(rng.normal(), rng.normal());
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

}  // namespace gwt
