#include "gwt/witness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"
#include "gwt/rng.hpp"

namespace gwt {

DenseOperator partial_transpose(const DenseOperator& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> transposed) {
  const auto strides = strides_of(dims);
  const std::size_t n = m.dim();
  DenseOperator out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t r2 = r, c2 = c;
      for (auto s : transposed) {
        const std::size_t dr = (r / strides[s]) % dims[s];
        const std::size_t dc = (c / strides[s]) % dims[s];
        r2 += (dc - dr) * strides[s];
        c2 += (dr - dc) * strides[s];
      }
      out(r2, c2) = m(r, c);
    }
  return out;
}

namespace {

std::size_t name_index(const DensityState& s, const std::string& name) {
  for (std::size_t i = 0; i < s.names().size(); ++i)
    if (s.names()[i] == name) return i;
  throw ValidationError("bipartition names unknown subsystem '" + name + "'");
}

double negativity_of_matrix(const DenseOperator& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> transposed) {
  const double n = (trace_norm(partial_transpose(m, dims, transposed)) - 1.0) / 2.0;
  return std::max(0.0, n);
}

}  // namespace

EntanglementVerdict negativity(const DensityState& s, const Bipartition& cut) {
  if (cut.left.empty() || cut.right.empty()) throw ValidationError("bipartition sides must be non-empty");
  std::set<std::size_t> seen;
  std::vector<std::size_t> right;
  for (const auto& n : cut.left)
    if (!seen.insert(name_index(s, n)).second) throw ValidationError("bipartition repeats '" + n + "'");
  for (const auto& n : cut.right) {
    const std::size_t i = name_index(s, n);
    if (!seen.insert(i).second) throw ValidationError("bipartition repeats '" + n + "'");
    right.push_back(i);
  }
  if (seen.size() != s.num_subsystems()) throw ValidationError("bipartition does not cover every subsystem");

  EntanglementVerdict v;
  v.bipartition = cut;
  v.negativity = negativity_of_matrix(s.matrix(), s.dims(), right);
  v.ppt = v.negativity <= kEntanglementTol;
  return v;
}

double trace_distance(const DensityState& a, const DensityState& b) {
  if (a.dims() != b.dims()) throw ValidationError("trace_distance: dimension mismatch");
  return std::clamp(0.5 * trace_norm(a.matrix() - b.matrix()), 0.0, 1.0);
}

bool single_shot_distinguishable(const DensityState& a, const DensityState& b) {
  return trace_distance(a, b) >= 1.0 - kDistinguishTol;
}

namespace {

struct DrawResult {
  bool accepted = false;
  double negativity = 0.0;
};

DrawResult separability_draw(std::uint64_t seed, std::uint64_t attempt) {
  StreamRng rng(seed, attempt);
  BlochAM b;
  for (auto& x : b.r_A) x = rng.uniform(-1.0, 1.0);
  b.s_z = rng.uniform(-1.0, 1.0);
  for (auto& x : b.t_A) x = rng.uniform(-1.0, 1.0);
  if (bloch_AM_min_eigenvalue(b) < StateTolerances{}.min_eigenvalue) return {};
  const DenseOperator rho = reconstruct_bloch_AM(b);
  static constexpr std::size_t kDims[] = {2, 2};
  static constexpr std::size_t kRight[] = {1};
  return {true, negativity_of_matrix(rho, kDims, kRight)};
}

}  // namespace

SeparabilitySweepReport bloch_separability_sweep(std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 1) throw ValidationError("bloch_separability_sweep: samples must be >= 1");
  workers = std::max(1u, workers);
  SeparabilitySweepReport rep;
  constexpr std::uint64_t kChunk = 4096;
  std::vector<DrawResult> block;
  while (rep.accepted < samples) {
    const std::uint64_t start = rep.attempts;
    const std::uint64_t count = kChunk * workers;
    block.assign(count, {});
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < count;) block[i] = separability_draw(seed, start + i);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (std::uint64_t i = 0; i < count && rep.accepted < samples; ++i) {
      ++rep.attempts;
      if (!block[i].accepted) continue;
      ++rep.accepted;
      rep.max_negativity = std::max(rep.max_negativity, block[i].negativity);
      if (block[i].negativity > kEntanglementTol) {
        ++rep.ppt_violations;
        rep.violating_attempts.push_back(start + i);
      }
    }
  }
  rep.acceptance_rate = static_cast<double>(rep.accepted) / static_cast<double>(rep.attempts);
  return rep;
}

NoSignallingResult no_signalling_audit(const DensityState& s, const DenseOperator& local_unitary, std::size_t acted) {
  if (acted >= s.num_subsystems()) throw ValidationError("no_signalling_audit: subsystem index out of range");
  if (local_unitary.dim() != s.dims()[acted])
    throw ValidationError("no_signalling_audit: unitary dimension does not match subsystem");
  const std::size_t pos[] = {acted};
  const DensityState after = evolve(s, embed(local_unitary, pos, s.dims()));
  NoSignallingResult r;
  for (std::size_t j = 0; j < s.num_subsystems(); ++j) {
    if (j == acted) continue;
    const double d = trace_distance(partial_trace(s, {j}), partial_trace(after, {j}));
    r.distances[s.names()[j]] = d;
    r.max_distance = std::max(r.max_distance, d);
  }
  if (s.num_subsystems() > 2) {
    std::set<std::size_t> rest;
    for (std::size_t j = 0; j < s.num_subsystems(); ++j)
      if (j != acted) rest.insert(j);
    const double d = trace_distance(partial_trace(s, rest), partial_trace(after, rest));
    r.distances["rest"] = d;
    r.max_distance = std::max(r.max_distance, d);
  }
  r.ok = r.max_distance <= kNoSignallingTol;
  return r;
}

}  // namespace gwt
