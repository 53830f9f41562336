#include "gwt/nonclassicality.hpp"

#include <cmath>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"

namespace gwt {
namespace {

constexpr double kOrthoTol = 1e-10;

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double max_cross_overlap(const Attribute& a, const Attribute& b) {
  double m = 0.0;
  for (const auto& u : a.vectors)
    for (const auto& w : b.vectors) m = std::max(m, std::abs(inner(u, w)));
  return m;
}

// Subspaces share a nonzero vector iff the compression of one projector to
// the other has an eigenvalue 1.
bool subspaces_intersect(const Attribute& a, const Attribute& b) {
  const std::size_t k = b.vectors.size();
  DenseOperator g(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      cplx s = 0.0;
      for (const auto& u : a.vectors) s += inner(b.vectors[i], u) * inner(u, b.vectors[j]);
      g(i, j) = s;
    }
  return hermitian_eig(g).values.back() >= 1.0 - kOrthoTol;
}

// Same subspace: equal dimension and one contains the other.
bool same_subspace(const Attribute& a, const Attribute& b) {
  if (a.vectors.size() != b.vectors.size()) return false;
  const std::size_t k = b.vectors.size();
  DenseOperator g(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      cplx s = 0.0;
      for (const auto& u : a.vectors) s += inner(b.vectors[i], u) * inner(u, b.vectors[j]);
      g(i, j) = s;
    }
  return hermitian_eig(g).values.front() >= 1.0 - kOrthoTol;
}

DenseOperator hermitian_part(const DenseOperator& p) { return 0.5 * (p + p.adjoint()); }
DenseOperator anti_hermitian_part(const DenseOperator& p) { return cplx(0.0, -0.5) * (p - p.adjoint()); }

// Adds x to an orthonormal Hermitian basis if it is independent of it.
bool try_extend(std::vector<DenseOperator>& basis, DenseOperator x) {
  const double scale = std::max(1.0, x.frobenius_norm());
  for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once for stability
    for (const auto& b : basis) x -= trace_product(b, x).real() * b;
  const double nrm = x.frobenius_norm();
  if (nrm <= 1e-9 * scale) return false;
  x *= 1.0 / nrm;
  basis.push_back(std::move(x));
  return true;
}

}  // namespace

void VariableSpec::validate() const {
  if (dim < 2) throw ValidationError("variable '" + name + "' needs dimension >= 2");
  if (attributes.empty()) throw ValidationError("variable '" + name + "' has no attributes");
  for (const auto& a : attributes) {
    if (a.vectors.empty()) throw ValidationError("attribute '" + a.label + "' of '" + name + "' is empty");
    if (a.vectors.size() > dim) throw ValidationError("attribute '" + a.label + "' has more vectors than dimensions");
    for (std::size_t i = 0; i < a.vectors.size(); ++i) {
      if (a.vectors[i].size() != dim)
        throw ValidationError("attribute '" + a.label + "' has a vector of the wrong length");
      for (std::size_t j = 0; j <= i; ++j) {
        const double expect = i == j ? 1.0 : 0.0;
        if (std::abs(inner(a.vectors[i], a.vectors[j]) - expect) > kOrthoTol)
          throw ValidationError("attribute '" + a.label + "' of '" + name + "' is not orthonormal");
      }
    }
  }
}

DenseOperator VariableSpec::projector(std::size_t i) const {
  DenseOperator p(dim);
  for (const auto& v : attributes.at(i).vectors) p += DenseOperator::outer(v);
  return p;
}

VariableSpec computational_basis(std::size_t dim, std::string name) {
  VariableSpec v{std::move(name), dim, {}};
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<cplx> e(dim);
    e[k] = 1.0;
    v.attributes.push_back({std::to_string(k), {e}});
  }
  return v;
}

VariableSpec basis_from_columns(const DenseOperator& u, std::string name) {
  VariableSpec v{std::move(name), u.dim(), {}};
  for (std::size_t k = 0; k < u.dim(); ++k) {
    std::vector<cplx> col(u.dim());
    for (std::size_t r = 0; r < u.dim(); ++r) col[r] = u(r, k);
    v.attributes.push_back({std::to_string(k), {col}});
  }
  return v;
}

VariableSpec qubit_x_basis(std::string name) {
  const double h = 1.0 / std::sqrt(2.0);
  return VariableSpec{std::move(name), 2, {{"+", {{h, h}}}, {"-", {{h, -h}}}}};
}

AlgebraBasis algebra_closure(const std::vector<DenseOperator>& generators) {
  if (generators.empty()) throw ValidationError("algebra_closure needs at least one generator");
  const std::size_t d = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != d) throw ValidationError("algebra_closure: generator dimension mismatch");
    if (!g.is_hermitian(1e-12)) throw ValidationError("algebra_closure: generators must be Hermitian");
  }
  AlgebraBasis out;
  try_extend(out.elements, DenseOperator::identity(d));
  for (const auto& g : generators) try_extend(out.elements, g);

  bool grew = true;
  while (grew && out.elements.size() < d * d) {
    grew = false;
    const std::size_t n = out.elements.size();
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const DenseOperator p = out.elements[i] * out.elements[j];
        grew |= try_extend(out.elements, hermitian_part(p));
        grew |= try_extend(out.elements, anti_hermitian_part(p));
      }
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (commutator(generators[i], generators[j]).frobenius_norm() > 1e-12) out.commutative = false;
  return out;
}

InformationVariableVerdict information_variable_check(const VariableSpec& v) {
  v.validate();
  if (v.attributes.size() < 2) throw ValidationError("an information variable needs at least two attributes");
  InformationVariableVerdict out;
  for (std::size_t i = 0; i < v.attributes.size(); ++i)
    for (std::size_t j = i + 1; j < v.attributes.size(); ++j)
      out.max_overlap = std::max(out.max_overlap, max_cross_overlap(v.attributes[i], v.attributes[j]));
  out.ok = out.max_overlap <= kOrthoTol;
  if (!out.ok) return out;

  // Cyclic permutation x_i -> x_{i+1}: map attribute bases onto each other and
  // act as the identity on the complement of their span.
  const std::size_t k = v.attributes.front().vectors.size();
  for (const auto& a : v.attributes)
    if (a.vectors.size() != k) return out;
  DenseOperator u(v.dim);
  DenseOperator span_proj(v.dim);
  const std::size_t n = v.attributes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& from = v.attributes[i].vectors;
    const auto& to = v.attributes[(i + 1) % n].vectors;
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t r = 0; r < v.dim; ++r)
        for (std::size_t c = 0; c < v.dim; ++c) u(r, c) += to[t][r] * std::conj(from[t][c]);
    span_proj += v.projector(i);
  }
  u += DenseOperator::identity(v.dim) - span_proj;
  out.permutation_unitary_exists = u.is_unitary(1e-10);
  return out;
}

SuperinformationVerdict superinformation_check(const VariableSpec& z, const VariableSpec& v) {
  if (z.dim != v.dim) throw ValidationError("superinformation_check: dimension mismatch");
  if (z.attributes.size() != v.attributes.size())
    throw ValidationError("superinformation_check: variables must have the same number of attributes");
  SuperinformationVerdict out;
  // A single attribute cannot be an information variable.
  out.z_is_variable = z.attributes.size() >= 2 && information_variable_check(z).ok;
  out.v_is_variable = v.attributes.size() >= 2 && information_variable_check(v).ok;
  out.disjoint = true;
  for (const auto& a : z.attributes)
    for (const auto& b : v.attributes) {
      out.max_cross_overlap = std::max(out.max_cross_overlap, max_cross_overlap(a, b));
      if (subspaces_intersect(a, b)) out.disjoint = false;
    }
  // The union is a set of attributes: a subspace declared by both variables counts once.
  VariableSpec joined{z.name + "+" + v.name, z.dim, z.attributes};
  for (const auto& b : v.attributes) {
    bool present = false;
    for (const auto& a : z.attributes) present = present || same_subspace(a, b);
    if (!present) joined.attributes.push_back(b);
  }
  out.union_is_variable = information_variable_check(joined).ok;
  out.ok = out.z_is_variable && out.v_is_variable && out.disjoint && !out.union_is_variable;
  return out;
}

Classification classify_system(const std::vector<VariableSpec>& declared) {
  if (declared.empty()) throw ValidationError("classify_system needs at least one variable");
  for (const auto& v : declared) v.validate();
  for (std::size_t i = 0; i < declared.size(); ++i)
    for (std::size_t j = i + 1; j < declared.size(); ++j) {
      if (declared[i].dim != declared[j].dim || declared[i].attributes.size() != declared[j].attributes.size())
        continue;
      if (superinformation_check(declared[i], declared[j]).ok) return {true, std::pair{i, j}};
    }
  return {};
}

}  // namespace gwt
