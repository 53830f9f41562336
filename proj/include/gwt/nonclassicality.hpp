#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwt/dense.hpp"

namespace gwt {

/// A labeled subspace given by an orthonormal list of vectors.
struct Attribute {
  std::string label;
  std::vector<std::vector<cplx>> vectors;
};

/**
 * A physical variable: a set of attributes of a d-level system.
 *
 * Attributes must be non-empty orthonormal sets; whether distinct
 * attributes are orthogonal to each other is a property to be computed.
 */
struct VariableSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<Attribute> attributes;

  /// Throws ValidationError on malformed subspaces.
  void validate() const;
  /// Orthogonal projector onto attribute i.
  DenseOperator projector(std::size_t i) const;
};

/// Attribute k is the single basis vector |k>.
VariableSpec computational_basis(std::size_t dim, std::string name = "Z");
/// Attribute k is column k of u.
VariableSpec basis_from_columns(const DenseOperator& u, std::string name);
/// Qubit |+>, |-> basis.
VariableSpec qubit_x_basis(std::string name = "X");

struct AlgebraBasis {
  /// Hermitian, orthonormal under Tr(AB); elements[0] is I / sqrt(d).
  std::vector<DenseOperator> elements;
  bool commutative = true;

  std::size_t dimension() const { return elements.size(); }
};

/**
 * Basis of the *-algebra generated by Hermitian operators.
 *
 * Products of basis elements are split into Hermitian parts and
 * Gram-Schmidt orthogonalized until no new direction appears.
 * `commutative` is true iff all pairwise generator commutators have
 * Frobenius norm <= 1e-12.
 */
AlgebraBasis algebra_closure(const std::vector<DenseOperator>& generators);

struct InformationVariableVerdict {
  bool ok = false;
  double max_overlap = 0.0;  ///< largest |<u|w>| between distinct attributes
  /// A unitary cyclically permuting the attributes exists (and was built).
  bool permutation_unitary_exists = false;
};

/// Attributes pairwise orthogonal within 1e-10.
InformationVariableVerdict information_variable_check(const VariableSpec& v);

struct SuperinformationVerdict {
  bool ok = false;
  bool z_is_variable = false;
  bool v_is_variable = false;
  bool disjoint = false;  ///< no z attribute shares a nonzero vector with a v attribute
  bool union_is_variable = false;
  double max_cross_overlap = 0.0;
};

SuperinformationVerdict superinformation_check(const VariableSpec& z, const VariableSpec& v);

struct Classification {
  bool non_classical = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  ///< indices into the declared variables

  std::string name() const { return non_classical ? "non-classical" : "classical"; }
};

/// Non-classical iff some declared pair passes superinformation_check.
Classification classify_system(const std::vector<VariableSpec>& declared);

}  // namespace gwt
