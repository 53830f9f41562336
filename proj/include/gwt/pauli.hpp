#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gwt/dense.hpp"
#include "gwt/layout.hpp"

namespace gwt {

/// Coefficients with modulus below this are dropped after every operation.
inline constexpr double kPauliPruneTol = 1e-14;

/**
 * One letter per site.
 *
 * Qubit sites use 0=I, 1=X, 2=Y, 3=Z with Y = iXZ = [[0,-i],[i,0]].
 * Sites of dimension d > 2 use k in [0, d) for the clock power Z_d^k =
 * diag(w^j k), w = exp(2 pi i / d); k = 0 is the identity.
 */
struct PauliString {
  std::vector<std::uint8_t> letters;

  bool is_identity() const;
  auto operator<=>(const PauliString&) const = default;
};

enum class QubitLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * Sparse operator as a complex combination of Pauli strings.
 *
 * Terms are kept in canonical (lexicographic) order and terms with
 * |coefficient| < kPauliPruneTol are never stored, so an empty operator is
 * exactly zero. Operators over different layouts never combine.
 */
class PauliOp {
 public:
  using TermMap = std::map<PauliString, cplx>;

  explicit PauliOp(LayoutPtr layout);

  static PauliOp identity(LayoutPtr layout, cplx coeff = 1.0);
  /// Parses a text string such as "XZI" or "IZ^2X" in layout order.
  static PauliOp term(LayoutPtr layout, std::string_view text, cplx coeff = 1.0);
  /// Single qubit letter on one site, identity elsewhere.
  static PauliOp single(LayoutPtr layout, const std::string& site, QubitLetter letter, cplx coeff = 1.0);

  const LayoutPtr& layout() const { return layout_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double max_abs_coeff() const;
  cplx coefficient(const PauliString& s) const;

  void add_term(const PauliString& s, cplx coeff);

  PauliOp adjoint() const;
  /// Labels of sites where some term carries a non-identity letter.
  std::set<std::string> support() const;

  PauliOp& operator+=(const PauliOp& o);
  PauliOp& operator-=(const PauliOp& o);
  PauliOp& operator*=(cplx s);

  std::string to_string() const;

 private:
  void require_same_layout(const PauliOp& o) const;
  void prune();

  LayoutPtr layout_;
  TermMap terms_;
};

PauliOp operator+(PauliOp a, const PauliOp& b);
PauliOp operator-(PauliOp a, const PauliOp& b);
PauliOp operator*(cplx s, PauliOp a);

/// Exact product including phases.
PauliOp pauli_mul(const PauliOp& a, const PauliOp& b);
inline PauliOp operator*(const PauliOp& a, const PauliOp& b) { return pauli_mul(a, b); }

/// ab - ba; an empty result means exactly zero.
PauliOp commutator(const PauliOp& a, const PauliOp& b);

/// Product of two strings: returns (phase, string).
std::pair<cplx, PauliString> multiply_strings(const SiteLayout& layout, const PauliString& a,
                                              const PauliString& b);

std::string string_to_text(const SiteLayout& layout, const PauliString& s);
PauliString string_from_text(const SiteLayout& layout, std::string_view text);

/// Dense matrix of a single string. Throws ValidationError above kDenseDimCap.
DenseOperator to_dense(const SiteLayout& layout, const PauliString& s);
DenseOperator to_dense(const PauliOp& op);

/**
 * Expands a dense operator in the string basis.
 *
 * Coefficient of P is Tr(P^dagger m) / total_dim; coefficients below
 * drop_tol are discarded. Layouts with non-qubit sites only span diagonal
 * operators on those sites, so a NumericalError is raised when the expansion
 * leaves a residual above 1e-9.
 */
PauliOp project_to_pauli_basis(LayoutPtr layout, const DenseOperator& m, double drop_tol = 1e-12);

}  // namespace gwt
