#include "gwt/pauli.hpp"

#include <cmath>
#include <numbers>

#include "gwt/errors.hpp"

namespace gwt {
namespace {

constexpr cplx kI{0.0, 1.0};

cplx clock_phase(std::size_t dim, std::size_t power, std::size_t level) {
  const double arg = 2.0 * std::numbers::pi * static_cast<double>((power * level) % dim) / static_cast<double>(dim);
  return {std::cos(arg), std::sin(arg)};
}

// Nonzero entry of a single-site letter in the given row: (column, value).
std::pair<std::size_t, cplx> letter_entry(std::size_t dim, std::uint8_t letter, std::size_t row) {
  if (dim == 2) {
    switch (letter) {
      case 0: return {row, 1.0};
      case 1: return {1 - row, 1.0};
      case 2: return {1 - row, row == 0 ? -kI : kI};
      default: return {row, row == 0 ? 1.0 : -1.0};
    }
  }
  return {row, clock_phase(dim, letter, row)};
}

void check_dense_cap(const SiteLayout& layout) {
  if (layout.total_dim() > kDenseDimCap)
    throw ValidationError("dense conversion: total dimension " + std::to_string(layout.total_dim()) +
                          " exceeds cap " + std::to_string(kDenseDimCap));
}

}  // namespace

bool PauliString::is_identity() const {
  for (auto l : letters)
    if (l != 0) return false;
  return true;
}

PauliOp::PauliOp(LayoutPtr layout) : layout_(std::move(layout)) {
  if (!layout_) throw ValidationError("PauliOp requires a layout");
}

PauliOp PauliOp::identity(LayoutPtr layout, cplx coeff) {
  PauliOp op(std::move(layout));
  op.add_term(PauliString{std::vector<std::uint8_t>(op.layout_->size(), 0)}, coeff);
  return op;
}

PauliOp PauliOp::term(LayoutPtr layout, std::string_view text, cplx coeff) {
  PauliOp op(std::move(layout));
  op.add_term(string_from_text(*op.layout_, text), coeff);
  return op;
}

PauliOp PauliOp::single(LayoutPtr layout, const std::string& site, QubitLetter letter, cplx coeff) {
  PauliOp op(std::move(layout));
  const std::size_t idx = op.layout_->index_of(site);
  if (!op.layout_->site(idx).is_qubit() && letter != QubitLetter::I && letter != QubitLetter::Z)
    throw ValidationError("site '" + site + "' is not a qubit; only diagonal letters are supported");
  PauliString s{std::vector<std::uint8_t>(op.layout_->size(), 0)};
  s.letters[idx] = op.layout_->site(idx).is_qubit() ? static_cast<std::uint8_t>(letter)
                                                   : static_cast<std::uint8_t>(letter == QubitLetter::Z ? 1 : 0);
  op.add_term(s, coeff);
  return op;
}

double PauliOp::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

cplx PauliOp::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliOp::add_term(const PauliString& s, cplx coeff) {
  if (s.letters.size() != layout_->size()) throw ValidationError("Pauli string length does not match layout");
  for (std::size_t i = 0; i < s.letters.size(); ++i) {
    const std::size_t lim = layout_->site(i).is_qubit() ? 4 : layout_->site(i).dim;
    if (s.letters[i] >= lim) throw ValidationError("invalid letter for site '" + layout_->site(i).label + "'");
  }
  auto& slot = terms_[s];
  slot += coeff;
  if (std::abs(slot) < kPauliPruneTol) terms_.erase(s);
}

PauliOp PauliOp::adjoint() const {
  PauliOp out(layout_);
  for (const auto& [s, c] : terms_) {
    PauliString a = s;
    for (std::size_t i = 0; i < a.letters.size(); ++i) {
      const std::size_t d = layout_->site(i).dim;
      if (d != 2) a.letters[i] = static_cast<std::uint8_t>((d - a.letters[i]) % d);
    }
    out.add_term(a, std::conj(c));
  }
  return out;
}

std::set<std::string> PauliOp::support() const {
  std::set<std::string> out;
  for (const auto& [s, c] : terms_)
    for (std::size_t i = 0; i < s.letters.size(); ++i)
      if (s.letters[i] != 0) out.insert(layout_->site(i).label);
  return out;
}

void PauliOp::require_same_layout(const PauliOp& o) const {
  if (layout_ != o.layout_ && !(*layout_ == *o.layout_))
    throw ValidationError("Pauli operators defined over different layouts");
}

void PauliOp::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPauliPruneTol; });
}

PauliOp& PauliOp::operator+=(const PauliOp& o) {
  require_same_layout(o);
  for (const auto& [s, c] : o.terms_) terms_[s] += c;
  prune();
  return *this;
}

PauliOp& PauliOp::operator-=(const PauliOp& o) {
  require_same_layout(o);
  for (const auto& [s, c] : o.terms_) terms_[s] -= c;
  prune();
  return *this;
}

PauliOp& PauliOp::operator*=(cplx s) {
  for (auto& [k, c] : terms_) c *= s;
  prune();
  return *this;
}

std::string PauliOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "-" : "+") + std::to_string(std::abs(c.imag())) + "i)" +
           string_to_text(*layout_, s);
  }
  return out;
}

PauliOp operator+(PauliOp a, const PauliOp& b) { return a += b; }
PauliOp operator-(PauliOp a, const PauliOp& b) { return a -= b; }
PauliOp operator*(cplx s, PauliOp a) { return a *= s; }

std::pair<cplx, PauliString> multiply_strings(const SiteLayout& layout, const PauliString& a, const PauliString& b) {
  cplx phase = 1.0;
  PauliString out{std::vector<std::uint8_t>(a.letters.size(), 0)};
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const std::uint8_t x = a.letters[i], y = b.letters[i];
    const std::size_t d = layout.site(i).dim;
    if (d != 2) {
      out.letters[i] = static_cast<std::uint8_t>((x + y) % d);
      continue;
    }
    out.letters[i] = x ^ y;
    if (x == 0 || y == 0 || x == y) continue;
    // X -> Y -> Z cyclic order gives +i.
    phase *= ((y + 3 - x) % 3 == 1) ? kI : -kI;
  }
  return {phase, out};
}

namespace {

void require_same_layout(const PauliOp& a, const PauliOp& b) {
  if (a.layout() != b.layout() && !(*a.layout() == *b.layout()))
    throw ValidationError("Pauli operators defined over different layouts");
}

bool strings_commute(const SiteLayout& layout, const PauliString& a, const PauliString& b) {
  bool odd = false;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const std::uint8_t x = a.letters[i], y = b.letters[i];
    // Clock letters on qudit sites are diagonal and always commute.
    if (layout.site(i).dim == 2 && x != 0 && y != 0 && x != y) odd = !odd;
  }
  return !odd;
}

// Number of distinct strings over the layout, or 0 when it exceeds the cap.
std::size_t string_space(const SiteLayout& layout, std::size_t cap) {
  std::size_t n = 1;
  for (const auto& site : layout.sites()) {
    n *= site.is_qubit() ? 4 : site.dim;
    if (n > cap) return 0;
  }
  return n;
}

// Sum over term pairs of w(P, Q) * cp * cq * (PQ). With commutator_only, pairs
// that commute are skipped and anticommuting pairs get weight 2, giving [a, b].
PauliOp product_sum(const PauliOp& a, const PauliOp& b, bool commutator_only) {
  require_same_layout(a, b);
  const SiteLayout& layout = *a.layout();
  PauliOp out(a.layout());
  const std::size_t n_sites = layout.size();

  // Small layouts accumulate into a dense array indexed by string code,
  // avoiding a map insertion per pair.
  const std::size_t space = string_space(layout, std::size_t{1} << 16);
  if (space != 0) {
    std::vector<std::size_t> radix(n_sites), weight(n_sites);
    std::size_t w = 1;
    for (std::size_t i = n_sites; i-- > 0;) {
      radix[i] = layout.site(i).is_qubit() ? 4 : layout.site(i).dim;
      weight[i] = w;
      w *= radix[i];
    }
    std::vector<cplx> acc(space);
    std::vector<bool> touched(space, false);
    for (const auto& [sa, ca] : a.terms())
      for (const auto& [sb, cb] : b.terms()) {
        cplx phase = commutator_only ? 2.0 : 1.0;
        bool odd = false;
        std::size_t code = 0;
        for (std::size_t i = 0; i < n_sites; ++i) {
          const std::uint8_t x = sa.letters[i], y = sb.letters[i];
          if (radix[i] != 4) {
            code += ((x + y) % radix[i]) * weight[i];
            continue;
          }
          code += static_cast<std::size_t>(x ^ y) * weight[i];
          if (x == 0 || y == 0 || x == y) continue;
          odd = !odd;
          phase *= ((y + 3 - x) % 3 == 1) ? kI : -kI;
        }
        if (commutator_only && !odd) continue;
        acc[code] += phase * ca * cb;
        touched[code] = true;
      }
    PauliString s{std::vector<std::uint8_t>(n_sites, 0)};
    for (std::size_t code = 0; code < space; ++code) {
      if (!touched[code] || std::abs(acc[code]) < kPauliPruneTol) continue;
      for (std::size_t i = 0; i < n_sites; ++i) s.letters[i] = static_cast<std::uint8_t>((code / weight[i]) % radix[i]);
      out.add_term(s, acc[code]);
    }
    return out;
  }

  PauliOp::TermMap acc;
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      if (commutator_only && strings_commute(layout, sa, sb)) continue;
      auto [phase, s] = multiply_strings(layout, sa, sb);
      acc[s] += (commutator_only ? 2.0 : 1.0) * phase * ca * cb;
    }
  for (const auto& [s, c] : acc)
    if (std::abs(c) >= kPauliPruneTol) out.add_term(s, c);
  return out;
}

}  // namespace

PauliOp pauli_mul(const PauliOp& a, const PauliOp& b) { return product_sum(a, b, false); }

PauliOp commutator(const PauliOp& a, const PauliOp& b) { return product_sum(a, b, true); }

std::string string_to_text(const SiteLayout& layout, const PauliString& s) {
  static constexpr char kQubit[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  for (std::size_t i = 0; i < s.letters.size(); ++i) {
    const auto l = s.letters[i];
    if (layout.site(i).is_qubit()) {
      out += kQubit[l];
    } else if (l == 0) {
      out += 'I';
    } else {
      out += 'Z';
      if (l > 1) out += "^" + std::to_string(l);
    }
  }
  return out;
}

PauliString string_from_text(const SiteLayout& layout, std::string_view text) {
  PauliString s;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (pos >= text.size()) throw ValidationError("Pauli text '" + std::string(text) + "' is too short for layout");
    const char ch = text[pos++];
    const std::size_t d = layout.site(i).dim;
    if (d == 2) {
      switch (ch) {
        case 'I': s.letters.push_back(0); break;
        case 'X': s.letters.push_back(1); break;
        case 'Y': s.letters.push_back(2); break;
        case 'Z': s.letters.push_back(3); break;
        default: throw ValidationError("invalid qubit letter '" + std::string(1, ch) + "' in '" + std::string(text) + "'");
      }
      continue;
    }
    if (ch == 'I') {
      s.letters.push_back(0);
    } else if (ch == 'Z') {
      std::size_t power = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ValidationError("missing exponent in '" + std::string(text) + "'");
        power = std::stoul(std::string(text.substr(start, pos - start)));
      }
      if (power >= d) throw ValidationError("clock exponent out of range in '" + std::string(text) + "'");
      s.letters.push_back(static_cast<std::uint8_t>(power));
    } else {
      throw ValidationError("site '" + layout.site(i).label + "' (dim " + std::to_string(d) +
                            ") supports only I and Z^k letters");
    }
  }
  if (pos != text.size()) throw ValidationError("Pauli text '" + std::string(text) + "' is too long for layout");
  return s;
}

namespace {

// Row action of a string: for every row, the unique nonzero column and value.
void string_row_action(const SiteLayout& layout, const PauliString& s, std::size_t row, std::size_t& col,
                       cplx& val) {
  col = 0;
  val = 1.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto [c, v] = letter_entry(layout.site(i).dim, s.letters[i], layout.digit(row, i));
    col += c * layout.stride(i);
    val *= v;
  }
}

}  // namespace

DenseOperator to_dense(const SiteLayout& layout, const PauliString& s) {
  check_dense_cap(layout);
  DenseOperator m(layout.total_dim());
  for (std::size_t r = 0; r < layout.total_dim(); ++r) {
    std::size_t c;
    cplx v;
    string_row_action(layout, s, r, c, v);
    m(r, c) = v;
  }
  return m;
}

DenseOperator to_dense(const PauliOp& op) {
  const auto& layout = *op.layout();
  check_dense_cap(layout);
  DenseOperator m(layout.total_dim());
  for (const auto& [s, coeff] : op.terms())
    for (std::size_t r = 0; r < layout.total_dim(); ++r) {
      std::size_t c;
      cplx v;
      string_row_action(layout, s, r, c, v);
      m(r, c) += coeff * v;
    }
  return m;
}

PauliOp project_to_pauli_basis(LayoutPtr layout, const DenseOperator& m, double drop_tol) {
  check_dense_cap(*layout);
  const std::size_t n = layout->total_dim();
  if (m.dim() != n) throw ValidationError("projection: matrix dimension does not match layout");
  bool complete = true;
  std::vector<std::size_t> radix;
  for (const auto& site : layout->sites()) {
    radix.push_back(site.is_qubit() ? 4 : site.dim);
    if (!site.is_qubit()) complete = false;
  }

  PauliOp out(layout);
  PauliString s{std::vector<std::uint8_t>(layout->size(), 0)};
  while (true) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t c;
      cplx v;
      string_row_action(*layout, s, r, c, v);
      acc += std::conj(v) * m(r, c);
    }
    acc /= static_cast<double>(n);
    if (std::abs(acc) >= drop_tol) out.add_term(s, acc);

    std::size_t i = layout->size();
    while (i-- > 0) {
      if (++s.letters[i] < radix[i]) break;
      s.letters[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }

  if (!complete) {
    const double residual = (to_dense(out) - m).max_abs();
    if (residual > 1e-9)
      throw NumericalError("operator is not representable with diagonal letters on non-qubit sites (residual " +
                           std::to_string(residual) + ")");
  }
  return out;
}

}  // namespace gwt
