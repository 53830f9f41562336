#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace gwt {

struct Site {
  std::string label;
  std::size_t dim = 2;

  bool is_qubit() const { return dim == 2; }
  bool operator==(const Site&) const = default;
};

/**
 * Ordered tensor-product factorization of a Hilbert space.
 *
 * Site 0 is the most significant digit of a basis index, so the layout
 * (A, M, B) orders basis states as |a m b>.
 */
class SiteLayout {
 public:
  SiteLayout() = default;
  explicit SiteLayout(std::vector<Site> sites);

  /// Convenience: all sites are qubits.
  static SiteLayout qubits(const std::vector<std::string>& labels);

  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  const Site& site(std::size_t i) const { return sites_.at(i); }
  std::size_t total_dim() const { return total_dim_; }
  std::vector<std::size_t> dims() const;
  std::vector<std::string> labels() const;

  /// Index of a site label; throws ValidationError if absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  /// Place value of site i in a flat basis index.
  std::size_t stride(std::size_t i) const { return strides_.at(i); }
  std::size_t digit(std::size_t index, std::size_t site) const {
    return (index / strides_[site]) % sites_[site].dim;
  }

  bool operator==(const SiteLayout& other) const { return sites_ == other.sites_; }

 private:
  std::vector<Site> sites_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

using LayoutPtr = std::shared_ptr<const SiteLayout>;

inline LayoutPtr make_layout(std::vector<Site> sites) {
  return std::make_shared<const SiteLayout>(std::move(sites));
}

}  // namespace gwt
