#include "gwt/layout.hpp"

#include <set>

#include "gwt/errors.hpp"

namespace gwt {

SiteLayout::SiteLayout(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw ValidationError("layout must contain at least one site");
  std::set<std::string> seen;
  for (const auto& s : sites_) {
    if (s.label.empty()) throw ValidationError("site label must be non-empty");
    if (!seen.insert(s.label).second) throw ValidationError("duplicate site label '" + s.label + "'");
    if (s.dim < 2) throw ValidationError("site '" + s.label + "' has dimension < 2");
  }
  strides_.assign(sites_.size(), 1);
  for (std::size_t i = sites_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= sites_[i].dim;
  }
}

SiteLayout SiteLayout::qubits(const std::vector<std::string>& labels) {
  std::vector<Site> sites;
  for (const auto& l : labels) sites.push_back({l, 2});
  return SiteLayout(std::move(sites));
}

std::vector<std::size_t> SiteLayout::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : sites_) out.push_back(s.dim);
  return out;
}

std::vector<std::string> SiteLayout::labels() const {
  std::vector<std::string> out;
  for (const auto& s : sites_) out.push_back(s.label);
  return out;
}

std::size_t SiteLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < sites_.size(); ++i)
    if (sites_[i].label == label) return i;
  throw ValidationError("unknown site label '" + label + "'");
}

bool SiteLayout::contains(const std::string& label) const {
  for (const auto& s : sites_)
    if (s.label == label) return true;
  return false;
}

}  // namespace gwt
