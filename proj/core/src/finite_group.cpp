#include "fci/finite_group.hpp"

namespace fci {

TableGroup::TableGroup(std::size_t n, std::vector<Elem> table, std::vector<std::string> labels)
    : n_(n), table_(std::move(table)), inverse_(n), labels_(std::move(labels)) {
  if (n_ == 0 || table_.size() != n_ * n_) raise(ErrorCode::InvalidArgument, "Cayley table has wrong size");
  for (Elem v : table_) {
    if (v >= n_) raise(ErrorCode::InvalidArgument, "Cayley table entry out of range");
  }
  bool found = false;
  for (Elem e = 0; e < n_ && !found; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) raise(ErrorCode::InvalidArgument, "Cayley table has no identity");
  for (Elem a = 0; a < n_; ++a) {
    bool has_inverse = false;
    for (Elem b = 0; b < n_; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[a] = b;
        has_inverse = true;
        break;
      }
    }
    if (!has_inverse) raise(ErrorCode::InvalidArgument, "element " + std::to_string(a) + " has no inverse");
  }
  // Greedy generating set: add any element outside the current span.
  std::vector<char> in(n_, 0);
  in[identity_] = 1;
  for (Elem a = 0; a < n_; ++a) {
    if (in[a]) continue;
    generators_.push_back(a);
    in = algo::closure(*this, generators_);
  }
}

std::string TableGroup::label(Elem a) const {
  if (a < labels_.size()) return labels_[a];
  return "e" + std::to_string(a);
}

}  // namespace fci
