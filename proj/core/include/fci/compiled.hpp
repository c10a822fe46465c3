#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fci/dedekind.hpp"
#include "fci/finite_group.hpp"

namespace fci {

/// Index arithmetic on a finite Dedekind group together with the powers of a
/// power automorphism phi acting on it. Base elements are numbered as in
/// DedekindGroup::index_of. phi is given by one multiplier per torsion
/// component and a Q8 element q0 acting by conjugation.
class BaseArith {
 public:
  BaseArith(DedekindGroup base, std::vector<std::int64_t> multipliers, Q8Element inner,
            std::int64_t cap = kDefaultOrderCap);

  const DedekindGroup& base() const { return base_; }
  std::size_t size() const { return size_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  /// phi^k(a) for any integer k.
  Elem phi(std::int64_t k, Elem a) const;
  /// Order of phi on the base.
  std::int64_t period() const { return period_; }
  const std::vector<Elem>& generators() const { return generators_; }

  Elem encode(const DElement& d) const;
  DElement decode(Elem a) const;

 private:
  Elem tors_index(const std::int32_t* digits) const;

  DedekindGroup base_;
  std::size_t size_ = 1;
  std::size_t tsize_ = 1;
  std::size_t ncomp_ = 0;
  bool q8_ = false;
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int32_t> digits_;           // tsize_ x ncomp_
  std::vector<std::vector<std::int64_t>> pow_;  // period_ x ncomp_
  std::vector<Q8Element> inner_pow_;            // period_
  std::int64_t period_ = 1;
  std::vector<Elem> generators_;
};

/// A finite group <g> D with g^m = d0 and g^-1 d g = phi(d), elements
/// numbered k * |D| + index(d) for the normal form g^k d, 0 <= k < m.
/// Satisfies IndexedGroup. The caller guarantees the cocycle conditions
/// phi(d0) = d0 and phi^m = conjugation by d0.
class CompiledGroup {
 public:
  CompiledGroup(std::shared_ptr<const BaseArith> base, std::int64_t top_order, Elem d0,
                std::int64_t cap = kDefaultOrderCap);

  /// The Dedekind group itself (trivial top).
  static CompiledGroup of(const DedekindGroup& d, std::int64_t cap = kDefaultOrderCap);

  std::size_t order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  std::vector<Elem> generators() const { return generators_; }
  std::string label(Elem a) const;

  const BaseArith& base() const { return *base_; }
  std::int64_t top_order() const { return m_; }
  Elem make(std::int64_t k, Elem d) const;
  std::int64_t top_of(Elem a) const { return static_cast<std::int64_t>(a / base_->size()); }
  Elem base_of(Elem a) const { return static_cast<Elem>(a % base_->size()); }

 private:
  std::shared_ptr<const BaseArith> base_;
  std::int64_t m_;
  Elem d0_;
  std::size_t order_;
  std::vector<Elem> generators_;
};

}  // namespace fci
