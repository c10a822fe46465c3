#include "fci/compiled.hpp"

#include <numeric>

#include "fci/padic.hpp"

namespace fci {

BaseArith::BaseArith(DedekindGroup base, std::vector<std::int64_t> multipliers, Q8Element inner,
                     std::int64_t cap)
    : base_(std::move(base)) {
  if (!base_.is_periodic()) raise(ErrorCode::InfiniteBase, base_.to_string() + " is not finite");
  const std::int64_t n = base_.size();
  if (n > cap) raise(ErrorCode::OrderCapExceeded, "base order " + std::to_string(n) + " exceeds cap");
  q8_ = base_.is_hamiltonian();
  size_ = static_cast<std::size_t>(n);
  tsize_ = static_cast<std::size_t>(base_.torsion().order());
  ncomp_ = base_.torsion().num_components();
  if (multipliers.size() != ncomp_) raise(ErrorCode::GroupMismatch, "one multiplier per torsion component expected");

  for (const auto& c : base_.torsion().components()) moduli_.push_back(c.modulus());
  strides_.assign(ncomp_, 1);
  for (std::size_t i = ncomp_; i-- > 1;) strides_[i - 1] = strides_[i] * moduli_[i];

  digits_.resize(tsize_ * ncomp_);
  for (std::size_t t = 0; t < tsize_; ++t) {
    std::size_t rest = t;
    for (std::size_t i = ncomp_; i-- > 0;) {
      digits_[t * ncomp_ + i] = static_cast<std::int32_t>(rest % static_cast<std::size_t>(moduli_[i]));
      rest /= static_cast<std::size_t>(moduli_[i]);
    }
  }

  period_ = 1;
  for (std::size_t i = 0; i < ncomp_; ++i) {
    multipliers[i] = num::mod(multipliers[i], moduli_[i]);
    period_ = std::lcm(period_, num::unit_order(multipliers[i], moduli_[i]));
  }
  if (q8_ && inner.unit() != Q8Element::One) period_ = std::lcm(period_, std::int64_t{2});
  if (period_ > cap) raise(ErrorCode::OrderCapExceeded, "automorphism order exceeds cap");

  pow_.assign(static_cast<std::size_t>(period_), std::vector<std::int64_t>(ncomp_, 1));
  inner_pow_.assign(static_cast<std::size_t>(period_), Q8Element());
  for (std::int64_t k = 1; k < period_; ++k) {
    for (std::size_t i = 0; i < ncomp_; ++i) {
      pow_[k][i] = num::mulmod(pow_[k - 1][i], multipliers[i], moduli_[i]);
    }
    inner_pow_[k] = inner_pow_[k - 1] * inner;
  }

  for (const auto& d : base_.generators()) generators_.push_back(encode(d));
}

Elem BaseArith::tors_index(const std::int32_t* digits) const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < ncomp_; ++i) t += digits[i] * strides_[i];
  return static_cast<Elem>(t);
}

Elem BaseArith::mul(Elem a, Elem b) const {
  const std::size_t qa = a / tsize_, ta = a % tsize_;
  const std::size_t qb = b / tsize_, tb = b % tsize_;
  const std::int32_t* da = &digits_[ta * ncomp_];
  const std::int32_t* db = &digits_[tb * ncomp_];
  std::int64_t t = 0;
  for (std::size_t i = 0; i < ncomp_; ++i) {
    std::int64_t v = da[i] + db[i];
    if (v >= moduli_[i]) v -= moduli_[i];
    t += v * strides_[i];
  }
  std::size_t q = 0;
  if (q8_) {
    q = (Q8Element::from_code(static_cast<std::uint8_t>(qa)) * Q8Element::from_code(static_cast<std::uint8_t>(qb))).code();
  }
  return static_cast<Elem>(q * tsize_ + static_cast<std::size_t>(t));
}

Elem BaseArith::inv(Elem a) const {
  const std::size_t qa = a / tsize_, ta = a % tsize_;
  const std::int32_t* da = &digits_[ta * ncomp_];
  std::int64_t t = 0;
  for (std::size_t i = 0; i < ncomp_; ++i) {
    if (da[i] != 0) t += (moduli_[i] - da[i]) * strides_[i];
  }
  std::size_t q = 0;
  if (q8_) q = Q8Element::from_code(static_cast<std::uint8_t>(qa)).inverse().code();
  return static_cast<Elem>(q * tsize_ + static_cast<std::size_t>(t));
}

Elem BaseArith::phi(std::int64_t k, Elem a) const {
  const auto kk = static_cast<std::size_t>(num::mod(k, period_));
  const std::size_t qa = a / tsize_, ta = a % tsize_;
  const std::int32_t* da = &digits_[ta * ncomp_];
  const std::vector<std::int64_t>& mult = pow_[kk];
  std::int64_t t = 0;
  for (std::size_t i = 0; i < ncomp_; ++i) t += (da[i] * mult[i] % moduli_[i]) * strides_[i];
  std::size_t q = 0;
  if (q8_) q = Q8Element::from_code(static_cast<std::uint8_t>(qa)).conjugated_by(inner_pow_[kk]).code();
  return static_cast<Elem>(q * tsize_ + static_cast<std::size_t>(t));
}

Elem BaseArith::encode(const DElement& d) const { return static_cast<Elem>(base_.index_of(d)); }

DElement BaseArith::decode(Elem a) const { return base_.element_at(a); }

CompiledGroup::CompiledGroup(std::shared_ptr<const BaseArith> base, std::int64_t top_order, Elem d0,
                             std::int64_t cap)
    : base_(std::move(base)), m_(top_order), d0_(d0) {
  if (m_ < 1) raise(ErrorCode::InvalidArgument, "top order must be >= 1");
  if (static_cast<std::int64_t>(base_->size()) > cap / m_) {
    raise(ErrorCode::OrderCapExceeded, "group order " + std::to_string(m_) + " x " +
                                           std::to_string(base_->size()) + " exceeds cap " + std::to_string(cap));
  }
  order_ = static_cast<std::size_t>(m_) * base_->size();
  if (m_ > 1) generators_.push_back(make(1, base_->identity()));
  for (Elem d : base_->generators()) generators_.push_back(d);
}

CompiledGroup CompiledGroup::of(const DedekindGroup& d, std::int64_t cap) {
  auto arith = std::make_shared<const BaseArith>(
      d, std::vector<std::int64_t>(d.torsion().num_components(), 1), Q8Element(), cap);
  return CompiledGroup(std::move(arith), 1, 0, cap);
}

Elem CompiledGroup::make(std::int64_t k, Elem d) const {
  return static_cast<Elem>(static_cast<std::size_t>(num::mod(k, m_)) * base_->size() + d);
}

Elem CompiledGroup::mul(Elem a, Elem b) const {
  const std::size_t n = base_->size();
  const std::int64_t k1 = a / n, k2 = b / n;
  const Elem d1 = static_cast<Elem>(a % n), d2 = static_cast<Elem>(b % n);
  Elem d = base_->mul(base_->phi(k2, d1), d2);
  std::int64_t k = k1 + k2;
  if (k >= m_) {
    k -= m_;
    d = base_->mul(d0_, d);
  }
  return static_cast<Elem>(static_cast<std::size_t>(k) * n + d);
}

Elem CompiledGroup::inv(Elem a) const {
  const std::size_t n = base_->size();
  const std::int64_t k = a / n;
  const Elem d = static_cast<Elem>(a % n);
  if (k == 0) return base_->inv(d);
  const Elem e = base_->inv(base_->mul(d0_, base_->phi(m_ - k, d)));
  return static_cast<Elem>(static_cast<std::size_t>(m_ - k) * n + e);
}

std::string CompiledGroup::label(Elem a) const {
  const std::string d = to_string(base_->decode(base_of(a)));
  if (m_ == 1) return d;
  return "g^" + std::to_string(top_of(a)) + "*" + d;
}

}  // namespace fci
