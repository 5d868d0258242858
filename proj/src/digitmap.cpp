#include "singer/digitmap.hpp"

#include <sstream>
#include <unordered_map>

namespace singer {

std::string to_string(const DigitVector& c) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ")";
  return os.str();
}

DigitVector base_q_expansion(const BigInt& E, const BigInt& q, unsigned d) {
  if (q < 2) throw Error(ErrorCode::InvalidInput, "base must be at least 2");
  if (E < 0 || E >= boost::multiprecision::pow(q, d)) throw Error(ErrorCode::InvalidInput, "exponent out of range for d digits");
  DigitVector out(d);
  BigInt r = E;
  for (unsigned i = 0; i < d; ++i) {
    out[i] = static_cast<unsigned>(r % q);
    r /= q;
  }
  return out;
}

BigInt phi(const DigitVector& b, const BigInt& q) {
  const unsigned d = static_cast<unsigned>(b.size());
  BigInt N = boost::multiprecision::pow(q, d) - 1;
  BigInt acc = 0, qp = 1;
  for (unsigned i = 0; i < d; ++i) {
    acc += qp * b[i];
    qp *= q;
  }
  return N == 0 ? acc : acc % N;
}

u64 exponent_u64(const DigitVector& c, u64 q) {
  const unsigned d = static_cast<unsigned>(c.size());
  u64 N = ipow(q, d) - 1;
  u64 acc = 0, qp = 1;
  for (unsigned i = 0; i < d; ++i) {
    acc = static_cast<u64>((static_cast<u128>(acc) + static_cast<u128>(qp) * c[i]) % N);
    qp = static_cast<u64>(static_cast<u128>(qp) * q % N);
  }
  return acc;
}

namespace {

// Residue set keyed by machine words when q^d - 1 fits, big integers otherwise.
class ResidueSet {
 public:
  ResidueSet(const BigInt& q, unsigned d) : q_(q) {
    BigInt qd = boost::multiprecision::pow(q, d);
    small_ = qd < (BigInt(1) << 62);
    if (small_) qs_ = static_cast<u64>(q);
  }
  /// Inserts phi(c); returns the index of an earlier vector with the same residue, if any.
  std::optional<std::uint64_t> insert(const DigitVector& c, std::uint64_t index, BigInt& residue) {
    if (small_) {
      u64 r = exponent_u64(c, qs_);
      residue = r;
      auto [it, fresh] = small_map_.emplace(r, index);
      if (!fresh) return it->second;
      return std::nullopt;
    }
    residue = phi(c, q_);
    std::string key = residue.str();
    auto [it, fresh] = big_map_.emplace(std::move(key), index);
    if (!fresh) return it->second;
    return std::nullopt;
  }

 private:
  BigInt q_;
  bool small_ = false;
  u64 qs_ = 0;
  std::unordered_map<u64, std::uint64_t> small_map_;
  std::unordered_map<std::string, std::uint64_t> big_map_;
};

} // namespace

InjectivityResult check_injectivity(const BigInt& q, unsigned d, unsigned C, std::uint64_t budget) {
  if (q < 2 || d < 1) throw Error(ErrorCode::InvalidInput, "need q >= 2 and d >= 1");
  BigInt total = boost::multiprecision::pow(BigInt(C) + 1, d);
  if (total > budget) throw Error(ErrorCode::CapacityExceeded, "enumeration of B_C exceeds the budget");
  ResidueSet seen(q, d);
  InjectivityResult res;
  // Vector (b_1..b_d) in lexicographic order: b_d varies fastest.
  DigitVector b(d, 0);
  std::uint64_t idx = 0;
  for (;;) {
    BigInt r;
    auto hit = seen.insert(b, idx, r);
    ++res.count;
    if (hit) {
      // regenerate the earlier vector from its index
      DigitVector a(d);
      std::uint64_t v = *hit;
      for (unsigned i = d; i-- > 0;) {
        a[i] = static_cast<unsigned>(v % (C + 1));
        v /= (C + 1);
      }
      res.injective = false;
      res.first = a;
      res.second = b;
      res.residue = r;
      return res;
    }
    ++idx;
    int pos = static_cast<int>(d) - 1;
    while (pos >= 0 && b[pos] == C) b[pos--] = 0;
    if (pos < 0) break;
    ++b[pos];
  }
  return res;
}

PatternEnumerator::PatternEnumerator(unsigned d, unsigned K) : d_(d), K_(K), cur_(d, 0) {
  if (d == 0) {
    done_ = true;
    return;
  }
  cur_[d - 1] = K;
}

void PatternEnumerator::next() {
  if (done_) return;
  unsigned tail = cur_[d_ - 1];
  int i = static_cast<int>(d_) - 2;
  while (i >= 0 && tail == 0) {
    tail += cur_[i];
    --i;
  }
  // i is now the rightmost index whose strict tail is nonzero
  if (i < 0) {
    done_ = true;
    return;
  }
  ++cur_[i];
  for (unsigned j = static_cast<unsigned>(i) + 1; j < d_; ++j) cur_[j] = 0;
  cur_[d_ - 1] = tail - 1;
}

std::vector<DigitVector> enumerate_patterns(unsigned d, unsigned K) {
  std::vector<DigitVector> out;
  for (PatternEnumerator it(d, K); !it.done(); it.next()) out.push_back(it.current());
  return out;
}

InjectivityResult check_injectivity_sumK(const BigInt& q, unsigned d, unsigned K, std::uint64_t budget) {
  if (q < 2 || d < 1) throw Error(ErrorCode::InvalidInput, "need q >= 2 and d >= 1");
  ResidueSet seen(q, d);
  InjectivityResult res;
  std::uint64_t idx = 0;
  for (PatternEnumerator it(d, K); !it.done(); it.next(), ++idx) {
    if (idx >= budget) throw Error(ErrorCode::CapacityExceeded, "pattern enumeration exceeds the budget");
    BigInt r;
    auto hit = seen.insert(it.current(), idx, r);
    ++res.count;
    if (hit) {
      // replay the stream to recover the earlier witness
      PatternEnumerator again(d, K);
      for (std::uint64_t k = 0; k < *hit; ++k) again.next();
      res.injective = false;
      res.first = again.current();
      res.second = it.current();
      res.residue = r;
      return res;
    }
  }
  return res;
}

DigitVector twisted_aggregate(const std::vector<TwistedPart>& parts, unsigned d) {
  DigitVector c(d, 0);
  for (const auto& part : parts) {
    if (part.b.size() != d) throw Error(ErrorCode::InvalidInput, "digit vector length differs from d");
    for (unsigned j = 0; j < d; ++j) c[j] += part.b[(j + d - part.twist % d) % d];
  }
  return c;
}

std::pair<u64, DigitVector> exponent_and_digits(const Fe& lambda, const Fe& omega, const FieldCtx& ctx) {
  u64 E = discrete_log(lambda, omega);
  return {E, base_q_expansion(BigInt(E), BigInt(ctx.q()), ctx.d())};
}

} // namespace singer
