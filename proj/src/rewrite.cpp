#include "singer/rewrite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace singer {

namespace {

using Tuple = std::vector<unsigned>;

// All r-subsets of {0, ..., n-1} in lexicographic order.
std::vector<Tuple> subsets(unsigned n, unsigned r) {
  std::vector<Tuple> out;
  if (r > n) return out;
  Tuple s(r);
  std::iota(s.begin(), s.end(), 0u);
  for (;;) {
    out.push_back(s);
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && s[i] == n - r + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++s[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

Tuple sorted_with(Tuple t, std::initializer_list<unsigned> extra) {
  t.insert(t.end(), extra);
  std::sort(t.begin(), t.end());
  return t;
}

struct LabelIndex {
  std::vector<Tuple> labels;
  std::map<Tuple, Index> index;

  LabelIndex(const FactorSpec& f, unsigned d) : labels(factor_labels(f, d)) {
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], static_cast<Index>(i));
  }
  Index operator[](const Tuple& t) const { return index.at(t); }
};

// Position of one tensor factor inside the Kronecker product.
struct Layout {
  Index fdim = 1;
  Index stride = 1;
  std::vector<Index> rests;  // offsets contributed by the other factors
};

Layout make_layout(const ModuleSpec& spec, std::size_t f) {
  Layout L;
  Index total = 1;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    Index n = static_cast<Index>(dim(spec.factors[i], spec.d));
    total *= n;
    if (i == f) L.fdim = n;
    if (i > f) L.stride *= n;
  }
  for (Index i = 0; i < total; ++i)
    if ((i / L.stride) % L.fdim == 0) L.rests.push_back(i);
  return L;
}

Mat block(const Mat& M, const Layout& L, Index pr, Index pc) {
  Mat B(L.fdim, L.fdim);
  for (Index a = 0; a < L.fdim; ++a)
    for (Index b = 0; b < L.fdim; ++b) B(a, b) = M(a * L.stride + pr, b * L.stride + pc);
  return B;
}

Mat conjugate_diagonal(const Mat& Y, const std::vector<Fe>& u) {
  // diag(u)^-1 * Y * diag(u)
  Mat Z = Y;
  for (Index a = 0; a < Y.rows(); ++a)
    for (Index b = 0; b < Y.cols(); ++b) Z(a, b) = Y(a, b) * u[b] / u[a];
  return Z;
}

bool identity_gauge(const FactorSpec& f, unsigned d) {
  if (d == 1 || f.kind == FactorKind::Natural || f.k == 1) return true;
  return f.kind == FactorKind::Ext && f.k + 1 >= d;
}

u64 multinomial(const Tuple& m) {
  u64 r = 1;
  unsigned n = 0;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    for (std::size_t t = i; t < j; ++t) r = r * (++n) / (t - i + 1);
    i = j;
  }
  return r;
}

struct Ratio {
  Index a, b, c, e;  // u_a u_b = value * u_c u_e
  Fe value;
};

// Recovers, up to the torus, the diagonal U in Y = U * ext^k(B) * U^-1 from the three-term
// Plucker relations satisfied by every column of ext^k(B).
std::optional<std::vector<Fe>> plucker_gauge(const Mat& Y, unsigned k, unsigned d) {
  const GaloisField& F = *field_of(Y);
  LabelIndex idx(FactorSpec::ext(k), d);
  const Index n = static_cast<Index>(idx.labels.size());
  std::vector<Ratio> eqs;
  for (const Tuple& R : subsets(d, k - 2)) {
    Tuple comp;
    for (unsigned i = 0; i < d; ++i)
      if (!std::binary_search(R.begin(), R.end(), i)) comp.push_back(i);
    for (const Tuple& quad : subsets(static_cast<unsigned>(comp.size()), 4)) {
      unsigned a = comp[quad[0]], b = comp[quad[1]], c = comp[quad[2]], e = comp[quad[3]];
      Index i1 = idx[sorted_with(R, {a, b})], i2 = idx[sorted_with(R, {c, e})];
      Index i3 = idx[sorted_with(R, {a, c})], i4 = idx[sorted_with(R, {b, e})];
      Index i5 = idx[sorted_with(R, {a, e})], i6 = idx[sorted_with(R, {b, c})];
      Mat A(n, 3);
      for (Index J = 0; J < n; ++J) {
        A(J, 0) = Y(i1, J) * Y(i2, J);
        A(J, 1) = -(Y(i3, J) * Y(i4, J));
        A(J, 2) = Y(i5, J) * Y(i6, J);
      }
      auto ker = kernel_basis(A);
      if (ker.empty()) return std::nullopt;
      if (ker.size() != 1) continue;
      const Vec& z = ker[0];
      if (z(0).is_zero() || z(1).is_zero() || z(2).is_zero()) return std::nullopt;
      eqs.push_back({i3, i4, i1, i2, z(0) / z(1)});
      eqs.push_back({i5, i6, i1, i2, z(0) / z(2)});
    }
  }
  std::vector<Fe> u(static_cast<std::size_t>(n));
  std::vector<bool> known(static_cast<std::size_t>(n), false);
  auto seed = [&](const Tuple& t) {
    Index i = idx[t];
    u[i] = F.one();
    known[i] = true;
  };
  Tuple S0(k);
  std::iota(S0.begin(), S0.end(), 0u);
  seed(S0);
  for (unsigned j = k; j < d; ++j) {
    Tuple t = S0;
    t[k - 1] = j;
    seed(t);
  }
  for (unsigned i = 0; i + 1 < k; ++i) {
    Tuple t = S0;
    t.erase(t.begin() + i);
    seed(sorted_with(t, {k}));
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (const Ratio& r : eqs) {
      int unknown = !known[r.a] + !known[r.b] + !known[r.c] + !known[r.e];
      if (unknown != 1) continue;
      if (!known[r.a]) u[r.a] = r.value * u[r.c] * u[r.e] / u[r.b], known[r.a] = true;
      else if (!known[r.b]) u[r.b] = r.value * u[r.c] * u[r.e] / u[r.a], known[r.b] = true;
      else if (!known[r.c]) u[r.c] = u[r.a] * u[r.b] / (r.value * u[r.e]), known[r.c] = true;
      else u[r.e] = u[r.a] * u[r.b] / (r.value * u[r.c]), known[r.e] = true;
      progress = true;
    }
  }
  if (std::find(known.begin(), known.end(), false) != known.end()) return std::nullopt;
  for (const Ratio& r : eqs)
    if (u[r.a] * u[r.b] != r.value * u[r.c] * u[r.e]) return std::nullopt;
  return u;
}

std::optional<std::vector<Fe>> block_gauge(const Mat& Y, const FactorSpec& f, unsigned d) {
  const GaloisField& F = *field_of(Y);
  if (identity_gauge(f, d)) return std::vector<Fe>(static_cast<std::size_t>(Y.rows()), F.one());
  if (f.kind == FactorKind::Ext) return plucker_gauge(Y, f.k, d);
  LabelIndex idx(FactorSpec::sym(f.k), d);
  for (unsigned j0 = 0; j0 < d; ++j0) {
    Index col = idx[Tuple(f.k, j0)];
    bool full = true;
    for (Index M = 0; M < Y.rows() && full; ++M) full = !Y(M, col).is_zero();
    if (!full) continue;
    std::vector<Fe> u;
    for (Index M = 0; M < Y.rows(); ++M) u.push_back(Y(M, col) / F.from_int(static_cast<i64>(multinomial(idx.labels[M]))));
    return u;
  }
  return std::nullopt;
}

// Solves Y = c * F(B) for B, given that such a B exists; returns nullopt otherwise.
std::optional<Mat> clean_extract(const Mat& Y, const FactorSpec& f, unsigned d) {
  const GaloisField& F = *field_of(Y);
  if (d == 1) return identity(F, 1);
  if (f.kind == FactorKind::Natural || f.k == 1) return Y;
  const FactorSpec plain{f.kind, f.k, 0};
  LabelIndex idx(plain, d);
  const unsigned k = f.k;
  Mat V = zeros(F, d, d);
  if (f.kind == FactorKind::Sym) {
    const Fe kk = F.from_int(k);
    for (unsigned j = 0; j < d; ++j) {
      Index col = idx[Tuple(k, j)];
      unsigned u = 0;
      while (u < d && Y(idx[Tuple(k, u)], col).is_zero()) ++u;
      if (u == d) return std::nullopt;
      Fe piv = kk * Y(idx[Tuple(k, u)], col);
      for (unsigned v = 0; v < d; ++v) {
        if (v == u) {
          V(v, j) = F.one();
        } else {
          Tuple t(k - 1, u);
          V(v, j) = Y(idx[sorted_with(t, {v})], col) / piv;
        }
      }
    }
  } else {
    // column J spans the plane of b_J; contractions with (k-1)-subsets lie in it
    const auto faces = subsets(d, k - 1);
    std::vector<Mat> ann(idx.labels.size());
    for (std::size_t J = 0; J < idx.labels.size(); ++J) {
      Mat W = zeros(F, d, static_cast<Index>(faces.size()));
      for (std::size_t s = 0; s < faces.size(); ++s) {
        const Tuple& S = faces[s];
        for (unsigned i = 0; i < d; ++i) {
          if (std::binary_search(S.begin(), S.end(), i)) continue;
          long above = std::count_if(S.begin(), S.end(), [i](unsigned x) { return x > i; });
          Fe w = Y(idx[sorted_with(S, {i})], static_cast<Index>(J));
          W(i, static_cast<Index>(s)) = (above % 2) ? -w : w;
        }
      }
      auto a = kernel_basis(Mat(W.transpose()));
      Mat A(static_cast<Index>(a.size()), d);
      for (std::size_t r = 0; r < a.size(); ++r) A.row(static_cast<Index>(r)) = a[r].transpose();
      ann[J] = A;
    }
    for (unsigned j = 0; j < d; ++j) {
      std::vector<Mat> rows;
      Index total = 0;
      for (std::size_t J = 0; J < idx.labels.size(); ++J) {
        const Tuple& t = idx.labels[J];
        if (!std::binary_search(t.begin(), t.end(), j)) continue;
        rows.push_back(ann[J]);
        total += ann[J].rows();
      }
      Mat stacked(total, d);
      Index at = 0;
      for (const Mat& A : rows) {
        stacked.middleRows(at, A.rows()) = A;
        at += A.rows();
      }
      auto line = kernel_basis(stacked);
      if (line.size() != 1) return std::nullopt;
      V.col(j) = normalize_first(line[0]);
    }
  }
  if (rank(V) != d) return std::nullopt;
  Mat FV = factor_matrix(plain, V);
  std::vector<Fe> R(static_cast<std::size_t>(FV.cols()));
  for (Index M = 0; M < FV.cols(); ++M) {
    Index i = 0;
    while (i < FV.rows() && FV(i, M).is_zero()) ++i;
    if (i == FV.rows() || Y(i, M).is_zero()) return std::nullopt;
    R[M] = Y(i, M) / FV(i, M);
  }
  Mat B = V;
  for (unsigned j = 1; j < d; ++j) {
    Fe tau;
    if (f.kind == FactorKind::Sym) {
      tau = R[idx[sorted_with(Tuple(k - 1, 0), {j})]] / R[idx[Tuple(k, 0)]];
    } else {
      Tuple S;
      for (unsigned i = 1; i < d && S.size() + 1 < k; ++i)
        if (i != j) S.push_back(i);
      tau = R[idx[sorted_with(S, {j})]] / R[idx[sorted_with(S, {0})]];
    }
    B.col(j) *= tau;
  }
  if (!proportionality(Y, factor_matrix(plain, B))) return std::nullopt;
  return B;
}

bool usable(const FactorSpec& f, unsigned d) {
  if (f.kind != FactorKind::Natural && f.k == 0) return false;
  if (d == 1) return true;
  return !(f.kind == FactorKind::Ext && f.k >= d);
}

Mat word_product(const std::vector<Mat>& gens, const std::vector<std::size_t>& word) {
  Mat P = gens[word[0]];
  for (std::size_t i = 1; i < word.size(); ++i) P = P * gens[word[i]];
  return P;
}

std::vector<std::size_t> random_word(std::size_t ngens, unsigned lo, unsigned hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> len(lo, std::max(lo, hi));
  std::uniform_int_distribution<std::size_t> pick(0, ngens - 1);
  std::vector<std::size_t> w(std::max(1u, len(rng)));
  for (auto& x : w) x = pick(rng);
  return w;
}

std::string entry_witness(std::size_t x, const Mat& lhs, const Mat& rhs) {
  std::ostringstream os;
  os << "generator " << x << ": ";
  // scale from the first nonzero entry of rhs, then report the first disagreement
  Index pr = -1, pc = -1;
  for (Index i = 0; i < rhs.rows() && pr < 0; ++i)
    for (Index j = 0; j < rhs.cols(); ++j)
      if (!rhs(i, j).is_zero()) {
        pr = i, pc = j;
        break;
      }
  if (pr < 0) {
    os << "conjugated generator is zero";
    return os.str();
  }
  Fe c = lhs(pr, pc) / rhs(pr, pc);
  for (Index i = 0; i < rhs.rows(); ++i)
    for (Index j = 0; j < rhs.cols(); ++j)
      if (lhs(i, j) != c * rhs(i, j)) {
        os << "entry (" << i << "," << j << ") breaks proportionality";
        return os.str();
      }
  os << "scalar is zero";
  return os.str();
}

Mat to_field(const Mat& A, const GaloisField& F) {
  const GaloisField* G = field_of(A);
  if (G && !G->same_as(F)) throw Error(ErrorCode::FieldMismatch, "generator is not over F_q");
  return from_codes(F, to_codes(A));
}

} // namespace

unsigned RewriteConfig::element_trials() const {
  if (max_element_trials > 0) return max_element_trials;
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidInput, "failure budget must lie in (0,1)");
  return static_cast<unsigned>(std::ceil(std::log2(1.0 / epsilon))) * 8u;
}

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::BudgetExhausted: return "BudgetExhausted";
    case FailureKind::NotSingerSpectrum: return "NotSingerSpectrum";
    case FailureKind::DegenerateEntries: return "DegenerateEntries";
  }
  return "Unknown";
}

ProductReplacement::ProductReplacement(const std::vector<Mat>& generators, std::mt19937_64& rng, std::size_t slots,
                                       unsigned warmup)
    : rng_(rng) {
  if (generators.empty()) throw Error(ErrorCode::InvalidInput, "product replacement needs at least one generator");
  slots = std::max(slots, generators.size());
  for (std::size_t i = 0; i < slots; ++i) slots_.push_back(generators[i % generators.size()]);
  acc_ = identity(*field_of(generators[0]), generators[0].rows());
  for (unsigned i = 0; i < warmup; ++i) step();
}

void ProductReplacement::step() {
  std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
  std::size_t i = pick(rng_);
  std::size_t j = pick(rng_);
  if (slots_.size() > 1)
    while (j == i) j = pick(rng_);
  slots_[i] = (rng_() & 1) ? Mat(slots_[i] * slots_[j]) : Mat(slots_[j] * slots_[i]);
  acc_ = acc_ * slots_[i];
}

Mat ProductReplacement::next() {
  step();
  return acc_;
}

Mat random_element(const std::vector<Mat>& generators, std::mt19937_64& rng) {
  ProductReplacement pr(generators, rng);
  return pr.next();
}

std::optional<std::size_t> extraction_factor(const ModuleSpec& spec) {
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    if (usable(spec.factors[i], spec.d)) return i;
  return std::nullopt;
}

std::variant<OmegaLabeling, Failure> recover_omega(const std::vector<Fe>& eigenvalues, const ModuleSpec& spec,
                                                   const FieldCtx& ctx, RewriteStats* stats) {
  auto fail = [&](const std::string& why) { return Failure{FailureKind::NotSingerSpectrum, why, stats ? *stats : RewriteStats{}}; };
  const auto labels = basis_labels(spec);
  const std::size_t n = labels.size();
  if (eigenvalues.size() != n) return fail("eigenvalue count differs from dim(W)");
  std::unordered_map<u64, std::size_t> where;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ctx.is_qd(eigenvalues[i]) && !ctx.is_q(eigenvalues[i])) return fail("eigenvalue outside F_{q^d}");
    if (!where.emplace(ctx.embed(eigenvalues[i]).value(), i).second) return fail("repeated eigenvalue");
  }
  const u64 N = ctx.N();
  const u64 q = ctx.q();
  std::vector<u64> E(n);
  for (std::size_t i = 0; i < n; ++i) E[i] = exponent_u64(labels[i].digits, q) % N;
  const Fe gamma = ctx.primitive_qd();
  const Fe lambda0 = ctx.embed(eigenvalues[0]);
  if (lambda0.is_zero()) return fail("zero eigenvalue");
  if (stats) ++stats->dlog_calls;
  const u64 L = discrete_log(lambda0, gamma);

  // lambda0 is the image of some label; try labels with small gcd(E, N) first
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gcd_u64(E[a], N) < gcd_u64(E[b], N); });
  for (std::size_t i0 : order) {
    const u64 g = gcd_u64(E[i0], N);
    if (L % g != 0) continue;
    const u64 Ng = N / g;
    const u64 m0 = Ng == 1 ? 0 : mulmod(L / g % Ng, invmod(E[i0] / g % Ng, Ng), Ng);
    for (u64 t = 0; t < g; ++t) {
      const u64 m = m0 + t * Ng;
      if (gcd_u64(m, N) != 1) continue;
      std::vector<std::size_t> label_of(n, n);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        auto it = where.find(gamma.pow(mulmod(m, E[i], N)).value());
        if (it == where.end() || label_of[it->second] != n) ok = false;
        else label_of[it->second] = i;
      }
      if (ok) return OmegaLabeling{gamma.pow(m), label_of};
    }
  }
  return fail("no primitive omega reproduces the spectrum");
}

std::optional<SingerCandidate> test_candidate(const Mat& s, const ModuleSpec& spec, const FieldCtx& ctx, RewriteStats* stats) {
  const GaloisField& Fq = ctx.Fq();
  DensePoly chi = char_poly(s);
  if (!is_squarefree(chi)) return std::nullopt;
  const DensePoly x = DensePoly::x(&Fq);
  // x^N = 1 mod chi: every root is a distinct nonzero element of F_{q^d}
  if (!powmod(x, ctx.N(), chi).is_one()) return std::nullopt;
  auto ppd = ppd_primes(ctx.q(), ctx.d());
  if (!ppd.empty()) {
    bool hit = false;
    for (u64 r : ppd) hit = hit || !powmod(x, ctx.N() / r, chi).is_one();
    if (!hit) return std::nullopt;
  }
  auto roots = roots_in_extension(chi, ctx);
  if (roots.size() != static_cast<std::size_t>(s.rows())) return std::nullopt;
  std::vector<Fe> eig;
  for (auto& [v, m] : roots) eig.push_back(v);
  auto om = recover_omega(eig, spec, ctx, stats);
  if (std::holds_alternative<Failure>(om)) return std::nullopt;
  return SingerCandidate{s, eig, std::get<OmegaLabeling>(om)};
}

std::variant<SingerCandidate, Failure> find_singer_candidate(const std::vector<Mat>& generators, const ModuleSpec& spec,
                                                             const FieldCtx& ctx, const RewriteConfig& cfg) {
  RewriteStats stats;
  std::mt19937_64 rng(cfg.seed);
  std::vector<Mat> gens;
  for (const Mat& g : generators) gens.push_back(to_field(g, ctx.Fq()));
  ProductReplacement pr(gens, rng);
  const unsigned trials = cfg.element_trials();
  for (unsigned t = 0; t < trials; ++t) {
    Mat s = pr.next();
    ++stats.elements_sampled;
    if (auto c = test_candidate(s, spec, ctx, &stats)) return *c;
  }
  return Failure{FailureKind::BudgetExhausted, "no Singer-type element among " + std::to_string(trials) + " samples", stats};
}

Mat build_eigenbasis(const Mat& s, const std::vector<Fe>& eigenvalues, const OmegaLabeling& labeling, const FieldCtx& ctx) {
  const Index n = s.rows();
  Mat St = embed(s, ctx).transpose();
  Mat C = zeros(ctx.Fqd(), n, n);
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    Mat A = St;
    for (Index i = 0; i < n; ++i) A(i, i) -= ctx.embed(eigenvalues[j]);
    auto ker = kernel_basis(A);
    if (ker.size() != 1) throw Error(ErrorCode::InvalidInput, "eigenvalue is not simple");
    C.row(static_cast<Index>(labeling.label_of[j])) = normalize_first(ker[0]).transpose();
  }
  return C;
}

std::optional<std::vector<Fe>> find_diagonal_gauge(const Mat& Mhat, const ModuleSpec& spec, const FieldCtx& ctx) {
  auto fi = extraction_factor(spec);
  if (!fi) return std::nullopt;
  const FactorSpec& f = spec.factors[*fi];
  const Layout lay = make_layout(spec, *fi);
  std::optional<Mat> Y;
  for (Index r : lay.rests) {
    Mat B = block(Mhat, lay, r, r);
    if (!is_zero(B)) {
      Y = B;
      break;
    }
  }
  if (!Y) return std::nullopt;
  auto u = block_gauge(*Y, f, spec.d);
  if (!u) return std::nullopt;
  auto Bt = clean_extract(conjugate_diagonal(*Y, *u), f, spec.d);
  if (!Bt) return std::nullopt;
  Mat N = induced_matrix(spec, frobenius(*Bt, ctx, -static_cast<long long>(f.twist)));

  const Index n = Mhat.rows();
  std::optional<Fe> mu;
  for (Index L = 0; L < n && !mu; ++L)
    if (!Mhat(L, L).is_zero() && !N(L, L).is_zero()) mu = N(L, L) / Mhat(L, L);
  if (!mu) return std::nullopt;
  // Mhat(L,M) * mu = (h_L / h_M) * N(L,M)
  std::vector<Fe> h(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  h[0] = ctx.Fqd().one();
  seen[0] = true;
  std::deque<Index> queue{0};
  while (!queue.empty()) {
    Index M = queue.front();
    queue.pop_front();
    for (Index L = 0; L < n; ++L) {
      if (seen[L]) continue;
      if (!Mhat(L, M).is_zero() && !N(L, M).is_zero()) h[L] = *mu * Mhat(L, M) * h[M] / N(L, M);
      else if (!Mhat(M, L).is_zero() && !N(M, L).is_zero()) h[L] = h[M] * N(M, L) / (*mu * Mhat(M, L));
      else continue;
      seen[L] = true;
      queue.push_back(L);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return std::nullopt;
  for (Index L = 0; L < n; ++L)
    for (Index M = 0; M < n; ++M)
      if (Mhat(L, M) * *mu * h[M] != h[L] * N(L, M)) return std::nullopt;
  return h;
}

std::variant<Mat, Failure> reconstruct_generator(const Mat& Mhat, const ModuleSpec& spec, const FieldCtx& ctx) {
  auto fi = extraction_factor(spec);
  if (!fi) throw Error(ErrorCode::ConstraintViolation, "no tensor factor determines the natural module");
  if (Mhat.rows() != static_cast<Index>(dim(spec)) || Mhat.cols() != Mhat.rows())
    throw Error(ErrorCode::ShapeMismatch, "matrix size differs from dim(W)");
  const FactorSpec& f = spec.factors[*fi];
  const Layout lay = make_layout(spec, *fi);
  for (Index pr : lay.rests)
    for (Index pc : lay.rests) {
      Mat Y = block(Mhat, lay, pr, pc);
      if (is_zero(Y)) continue;
      auto Bt = clean_extract(Y, f, spec.d);
      if (!Bt) return Failure{FailureKind::DegenerateEntries, "block does not have functor shape", {}};
      Mat B = normalize_pivot(frobenius(*Bt, ctx, -static_cast<long long>(f.twist)));
      if (!proportionality(Mhat, induced_matrix(spec, B)))
        return Failure{FailureKind::DegenerateEntries, "reconstruction does not reproduce the input", {}};
      return B;
    }
  return Failure{FailureKind::DegenerateEntries, "input matrix is zero", {}};
}

Verdict verify_projective(const std::vector<Mat>& phi, const std::vector<Mat>& generators, const Mat& C,
                          const ModuleSpec& spec, const FieldCtx& ctx, const RewriteConfig& cfg) {
  Verdict v;
  if (phi.size() != generators.size() || generators.empty()) {
    v.witness = "phi and generator lists differ in length";
    return v;
  }
  const Index n = static_cast<Index>(dim(spec));
  if (C.rows() != n || C.cols() != n || det(C).is_zero()) {
    v.witness = "eigenbasis is not an invertible dim(W) x dim(W) matrix";
    return v;
  }
  const Mat Ci = inverse(C);
  std::vector<Mat> conj;
  for (std::size_t x = 0; x < phi.size(); ++x) {
    if (phi[x].rows() != static_cast<Index>(spec.d) || phi[x].cols() != static_cast<Index>(spec.d) || det(phi[x]).is_zero()) {
      v.witness = "generator " + std::to_string(x) + ": phi is not an invertible d x d matrix";
      return v;
    }
    Mat rhs = C * embed(to_field(generators[x], ctx.Fq()), ctx) * Ci;
    Mat lhs = induced_matrix(spec, embed(phi[x], ctx));
    auto mu = proportionality(lhs, rhs);
    if (!mu) {
      v.witness = entry_witness(x, lhs, rhs);
      v.scalars.clear();
      return v;
    }
    v.scalars.push_back(*mu);
    conj.push_back(rhs);
  }
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  for (unsigned w = 0; w < cfg.verification_words; ++w) {
    auto word = random_word(phi.size(), cfg.min_word_length, cfg.max_word_length, rng);
    auto direct = reconstruct_generator(word_product(conj, word), spec, ctx);
    Mat product = embed(word_product(phi, word), ctx);
    if (std::holds_alternative<Failure>(direct) || !proportionality(std::get<Mat>(direct), product)) {
      v.witness = "word " + std::to_string(w) + " of length " + std::to_string(word.size()) + " is not multiplicative";
      v.scalars.clear();
      return v;
    }
  }
  v.verified = true;
  return v;
}

std::variant<RewriteResult, Failure> rewrite(const std::vector<Mat>& generators, const ModuleSpec& spec, const RewriteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RewriteStats stats;
  FieldCtx ctx = FieldCtx::for_q(spec.q, spec.d);
  if (generators.empty()) throw Error(ErrorCode::InvalidInput, "rewrite needs at least one generator");
  auto report = check_constraints(spec, ctx.p());
  if (!report.ok()) throw Error(ErrorCode::ConstraintViolation, report.violations.front());
  auto mf = check_multiplicity_free(spec);
  if (!mf.multiplicity_free)
    throw Error(ErrorCode::ConstraintViolation, "W is not multiplicity-free: digits " + to_string(mf.witness) + " occur " +
                                                     std::to_string(mf.count) + " times");
  if (!extraction_factor(spec)) throw Error(ErrorCode::ConstraintViolation, "no tensor factor determines the natural module");
  const Index n = static_cast<Index>(dim(spec));
  std::vector<Mat> X, Xe;
  for (const Mat& g : generators) {
    if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::ShapeMismatch, "generator size differs from dim(W)");
    X.push_back(to_field(g, ctx.Fq()));
    Xe.push_back(embed(X.back(), ctx));
  }

  std::mt19937_64 rng(cfg.seed);
  ProductReplacement pr(X, rng);
  const unsigned trials = cfg.element_trials();
  for (unsigned t = 0; t < trials; ++t) {
    Mat s = pr.next();
    ++stats.elements_sampled;
    auto cand = test_candidate(s, spec, ctx, &stats);
    if (!cand) continue;

    Mat C0 = build_eigenbasis(s, cand->eigenvalues, cand->labeling, ctx);
    Mat C0i = inverse(C0);
    std::vector<Mat> Mh;
    for (const Mat& x : Xe) Mh.push_back(C0 * x * C0i);

    std::optional<std::vector<Fe>> h;
    for (unsigned a = 0; a < cfg.reference_attempts && !h; ++a) {
      Mat R = a < Mh.size() ? Mh[a] : word_product(Mh, random_word(Mh.size(), 2, 4, rng));
      h = find_diagonal_gauge(R, spec, ctx);
      if (!h) ++stats.retries;
    }
    if (!h) continue;
    Mat C = C0, Ci = C0i;
    for (Index L = 0; L < n; ++L) {
      C.row(L) /= (*h)[L];
      Ci.col(L) *= (*h)[L];
    }

    std::vector<Mat> phi;
    for (const Mat& x : Xe) {
      auto B = reconstruct_generator(C * x * Ci, spec, ctx);
      if (std::holds_alternative<Failure>(B)) break;
      phi.push_back(std::get<Mat>(B));
    }
    if (phi.size() != X.size()) {
      ++stats.retries;
      continue;
    }
    Verdict v = verify_projective(phi, X, C, spec, ctx, cfg);
    if (!v.verified) {
      ++stats.retries;
      continue;
    }
    stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return RewriteResult{ctx, spec, phi, C, cand->eigenvalues, cand->labeling.label_of, cand->labeling.omega, v.scalars, stats};
  }
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return Failure{FailureKind::BudgetExhausted, "no verified result within " + std::to_string(trials) + " element trials", stats};
}

} // namespace singer
