#include "singer/schur.hpp"

#include <map>
#include <regex>
#include <sstream>

namespace singer {

std::string to_string(const FactorSpec& f) {
  std::ostringstream os;
  switch (f.kind) {
    case FactorKind::Natural: os << "nat"; break;
    case FactorKind::Sym: os << "sym(" << f.k << ")"; break;
    case FactorKind::Ext: os << "ext(" << f.k << ")"; break;
  }
  os << "@" << f.twist;
  return os.str();
}

std::string factors_to_string(const std::vector<FactorSpec>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? "," : "") + to_string(fs[i]);
  return out;
}

std::string to_string(const ModuleSpec& s) {
  return "d=" + std::to_string(s.d) + " q=" + std::to_string(s.q) + " factors=[" + factors_to_string(s.factors) + "]";
}

std::vector<FactorSpec> parse_factors(const std::string& text) {
  std::string body = text;
  auto first = body.find_first_not_of(" \t");
  auto last = body.find_last_not_of(" \t");
  body = first == std::string::npos ? "" : body.substr(first, last - first + 1);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw Error(ErrorCode::ParseError, "unbalanced brackets in factor list");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<FactorSpec> out;
  if (body.find_first_not_of(" \t") == std::string::npos) return out;
  static const std::regex tok(R"(^\s*(nat|sym\((\d+)\)|ext\((\d+)\))(?:@(\d+))?\s*$)");
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::smatch m;
    if (!std::regex_match(item, m, tok)) throw Error(ErrorCode::ParseError, "bad factor '" + item + "'");
    FactorSpec f;
    if (m[1] == "nat") {
      f = FactorSpec::nat();
    } else if (m[2].matched) {
      f = FactorSpec::sym(static_cast<unsigned>(std::stoul(m[2])));
    } else {
      f = FactorSpec::ext(static_cast<unsigned>(std::stoul(m[3])));
    }
    if (m[4].matched) f.twist = static_cast<unsigned>(std::stoul(m[4]));
    if (f.kind != FactorKind::Natural && f.k == 0) throw Error(ErrorCode::ParseError, "factor degree must be positive");
    out.push_back(f);
  }
  return out;
}

ModuleSpec parse_module_spec(const std::string& text) {
  static const std::regex re(R"(^\s*d\s*=\s*(\d+)\s+q\s*=\s*(\d+)\s+factors\s*=\s*(\[.*\])\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::ParseError, "expected 'd=<int> q=<int> factors=[...]'");
  ModuleSpec s;
  s.d = static_cast<unsigned>(std::stoul(m[1]));
  s.q = std::stoull(m[2]);
  s.factors = parse_factors(m[3]);
  return s;
}

u64 dim(const FactorSpec& f, unsigned d) {
  switch (f.kind) {
    case FactorKind::Natural: return d;
    case FactorKind::Sym: return binomial(d + f.k - 1, f.k);
    case FactorKind::Ext: return binomial(d, f.k);
  }
  return 0;
}

u64 dim(const ModuleSpec& s) {
  u64 n = 1;
  for (const auto& f : s.factors) {
    u64 m = dim(f, s.d);
    if (m != 0 && n > ~0ull / m) throw Error(ErrorCode::CapacityExceeded, "module dimension exceeds 64 bits");
    n *= m;
  }
  return n;
}

unsigned total_degree(const ModuleSpec& s) {
  unsigned K = 0;
  for (const auto& f : s.factors) K += f.degree();
  return K;
}

namespace {

// Non-decreasing (multisets) or strictly increasing (subsets) k-tuples over [0, d), lexicographic.
void tuples(unsigned d, unsigned k, bool strict, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  unsigned start = cur.empty() ? 0 : cur.back() + (strict ? 1 : 0);
  for (unsigned i = start; i < d; ++i) {
    cur.push_back(i);
    tuples(d, k, strict, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<unsigned>> all_tuples(unsigned d, unsigned k, bool strict) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  tuples(d, k, strict, cur, out);
  return out;
}

Mat sym_matrix(const Mat& A, unsigned k) {
  const unsigned d = static_cast<unsigned>(A.rows());
  const GaloisField& F = *field_of(A);
  // labels and index lookup for every degree 1..k
  std::vector<std::vector<std::vector<unsigned>>> labels(k + 1);
  std::vector<std::map<std::vector<unsigned>, Index>> index(k + 1);
  for (unsigned t = 1; t <= k; ++t) {
    labels[t] = all_tuples(d, t, false);
    for (std::size_t i = 0; i < labels[t].size(); ++i) index[t][labels[t][i]] = static_cast<Index>(i);
  }
  // grow[t][m][i]: index of (monomial m of degree t) * x_i in degree t+1
  std::vector<std::vector<std::vector<Index>>> grow(k);
  for (unsigned t = 1; t < k; ++t) {
    grow[t].resize(labels[t].size());
    for (std::size_t m = 0; m < labels[t].size(); ++m) {
      for (unsigned i = 0; i < d; ++i) {
        auto lab = labels[t][m];
        lab.insert(std::upper_bound(lab.begin(), lab.end(), i), i);
        grow[t][m].push_back(index[t + 1].at(lab));
      }
    }
  }
  const auto& cols = labels[k];
  Mat out = zeros(F, static_cast<Index>(cols.size()), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& M = cols[c];
    std::vector<u64> poly(d);
    for (unsigned i = 0; i < d; ++i) poly[i] = A(i, M[0]).in(F).value();
    for (unsigned t = 1; t < k; ++t) {
      std::vector<u64> next(labels[t + 1].size(), 0);
      for (std::size_t m = 0; m < poly.size(); ++m) {
        if (!poly[m]) continue;
        for (unsigned i = 0; i < d; ++i) {
          u64 a = A(i, M[t]).in(F).value();
          if (!a) continue;
          Index to = grow[t][m][i];
          next[to] = F.add(next[to], F.mul(poly[m], a));
        }
      }
      poly = std::move(next);
    }
    for (std::size_t r = 0; r < poly.size(); ++r) out(static_cast<Index>(r), static_cast<Index>(c)) = Fe(&F, poly[r]);
  }
  return out;
}

Mat ext_matrix(const Mat& A, unsigned k) {
  const unsigned d = static_cast<unsigned>(A.rows());
  const GaloisField& F = *field_of(A);
  auto sets = all_tuples(d, k, true);
  const Index n = static_cast<Index>(sets.size());
  Mat out(n, n);
  Mat sub(k, k);
  for (Index I = 0; I < n; ++I)
    for (Index J = 0; J < n; ++J) {
      for (unsigned a = 0; a < k; ++a)
        for (unsigned b = 0; b < k; ++b) sub(a, b) = A(sets[I][a], sets[J][b]);
      out(I, J) = det(sub).in(F);
    }
  return out;
}

} // namespace

std::vector<std::vector<unsigned>> factor_labels(const FactorSpec& f, unsigned d) {
  switch (f.kind) {
    case FactorKind::Natural: return all_tuples(d, 1, true);
    case FactorKind::Sym: return all_tuples(d, f.k, false);
    case FactorKind::Ext: return all_tuples(d, f.k, true);
  }
  return {};
}

DigitVector factor_digits(const FactorSpec&, const std::vector<unsigned>& label, unsigned d) {
  DigitVector c(d, 0);
  for (unsigned i : label) ++c[i];
  return c;
}

std::vector<BasisLabel> basis_labels(const ModuleSpec& s) {
  std::vector<BasisLabel> out(1);
  out[0].digits.assign(s.d, 0);
  for (const auto& f : s.factors) {
    auto fl = factor_labels(f, s.d);
    std::vector<BasisLabel> next;
    next.reserve(out.size() * fl.size());
    for (const auto& prefix : out) {
      for (const auto& lab : fl) {
        BasisLabel b = prefix;
        b.parts.push_back(lab);
        b.digits = twisted_aggregate({{prefix.digits, 0}, {factor_digits(f, lab, s.d), f.twist}}, s.d);
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string to_string(const BasisLabel& l) {
  std::string out;
  for (std::size_t t = 0; t < l.parts.size(); ++t) {
    if (t) out += "|";
    out += "{";
    for (std::size_t i = 0; i < l.parts[t].size(); ++i) out += (i ? "," : "") + std::to_string(l.parts[t][i] + 1);
    out += "}";
  }
  return out.empty() ? "{}" : out;
}

Mat factor_matrix(const FactorSpec& f, const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::ShapeMismatch, "functor input must be square");
  const GaloisField* F = field_of(A);
  if (!F) throw Error(ErrorCode::InvalidInput, "functor input carries no field");
  const unsigned d = static_cast<unsigned>(A.rows());
  switch (f.kind) {
    case FactorKind::Natural: return attach(A, *F);
    case FactorKind::Sym:
      if (f.k == 0) throw Error(ErrorCode::UnsupportedFactor, "sym(0)");
      if (f.k >= F->characteristic()) throw Error(ErrorCode::UnsupportedFactor, "sym(k) needs k < p");
      if (f.k == 1) return attach(A, *F);
      return sym_matrix(A, f.k);
    case FactorKind::Ext:
      if (f.k == 0 || f.k > d) throw Error(ErrorCode::UnsupportedFactor, "ext(k) needs 1 <= k <= d");
      if (f.k == 1) return attach(A, *F);
      return ext_matrix(A, f.k);
  }
  return A;
}

Mat induced_matrix(const ModuleSpec& s, const Mat& A) {
  if (A.rows() != static_cast<Index>(s.d) || A.cols() != static_cast<Index>(s.d))
    throw Error(ErrorCode::ShapeMismatch, "induced_matrix expects a d x d matrix");
  const GaloisField* F = field_of(A);
  if (!F) throw Error(ErrorCode::InvalidInput, "induced_matrix input carries no field");
  Mat W = identity(*F, 1);
  for (const auto& f : s.factors) {
    Mat M = factor_matrix(f, A);
    unsigned e = f.twist % s.d;
    if (e != 0 && F->size() != s.q) {
      u64 qe = ipow(s.q, e);
      M = M.unaryExpr([&](const Fe& x) { return x.pow(qe); });
    }
    W = kron(W, M);
  }
  return W;
}

ConstraintReport check_constraints(const ModuleSpec& s, u64 p, u64 dim_budget) {
  ConstraintReport r;
  if (s.d < 1) r.violations.push_back("d must be at least 1");
  unsigned K = total_degree(s);
  if (static_cast<u64>(K) + 1 >= s.q) {
    r.violations.push_back("total degree K=" + std::to_string(K) + " is not below q-1=" + std::to_string(s.q - 1));
  }
  for (const auto& f : s.factors) {
    if (f.kind == FactorKind::Sym && f.k >= p)
      r.violations.push_back(to_string(f) + ": symmetric power needs k < p=" + std::to_string(p));
    if (f.kind == FactorKind::Ext && (f.k < 1 || f.k > s.d))
      r.violations.push_back(to_string(f) + ": exterior power needs 1 <= k <= d=" + std::to_string(s.d));
    if (f.kind != FactorKind::Natural && f.k < 1) r.violations.push_back(to_string(f) + ": degree must be positive");
  }
  try {
    u64 n = dim(s);
    if (n > dim_budget) r.violations.push_back("dim(W)=" + std::to_string(n) + " exceeds budget " + std::to_string(dim_budget));
  } catch (const Error&) {
    r.violations.push_back("dim(W) overflows 64 bits");
  }
  return r;
}

MultiplicityReport check_multiplicity_free(const ModuleSpec& s) {
  MultiplicityReport rep;
  std::map<DigitVector, unsigned> counts;
  auto labels = basis_labels(s);
  for (const auto& l : labels) ++counts[l.digits];
  for (const auto& l : labels) {
    unsigned c = counts[l.digits];
    if (c > 1) {
      rep.multiplicity_free = false;
      rep.witness = l.digits;
      rep.count = c;
      return rep;
    }
  }
  return rep;
}

} // namespace singer
