#include "newvec/conjugation.hpp"

#include <algorithm>
#include <sstream>

#include "newvec/combinatorics.hpp"
#include "newvec/rng.hpp"

namespace newvec {

namespace {

Integer determinant_bareiss(unsigned n, std::vector<Integer> a) {
  Integer prev = 1;
  int sign = 1;
  for (unsigned k = 0; k + 1 < n; ++k) {
    if (sgn(a[k * n + k]) == 0) {
      unsigned pivot = k + 1;
      while (pivot < n && sgn(a[pivot * n + k]) == 0) ++pivot;
      if (pivot == n) return 0;
      for (unsigned j = 0; j < n; ++j) {
        std::swap(a[k * n + j], a[pivot * n + j]);
      }
      sign = -sign;
    }
    for (unsigned i = k + 1; i < n; ++i) {
      for (unsigned j = k + 1; j < n; ++j) {
        Integer t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = t / prev;  // exact by Bareiss
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Integer det = a[(n - 1) * n + (n - 1)];
  return sign == 1 ? det : Integer(-det);
}

}  // namespace

IntegralMatrix::IntegralMatrix(unsigned dim, std::vector<Integer> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim_ < 2) fail(errc::invalid_argument, "matrix rank must be >= 2");
  if (entries_.size() != static_cast<std::size_t>(dim_) * dim_) {
    fail(errc::invalid_argument, "matrix entry count does not match rank");
  }
  det_ = determinant_bareiss(dim_, entries_);
  if (sgn(det_) == 0) {
    fail(errc::singular_matrix, "matrix has determinant 0");
  }
}

IntegralMatrix IntegralMatrix::identity(unsigned dim) {
  std::vector<Integer> entries(static_cast<std::size_t>(dim) * dim, Integer(0));
  for (unsigned i = 0; i < dim; ++i) entries[i * dim + i] = 1;
  return IntegralMatrix(dim, std::move(entries));
}

IntegralMatrix IntegralMatrix::elementary(unsigned dim, unsigned i, unsigned j,
                                          const Integer& a) {
  if (i == j || i >= dim || j >= dim) {
    fail(errc::invalid_argument, "elementary matrix needs off-diagonal i != j");
  }
  std::vector<Integer> entries(static_cast<std::size_t>(dim) * dim, Integer(0));
  for (unsigned k = 0; k < dim; ++k) entries[k * dim + k] = 1;
  entries[i * dim + j] = a;
  return IntegralMatrix(dim, std::move(entries));
}

IntegralMatrix IntegralMatrix::parse(std::string_view text) {
  std::vector<Integer> entries;
  std::string token;
  std::istringstream in{std::string(text)};
  std::string normalized;
  for (char c : std::string(text)) {
    normalized += (c == ',' || c == ';') ? ' ' : c;
  }
  std::istringstream items(normalized);
  while (items >> token) {
    try {
      entries.emplace_back(token);
    } catch (const std::invalid_argument&) {
      fail(errc::parse_error, "malformed matrix entry '" + token + "'");
    }
  }
  unsigned dim = 0;
  while (static_cast<std::size_t>(dim) * dim < entries.size()) ++dim;
  if (entries.empty() || static_cast<std::size_t>(dim) * dim != entries.size()) {
    fail(errc::parse_error, "matrix literal length must be a perfect square");
  }
  return IntegralMatrix(dim, std::move(entries));
}

bool IntegralMatrix::is_scalar() const {
  const Integer& d = at(0, 0);
  for (unsigned i = 0; i < dim_; ++i) {
    for (unsigned j = 0; j < dim_; ++j) {
      if (i == j ? (at(i, j) != d) : (sgn(at(i, j)) != 0)) return false;
    }
  }
  return true;
}

IntegralMatrix IntegralMatrix::mul(const IntegralMatrix& other) const {
  if (dim_ != other.dim_) fail(errc::invalid_argument, "rank mismatch");
  std::vector<Integer> out(static_cast<std::size_t>(dim_) * dim_, Integer(0));
  for (unsigned i = 0; i < dim_; ++i) {
    for (unsigned k = 0; k < dim_; ++k) {
      if (sgn(at(i, k)) == 0) continue;
      for (unsigned j = 0; j < dim_; ++j) {
        out[i * dim_ + j] += at(i, k) * other.at(k, j);
      }
    }
  }
  return IntegralMatrix(dim_, std::move(out));
}

std::string IntegralMatrix::str() const {
  std::string out = "[";
  for (unsigned i = 0; i < dim_; ++i) {
    out += i == 0 ? "[" : ",[";
    for (unsigned j = 0; j < dim_; ++j) {
      if (j) out += ",";
      out += at(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

RationalMatrix::RationalMatrix(unsigned rows, unsigned cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(unsigned dim) {
  RationalMatrix m(dim, dim);
  for (unsigned i = 0; i < dim; ++i) m.at(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::mul(const RationalMatrix& other) const {
  if (cols_ != other.rows_) fail(errc::invalid_argument, "shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (unsigned i = 0; i < rows_; ++i) {
    for (unsigned k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a.is_zero()) continue;
      for (unsigned j = 0; j < other.cols_; ++j) {
        out.at(i, j) += a * other.at(k, j);
      }
    }
  }
  return out;
}

bool RationalMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (unsigned i = 0; i < rows_; ++i) {
    for (unsigned j = 0; j < cols_; ++j) {
      if (at(i, j) != (i == j ? Rational(1) : Rational(0))) return false;
    }
  }
  return true;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& r) { return r.is_zero(); });
}

namespace {

/// Inverse of an integer matrix over Q by Gauss-Jordan elimination.
RationalMatrix rational_inverse(const IntegralMatrix& x) {
  const unsigned n = x.dim();
  RationalMatrix work(n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) work.at(i, j) = Rational(x.at(i, j));
    work.at(i, n + i) = Rational(1);
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && work.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) fail(errc::singular_matrix, "matrix is singular");
    if (pivot != col) {
      for (unsigned j = 0; j < 2 * n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
      }
    }
    const Rational inv = Rational(1) / work.at(col, col);
    for (unsigned j = 0; j < 2 * n; ++j) work.at(col, j) *= inv;
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || work.at(i, col).is_zero()) continue;
      const Rational factor = work.at(i, col);
      for (unsigned j = 0; j < 2 * n; ++j) {
        work.at(i, j) -= factor * work.at(col, j);
      }
    }
  }
  RationalMatrix out(n, n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) out.at(i, j) = work.at(i, n + j);
  }
  return out;
}

}  // namespace

RationalMatrix adjoint_operator(const IntegralMatrix& x) {
  const unsigned n = x.dim();
  const RationalMatrix inv = rational_inverse(x);
  RationalMatrix ad(n * n, n * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned k = 0; k < n; ++k) {
        for (unsigned l = 0; l < n; ++l) {
          ad.at(i * n + j, k * n + l) = Rational(x.at(i, k)) * inv.at(l, j);
        }
      }
    }
  }
  return ad;
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(errc::invalid_argument, "matrix not square");
  const unsigned n = m.rows();
  // Faddeev-LeVerrier: c_n = 1; M_1 = A; c_{n-k} = -tr(A M_k)/k;
  // M_{k+1} = A M_k + c_{n-k} I.
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[n] = Rational(1);
  RationalMatrix mk = RationalMatrix::identity(n);
  for (unsigned k = 1; k <= n; ++k) {
    mk = m.mul(mk);
    Rational tr = 0;
    for (unsigned i = 0; i < n; ++i) tr += mk.at(i, i);
    const Rational c = -(tr / Rational(Integer(k)));
    coeffs[n - k] = c;
    for (unsigned i = 0; i < n; ++i) mk.at(i, i) += c;
  }
  return coeffs;
}

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i) {
    out.push_back(p[i] * Rational(Integer(i)));
  }
  trim(out);
  return out;
}

/// Remainder of a by b (b nonzero), over Q.
Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] -= factor * b[i];
    }
    trim(a);
  }
  return a;
}

Poly poly_divide_exact(Poly a, const Poly& b) {
  trim(a);
  Poly quotient(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quotient[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] -= factor * b[i];
    }
    trim(a);
  }
  if (!a.empty()) fail(errc::invalid_argument, "inexact polynomial division");
  return quotient;
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Evaluates p at a square rational matrix (Horner).
RationalMatrix poly_at_matrix(const Poly& p, const RationalMatrix& m) {
  const unsigned n = m.rows();
  RationalMatrix acc(n, n);
  for (std::size_t idx = p.size(); idx-- > 0;) {
    acc = acc.mul(m);
    for (unsigned i = 0; i < n; ++i) acc.at(i, i) += p[idx];
  }
  return acc;
}

}  // namespace

Depth adjoint_depth(const IntegralMatrix& x, std::uint64_t p) {
  if (p < 2) fail(errc::invalid_argument, "prime must be >= 2");
  if (valuation(x.determinant(), p) != 0) {
    fail(errc::not_integral_at_p,
         "determinant is not a unit at " + std::to_string(p));
  }
  if (x.is_scalar()) return Depth::infinite();
  const RationalMatrix ad = adjoint_operator(x);
  bool first = true;
  long depth = 0;
  for (unsigned i = 0; i < ad.rows(); ++i) {
    for (unsigned j = 0; j < ad.cols(); ++j) {
      Rational entry = ad.at(i, j);
      if (i == j) entry -= Rational(1);
      if (entry.is_zero()) continue;
      const long v = valuation(entry, p);
      if (first || v < depth) {
        depth = v;
        first = false;
      }
    }
  }
  // Ad(x) != I since x is not scalar, so some entry was nonzero.
  if (depth < 0) {
    fail(errc::not_integral_at_p,
         "conjugation operator is not integral at " + std::to_string(p));
  }
  return Depth::at(static_cast<std::uint64_t>(depth));
}

Integer obstruction_ideal(const IntegralMatrix& gamma) {
  if (gamma.is_scalar()) {
    fail(errc::central_element, "obstruction ideal requires a non-scalar matrix");
  }
  const RationalMatrix ad = adjoint_operator(gamma);
  Poly f = characteristic_polynomial(ad);

  // Semisimplicity over Q: the squarefree part of f must annihilate Ad.
  const Poly fp = derivative(f);
  const Poly radical = poly_divide_exact(f, poly_gcd(f, fp));
  if (!poly_at_matrix(radical, ad).is_zero()) {
    fail(errc::not_semisimple, "conjugation operator is not semisimple");
  }

  // Difference f(t) - (t-1)^{n^2}; its content generates the smallest ideal
  // modulo which f collapses to (t-1)^{n^2}.
  const long dim = static_cast<long>(f.size()) - 1;
  Integer content = 0;
  for (long i = 0; i <= dim; ++i) {
    Rational c = f[static_cast<std::size_t>(i)];
    Integer binom_part = binomial(dim, i);
    if ((dim - i) % 2 == 1) binom_part = -binom_part;
    c -= Rational(binom_part);
    if (c.is_zero()) continue;
    if (!c.is_integer()) {
      fail(errc::not_integral_at_p,
           "characteristic polynomial is not integral; determinant is not a unit");
    }
    Integer num = c.numerator();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  if (sgn(content) == 0) {
    // f == (t-1)^{n^2} exactly: excluded for semisimple non-scalar input,
    // kept as a defensive error path.
    fail(errc::central_element, "characteristic polynomial matches the central one");
  }
  return content;
}

namespace {

/// Random product of `word_length` elementary matrices E_{ij}(a) with small
/// a != 0; returns (g, g^{-1}) as exact integer matrices.
std::pair<IntegralMatrix, IntegralMatrix> random_unimodular(unsigned dim,
                                                            SplitRng& rng,
                                                            unsigned word_length) {
  IntegralMatrix g = IntegralMatrix::identity(dim);
  IntegralMatrix ginv = IntegralMatrix::identity(dim);
  for (unsigned step = 0; step < word_length; ++step) {
    const unsigned i = static_cast<unsigned>(rng.below(dim));
    unsigned j = static_cast<unsigned>(rng.below(dim - 1));
    if (j >= i) ++j;
    std::int64_t a = rng.range(-2, 2);
    if (a == 0) a = 1;
    const Integer shear(static_cast<long>(a));
    g = g.mul(IntegralMatrix::elementary(dim, i, j, shear));
    ginv = IntegralMatrix::elementary(dim, i, j, Integer(-shear)).mul(ginv);
  }
  return {std::move(g), std::move(ginv)};
}

}  // namespace

ConjugationReport conjugation_divisibility_test(const IntegralMatrix& gamma,
                                                std::size_t samples,
                                                std::uint64_t seed,
                                                unsigned word_length) {
  ConjugationReport report;
  report.obstruction = obstruction_ideal(gamma);
  report.samples = samples;
  report.seed = seed;
  report.word_length = word_length;
  for (const auto& [p, e] : factorize(report.obstruction)) {
    report.obstruction_factors.emplace_back(p, e);
  }
  // A few control primes away from the obstruction ideal and the determinant.
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    if (report.control_primes.size() == 4) break;
    if (mpz_divisible_ui_p(report.obstruction.get_mpz_t(), p)) continue;
    if (valuation(gamma.determinant(), p) != 0) continue;
    report.control_primes.push_back(p);
  }

  for (std::size_t s = 0; s < samples; ++s) {
    SplitRng rng(SplitRng::mix(seed, s));
    const auto [g, ginv] = random_unimodular(gamma.dim(), rng, word_length);
    const IntegralMatrix conjugate = g.mul(gamma).mul(ginv);
    bool ok = true;
    std::string detail;
    for (const auto& [p, e] : report.obstruction_factors) {
      const Depth depth = adjoint_depth(conjugate, p);
      if (depth.is_infinite() || depth.value() > e) {
        ok = false;
        detail = "depth at " + std::to_string(p) + " exceeds exponent " +
                 std::to_string(e);
        break;
      }
    }
    if (ok) {
      for (std::uint64_t p : report.control_primes) {
        const Depth depth = adjoint_depth(conjugate, p);
        if (depth.is_infinite() || depth.value() != 0) {
          ok = false;
          detail = "nonzero depth at control prime " + std::to_string(p);
          break;
        }
      }
    }
    if (!ok) {
      ++report.failures;
      if (report.first_failure.empty()) {
        report.first_failure =
            "sample " + std::to_string(s) + ": " + detail + " (conjugate " +
            conjugate.str() + ")";
      }
    }
  }
  report.ok = report.failures == 0;
  return report;
}

}  // namespace newvec
