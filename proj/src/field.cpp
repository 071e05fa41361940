#include "qksys/field.hpp"

#include <algorithm>
#include <string>

#include "qksys/errors.hpp"

namespace qksys {

namespace {

constexpr int kMaxOrder = 1 << 16;
constexpr int kTableLimit = 256;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Little-endian base-p digits of v, padded to len.
std::vector<int> to_digits(long long v, int p, int len) {
  std::vector<int> d(len, 0);
  for (int i = 0; i < len && v > 0; ++i) {
    d[i] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

int poly_degree(const std::vector<int>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != 0) return i;
  }
  return -1;
}

// Remainder of a modulo monic m, coefficients over GF(p).
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
  const int dm = poly_degree(m);
  for (int i = poly_degree(a); i >= dm; i = poly_degree(a)) {
    const int c = a[i];  // m is monic, so the quotient digit is just c
    for (int j = 0; j <= dm; ++j) {
      a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
    }
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(const std::vector<int>& f, int p) {
  const int e = poly_degree(f);
  for (int d = 1; 2 * d <= e; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<int> g = to_digits(v, p, d + 1);
      g[d] = 1;
      if (poly_degree(poly_rem(f, g, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

struct FiniteField::Data {
  int order = 0;
  int p = 0;
  int e = 0;
  std::vector<int> modulus;
  bool tables = false;
  std::vector<int> add_tab, mul_tab, neg_tab, inv_tab;

  int add_direct(int a, int b) const {
    if (e == 1) return (a + b) % p;
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      const int da = (a / pw) % p, db = (b / pw) % p;
      r += ((da + db) % p) * pw;
      pw *= p;
    }
    return r;
  }

  int neg_direct(int a) const {
    if (e == 1) return (p - a) % p;
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      const int da = (a / pw) % p;
      r += ((p - da) % p) * pw;
      pw *= p;
    }
    return r;
  }

  int mul_direct(int a, int b) const {
    if (e == 1) return static_cast<int>((static_cast<long long>(a) * b) % p);
    std::vector<int> da = to_digits(a, p, e), db = to_digits(b, p, e);
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i) {
      if (da[i] == 0) continue;
      for (int j = 0; j < e; ++j) {
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
    }
    prod = poly_rem(std::move(prod), modulus, p);
    long long r = 0;
    for (int i = e - 1; i >= 0; --i) r = r * p + (i < static_cast<int>(prod.size()) ? prod[i] : 0);
    return static_cast<int>(r);
  }
};

FiniteField FiniteField::create(int order) {
  if (order > kMaxOrder) throw RangeError("field order above 2^16 is unsupported");
  if (order < 2) throw NotPrimePower("field order must be a prime power >= 2");
  int p = 0;
  for (int d = 2; d <= order; ++d) {
    if (order % d == 0) { p = d; break; }
  }
  if (!is_prime(p)) throw NotPrimePower("order has no prime factorization p^e");
  int e = 0;
  int rest = order;
  while (rest % p == 0) { rest /= p; ++e; }
  if (rest != 1) throw NotPrimePower("order " + std::to_string(order) + " is not a prime power");

  auto d = std::make_shared<Data>();
  d->order = order;
  d->p = p;
  d->e = e;
  if (e == 1) {
    d->modulus = {0, 1};
  } else {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<int> f = to_digits(v, p, e + 1);
      f[e] = 1;
      if (is_irreducible(f, p)) { d->modulus = std::move(f); break; }
    }
  }

  if (order <= kTableLimit) {
    d->tables = true;
    d->add_tab.resize(static_cast<std::size_t>(order) * order);
    d->mul_tab.resize(static_cast<std::size_t>(order) * order);
    d->neg_tab.resize(order);
    d->inv_tab.assign(order, 0);
    for (int a = 0; a < order; ++a) {
      d->neg_tab[a] = d->neg_direct(a);
      for (int b = 0; b < order; ++b) {
        const int s = d->add_direct(a, b);
        const int m = d->mul_direct(a, b);
        d->add_tab[static_cast<std::size_t>(a) * order + b] = s;
        d->mul_tab[static_cast<std::size_t>(a) * order + b] = m;
        if (m == 1) d->inv_tab[a] = b;
      }
    }
  }
  return FiniteField(std::move(d));
}

namespace {
void check_element(int a, int order) {
  if (a < 0 || a >= order) {
    throw InvalidElement("element " + std::to_string(a) + " out of range for field of order " +
                         std::to_string(order));
  }
}
}  // namespace

int FiniteField::order() const { return d_->order; }
int FiniteField::characteristic() const { return d_->p; }
int FiniteField::degree() const { return d_->e; }
const std::vector<int>& FiniteField::modulus() const { return d_->modulus; }

int FiniteField::add(int a, int b) const {
  check_element(a, d_->order);
  check_element(b, d_->order);
  return d_->tables ? d_->add_tab[static_cast<std::size_t>(a) * d_->order + b]
                    : d_->add_direct(a, b);
}

int FiniteField::neg(int a) const {
  check_element(a, d_->order);
  return d_->tables ? d_->neg_tab[a] : d_->neg_direct(a);
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::mul(int a, int b) const {
  check_element(a, d_->order);
  check_element(b, d_->order);
  return d_->tables ? d_->mul_tab[static_cast<std::size_t>(a) * d_->order + b]
                    : d_->mul_direct(a, b);
}

int FiniteField::inv(int a) const {
  check_element(a, d_->order);
  if (a == 0) throw ZeroInverse("0 has no multiplicative inverse");
  if (d_->tables) return d_->inv_tab[a];
  return pow(a, static_cast<std::uint64_t>(d_->order) - 2);
}

int FiniteField::pow(int a, std::uint64_t e) const {
  check_element(a, d_->order);
  int base = a, r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int poly_eval(const Polynomial& poly, int x) {
  const FiniteField& f = poly.field;
  int acc = 0;
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
    acc = f.add(f.mul(acc, x), *it);
  }
  return acc;
}

Polynomial interpolate(const FiniteField& field,
                       const std::vector<std::pair<int, int>>& points, int k) {
  if (k < 1 || static_cast<int>(points.size()) != k) {
    throw WrongArity("interpolation needs exactly k >= 1 points, got " +
                     std::to_string(points.size()));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (points[i].first == points[j].first) {
        throw DuplicateAbscissa("repeated abscissa " + std::to_string(points[i].first));
      }
    }
  }

  // Vandermonde rows [1, x, x^2, ..., x^(k-1) | y], Gauss-Jordan over the field.
  std::vector<std::vector<int>> m(k, std::vector<int>(k + 1, 0));
  for (int i = 0; i < k; ++i) {
    int pw = 1;
    for (int j = 0; j < k; ++j) {
      m[i][j] = pw;
      pw = field.mul(pw, points[i].first);
    }
    m[i][k] = points[i].second;
  }
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if (m[r][col] != 0) { pivot = r; break; }
    }
    // Distinct abscissae make the matrix invertible, so a pivot exists.
    std::swap(m[col], m[pivot]);
    const int pinv = field.inv(m[col][col]);
    for (int j = col; j <= k; ++j) m[col][j] = field.mul(m[col][j], pinv);
    for (int r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const int factor = m[r][col];
      for (int j = col; j <= k; ++j) {
        m[r][j] = field.sub(m[r][j], field.mul(factor, m[col][j]));
      }
    }
  }
  Polynomial result{field, std::vector<int>(k, 0)};
  for (int i = 0; i < k; ++i) result.coeffs[i] = m[i][k];
  return result;
}

}  // namespace qksys
