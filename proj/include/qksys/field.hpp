#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace qksys {

// GF(p^e) with elements encoded as integers in [0, p^e): the base-p digits
// of an element are the coefficients of its polynomial representation
// (digit i multiplies x^i). For e >= 2 the modulus is the lexicographically
// least monic irreducible polynomial of degree e over GF(p), "least" meaning
// smallest base-p value of the non-leading coefficient vector, so the choice
// is deterministic across platforms. Full add/mul tables are precomputed for
// order <= 256; larger fields compute directly.
//
// A FiniteField is an immutable shared handle: copies are cheap and all
// operations are pure, so concurrent use is unrestricted.
class FiniteField {
 public:
  // order must be a prime power >= 2 (NotPrimePower otherwise) and at most
  // 2^16 (RangeError above).
  static FiniteField create(int order);

  int order() const;
  int characteristic() const;
  int degree() const;
  // Length degree+1, little-endian coefficients over GF(p); the degree-1
  // polynomial x for prime fields.
  const std::vector<int>& modulus() const;

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;  // ZeroInverse on a == 0
  int pow(int a, std::uint64_t e) const;

  bool operator==(const FiniteField& o) const { return d_ == o.d_; }

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
  explicit FiniteField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

// Dense coefficient vector over a field; coeffs[i] multiplies x^i and
// trailing zeros are permitted (degree-<k polynomials are stored with
// exactly k coefficients).
struct Polynomial {
  FiniteField field;
  std::vector<int> coeffs;
};

// Horner evaluation at x.
int poly_eval(const Polynomial& poly, int x);

// The unique degree-<k polynomial through k points with pairwise distinct
// abscissae, found by Gaussian elimination on the Vandermonde system over
// the field. Throws WrongArity unless exactly k points are given and
// DuplicateAbscissa on repeated x values.
Polynomial interpolate(const FiniteField& field,
                       const std::vector<std::pair<int, int>>& points, int k);

}  // namespace qksys
