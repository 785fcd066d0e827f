#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scode {

// Row vectors over GF(2) are bit masks of width v <= 16. Column c (1-based,
// leftmost) lives in bit (v - c), so the leftmost coordinate is the most
// significant used bit and the printed string "1000" equals mask 0b1000.
using Row = std::uint16_t;

inline constexpr int kMaxAmbient = 16;

int weight(Row r);
int top_bit(Row r);  // index of the highest set bit, -1 for 0
bool parity_product(Row a, Row b);

std::string row_to_string(Row r, int v);
Row row_from_string(const std::string& s, int v);

// General matrix over GF(2): rows may be dependent.
struct BitMatrix {
  int v = 0;  // number of columns
  std::vector<Row> rows;

  BitMatrix() = default;
  BitMatrix(int ambient, std::vector<Row> r);
  static BitMatrix identity(int ambient);

  int row_count() const { return static_cast<int>(rows.size()); }
  bool operator==(const BitMatrix&) const = default;

  // this * rhs in the row-vector convention: row i of the product is
  // (row i of this) mapped through rhs.
  BitMatrix multiplied(const BitMatrix& rhs) const;
  BitMatrix transposed() const;
  int rank() const;
  bool is_invertible() const;
};

// In-place reduced row echelon form; returns the rank. Zero rows are dropped
// and the surviving rows end up sorted by pivot column.
int rref_in_place(std::vector<Row>& rows);
std::pair<BitMatrix, int> rref(const BitMatrix& m);

// A subspace of F_2^v, held as its unique rref generator matrix.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  static Subspace from_rows(int ambient, std::vector<Row> rows);
  static Subspace from_string(int ambient, const std::string& spec);

  int ambient() const { return v_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  BitMatrix matrix() const { return BitMatrix(v_, rows_); }
  Row pivot_vector() const;

  // Residue of x modulo this subspace; zero iff x lies in it.
  Row reduce(Row x) const;
  bool contains_vector(Row x) const { return reduce(x) == 0; }
  bool contains(const Subspace& other) const;

  // All 2^k - 1 nonzero vectors, ascending as masks.
  std::vector<Row> points() const;

  std::string to_string() const;  // rows joined by ';', "-" for the zero space

  friend bool operator==(const Subspace&, const Subspace&) = default;
  // Canonical total order: ambient, then dimension, then pivot vector as an
  // integer, then the row masks lexicographically.
  std::strong_ordering operator<=>(const Subspace& o) const;

 private:
  int v_ = 0;
  std::vector<Row> rows_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const;
};

Subspace meet(const Subspace& x, const Subspace& y);
Subspace join(const Subspace& x, const Subspace& y);
int subspace_distance(const Subspace& x, const Subspace& y);
// Orthogonal complement w.r.t. the standard inner product.
Subspace dual(const Subspace& s);

// Image of s under g acting on row vectors (x -> x * g), re-canonicalized.
Subspace transform(const Subspace& s, const BitMatrix& g);

// F_{2^n} for n <= 8. Elements are n-bit masks, bit i = coefficient of x^i.
class ExtField {
 public:
  explicit ExtField(int n);            // smallest irreducible modulus
  ExtField(int n, unsigned modulus);   // modulus checked for irreducibility

  int degree() const { return n_; }
  unsigned modulus() const { return modulus_; }
  unsigned size() const { return 1u << n_; }
  unsigned add(unsigned a, unsigned b) const { return a ^ b; }
  unsigned mul(unsigned a, unsigned b) const;
  unsigned frobenius(unsigned a) const { return mul(a, a); }
  void check_element(unsigned a) const;

  static bool is_irreducible(unsigned poly, int n);
  static unsigned smallest_irreducible(int n);

 private:
  int n_ = 1;
  unsigned modulus_ = 2;
};

// f(x) = sum_i coeffs[i] * x^(2^i), a linearized polynomial over F_{2^n}.
unsigned linpoly_eval(const ExtField& field, std::span<const unsigned> coeffs,
                      unsigned x);

}  // namespace scode
