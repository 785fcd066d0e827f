#include "scode/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace scode {

int weight(Row r) { return std::popcount(static_cast<unsigned>(r)); }

int top_bit(Row r) {
  return r == 0 ? -1 : std::bit_width(static_cast<unsigned>(r)) - 1;
}

bool parity_product(Row a, Row b) {
  return (std::popcount(static_cast<unsigned>(a & b)) & 1) != 0;
}

std::string row_to_string(Row r, int v) {
  std::string s(static_cast<std::size_t>(v), '0');
  for (int c = 0; c < v; ++c) {
    if (r >> (v - 1 - c) & 1) s[static_cast<std::size_t>(c)] = '1';
  }
  return s;
}

Row row_from_string(const std::string& s, int v) {
  if (static_cast<int>(s.size()) != v) {
    throw std::invalid_argument("row '" + s + "' does not have width " +
                                std::to_string(v));
  }
  Row r = 0;
  for (int c = 0; c < v; ++c) {
    char ch = s[static_cast<std::size_t>(c)];
    if (ch == '1') {
      r = static_cast<Row>(r | (1u << (v - 1 - c)));
    } else if (ch != '0') {
      throw std::invalid_argument("row '" + s + "' contains '" +
                                  std::string(1, ch) + "'");
    }
  }
  return r;
}

static void check_ambient(int v) {
  if (v < 0 || v > kMaxAmbient) {
    throw std::invalid_argument("ambient dimension " + std::to_string(v) +
                                " out of range [0," +
                                std::to_string(kMaxAmbient) + "]");
  }
}

BitMatrix::BitMatrix(int ambient, std::vector<Row> r)
    : v(ambient), rows(std::move(r)) {
  check_ambient(v);
  Row mask = v == kMaxAmbient ? Row(~Row(0)) : static_cast<Row>((1u << v) - 1);
  for (Row row : rows) {
    if ((row & ~mask) != 0) {
      throw std::invalid_argument("row does not fit in " + std::to_string(v) +
                                  " bits");
    }
  }
}

BitMatrix BitMatrix::identity(int ambient) {
  check_ambient(ambient);
  std::vector<Row> rows(static_cast<std::size_t>(ambient));
  for (int i = 0; i < ambient; ++i) {
    rows[static_cast<std::size_t>(i)] = static_cast<Row>(1u << (ambient - 1 - i));
  }
  return BitMatrix(ambient, std::move(rows));
}

BitMatrix BitMatrix::multiplied(const BitMatrix& rhs) const {
  if (rhs.row_count() != v) {
    throw std::invalid_argument("matrix product shape mismatch");
  }
  std::vector<Row> out(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row acc = 0;
    Row r = rows[i];
    while (r != 0) {
      int p = top_bit(r);
      r = static_cast<Row>(r ^ (1u << p));
      acc = static_cast<Row>(acc ^ rhs.rows[static_cast<std::size_t>(v - 1 - p)]);
    }
    out[i] = acc;
  }
  return BitMatrix(rhs.v, std::move(out));
}

BitMatrix BitMatrix::transposed() const {
  std::vector<Row> out(static_cast<std::size_t>(v), 0);
  for (int i = 0; i < row_count(); ++i) {
    for (int c = 0; c < v; ++c) {
      if (rows[static_cast<std::size_t>(i)] >> (v - 1 - c) & 1) {
        out[static_cast<std::size_t>(c)] = static_cast<Row>(
            out[static_cast<std::size_t>(c)] | (1u << (row_count() - 1 - i)));
      }
    }
  }
  return BitMatrix(row_count(), std::move(out));
}

int BitMatrix::rank() const {
  std::vector<Row> copy = rows;
  return rref_in_place(copy);
}

bool BitMatrix::is_invertible() const { return row_count() == v && rank() == v; }

int rref_in_place(std::vector<Row>& rows) {
  std::size_t done = 0;
  for (int bit = kMaxAmbient - 1; bit >= 0 && done < rows.size(); --bit) {
    std::size_t pivot = done;
    while (pivot < rows.size() && (rows[pivot] >> bit & 1) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[done], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != done && (rows[i] >> bit & 1)) rows[i] ^= rows[done];
    }
    ++done;
  }
  rows.resize(done);
  return static_cast<int>(done);
}

std::pair<BitMatrix, int> rref(const BitMatrix& m) {
  std::vector<Row> rows = m.rows;
  int rank = rref_in_place(rows);
  return {BitMatrix(m.v, std::move(rows)), rank};
}

Subspace Subspace::zero(int ambient) {
  check_ambient(ambient);
  Subspace s;
  s.v_ = ambient;
  return s;
}

Subspace Subspace::full(int ambient) {
  return from_rows(ambient, BitMatrix::identity(ambient).rows);
}

Subspace Subspace::from_rows(int ambient, std::vector<Row> rows) {
  BitMatrix m(ambient, std::move(rows));  // validates widths
  rref_in_place(m.rows);
  Subspace s;
  s.v_ = ambient;
  s.rows_ = std::move(m.rows);
  return s;
}

Subspace Subspace::from_string(int ambient, const std::string& spec) {
  if (spec == "-") return zero(ambient);
  std::vector<Row> rows;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t next = spec.find(';', pos);
    std::string part = spec.substr(pos, next == std::string::npos
                                            ? std::string::npos
                                            : next - pos);
    rows.push_back(row_from_string(part, ambient));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return from_rows(ambient, std::move(rows));
}

Row Subspace::pivot_vector() const {
  Row p = 0;
  for (Row r : rows_) p = static_cast<Row>(p | (1u << top_bit(r)));
  return p;
}

Row Subspace::reduce(Row x) const {
  for (Row r : rows_) {
    int p = top_bit(r);
    if (x >> p & 1) x = static_cast<Row>(x ^ r);
  }
  return x;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.v_ != v_) return false;
  for (Row r : other.rows_) {
    if (reduce(r) != 0) return false;
  }
  return true;
}

std::vector<Row> Subspace::points() const {
  std::vector<Row> pts;
  pts.reserve((1u << dim()) - 1);
  unsigned count = 1u << dim();
  for (unsigned m = 1; m < count; ++m) {
    Row x = 0;
    for (int i = 0; i < dim(); ++i) {
      if (m >> i & 1) x = static_cast<Row>(x ^ rows_[static_cast<std::size_t>(i)]);
    }
    pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::string Subspace::to_string() const {
  if (dim() == 0) return "-";
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i > 0) out += ';';
    out += row_to_string(rows_[i], v_);
  }
  return out;
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const {
  if (auto c = v_ <=> o.v_; c != 0) return c;
  if (auto c = dim() <=> o.dim(); c != 0) return c;
  if (auto c = pivot_vector() <=> o.pivot_vector(); c != 0) return c;
  return rows_ <=> o.rows_;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const {
  std::size_t h = static_cast<std::size_t>(s.ambient()) * 0x9e3779b97f4a7c15ULL;
  for (Row r : s.rows()) {
    h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

static void check_same_ambient(const Subspace& x, const Subspace& y) {
  if (x.ambient() != y.ambient()) {
    throw std::invalid_argument("subspaces live in different ambient spaces");
  }
}

Subspace meet(const Subspace& x, const Subspace& y) {
  check_same_ambient(x, y);
  const int v = x.ambient();
  // Zassenhaus: eliminate on the left copy; rows whose left half vanished
  // carry a basis of the intersection in the right half.
  std::vector<std::uint32_t> work;
  for (Row r : x.rows()) {
    work.push_back((static_cast<std::uint32_t>(r) << v) | r);
  }
  for (Row r : y.rows()) {
    work.push_back(static_cast<std::uint32_t>(r) << v);
  }
  std::size_t done = 0;
  for (int bit = 2 * v - 1; bit >= v && done < work.size(); --bit) {
    std::size_t pivot = done;
    while (pivot < work.size() && (work[pivot] >> bit & 1) == 0) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[done], work[pivot]);
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i != done && (work[i] >> bit & 1)) work[i] ^= work[done];
    }
    ++done;
  }
  Row mask = v == kMaxAmbient ? Row(~Row(0)) : static_cast<Row>((1u << v) - 1);
  std::vector<Row> inter;
  for (std::size_t i = done; i < work.size(); ++i) {
    Row r = static_cast<Row>(work[i] & mask);
    if (r != 0) inter.push_back(r);
  }
  return Subspace::from_rows(v, std::move(inter));
}

Subspace join(const Subspace& x, const Subspace& y) {
  check_same_ambient(x, y);
  std::vector<Row> rows = x.rows();
  rows.insert(rows.end(), y.rows().begin(), y.rows().end());
  return Subspace::from_rows(x.ambient(), std::move(rows));
}

int subspace_distance(const Subspace& x, const Subspace& y) {
  check_same_ambient(x, y);
  // Incremental rank of the stacked generator rows; pivot table instead of
  // full elimination keeps this allocation-free for the hot scans.
  Row piv[kMaxAmbient] = {};
  int joint = 0;
  auto add = [&piv, &joint](Row r) {
    while (r != 0) {
      int b = top_bit(r);
      if (piv[b] != 0) {
        r = static_cast<Row>(r ^ piv[b]);
      } else {
        piv[b] = r;
        ++joint;
        return;
      }
    }
  };
  for (Row r : x.rows()) add(r);
  for (Row r : y.rows()) add(r);
  return 2 * joint - x.dim() - y.dim();
}

Subspace dual(const Subspace& s) {
  const int v = s.ambient();
  Row pivots = s.pivot_vector();
  std::vector<Row> basis;
  for (int c = 0; c < v; ++c) {
    int bit = v - 1 - c;
    if (pivots >> bit & 1) continue;
    Row b = static_cast<Row>(1u << bit);
    for (Row r : s.rows()) {
      if (r >> bit & 1) b = static_cast<Row>(b | (1u << top_bit(r)));
    }
    basis.push_back(b);
  }
  return Subspace::from_rows(v, std::move(basis));
}

Subspace transform(const Subspace& s, const BitMatrix& g) {
  if (g.v != s.ambient() || g.row_count() != s.ambient()) {
    throw std::invalid_argument("transform: matrix shape mismatch");
  }
  std::vector<Row> rows;
  rows.reserve(s.rows().size());
  for (Row r : s.rows()) {
    Row acc = 0;
    Row x = r;
    while (x != 0) {
      int p = top_bit(x);
      x = static_cast<Row>(x ^ (1u << p));
      acc = static_cast<Row>(acc ^ g.rows[static_cast<std::size_t>(g.v - 1 - p)]);
    }
    rows.push_back(acc);
  }
  return Subspace::from_rows(s.ambient(), std::move(rows));
}

// Remainder of polynomial division over GF(2); bit i = coefficient of x^i.
static unsigned poly_mod(unsigned a, unsigned b) {
  int db = static_cast<int>(std::bit_width(b)) - 1;
  while (a != 0 && static_cast<int>(std::bit_width(a)) - 1 >= db) {
    a ^= b << (static_cast<int>(std::bit_width(a)) - 1 - db);
  }
  return a;
}

bool ExtField::is_irreducible(unsigned poly, int n) {
  if (n < 1 || static_cast<int>(std::bit_width(poly)) - 1 != n) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    for (unsigned cand = 1u << d; cand < (2u << d); ++cand) {
      if (poly_mod(poly, cand) == 0) return false;
    }
  }
  return true;
}

unsigned ExtField::smallest_irreducible(int n) {
  for (unsigned poly = 1u << n; poly < (2u << n); ++poly) {
    if (is_irreducible(poly, n)) return poly;
  }
  throw std::logic_error("no irreducible polynomial found");
}

ExtField::ExtField(int n) : n_(n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("extension degree must be in [1,8]");
  }
  modulus_ = smallest_irreducible(n);
}

ExtField::ExtField(int n, unsigned modulus) : n_(n), modulus_(modulus) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("extension degree must be in [1,8]");
  }
  if (!is_irreducible(modulus, n)) {
    throw std::invalid_argument("modulus is not irreducible of degree " +
                                std::to_string(n));
  }
}

unsigned ExtField::mul(unsigned a, unsigned b) const {
  check_element(a);
  check_element(b);
  unsigned prod = 0;
  for (int i = 0; i < n_; ++i) {
    if (a >> i & 1) prod ^= b << i;
  }
  return poly_mod(prod, modulus_);
}

void ExtField::check_element(unsigned a) const {
  if (a >= size()) {
    throw std::invalid_argument("element " + std::to_string(a) +
                                " outside F_{2^" + std::to_string(n_) + "}");
  }
}

unsigned linpoly_eval(const ExtField& field, std::span<const unsigned> coeffs,
                      unsigned x) {
  field.check_element(x);
  unsigned acc = 0;
  unsigned pow = x;  // x^(2^i)
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    field.check_element(coeffs[i]);
    acc ^= field.mul(coeffs[i], pow);
    pow = field.frobenius(pow);
  }
  return acc;
}

}  // namespace scode
