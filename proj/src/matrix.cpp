#include "unitri/matrix.hpp"

#include "unitri/error.hpp"

#include <algorithm>
#include <utility>

namespace unitri {

namespace {

void require_compatible(const Matrix &a, const Matrix &b) {
  if (!(a.ring() == b.ring()))
    throw Error(errc::descriptor_mismatch, a.ring().name() + " vs " + b.ring().name());
  if (a.size() != b.size())
    throw Error(errc::dimension_mismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

Matrix minor_matrix(const Matrix &g, std::size_t row, std::size_t col) {
  const std::size_t n = g.size();
  Matrix m(g.ring(), n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == row)
      continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == col)
        continue;
      m.set(mi, mj++, g(i, j));
    }
    ++mi;
  }
  return m;
}

} // namespace

// --------------------------------------------------------------- Matrix

Matrix::Matrix(Ring ring, std::size_t n)
    : ring_(ring), n_(n), entries_(n * n, ring.zero()) {}

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    m.entries_[i * n + i] = ring.one();
  return m;
}

Matrix Matrix::from_ints(Ring ring,
                         std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(ring, rows.size());
  std::size_t i = 0;
  for (const auto &row : rows) {
    if (row.size() != rows.size())
      throw Error(errc::dimension_mismatch, "matrix rows must be square");
    std::size_t j = 0;
    for (long v : row)
      m.set(i, j++, ring.from_int(v));
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(Ring ring, std::vector<std::vector<Element>> rows) {
  const std::size_t n = rows.size();
  Matrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw Error(errc::dimension_mismatch, "matrix rows must be square");
    for (std::size_t j = 0; j < n; ++j)
      m.set(i, j, std::move(rows[i][j]));
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const Element> entries) {
  if (entries.empty())
    throw Error(errc::dimension_mismatch, "empty diagonal");
  Matrix m(entries.front().ring(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    m.set(i, i, entries[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, Element value) {
  if (!(value.ring() == ring_))
    throw Error(errc::descriptor_mismatch, value.ring().name() + " vs " + ring_.name());
  entries_[i * n_ + j] = std::move(value);
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      t.entries_[j * n_ + i] = entries_[i * n_ + j];
  return t;
}

Matrix Matrix::block(std::size_t offset, std::size_t size) const {
  Matrix b(ring_, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      b.entries_[i * size + j] = (*this)(offset + i, offset + j);
  return b;
}

Matrix Matrix::embed(std::size_t n, std::size_t offset) const {
  Matrix e = identity(ring_, n);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      e.entries_[(offset + i) * n + offset + j] = (*this)(i, j);
  return e;
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const Element &x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero())
        return false;
    }
  return true;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
  require_compatible(a, b);
  const std::size_t n = a.n_;
  Matrix c(a.ring_, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Element &aik = a(i, k);
      if (aik.is_zero())
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Element &bkj = b(k, j);
        if (!bkj.is_zero())
          c.entries_[i * n + j] = c.entries_[i * n + j] + aik * bkj;
      }
    }
  return c;
}

bool operator==(const Matrix &a, const Matrix &b) {
  return a.ring_ == b.ring_ && a.n_ == b.n_ && a.entries_ == b.entries_;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j)
        s += ",";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

Matrix mul(const Matrix &a, const Matrix &b) { return a * b; }

// ---------------------------------------------------------- transvections

Matrix Transvection::matrix(std::size_t n) const {
  if (i == j || i >= n || j >= n)
    throw Error(errc::dimension_mismatch, "transvection index out of range");
  Matrix m = Matrix::identity(xi.ring(), n);
  m.set(i, j, xi);
  return m;
}

Matrix apply_transvection(const Matrix &g, const Transvection &t, ApplySide side) {
  const std::size_t n = g.size();
  if (t.i == t.j || t.i >= n || t.j >= n)
    throw Error(errc::dimension_mismatch, "transvection index out of range");
  if (!(t.xi.ring() == g.ring()))
    throw Error(errc::descriptor_mismatch, t.xi.ring().name() + " vs " + g.ring().name());
  Matrix r = g;
  if (t.xi.is_zero())
    return r;
  if (side == ApplySide::left) {
    for (std::size_t c = 0; c < n; ++c)
      r.set(t.i, c, g(t.i, c) + t.xi * g(t.j, c));
  } else {
    for (std::size_t row = 0; row < n; ++row)
      r.set(row, t.j, g(row, t.j) + g(row, t.i) * t.xi);
  }
  return r;
}

Matrix word_product(const Ring &ring, std::size_t n,
                    std::span<const Transvection> word) {
  Matrix m = Matrix::identity(ring, n);
  for (const auto &t : word)
    m = apply_transvection(m, t, ApplySide::right);
  return m;
}

std::vector<Transvection> commutator_letters(const Transvection &t, std::size_t k) {
  if (k == t.i || k == t.j)
    throw Error(errc::dimension_mismatch, "commutator pivot must differ from i and j");
  if (t.xi.is_zero())
    return {};
  const Ring &ring = t.xi.ring();
  // t_ij(x) = t_ik(x) t_kj(1) t_ik(-x) t_kj(-1)
  return {{t.i, k, t.xi}, {k, t.j, ring.one()}, {t.i, k, -t.xi}, {k, t.j, -ring.one()}};
}

// ------------------------------------------------------------ determinant

Element det(const Matrix &g) {
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (n == 0)
    return ring.one();
  // vect holds the characteristic polynomial of the leading r x r block,
  // highest degree first.
  std::vector<Element> vect{ring.one(), -g(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<Element> col;
    col.reserve(r + 2);
    col.push_back(ring.one());
    col.push_back(-g(r, r));
    std::vector<Element> v(r, ring.zero());
    for (std::size_t i = 0; i < r; ++i)
      v[i] = g(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Element dot = ring.zero();
      for (std::size_t i = 0; i < r; ++i)
        dot = dot + g(r, i) * v[i];
      col.push_back(-dot);
      if (k + 1 < r) {
        std::vector<Element> next(r, ring.zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            next[i] = next[i] + g(i, j) * v[j];
        v = std::move(next);
      }
    }
    std::vector<Element> next(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        next[i] = next[i] + col[i - j] * vect[j];
    vect = std::move(next);
  }
  return n % 2 == 0 ? vect[n] : -vect[n];
}

Matrix reverse_conjugate(const Matrix &g) {
  const std::size_t n = g.size();
  Matrix r(g.ring(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.set(n - 1 - i, n - 1 - j, g(i, j));
  return r;
}

Matrix inverse(const Matrix &g) {
  const std::size_t n = g.size();
  Element d_inv = det(g).inverse();
  Matrix inv(g.ring(), n);
  if (n == 1) {
    inv.set(0, 0, d_inv);
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element cof = det(minor_matrix(g, i, j));
      if ((i + j) % 2 == 1)
        cof = -cof;
      inv.set(j, i, cof * d_inv);
    }
  return inv;
}

Matrix unitriangular_inverse(const Matrix &g) {
  if (is_lower_unitriangular(g) && !is_upper_unitriangular(g))
    return unitriangular_inverse(g.transpose()).transpose();
  if (!is_upper_unitriangular(g))
    throw Error(errc::not_a_unit, "matrix is not unitriangular");
  const std::size_t n = g.size();
  Matrix x = Matrix::identity(g.ring(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      Element s = g.ring().zero();
      for (std::size_t k = i + 1; k <= j; ++k)
        s = s + g(i, k) * x(k, j);
      x.set(i, j, -s);
    }
  return x;
}

// ------------------------------------------------------------- predicates

bool is_upper_unitriangular(const Matrix &g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g(i, i).is_one())
      return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!g(i, j).is_zero())
        return false;
  }
  return true;
}

bool is_lower_unitriangular(const Matrix &g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g(i, i).is_one())
      return false;
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!g(i, j).is_zero())
        return false;
  }
  return true;
}

bool is_unitriangular(const Matrix &g, Side side) {
  return side == Side::upper ? is_upper_unitriangular(g) : is_lower_unitriangular(g);
}

MatrixFlags classify(const Matrix &g) {
  MatrixFlags f;
  const std::size_t n = g.size();
  f.upper_unitriangular = is_upper_unitriangular(g);
  f.lower_unitriangular = is_lower_unitriangular(g);
  f.diagonal = true;
  for (std::size_t i = 0; i < n && f.diagonal; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !g(i, j).is_zero()) {
        f.diagonal = false;
        break;
      }
  f.monomial = true;
  std::vector<bool> column_used(n, false);
  for (std::size_t i = 0; i < n && f.monomial; ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j).is_zero())
        continue;
      ++nonzero;
      if (!g(i, j).is_unit() || column_used[j])
        f.monomial = false;
      column_used[j] = true;
    }
    if (nonzero != 1)
      f.monomial = false;
  }
  f.identity = f.upper_unitriangular && f.lower_unitriangular;
  f.sl = det(g).is_one();
  return f;
}

// ---------------------------------------------------------- factorisations

std::string Factorisation::pattern() const {
  std::string s;
  for (const auto &b : blocks) {
    if (!s.empty())
      s += ' ';
    s += side_letter(b.side);
  }
  return s;
}

Matrix Factorisation::product() const {
  Matrix m = Matrix::identity(target.ring(), target.size());
  for (const auto &b : blocks)
    m = m * b.mat;
  return m;
}

Factorisation compact(std::vector<Block> blocks, Matrix target) {
  std::vector<Block> out;
  for (auto &b : blocks) {
    if (b.mat.is_identity())
      continue;
    if (!out.empty() && out.back().side == b.side)
      out.back().mat = out.back().mat * b.mat;
    else
      out.push_back(std::move(b));
  }
  // Merging can produce an identity block, which may in turn expose two
  // neighbours of the same side.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].mat.is_identity()) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        if (i > 0 && i < out.size() && out[i - 1].side == out[i].side) {
          out[i - 1].mat = out[i - 1].mat * out[i].mat;
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        }
        changed = true;
        break;
      }
    }
  }
  return Factorisation{std::move(out), std::move(target), {}};
}

VerifyReport verify_factorisation(const Factorisation &f) {
  VerifyReport report;
  report.length = f.blocks.size();
  report.pattern = f.pattern();
  const Ring &ring = f.target.ring();
  const std::size_t n = f.target.size();
  for (std::size_t k = 0; k < f.blocks.size(); ++k) {
    const Block &b = f.blocks[k];
    const std::string where = "block " + std::to_string(k + 1);
    if (!(b.mat.ring() == ring) || b.mat.size() != n) {
      report.first_violation = where + ": ring or dimension differs from target";
      return report;
    }
    if (!is_unitriangular(b.mat, b.side)) {
      report.first_violation = where + ": not " +
                               (b.side == Side::upper ? "upper" : "lower") +
                               " unitriangular";
      return report;
    }
    if (k > 0 && f.blocks[k - 1].side == b.side) {
      report.first_violation = "blocks " + std::to_string(k) + " and " +
                               std::to_string(k + 1) + ": sides do not alternate";
      return report;
    }
  }
  const Matrix p = f.product();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(p(i, j) == f.target(i, j))) {
        report.first_violation = "product differs from target at (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ")";
        return report;
      }
  report.ok = true;
  return report;
}

} // namespace unitri
