#include "koszulkit/snf.hpp"

#include "koszulkit/error.hpp"

#include <algorithm>
#include <optional>

namespace koszulkit {

std::vector<Rational> SmithForm::diagonal() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

RMat identity_matrix(std::size_t n) {
  RMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMat multiply(const Pid& pid, const RMat& a, const RMat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix dimension mismatch");
  RMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = pid.canonical(c(i, j));
  return c;
}

namespace {

// Row and column operations applied simultaneously to A and the transforms.
class Reducer {
 public:
  Reducer(const Pid& pid, const RMat& a, bool track)
      : pid_(pid), track_(track), f_{a, {}, {}, {}, {}, 0} {
    if (track_) {
      f_.u = identity_matrix(a.rows());
      f_.u_inv = identity_matrix(a.rows());
      f_.v = identity_matrix(a.cols());
      f_.v_inv = identity_matrix(a.cols());
    }
  }

  // row_i -= q * row_t
  void row_axpy(std::size_t i, std::size_t t, const Rational& q) {
    if (q == 0) return;
    RMat& a = f_.d;
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = pid_.sub(a(i, j), pid_.mul(q, a(t, j)));
    if (!track_) return;
    for (std::size_t j = 0; j < f_.u.cols(); ++j) f_.u(i, j) = pid_.sub(f_.u(i, j), pid_.mul(q, f_.u(t, j)));
    for (std::size_t r = 0; r < f_.u_inv.rows(); ++r)
      f_.u_inv(r, t) = pid_.add(f_.u_inv(r, t), pid_.mul(q, f_.u_inv(r, i)));
  }

  // col_j -= q * col_t
  void col_axpy(std::size_t j, std::size_t t, const Rational& q) {
    if (q == 0) return;
    RMat& a = f_.d;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = pid_.sub(a(i, j), pid_.mul(q, a(i, t)));
    if (!track_) return;
    for (std::size_t r = 0; r < f_.v.rows(); ++r) f_.v(r, j) = pid_.sub(f_.v(r, j), pid_.mul(q, f_.v(r, t)));
    for (std::size_t c = 0; c < f_.v_inv.cols(); ++c)
      f_.v_inv(t, c) = pid_.add(f_.v_inv(t, c), pid_.mul(q, f_.v_inv(j, c)));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    f_.d.swap_rows(a, b);
    if (!track_) return;
    f_.u.swap_rows(a, b);
    f_.u_inv.swap_cols(a, b);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    f_.d.swap_cols(a, b);
    if (!track_) return;
    f_.v.swap_cols(a, b);
    f_.v_inv.swap_rows(a, b);
  }

  void scale_row(std::size_t t, const Rational& unit) {
    if (unit == 1) return;
    RMat& a = f_.d;
    for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = pid_.mul(a(t, j), unit);
    if (!track_) return;
    Rational inv = pid_.inverse(unit);
    for (std::size_t j = 0; j < f_.u.cols(); ++j) f_.u(t, j) = pid_.mul(f_.u(t, j), unit);
    for (std::size_t r = 0; r < f_.u_inv.rows(); ++r) f_.u_inv(r, t) = pid_.mul(f_.u_inv(r, t), inv);
  }

  // Rows (t, i) <- M (t, i) with M = [[x, y], [-b/g, a/g]], det M = 1.
  void row_bezout(std::size_t t, std::size_t i, const Rational& x, const Rational& y, const Rational& ag,
                  const Rational& bg) {
    auto mix = [&](RMat& m) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational rt = m(t, j), ri = m(i, j);
        m(t, j) = pid_.canonical(x * rt + y * ri);
        m(i, j) = pid_.canonical(ag * ri - bg * rt);
      }
    };
    mix(f_.d);
    if (!track_) return;
    mix(f_.u);
    for (std::size_t r = 0; r < f_.u_inv.rows(); ++r) {
      Rational ct = f_.u_inv(r, t), ci = f_.u_inv(r, i);
      f_.u_inv(r, t) = pid_.canonical(ag * ct + bg * ci);
      f_.u_inv(r, i) = pid_.canonical(x * ci - y * ct);
    }
  }

  // Columns (t, j) <- (t, j) N with N = [[x, -b/g], [y, a/g]], det N = 1.
  void col_bezout(std::size_t t, std::size_t j, const Rational& x, const Rational& y, const Rational& ag,
                  const Rational& bg) {
    auto mix = [&](RMat& m) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Rational ct = m(r, t), cj = m(r, j);
        m(r, t) = pid_.canonical(x * ct + y * cj);
        m(r, j) = pid_.canonical(ag * cj - bg * ct);
      }
    };
    mix(f_.d);
    if (!track_) return;
    mix(f_.v);
    for (std::size_t c = 0; c < f_.v_inv.cols(); ++c) {
      Rational rt = f_.v_inv(t, c), rj = f_.v_inv(j, c);
      f_.v_inv(t, c) = pid_.canonical(ag * rt + bg * rj);
      f_.v_inv(j, c) = pid_.canonical(x * rj - y * rt);
    }
  }

  struct Bezout {
    Rational g, x, y;
  };

  // x a + y b = g = gcd(a, b); only needed over Z, where a need not divide b.
  static Bezout bezout(const Rational& a, const Rational& b) {
    Integer r0 = numerator_of(a), r1 = numerator_of(b), x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
      Integer q = r0 / r1, t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    return {Rational(r0), Rational(x0), Rational(y0)};
  }

  // Clears a(i, t) against the pivot a(t, t).
  void clear_below(std::size_t t, std::size_t i) {
    const Rational a = f_.d(t, t), b = f_.d(i, t);
    if (pid_.divides(a, b)) {
      row_axpy(i, t, pid_.divmod(b, a).first);
    } else if (pid_.divides(b, a)) {
      swap_rows(t, i);
      row_axpy(i, t, pid_.divmod(a, b).first);
    } else {
      Bezout z = bezout(a, b);
      row_bezout(t, i, z.x, z.y, a / z.g, b / z.g);
    }
  }

  void clear_right(std::size_t t, std::size_t j) {
    const Rational a = f_.d(t, t), b = f_.d(t, j);
    if (pid_.divides(a, b)) {
      col_axpy(j, t, pid_.divmod(b, a).first);
    } else if (pid_.divides(b, a)) {
      swap_cols(t, j);
      col_axpy(j, t, pid_.divmod(a, b).first);
    } else {
      Bezout z = bezout(a, b);
      col_bezout(t, j, z.x, z.y, a / z.g, b / z.g);
    }
  }

  SmithForm run() {
    RMat& a = f_.d;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_smallest_to(t)) break;
      while (true) {
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0) clear_below(t, i);
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0) clear_right(t, j);
        bool clean = true;
        for (std::size_t i = t + 1; i < m && clean; ++i) clean = a(i, t) == 0;
        if (!clean) continue;
        // The pivot must divide the remaining block for a divisor chain.
        std::optional<std::size_t> offender;
        for (std::size_t i = t + 1; i < m && !offender; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!pid_.divides(a(t, t), a(i, j))) {
              offender = i;
              break;
            }
        if (!offender) break;
        row_axpy(t, *offender, Rational(-1));
      }
      scale_row(t, pid_.normalizing_unit(a(t, t)));
    }
    f_.rank = t;
    return std::move(f_);
  }

 private:
  bool move_smallest_to(std::size_t t) {
    const RMat& a = f_.d;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_size;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        Integer s = pid_.size(a(i, j));
        if (!best || s < best_size) {
          best = {i, j};
          best_size = s;
        }
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  const Pid& pid_;
  bool track_;
  SmithForm f_;
};

RMat canonicalized(const Pid& pid, const RMat& a) {
  RMat c = a;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = pid.canonical(c(i, j));
  return c;
}

}  // namespace

SmithForm smith_form(const Pid& pid, const RMat& a) { return Reducer(pid, canonicalized(pid, a), true).run(); }

std::vector<Rational> invariant_factors(const Pid& pid, const RMat& a) {
  return Reducer(pid, canonicalized(pid, a), false).run().diagonal();
}

Rational determinant(const Pid& pid, const RMat& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const bool modular = pid.kind() == PidKind::PrimeField;
  RMat m = canonicalized(pid, a);
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      m.swap_rows(piv, c);
      det = -det;
    }
    det *= m(c, c);
    Rational inv = modular ? pid.inverse(m(c, c)) : Rational(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) = pid.canonical(m(r, j) - f * m(c, j));
    }
  }
  return pid.canonical(det);
}

RMat kernel_basis(const Pid& pid, const RMat& a) {
  SmithForm f = smith_form(pid, a);
  return f.v.block(0, f.v.rows(), f.rank, f.v.cols());
}

bool solve(const Pid& pid, const RMat& a, const std::vector<Rational>& b, std::vector<Rational>* x) {
  if (b.size() != a.rows()) throw Error(ErrorKind::InvalidArgument, "right-hand side has wrong length");
  SmithForm f = smith_form(pid, a);
  // U A V = D, so A x = b iff D y = U b with x = V y.
  std::vector<Rational> ub(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k < a.rows(); ++k) acc += f.u(i, k) * b[k];
    ub[i] = pid.canonical(acc);
  }
  std::vector<Rational> y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < f.rank) {
      auto [q, r] = pid.divmod(ub[i], f.d(i, i));
      if (r != 0) return false;
      y[i] = q;
    } else if (ub[i] != 0) {
      return false;
    }
  }
  if (x) {
    x->assign(a.cols(), Rational(0));
    for (std::size_t i = 0; i < a.cols(); ++i) {
      Rational acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += f.v(i, k) * y[k];
      (*x)[i] = pid.canonical(acc);
    }
  }
  return true;
}

}  // namespace koszulkit
