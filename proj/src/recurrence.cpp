#include "specc/recurrence.hpp"

#include <algorithm>
#include <numeric>

#include "specc/errors.hpp"

namespace specc {

namespace {

std::size_t leading_zeros(std::span<const Int> terms) {
  std::size_t z = 0;
  while (z < terms.size() && terms[z] == 0) ++z;
  return z;
}

Int eval_poly(const std::vector<Int>& p, long n) {
  Int acc = 0, x = 1;
  for (const Int& c : p) {
    if (c != 0) acc += c * x;
    x *= n;
  }
  return acc;
}

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = Rat(1) / m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
      if (r2 == row || m[r2][col] == 0) continue;
      Rat f = m[r2][col];
      for (std::size_t c = col; c < cols; ++c) m[r2][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> m,
                                        std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> x(cols, Rat(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Integer, content-1, positive-leading-p0 form of a rational solution vector.
std::optional<Recurrence> normalize(const std::vector<Rat>& x, int order,
                                    int degree) {
  Int lcm_den = 1;
  for (const Rat& v : x) {
    Int d = denominator(v);
    lcm_den = lcm_den / gcd(lcm_den, d) * d;
  }
  std::vector<Int> flat;
  flat.reserve(x.size());
  Int content = 0;
  for (const Rat& v : x) {
    Int c = numerator(v) * (lcm_den / denominator(v));
    content = gcd(content, c);
    flat.push_back(std::move(c));
  }
  if (content == 0) return std::nullopt;  // zero vector
  for (Int& c : flat) c /= content;

  Recurrence rec;
  rec.order = order;
  rec.coeffs.assign(order + 1, std::vector<Int>(degree + 1, Int(0)));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= degree; ++j)
      rec.coeffs[i][j] = flat[static_cast<std::size_t>(i) * (degree + 1) + j];

  // p0 must not vanish identically; its leading coefficient fixes the sign
  int lead = -1;
  for (int j = degree; j >= 0; --j)
    if (rec.coeffs[0][j] != 0) {
      lead = j;
      break;
    }
  if (lead < 0) return std::nullopt;
  if (rec.coeffs[0][lead] < 0)
    for (auto& p : rec.coeffs)
      for (Int& c : p) c = -c;

  rec.degree = 0;
  for (const auto& p : rec.coeffs)
    for (int j = degree; j >= 0; --j)
      if (p[j] != 0) {
        rec.degree = std::max(rec.degree, j);
        break;
      }
  return rec;
}

bool holds_at(const Recurrence& rec, std::span<const Int> t, std::size_t n) {
  Int acc = 0;
  for (int i = 0; i <= rec.order; ++i) {
    const Int& u = t[n - i];
    if (u == 0) continue;
    acc += eval_poly(rec.coeffs[i], static_cast<long>(n)) * u;
  }
  return acc == 0;
}

bool lex_less(const Recurrence& a, const Recurrence& b) {
  auto flatten = [](const Recurrence& r) {
    std::vector<Int> out;
    for (const auto& p : r.coeffs)
      for (const Int& c : p) out.push_back(c);
    return out;
  };
  return flatten(a) < flatten(b);
}

}  // namespace

std::optional<Recurrence> guess_recurrence(std::span<const Int> terms,
                                           int max_order, int max_degree) {
  if (max_order < 1 || max_degree < 0)
    throw QueryError("recurrence bounds must satisfy order >= 1, degree >= 0");
  std::size_t z = leading_zeros(terms);
  std::span<const Int> t = terms.subspan(z);
  std::size_t holdout = 2 * static_cast<std::size_t>(max_order + max_degree);
  std::size_t need = static_cast<std::size_t>(max_order + 1) * (max_degree + 1) +
                     static_cast<std::size_t>(max_order) + holdout;
  if (t.size() < need)
    throw InsufficientTermsError(
        "need at least " + std::to_string(need) + " usable terms (got " +
        std::to_string(t.size()) + " after trimming " + std::to_string(z) +
        " leading zeros)");
  std::size_t fit_len = t.size() - holdout;

  for (int r = 1; r <= max_order; ++r) {
    for (int d = 0; d <= max_degree; ++d) {
      std::size_t cols = static_cast<std::size_t>(r + 1) * (d + 1);
      std::vector<std::vector<Rat>> m;
      for (std::size_t n = static_cast<std::size_t>(r); n < fit_len; ++n) {
        std::vector<Rat> row;
        row.reserve(cols);
        for (int i = 0; i <= r; ++i) {
          Int npow = 1;
          for (int j = 0; j <= d; ++j) {
            row.emplace_back(t[n - i] * npow);
            npow *= static_cast<long>(n);
          }
        }
        m.push_back(std::move(row));
      }
      auto basis = nullspace(std::move(m), cols);
      std::optional<Recurrence> best;
      for (const auto& x : basis) {
        auto cand = normalize(x, r, d);
        if (!cand) continue;
        bool ok = true;
        for (std::size_t n = fit_len; n < t.size() && ok; ++n)
          ok = holds_at(*cand, t, n);
        if (!ok) continue;
        cand->trimmed_zeros = static_cast<int>(z);
        if (!best || lex_less(*cand, *best)) best = std::move(cand);
      }
      if (best) return best;
    }
  }
  return std::nullopt;
}

bool verify(const Recurrence& rec, std::span<const Int> terms) {
  std::size_t z = leading_zeros(terms);
  std::span<const Int> t = terms.subspan(z);
  for (std::size_t n = static_cast<std::size_t>(rec.order); n < t.size(); ++n)
    if (!holds_at(rec, t, n)) return false;
  return true;  // vacuously true when t.size() <= order
}

std::optional<Recurrence> recurrence_for(Tables& tables, std::string_view cls,
                                         long N, int max_order, int max_degree,
                                         Mode mode) {
  std::vector<Int> terms = tables.series(cls, N, mode);
  auto rec = guess_recurrence(terms, max_order, max_degree);
  if (rec && !verify(*rec, terms)) return std::nullopt;
  return rec;
}

namespace {

std::string poly_str(const std::vector<Int>& p) {
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && p[deg] == 0) --deg;
  std::string out;
  for (int j = deg; j >= 0; --j) {
    const Int& c = p[j];
    if (c == 0) continue;
    Int a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (j == 0) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += j == 1 ? "n" : "n^" + std::to_string(j);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string render_recurrence(const Recurrence& rec) {
  std::string out;
  for (int i = 0; i <= rec.order; ++i) {
    const auto& p = rec.coeffs[i];
    int lead = -1;
    Int content = 0;
    for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j) {
      if (p[j] != 0 && lead < 0) lead = j;
      content = gcd(content, p[j]);
    }
    if (lead < 0) continue;  // p_i identically zero
    bool negative = p[lead] < 0;
    std::vector<Int> prim(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
      prim[j] = p[j] / (negative ? -content : content);

    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string u = i == 0 ? "u(n)" : "u(n - " + std::to_string(i) + ")";
    if (lead == 0) {  // constant coefficient: prim is 1 after normalization
      out += content == 1 ? u : content.str() + "*" + u;
    } else {
      std::string head = content == 1 ? "" : content.str() + "*";
      out += head + "(" + poly_str(prim) + ")*" + u;
    }
  }
  return out + " = 0";
}

}  // namespace specc
