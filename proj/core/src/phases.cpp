#include "statespace/phases.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "statespace/error.hpp"

namespace statespace {

void PresentedMonoid::validate() const {
  for (const auto& [u, v] : relations) {
    if (u.size() != n_gens || v.size() != n_gens) {
      fail(ErrorCode::InvalidArgument, "relation vector length differs from the generator count");
    }
  }
}

std::string AbelianGroupInvariants::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : torsion) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<BigInt> diag;
  std::size_t r = 0;
  bool exhausted = false;
  for (std::size_t c = 0; c < cols && r < rows && !exhausted; ++c) {
    // Smallest nonzero entry of the remaining submatrix becomes the pivot.
    for (;;) {
      std::size_t pr = rows, pc = cols;
      BigInt best = 0;
      for (std::size_t i = r; i < rows; ++i) {
        for (std::size_t j = c; j < cols; ++j) {
          if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < best)) {
            best = abs(m[i][j]);
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) {
        exhausted = true;
        break;
      }
      std::swap(m[r], m[pr]);
      for (auto& row : m) std::swap(row[c], row[pc]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        const BigInt q = m[i][c] / m[r][c];
        if (q != 0) {
          for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        if (m[i][c] != 0) clean = false;
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        const BigInt q = m[r][j] / m[r][c];
        if (q != 0) {
          for (std::size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
        }
        if (m[r][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (exhausted) break;
    diag.push_back(abs(m[r][c]));
    ++r;
  }
  // Elementary divisors: enforce d_i | d_{i+1} by gcd/lcm exchanges.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const BigInt g = gcd(diag[i], diag[j]);
      const BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  return diag;
}

AbelianGroupInvariants k0(const PresentedMonoid& m) {
  m.validate();
  std::vector<std::vector<BigInt>> rel;
  for (const auto& [u, v] : m.relations) {
    std::vector<BigInt> row(m.n_gens);
    for (std::size_t g = 0; g < m.n_gens; ++g) row[g] = BigInt(u[g]) - BigInt(v[g]);
    if (std::any_of(row.begin(), row.end(), [](const BigInt& x) { return x != 0; })) {
      rel.push_back(std::move(row));
    }
  }
  const auto diag = smith_diagonal(std::move(rel));
  AbelianGroupInvariants out;
  out.free_rank = m.n_gens - diag.size();
  for (const auto& d : diag) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

PresentedMonoid localize(const PresentedMonoid& m, const Exponents& elem) {
  m.validate();
  if (elem.size() != m.n_gens) fail(ErrorCode::InvalidArgument, "element has the wrong length");
  PresentedMonoid out;
  out.n_gens = m.n_gens + 1;
  for (const auto& [u, v] : m.relations) {
    Exponents u2 = u, v2 = v;
    u2.push_back(0);
    v2.push_back(0);
    out.relations.emplace_back(std::move(u2), std::move(v2));
  }
  Exponents lhs = elem;
  lhs.push_back(1);
  out.relations.emplace_back(std::move(lhs), Exponents(out.n_gens, 0));
  return out;
}

namespace {

bool dominates(const Exponents& x, const Exponents& u) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < u[i]) return false;
  }
  return true;
}

Exponents rewrite(const Exponents& x, const Exponents& from, const Exponents& to) {
  Exponents y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] - from[i] + to[i];
  return y;
}

// Everything reachable from x by at most `depth` single relation rewrites.
std::set<Exponents> ball(const Exponents& x, const PresentedMonoid& m, std::size_t depth) {
  std::set<Exponents> seen{x};
  std::vector<Exponents> frontier{x};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Exponents> next;
    for (const auto& y : frontier) {
      for (const auto& [u, v] : m.relations) {
        if (dominates(y, u)) {
          auto z = rewrite(y, u, v);
          if (seen.insert(z).second) next.push_back(std::move(z));
        }
        if (dominates(y, v)) {
          auto z = rewrite(y, v, u);
          if (seen.insert(z).second) next.push_back(std::move(z));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

Exponents shifted(const Exponents& a, const Exponents& psi, std::size_t k) {
  Exponents out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * psi[i];
  return out;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> stable_equiv(
    const Exponents& a, const Exponents& b, const Exponents& psi, const PresentedMonoid& m,
    std::size_t bound) {
  m.validate();
  if (a.size() != m.n_gens || b.size() != m.n_gens || psi.size() != m.n_gens) {
    fail(ErrorCode::InvalidArgument, "vectors must have one entry per generator");
  }
  std::vector<std::optional<std::set<Exponents>>> balls(bound + 1);
  for (std::size_t total = 0; total <= 2 * bound; ++total) {
    for (std::size_t i = total > bound ? total - bound : 0; i <= std::min(total, bound); ++i) {
      const std::size_t j = total - i;
      if (!balls[i]) balls[i] = ball(shifted(a, psi, i), m, bound);
      if (balls[i]->count(shifted(b, psi, j))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace statespace
