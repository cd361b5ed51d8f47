#include "symcert/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "symcert/errors.hpp"

namespace symcert {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

/// Scale a row by a positive factor so the first nonzero coefficient has
/// absolute value one. Keeps the inequality direction while making duplicate
/// detection possible.
void normalize_row(LinIneq& r) {
  for (const Rational& c : r.a) {
    if (c != 0) {
      Rational s = abs(c);
      for (Rational& v : r.a) v /= s;
      r.b /= s;
      return;
    }
  }
}

/// Drops constant rows (0 <= b feasible, else reports contradiction) and
/// keeps only the tightest bound per normalized coefficient vector.
/// Returns false on a contradictory constant row.
bool tidy(std::vector<LinIneq>& system) {
  std::map<std::vector<Rational>, Rational> best;
  for (LinIneq& r : system) {
    bool all_zero = std::all_of(r.a.begin(), r.a.end(),
                                [](const Rational& c) { return c == 0; });
    if (all_zero) {
      if (r.b < 0) return false;
      continue;
    }
    normalize_row(r);
    auto it = best.find(r.a);
    if (it == best.end())
      best.emplace(std::move(r.a), r.b);
    else if (r.b < it->second)
      it->second = r.b;
  }
  system.clear();
  for (auto& [a, b] : best) system.push_back(LinIneq{a, b});
  return true;
}

struct Stage {
  std::size_t var = 0;
  // Rows with a positive coefficient on var give upper bounds x_var <= (b - rest)/coef,
  // negative ones give lower bounds. Stored unscaled.
  std::vector<LinIneq> uppers;
  std::vector<LinIneq> lowers;
};

/// Eliminates the given variables in order, recording each stage. Returns
/// false when a contradiction among constants surfaces. The surviving rows in
/// `system` involve only the remaining variables.
bool eliminate(std::vector<LinIneq>& system, const std::vector<std::size_t>& order,
               std::vector<Stage>& stages) {
  if (!tidy(system)) return false;
  for (std::size_t v : order) {
    Stage st;
    st.var = v;
    std::vector<LinIneq> keep;
    for (LinIneq& r : system) {
      const Rational& c = r.a[v];
      if (c > 0)
        st.uppers.push_back(std::move(r));
      else if (c < 0)
        st.lowers.push_back(std::move(r));
      else
        keep.push_back(std::move(r));
    }
    for (const LinIneq& up : st.uppers) {
      for (const LinIneq& lo : st.lowers) {
        // up: cu x_v <= bu - au.rest (cu > 0); lo: cl x_v <= bl - al.rest (cl < 0).
        // Combine with positive weights -cl and cu to cancel x_v.
        Rational wu = -lo.a[v];
        Rational wl = up.a[v];
        LinIneq combo;
        combo.a.resize(up.a.size());
        for (std::size_t j = 0; j < up.a.size(); ++j)
          combo.a[j] = wu * up.a[j] + wl * lo.a[j];
        combo.b = wu * up.b + wl * lo.b;
        keep.push_back(std::move(combo));
      }
    }
    system = std::move(keep);
    if (!tidy(system)) return false;
    stages.push_back(std::move(st));
  }
  return true;
}

/// Fills in x[stage.var] with any value consistent with the stage rows, all of
/// whose other referenced variables are already assigned.
void assign_from_stage(const Stage& st, std::vector<Rational>& x) {
  bool has_lo = false, has_up = false;
  Rational lo = 0, up = 0;
  for (const LinIneq& r : st.uppers) {
    Rational rest = dot(r.a, x) - r.a[st.var] * x[st.var];
    Rational bound = (r.b - rest) / r.a[st.var];
    if (!has_up || bound < up) up = bound, has_up = true;
  }
  for (const LinIneq& r : st.lowers) {
    Rational rest = dot(r.a, x) - r.a[st.var] * x[st.var];
    Rational bound = (r.b - rest) / r.a[st.var];  // division by negative flips to a lower bound
    if (!has_lo || bound > lo) lo = bound, has_lo = true;
  }
  if (has_lo && has_up)
    x[st.var] = (lo + up) / 2;
  else if (has_lo)
    x[st.var] = lo;
  else if (has_up)
    x[st.var] = up;
  else
    x[st.var] = 0;
}

void check_widths(const std::vector<LinIneq>& system, std::size_t nvars) {
  for (const LinIneq& r : system)
    if (r.a.size() != nvars)
      throw InvalidInput("inequality width does not match variable count");
}

}  // namespace

LinOpt fm_maximize(std::vector<LinIneq> system, const std::vector<Rational>& objective) {
  const std::size_t n = objective.size();
  check_widths(system, n);

  // Append the objective value as variable n, tied by two inequalities, then
  // eliminate the original variables and read bounds on the new one.
  for (LinIneq& r : system) r.a.push_back(Rational(0));
  LinIneq tie_up, tie_lo;
  tie_up.a.assign(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) tie_up.a[j] = -objective[j];
  tie_up.a[n] = 1;
  tie_up.b = 0;  // t - obj.x <= 0
  tie_lo.a.assign(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) tie_lo.a[j] = objective[j];
  tie_lo.a[n] = -1;
  tie_lo.b = 0;  // obj.x - t <= 0
  system.push_back(std::move(tie_up));
  system.push_back(std::move(tie_lo));

  std::vector<std::size_t> order;
  for (std::size_t v = n; v-- > 0;) order.push_back(v);

  std::vector<Stage> stages;
  LinOpt out;
  if (!eliminate(system, order, stages)) {
    out.status = LinOpt::Status::INFEASIBLE;
    return out;
  }

  // Remaining rows constrain variable n alone.
  bool has_up = false, has_lo = false;
  Rational up = 0, lo = 0;
  for (const LinIneq& r : system) {
    const Rational& c = r.a[n];
    if (c > 0) {
      Rational bound = r.b / c;
      if (!has_up || bound < up) up = bound, has_up = true;
    } else if (c < 0) {
      Rational bound = r.b / c;
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    }
  }
  if (has_up && has_lo && up < lo) {
    out.status = LinOpt::Status::INFEASIBLE;
    return out;
  }
  if (!has_up) {
    out.status = LinOpt::Status::UNBOUNDED;
    return out;
  }

  out.status = LinOpt::Status::OPTIMAL;
  out.value = up;
  std::vector<Rational> x(n + 1, Rational(0));
  x[n] = up;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) assign_from_stage(*it, x);
  x.pop_back();
  out.witness = std::move(x);
  return out;
}

std::optional<std::vector<Rational>> fm_witness(std::vector<LinIneq> system, std::size_t nvars) {
  check_widths(system, nvars);
  std::vector<std::size_t> order;
  for (std::size_t v = nvars; v-- > 0;) order.push_back(v);
  std::vector<Stage> stages;
  if (!eliminate(system, order, stages)) return std::nullopt;
  // Whatever remains is constant and consistent.
  std::vector<Rational> x(nvars, Rational(0));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) assign_from_stage(*it, x);
  return x;
}

std::optional<AffineSolution> solve_linear(std::vector<std::vector<Rational>> A,
                                           std::vector<Rational> y) {
  const std::size_t m = A.size();
  if (y.size() != m) throw InvalidInput("right hand side length mismatch");
  std::size_t n = m == 0 ? 0 : A[0].size();
  for (const auto& row : A)
    if (row.size() != n) throw InvalidInput("ragged coefficient matrix");

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;  // current pivot row
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[r]);
    std::swap(y[p], y[r]);
    Rational inv = A[r][c];
    for (std::size_t j = c; j < n; ++j) A[r][j] /= inv;
    y[r] /= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
      y[i] -= f * y[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (y[i] != 0) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.particular[pivot_col[i]] = y[i];

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> k(n, Rational(0));
    k[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) k[pivot_col[i]] = -A[i][c];
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

}  // namespace symcert
