#include "condtrack/polysys.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace condtrack {

namespace {

Complex pow_int(Complex base, int e) {
  Complex r(1.0, 0.0);
  while (e-- > 0) r *= base;
  return r;
}

bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

int Monomial::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

ProjectivePoint::ProjectivePoint(CVec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw DimensionError("ProjectivePoint needs at least 2 coordinates");
  if (coords_.norm() == 0.0)
    throw DimensionError("ProjectivePoint must be a nonzero vector");
}

ProjectivePoint ProjectivePoint::normalized() const {
  return ProjectivePoint(coords_ / coords_.norm());
}

HomogeneousSystem::HomogeneousSystem(
    std::vector<int> degrees, std::vector<std::vector<Monomial>> equations)
    : degrees_(std::move(degrees)) {
  const int n = static_cast<int>(degrees_.size());
  if (n < 1) throw DimensionError("system needs at least one equation");
  if (static_cast<int>(equations.size()) != n)
    throw DimensionError("equation count does not match degree count");
  equations_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (degrees_[i] < 1) throw DimensionError("degrees must be >= 1");
    std::map<std::vector<int>, Complex> merged;
    for (const Monomial& m : equations[i]) {
      if (static_cast<int>(m.exponents.size()) != n + 1)
        throw DimensionError("monomial exponent vector has wrong length");
      for (int e : m.exponents)
        if (e < 0) throw DimensionError("negative exponent");
      if (m.total_degree() != degrees_[i]) {
        std::ostringstream os;
        os << "monomial of degree " << m.total_degree() << " in equation " << i
           << " of degree " << degrees_[i];
        throw DimensionError(os.str());
      }
      merged[m.exponents] += m.coeff;
    }
    std::vector<Monomial> eq;
    eq.reserve(merged.size());
    for (const auto& [exps, c] : merged)
      if (c != Complex(0.0, 0.0)) eq.push_back(Monomial{exps, c});
    std::sort(eq.begin(), eq.end(), [](const Monomial& a, const Monomial& b) {
      return lex_greater(a.exponents, b.exponents);
    });
    equations_[i] = std::move(eq);
  }
}

int HomogeneousSystem::max_degree() const {
  return *std::max_element(degrees_.begin(), degrees_.end());
}

bool HomogeneousSystem::is_zero() const {
  for (const auto& eq : equations_)
    if (!eq.empty()) return false;
  return true;
}

CVec evaluate(const HomogeneousSystem& f, const CVec& x) {
  if (x.size() != f.num_vars())
    throw DimensionError("evaluate: point dimension does not match system");
  CVec out = CVec::Zero(f.num_equations());
  for (int i = 0; i < f.num_equations(); ++i) {
    Complex acc(0.0, 0.0);
    for (const Monomial& m : f.equation(i)) {
      Complex term = m.coeff;
      for (int j = 0; j < f.num_vars(); ++j)
        term *= pow_int(x[j], m.exponents[j]);
      acc += term;
    }
    out[i] = acc;
  }
  return out;
}

CVec evaluate(const HomogeneousSystem& f, const ProjectivePoint& x) {
  return evaluate(f, x.coords());
}

CMat jacobian(const HomogeneousSystem& f, const CVec& x) {
  if (x.size() != f.num_vars())
    throw DimensionError("jacobian: point dimension does not match system");
  CMat out = CMat::Zero(f.num_equations(), f.num_vars());
  for (int i = 0; i < f.num_equations(); ++i) {
    for (const Monomial& m : f.equation(i)) {
      for (int j = 0; j < f.num_vars(); ++j) {
        const int a = m.exponents[j];
        if (a == 0) continue;
        Complex term = m.coeff * static_cast<double>(a);
        for (int l = 0; l < f.num_vars(); ++l) {
          const int e = (l == j) ? m.exponents[l] - 1 : m.exponents[l];
          term *= pow_int(x[l], e);
        }
        out(i, j) += term;
      }
    }
  }
  return out;
}

CMat jacobian(const HomogeneousSystem& f, const ProjectivePoint& x) {
  return jacobian(f, x.coords());
}

namespace {

// d/dv applied to one equation's monomial list: sum_j v_j d/dz_j, symbolically.
std::vector<Monomial> directional_derivative(const std::vector<Monomial>& eq,
                                             const CVec& v) {
  std::map<std::vector<int>, Complex> acc;
  const int nv = static_cast<int>(v.size());
  for (const Monomial& m : eq) {
    for (int j = 0; j < nv; ++j) {
      const int a = m.exponents[j];
      if (a == 0 || v[j] == Complex(0.0, 0.0)) continue;
      std::vector<int> e = m.exponents;
      e[j] -= 1;
      acc[e] += m.coeff * static_cast<double>(a) * v[j];
    }
  }
  std::vector<Monomial> out;
  out.reserve(acc.size());
  for (const auto& [exps, c] : acc) out.push_back(Monomial{exps, c});
  return out;
}

Complex evaluate_terms(const std::vector<Monomial>& eq, const CVec& x) {
  Complex acc(0.0, 0.0);
  for (const Monomial& m : eq) {
    Complex term = m.coeff;
    for (int j = 0; j < x.size(); ++j) term *= pow_int(x[j], m.exponents[j]);
    acc += term;
  }
  return acc;
}

}  // namespace

CVec higher_derivative_apply(const HomogeneousSystem& f,
                             const ProjectivePoint& x, int k, const CVec& v) {
  if (k < 2 || k > f.max_degree())
    throw DimensionError("higher_derivative_apply: k must be in [2, D]");
  if (v.size() != f.num_vars() || x.dim() != f.num_vars())
    throw DimensionError("higher_derivative_apply: dimension mismatch");
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  CVec out = CVec::Zero(f.num_equations());
  for (int i = 0; i < f.num_equations(); ++i) {
    std::vector<Monomial> terms = f.equation(i);
    for (int j = 0; j < k && !terms.empty(); ++j)
      terms = directional_derivative(terms, v);
    out[i] = evaluate_terms(terms, x.coords()) / kfact;
  }
  return out;
}

double bw_weight(const std::vector<int>& exponents) {
  // alpha!/d! = 1/multinomial(d; alpha), built from binomials; exact in
  // double for desk-scale degrees.
  double multinomial = 1.0;
  int seen = 0;
  for (int a : exponents) {
    for (int j = 1; j <= a; ++j) {
      ++seen;
      multinomial *= static_cast<double>(seen) / static_cast<double>(j);
    }
  }
  return 1.0 / multinomial;
}

namespace {

void require_same_shape(const HomogeneousSystem& f, const HomogeneousSystem& g,
                        const char* who) {
  if (f.degrees() != g.degrees())
    throw DimensionError(std::string(who) +
                         ": systems differ in size or degrees");
}

}  // namespace

Complex bw_inner(const HomogeneousSystem& f, const HomogeneousSystem& g) {
  require_same_shape(f, g, "bw_inner");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < f.num_equations(); ++i) {
    const auto& fe = f.equation(i);
    const auto& ge = g.equation(i);
    // Both lists are sorted in the same canonical order; merge-walk them.
    size_t a = 0, b = 0;
    while (a < fe.size() && b < ge.size()) {
      if (fe[a].exponents == ge[b].exponents) {
        acc += bw_weight(fe[a].exponents) * fe[a].coeff * std::conj(ge[b].coeff);
        ++a;
        ++b;
      } else if (lex_greater(fe[a].exponents, ge[b].exponents)) {
        ++a;
      } else {
        ++b;
      }
    }
  }
  return acc;
}

double bw_norm(const HomogeneousSystem& f) {
  double acc = 0.0;
  for (int i = 0; i < f.num_equations(); ++i)
    for (const Monomial& m : f.equation(i))
      acc += bw_weight(m.exponents) * std::norm(m.coeff);
  return std::sqrt(acc);
}

HomogeneousSystem linear_combination(Complex a, const HomogeneousSystem& f,
                                     Complex b, const HomogeneousSystem& g) {
  require_same_shape(f, g, "linear_combination");
  std::vector<std::vector<Monomial>> eqs(f.num_equations());
  for (int i = 0; i < f.num_equations(); ++i) {
    eqs[i] = f.equation(i);
    for (Monomial& m : eqs[i]) m.coeff *= a;
    for (const Monomial& m : g.equation(i))
      eqs[i].push_back(Monomial{m.exponents, b * m.coeff});
  }
  return HomogeneousSystem(f.degrees(), std::move(eqs));
}

HomogeneousSystem scale(Complex a, const HomogeneousSystem& f) {
  std::vector<std::vector<Monomial>> eqs(f.num_equations());
  for (int i = 0; i < f.num_equations(); ++i) {
    eqs[i] = f.equation(i);
    for (Monomial& m : eqs[i]) m.coeff *= a;
  }
  return HomogeneousSystem(f.degrees(), std::move(eqs));
}

HomogeneousSystem normalize(const HomogeneousSystem& f) {
  const double n = bw_norm(f);
  if (n == 0.0) throw ZeroSystemError("normalize: zero system");
  return scale(Complex(1.0 / n, 0.0), f);
}

HomogeneousSystem compose_unitary(const HomogeneousSystem& f, const CMat& U) {
  const int nv = f.num_vars();
  if (U.rows() != nv || U.cols() != nv)
    throw DimensionError("compose_unitary: U has wrong shape");
  if ((U.adjoint() * U - CMat::Identity(nv, nv)).cwiseAbs().maxCoeff() > 1e-12)
    throw DimensionError("compose_unitary: U is not unitary to 1e-12");

  std::vector<std::vector<Monomial>> eqs(f.num_equations());
  for (int i = 0; i < f.num_equations(); ++i) {
    std::map<std::vector<int>, Complex> acc;
    for (const Monomial& m : f.equation(i)) {
      // Expand coeff * prod_j ((Uz)_j)^{a_j} by repeated multiplication with
      // the linear forms (Uz)_j = sum_l U(j,l) z_l.
      std::map<std::vector<int>, Complex> poly;
      poly[std::vector<int>(nv, 0)] = m.coeff;
      for (int j = 0; j < nv; ++j) {
        for (int rep = 0; rep < m.exponents[j]; ++rep) {
          std::map<std::vector<int>, Complex> next;
          for (const auto& [exps, c] : poly) {
            for (int l = 0; l < nv; ++l) {
              if (U(j, l) == Complex(0.0, 0.0)) continue;
              std::vector<int> e = exps;
              e[l] += 1;
              next[e] += c * U(j, l);
            }
          }
          poly = std::move(next);
        }
      }
      for (const auto& [exps, c] : poly) acc[exps] += c;
    }
    for (const auto& [exps, c] : acc) eqs[i].push_back(Monomial{exps, c});
  }
  return HomogeneousSystem(f.degrees(), std::move(eqs));
}

}  // namespace condtrack
