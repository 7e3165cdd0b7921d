#include "hochlab/hkr/monomial.hpp"

#include <sstream>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

long ceil_div(long a, long b) {
  // b > 0
  long q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

}  // namespace

std::optional<long> MonomialModel::i_min(long j) const {
  if (min_u_power && j < *min_u_power) return std::nullopt;
  long i = ceil_div(-gamma - beta * j, alpha);
  if (valuation_floor && i < *valuation_floor) i = *valuation_floor;
  return i;
}

std::size_t MonomialModel::rank(int degree) const {
  if (degree % 2 != 0) return 0;
  return i_min(-degree / 2) ? 1 : 0;
}

std::string MonomialModel::to_string() const {
  std::ostringstream os;
  os << alpha << "*i + " << beta << "*j + " << gamma << " >= 0";
  if (valuation_floor) os << ", i >= " << *valuation_floor;
  if (min_u_power) os << ", j >= " << *min_u_power;
  return os.str();
}

MonomialModel monomial_model(long alpha, long beta, long gamma, std::optional<long> valuation_floor,
                             const TruncationPolicy& T, std::optional<long> min_u_power) {
  if (alpha <= 0) throw PreconditionError("monomial model needs alpha > 0");
  if (T.min_degree > T.max_degree) throw PreconditionError("empty window");
  MonomialModel M;
  M.alpha = alpha;
  M.beta = beta;
  M.gamma = gamma;
  M.valuation_floor = valuation_floor;
  M.min_u_power = min_u_power;
  M.min_degree = T.min_degree;
  M.max_degree = T.max_degree;
  return M;
}

MonomialModel cn_model(int n, const TruncationPolicy& T) { return monomial_model(n, n + 1, n, 0, T); }

MonomialModel laurent_model(int n, const TruncationPolicy& T) { return monomial_model(1, n, n, std::nullopt, T, 0); }

ModelReport compare(const CyclicHomology& H, const MonomialModel& M) {
  ModelReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.mismatches.push_back(s);
  };
  for (const auto& D : H.homology.degrees) {
    const int t = D.degree;
    if (!D.trusted || t < M.min_degree || t > M.max_degree) continue;
    ++rep.degrees_checked;
    const std::size_t want = M.rank(t);
    if (D.free_rank != want) fail("degree " + std::to_string(t) + ": rank " + std::to_string(D.free_rank) + ", model " + std::to_string(want));
    if (!D.torsion.empty()) fail("degree " + std::to_string(t) + ": torsion present");
  }
  for (const auto& [t, U] : H.u_action) {
    if (t % 2 != 0 || t < M.min_degree || t - 2 < M.min_degree || t > M.max_degree) continue;
    if (M.rank(t) != 1 || M.rank(t - 2) != 1 || U.rows() != 1 || U.cols() != 1) continue;
    const long j = -t / 2;
    const long e = *M.i_min(j) - *M.i_min(j + 1);
    const Poly p = U.get(0, 0);
    ++rep.u_checked;
    if (e < 0 || p.is_zero() || p.degree() != e || p.valuation() != e)
      fail("u on degree " + std::to_string(t) + ": " + p.to_string() + ", model x^" + std::to_string(e));
  }
  return rep;
}

ModelReport embeds(const MonomialModel& a, const MonomialModel& b) {
  ModelReport rep;
  for (int t = a.min_degree; t <= a.max_degree; ++t) {
    if (t % 2 != 0) continue;
    ++rep.degrees_checked;
    const long j = -t / 2;
    const auto ia = a.i_min(j), ib = b.i_min(j);
    if (!ia) continue;
    if (!ib || *ib > *ia) {
      rep.ok = false;
      rep.mismatches.push_back("degree " + std::to_string(t) + ": x^" + std::to_string(*ia) + " u^" + std::to_string(j) +
                               " not in the larger model");
    }
  }
  return rep;
}

}  // namespace hochlab
