#include "twrn/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twrn/errors.hpp"

namespace twrn {

const char* mode_name(Mode mode) { return mode == Mode::af ? "af" : "df"; }

std::vector<std::string> state_labels(Mode mode) {
  if (mode == Mode::af) return {"S_b", "S0", "S1", "S2", "S3"};
  return {"S0", "S1", "S2", "S3"};
}

std::size_t state_count(Mode mode) { return mode == Mode::af ? 5 : 4; }

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "transition probability '" << name << "' = " << p << " outside [0,1]";
    throw Error(os.str());
  }
}

}  // namespace

TransitionMatrix build_af_chain(const AfOutagePair& outage) {
  check_probability(outage.p12, "p12");
  check_probability(outage.p21, "p21");
  const double p12 = outage.p12, p21 = outage.p21;

  TransitionMatrix m{Mode::af, 5, std::vector<double>(25, 0.0)};
  // Indices: 0 S_b, 1 S0, 2 S1, 3 S2, 4 S3.
  m.at(0, 1) = p12 * p21;
  m.at(0, 2) = p21 * (1.0 - p12);
  m.at(0, 3) = p12 * (1.0 - p21);
  m.at(0, 4) = (1.0 - p12) * (1.0 - p21);
  for (std::size_t s = 1; s < 5; ++s) m.at(s, 0) = 1.0;  // odd slots always retransmit
  return m;
}

TransitionMatrix build_df_chain(const DfOutageProfile& outage) {
  check_probability(outage.p1r, "p1r");
  check_probability(outage.p2r, "p2r");
  check_probability(outage.pr1, "pr1");
  check_probability(outage.pr2, "pr2");
  const double p1r = outage.p1r, p2r = outage.p2r;
  const double pr1 = outage.pr1, pr2 = outage.pr2;

  TransitionMatrix m{Mode::df, 4, std::vector<double>(16, 0.0)};
  // S0: poll T1 for x1.
  m.at(0, 0) = p1r;
  m.at(0, 1) = 1.0 - p1r;
  // S1: poll T2 for x2.
  m.at(1, 1) = p2r;
  m.at(1, 3) = 1.0 - p2r;
  // S2: poll T1 for a new x1 (x2 is retained).
  m.at(2, 2) = p1r;
  m.at(2, 3) = 1.0 - p1r;
  // S3: broadcast; exits depend on which terminals decoded.
  m.at(3, 0) = (1.0 - pr1) * (1.0 - pr2);
  m.at(3, 1) = (1.0 - pr1) * pr2;  // T1 decoded x2, T2 missed x1
  m.at(3, 2) = pr1 * (1.0 - pr2);  // mirror case
  m.at(3, 3) = pr1 * pr2;          // rebroadcast the same codeword
  return m;
}

StationaryDistribution stationary(const TransitionMatrix& P) {
  const std::size_t n = P.n;
  const auto labels = state_labels(P.mode);

  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += P.at(i, j);
    if (std::abs(row - 1.0) > 1e-12)
      throw Error("stationary: matrix is not row-stochastic at state " + labels[i]);
    if (P.at(i, i) == 1.0)
      throw DegenerateError("stationary: state " + labels[i] +
                            " is absorbing; the chain has no mixing stationary distribution");
  }

  // Solve (P^T - I) pi = 0 with the last balance row replaced by sum(pi) = 1.
  std::vector<double> a(n * (n + 1), 0.0);
  const std::size_t w = n + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = P.at(j, i) - (i == j ? 1.0 : 0.0);
    a[i * w + n] = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) a[(n - 1) * w + j] = 1.0;
  a[(n - 1) * w + n] = 1.0;

  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * w + col]) > std::abs(a[piv * w + col])) piv = r;
    if (std::abs(a[piv * w + col]) < 1e-13)
      throw DegenerateError(
          "stationary: singular balance system (multiple recurrent classes or "
          "degenerate outage probabilities)");
    if (piv != col)
      for (std::size_t c = col; c <= n; ++c) std::swap(a[piv * w + c], a[col * w + c]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * w + col] / a[col * w + col];
      for (std::size_t c = col; c <= n; ++c) a[r * w + c] -= factor * a[col * w + c];
    }
  }
  std::vector<double> pi(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double rhs = a[i * w + n];
    for (std::size_t j = i + 1; j < n; ++j) rhs -= a[i * w + j] * pi[j];
    pi[i] = rhs / a[i * w + i];
  }

  // Clean up round-off and renormalize.
  double sum = 0.0;
  for (double& v : pi) {
    if (v < 0.0) {
      if (v < -1e-9)
        throw DegenerateError("stationary: solver produced a negative probability");
      v = 0.0;
    }
    sum += v;
  }
  for (double& v : pi) v /= sum;

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double flow = 0.0;
    for (std::size_t i = 0; i < n; ++i) flow += pi[i] * P.at(i, j);
    residual = std::max(residual, std::abs(flow - pi[j]));
  }

  return {P.mode, std::move(pi), residual, StationarySource::chain_solved};
}

StationaryDistribution df_stationary_paper(const DfOutageProfile& outage) {
  const double p1r = outage.p1r, p2r = outage.p2r;
  const double pr1 = outage.pr1, pr2 = outage.pr2;
  const double d = 3.0 - 2.0 * p1r - 2.0 * p2r - pr1 - pr2 + pr1 * p2r + p1r * pr2 +
                   p1r * p2r;
  if (std::abs(d) < 1e-12)
    throw DegenerateError("df_stationary_paper: degenerate outage profile (denominator ~ 0)");

  std::vector<double> pi = {
      (1.0 - p2r) * (1.0 - pr1) * (1.0 - pr2) / d,
      (1.0 - p1r) * (1.0 - pr2) / d,
      (1.0 - p2r) * (1.0 - pr1) * pr2 / d,
      (1.0 - p1r) * (1.0 - p2r) / d,
  };
  const double sum = pi[0] + pi[1] + pi[2] + pi[3];
  return {Mode::df, std::move(pi), std::abs(sum - 1.0), StationarySource::paper_closed_form};
}

StationaryComparison compare_stationary(const StationaryDistribution& a,
                                        const StationaryDistribution& b) {
  if (a.mode != b.mode || a.pi.size() != b.pi.size())
    throw Error("compare_stationary: distributions are over different state sets");

  StationaryComparison cmp;
  cmp.mode = a.mode;
  cmp.per_state_diff.resize(a.pi.size());
  for (std::size_t i = 0; i < a.pi.size(); ++i) {
    cmp.per_state_diff[i] = a.pi[i] - b.pi[i];
    cmp.linf = std::max(cmp.linf, std::abs(cmp.per_state_diff[i]));
  }
  if (a.mode == Mode::df)
    cmp.s1_plus_s2_diff = (a.pi[1] + a.pi[2]) - (b.pi[1] + b.pi[2]);
  return cmp;
}

}  // namespace twrn
