#include "liftspec/markov.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "liftspec/errors.hpp"
#include "liftspec/format.hpp"
#include "liftspec/rng.hpp"

namespace liftspec {

namespace {

constexpr double kChainTol = 1e-10;

}  // namespace

ReversibleChain make_chain(Matrix p, std::vector<double> pi) {
  const int n = p.rows();
  if (n < 1) throw InvalidParams("make_chain: at least one state required");
  if (p.cols() != n)
    throw InvalidParams("make_chain: transition matrix must be square");
  if (static_cast<int>(pi.size()) != n)
    throw InvalidParams("make_chain: stationary vector length must equal the state count");

  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (p(i, j) < 0.0)
        throw NotStochastic("make_chain: negative transition probability at (" +
                            std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
      row_sum += p(i, j);
    }
    if (std::fabs(row_sum - 1.0) > kChainTol)
      throw NotStochastic("make_chain: row " + std::to_string(i + 1) +
                          " sums to " + std::to_string(row_sum) + ", not 1");
  }

  double pi_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(pi[i] > 0.0))
      throw InvalidStationary("make_chain: stationary entry " +
                              std::to_string(i + 1) + " is not positive");
    pi_sum += pi[i];
  }
  if (std::fabs(pi_sum - 1.0) > kChainTol)
    throw InvalidStationary("make_chain: stationary vector sums to " +
                            std::to_string(pi_sum) + ", not 1");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(pi[i] * p(i, j) - pi[j] * p(j, i)) > kChainTol)
        throw NotReversible("make_chain: detailed balance fails for states " +
                            std::to_string(i + 1) + " and " + std::to_string(j + 1));

  return ReversibleChain{n, std::move(p), std::move(pi)};
}

SymmetricMatrix symmetrize(const ReversibleChain& chain) {
  const int n = chain.n;
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      q[static_cast<std::size_t>(i) * n + j] =
          std::sqrt(chain.pi[i] / chain.pi[j]) * chain.p(i, j);
  // Detailed balance makes q symmetric up to roundoff; the constructor
  // averages the residual away.
  return SymmetricMatrix(n, q);
}

ReversibleChain lift_chain(const ReversibleChain& chain, int k,
                           std::uint64_t seed, Sampler sampler) {
  if (k < 1) throw InvalidParams("lift_chain: k must be at least 1");
  const int n = chain.n;
  const int nk = n * k;
  Matrix pk(nk, nk);

  // Diagonal entries lift to self-loops on every copy.
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) pk(i * k + l, i * k + l) = chain.p(i, i);

  // One matching per unordered pair with a positive transition either way,
  // shared by both directions so detailed balance survives the lift. The
  // substream keying matches the graph-lift convention: 1-based state
  // labels (min, max).
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (chain.p(i, j) <= 0.0 && chain.p(j, i) <= 0.0) continue;
      const Matching m =
          sample_matching(k,
                          substream(seed, static_cast<std::uint64_t>(i) + 1,
                                    static_cast<std::uint64_t>(j) + 1),
                          sampler);
      for (int l = 0; l < k; ++l) {
        const int r = m.to[l] - 1;
        pk(i * k + l, j * k + r) = chain.p(i, j);
        pk(j * k + r, i * k + l) = chain.p(j, i);
      }
    }
  }

  std::vector<double> pik(static_cast<std::size_t>(nk));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) pik[static_cast<std::size_t>(i) * k + l] = chain.pi[i] / k;

  return make_chain(std::move(pk), std::move(pik));
}

double c_param(const ReversibleChain& chain) {
  const int n = chain.n;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      s += chain.pi[j] * chain.p(j, i) * chain.p(j, i) / chain.pi[i];
    best = std::max(best, s);
  }
  return best;
}

double chain_bound(double c_p, long long n, long long k, double delta) {
  if (c_p < 0.0) throw InvalidParams("chain_bound: c_P must be nonnegative");
  if (n < 1 || k < 1) throw InvalidParams("chain_bound: n and k must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidParams("chain_bound: delta must lie in (0, 1)");
  return 16.0 * std::sqrt(c_p * std::log(static_cast<double>(n) *
                                         static_cast<double>(k) / delta));
}

Spectrum chain_new_eigenvalues(const ReversibleChain& chain,
                               const ReversibleChain& lifted) {
  if (lifted.n % chain.n != 0)
    throw InvalidParams("chain_new_eigenvalues: state counts are incompatible");
  const Spectrum big = sym_eigenvalues(symmetrize(lifted));
  const Spectrum small = sym_eigenvalues(symmetrize(chain));
  const MultisetDiff diff =
      multiset_diff(big, small, spectrum_match_tol(big.max_abs()));
  if (diff.match_failure)
    throw SpectrumContainmentViolated(
        "chain_new_eigenvalues: base spectrum not contained in lift spectrum");
  return diff.values;
}

bool is_connected(const ReversibleChain& chain) {
  const int n = chain.n;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      if (j == i || seen[j]) continue;
      if (chain.p(i, j) > 0.0 || chain.p(j, i) > 0.0) {
        seen[j] = 1;
        ++visited;
        stack.push_back(j);
      }
    }
  }
  return visited == n;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError(what); }

std::vector<double> parse_prob_row(const std::string& line, int line_no,
                                   int row_label, int n, const char* what) {
  std::istringstream row(line);
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int jj = 0; jj < n; ++jj) {
    if (!(row >> vals[static_cast<std::size_t>(jj)]))
      parse_fail("line " + std::to_string(line_no) + " (" + what +
                 (row_label > 0 ? " " + std::to_string(row_label) : "") +
                 "), column " + std::to_string(jj + 1) + ": expected a number");
  }
  std::string extra;
  if (row >> extra)
    parse_fail("line " + std::to_string(line_no) +
               ": unexpected content after " + std::to_string(n) + " numbers");
  return vals;
}

}  // namespace

ReversibleChain read_chain(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!std::getline(in, line))
    parse_fail("line 1: unexpected end of input, expected the state count");
  ++line_no;
  std::istringstream header(line);
  long long n = 0;
  std::string extra;
  if (!(header >> n) || (header >> extra))
    parse_fail("line 1: expected a single integer state count");
  if (n < 1) parse_fail("line 1: state count must be at least 1");
  if (n > 1000000) parse_fail("line 1: state count too large");

  Matrix p(static_cast<int>(n), static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      parse_fail("line " + std::to_string(line_no + 1) +
                 ": unexpected end of input, expected row " +
                 std::to_string(i + 1) + " of the transition matrix");
    ++line_no;
    const std::vector<double> vals =
        parse_prob_row(line, line_no, i + 1, static_cast<int>(n), "row");
    for (int j = 0; j < n; ++j) p(i, j) = vals[static_cast<std::size_t>(j)];
  }
  if (!std::getline(in, line))
    parse_fail("line " + std::to_string(line_no + 1) +
               ": unexpected end of input, expected the stationary vector");
  ++line_no;
  const std::vector<double> pi =
      parse_prob_row(line, line_no, 0, static_cast<int>(n), "stationary vector");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      parse_fail("line " + std::to_string(line_no) +
                 ": unexpected content after the stationary vector");
  }
  return make_chain(std::move(p), pi);
}

void write_chain(std::ostream& out, const ReversibleChain& chain) {
  const auto emit = [&out](double v, bool first) {
    if (!first) out << ' ';
    out << format_double(v);
  };
  out << chain.n << '\n';
  for (int i = 0; i < chain.n; ++i) {
    for (int j = 0; j < chain.n; ++j) emit(chain.p(i, j), j == 0);
    out << '\n';
  }
  for (int i = 0; i < chain.n; ++i) emit(chain.pi[i], i == 0);
  out << '\n';
}

}  // namespace liftspec
