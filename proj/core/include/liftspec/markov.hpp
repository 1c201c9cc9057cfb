#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "liftspec/lift.hpp"
#include "liftspec/linalg.hpp"

namespace liftspec {

// Reversible Markov chain: row-stochastic P with stationary vector pi
// satisfying detailed balance pi(i) P(i,j) = pi(j) P(j,i). Instances are
// only created through make_chain, so a ReversibleChain in hand is valid.
struct ReversibleChain {
  int n = 0;
  Matrix p;                 // n x n, rows sum to 1 within 1e-10
  std::vector<double> pi;   // positive, sums to 1 within 1e-10
};

// Validates dimensions, nonnegativity, row sums, pi positivity and total
// mass, and detailed balance, all at tolerance 1e-10.
// errors: NotStochastic, InvalidStationary, NotReversible, InvalidParams.
ReversibleChain make_chain(Matrix p, std::vector<double> pi);

// The symmetric conjugate Q(i,j) = sqrt(pi(i)/pi(j)) P(i,j). Detailed
// balance makes Q symmetric up to roundoff (the constructor symmetrizes);
// Q and P share their spectrum, so chain spectra are computed from Q.
SymmetricMatrix symmetrize(const ReversibleChain& chain);

// Random k-lift of a chain on n*k states under the labelling
// (i, l) -> (i - 1) * k + l. Each unordered pair {i, j}, i != j, with a
// positive transition either way draws one matching from the substream
// keyed by (min, max); the same matching serves both directions so the
// lifted chain stays reversible with respect to pi_k(i, l) = pi(i) / k.
// Self-transitions lift diagonally: P_k((i,l),(i,l)) = P(i,i).
ReversibleChain lift_chain(const ReversibleChain& chain, int k,
                           std::uint64_t seed, Sampler sampler);

// c_P = max_i sum_j pi(j) P(j,i)^2 / pi(i), the variance proxy of the
// chain-lift deviation bound. Always <= max_(i,r) P(r,i).
double c_param(const ReversibleChain& chain);

// High-probability bound 16 sqrt(c_P ln(nk/delta)) on the largest |new
// eigenvalue| of a uniform chain lift.
double chain_bound(double c_p, long long n, long long k, double delta);

// Multiset difference spectrum(Q of lifted) minus spectrum(Q of base):
// the eigenvalues the lift added. Containment is structural; a match
// failure throws SpectrumContainmentViolated.
Spectrum chain_new_eigenvalues(const ReversibleChain& chain,
                               const ReversibleChain& lifted);

// True if the support graph of P (edges where P(i,j) > 0 or P(j,i) > 0,
// diagonal ignored) is connected. The lift routines do not require this;
// callers use it to warn about reducible chains.
bool is_connected(const ReversibleChain& chain);

// Text format: first line "n", then n lines of n probabilities (the rows
// of P), then one line of n stationary values. Parse errors carry line and
// column context; validation errors come from make_chain.
ReversibleChain read_chain(std::istream& in);
void write_chain(std::ostream& out, const ReversibleChain& chain);

}  // namespace liftspec
