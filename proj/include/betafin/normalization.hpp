#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "betafin/expansion.hpp"

namespace betafin {

/// Indices 0 = k_0 < k_1 < k_2 < ... (1-based word positions) such that each
/// block c[k_{i}+1, k_{i+1}-1] copies a prefix of d*_beta(1) and c_{k_{i+1}}
/// falls strictly below the corresponding digit of d*_beta(1).
///
/// For an eventually periodic word the sequence is eventually arithmetic:
/// after head, the block indices run through cycle, cycle + shift,
/// cycle + 2 shift, ...
struct FreeBlockDecomposition {
  std::vector<std::size_t> head;
  std::vector<std::size_t> cycle;
  std::size_t shift = 0;

  /// k_i for i >= 0.
  std::size_t at(std::size_t i) const;
  /// The i with k_i < ell <= k_{i+1}, for ell >= 1.
  std::size_t block_containing(std::size_t ell) const;
  std::vector<std::size_t> first(std::size_t n) const;

  friend bool operator==(const FreeBlockDecomposition&, const FreeBlockDecomposition&) = default;
};

/// Throws NotAdmissible if w is not in D_beta.
FreeBlockDecomposition free_blocks(const BetaNumeration& num, const DigitWord& w);

struct CarryResult {
  DigitWord c_tilde;           // the word before the rewrite
  int theta = 0;
  std::vector<Digit> head;     // c[1,k_i-1](c_{k_i}+1) 0^{ell-k_i-1} theta
  SignedWord tail;             // tail word minus d*[ell-k_i+1, inf]
  SignedWord carry;            // head followed by tail
};

/// One application of the carry formula to the word built from c, the block
/// index i (k_i < ell), the position ell and the replacement tail c'.
/// Both nu(c_tilde) == nu(carry) and theta + nu(c') - xi(ell-k_i+1) >= 0 are
/// checked; a failure throws InvariantViolation. Throws NotApplicable when
/// i == 0 or when ell >= k_{i+1} and c_tilde is already admissible.
CarryResult carry_step(const BetaNumeration& num, const DigitWord& c, const FreeBlockDecomposition& blocks,
                       std::size_t i, std::size_t ell, const DigitWord& tail);

/// Certificate {x+1}_beta - {x}_beta = theta - sum_j omegas[j] T^j(1).
struct KeyWitness {
  int theta = 0;
  std::vector<long> omegas;
  std::vector<Rational> lhs;  // coordinates of {x+1} - {x}
  std::vector<Rational> rhs;  // coordinates of theta - sum omegas[j] T^j(1)
  bool verified = false;
  std::size_t cascade_steps = 0;

  std::string to_json() const;
};

struct AddOneResult {
  Expansion expansion;  // of x + 1
  KeyWitness witness;
};

/// The +1 normalization cascade for x >= 0. Throws CascadeOverrun if the
/// cascade would pass the first free block, InvariantViolation if any
/// internal identity fails.
AddOneResult add_one(const BetaNumeration& num, const FieldElement& x);

/// Nonnegative omegas with {N}_beta = -sum_{n>=1} omegas[n-1] T^n(1) mod Z.
std::vector<long> witness_for_natural(const BetaNumeration& num, long n);

/// Witnesses for every N in [0, n_max], built incrementally. Entry N holds
/// the list for N.
std::vector<std::vector<long>> witnesses_up_to(const BetaNumeration& num, long n_max);

/// Whether {N}_beta + sum_{n>=1} omegas[n-1] T^n(1) is an integer.
bool check_natural_witness(const BetaNumeration& num, long n, const std::vector<long>& omegas);

}  // namespace betafin
