#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bvl {

/// Elementary integer number theory used throughout the library.
/// All routines are exact and deterministic; no randomness.

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t m);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Prime factorization by trial division (our moduli are desk-scale).
/// Returns (prime, exponent) pairs in ascending prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t euler_phi(std::uint64_t n);

/// p^e with overflow detection; throws std::overflow_error past 2^63.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// All prime powers q = p^e with lo <= q <= hi, ascending.
std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi);

/// Splits q into (p, e) if q is a prime power, else returns false.
bool split_prime_power(std::uint64_t q, std::uint64_t& p, unsigned& e);

}  // namespace bvl
