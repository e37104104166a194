#include "beauville/numth.hpp"

#include <stdexcept>

namespace bvl {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (n) {
        if (n & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        n >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set is known to decide primality for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    if (n < 2) return out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        if (p > 3'000'000 && is_prime(n)) break;  // large prime cofactor
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (1ull << 62) / p) throw std::overflow_error("prime power exceeds 2^62");
        r *= p;
    }
    return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = lo; q <= hi; ++q) {
        std::uint64_t p;
        unsigned e;
        if (split_prime_power(q, p, e)) out.push_back(q);
    }
    return out;
}

bool split_prime_power(std::uint64_t q, std::uint64_t& p, unsigned& e) {
    if (q < 2) return false;
    auto f = factorize(q);
    if (f.size() != 1) return false;
    p = f[0].first;
    e = static_cast<unsigned>(f[0].second);
    return true;
}

}  // namespace bvl
