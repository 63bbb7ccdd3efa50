//! Integer helpers shared by the field and criteria code.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Distinct prime factors of `n`, ascending. Empty for `n <= 1`.
pub fn prime_factors(n: u64) -> Vec<u64> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n).into_keys().collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative order of `q` modulo `n`; `None` when `gcd(q, n) != 1`.
pub fn order_mod(q: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(q % n, n) != 1 {
        return None;
    }
    let q = q % n;
    let mut x = q;
    let mut m = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        m += 1;
    }
    Some(m)
}
