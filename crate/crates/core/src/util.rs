//! Small numeric helpers shared across modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Prime factorisation of a group order; group orders here only have small primes.
pub fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while !n.is_one() && !n.is_zero() {
        let bp = BigUint::from(p);
        if BigUint::from(p * p) > n {
            let rest = n.to_u64().expect("large prime factor");
            out.push((rest, 1));
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `⌈√n⌉` exactly.
pub fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    64 - (n - 1).leading_zeros()
}

/// `⌈n/2 − √n⌉`: least integer `L` with `L ≥ n/2 − √n`.
pub fn ceil_half_minus_sqrt(n: u64) -> u64 {
    // L ≥ n/2 − √n  ⇔  2L ≥ n − 2√n  ⇔  (n − 2L ≤ 0) or (n − 2L)² ≤ 4n
    let mut l = 0u64;
    loop {
        let d = n as i128 - 2 * l as i128;
        if d <= 0 || d * d <= 4 * n as i128 {
            return l;
        }
        l += 1;
    }
}

/// `⌈2√n⌉`: least `L` with `L² ≥ 4n`.
pub fn ceil_two_sqrt(n: u64) -> u64 {
    ceil_sqrt(4 * n)
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
