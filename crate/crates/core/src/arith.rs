//! Small integer utilities shared by the p-adic and group modules.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `n`; `n` must be nonzero.
pub fn valuation(p: u64, mut n: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// If `q` is a prime power `p^f` with `f >= 1`, returns `(p, f)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Smallest generator of the multiplicative group of the prime field `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(r, _)| pow_mod(g, (p - 1) / r, p) != 1)
        })
        .expect("every prime field has a primitive root")
}

/// Largest `A` with `A^2 | c`.
///
/// Trial division runs up to the cube root of `c`; whatever cofactor is left
/// has at most two prime factors and contributes only when it is a square.
pub fn square_divisor_bound(c: &BigUint) -> BigUint {
    assert!(!c.is_zero(), "square_divisor_bound requires c >= 1");
    let mut rest = c.clone();
    let mut bound = BigUint::one();
    let limit = c.cbrt();
    let mut d = BigUint::from(2u32);
    while d <= limit && !rest.is_one() {
        let mut e = 0u32;
        while rest.is_multiple_of(&d) {
            rest /= &d;
            e += 1;
        }
        if e >= 2 {
            bound *= d.pow(e / 2);
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        bound *= root;
    }
    bound
}

/// `square_divisor_bound` for factored input: the product of `p^(e/2)`.
pub fn square_divisor_bound_factored(factors: &[(u64, u32)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e / 2)
    })
}

pub fn is_perfect_square(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Extended Euclid on signed integers: `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

pub fn biguint_to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
