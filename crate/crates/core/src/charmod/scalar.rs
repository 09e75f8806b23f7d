use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::group::FiniteGroup;
use crate::{Error, Result};

/// A prime field `F_p` holding an element `ζ` of exact order `N`.
///
/// Every group of exponent dividing `N` and order `m` with `2m² < p` has its
/// character values represented faithfully: roots of unity stay distinct, and
/// inner products of characters are integers of absolute value below `p/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarContext {
    n: u64,
    p: u64,
    zeta: u64,
    max_order: usize,
}

impl ScalarContext {
    /// Smallest prime `p ≡ 1 (mod n)` with `p > 2·max_order²`, and a `ζ` of order `n`.
    pub fn new(n: u64, max_order: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ScalarContext("exponent must be positive".into()));
        }
        let bound = 2u128 * (max_order as u128) * (max_order as u128);
        let mut k = (bound / n as u128) as u64 + 1;
        let p = loop {
            let cand = (k as u128) * (n as u128) + 1;
            if cand > u64::MAX as u128 / 2 {
                return Err(Error::ScalarContext(format!("no usable prime for N = {n}")));
            }
            let cand = cand as u64;
            if cand as u128 > bound && cand > 2 && is_prime(cand) {
                break cand;
            }
            k += 1;
        };
        let zeta = find_root_of_unity(p, n);
        Ok(Self {
            n,
            p,
            zeta,
            max_order,
        })
    }

    /// A context covering every listed group.
    pub fn for_groups(groups: &[&FiniteGroup]) -> Result<Self> {
        let n = groups.iter().fold(1u64, |acc, g| acc.lcm(&g.exponent()));
        let m = groups.iter().map(|g| g.order()).max().unwrap_or(1);
        Self::new(n, m)
    }

    pub fn covers(&self, group: &FiniteGroup) -> Result<()> {
        if !self.n.is_multiple_of(group.exponent()) {
            return Err(Error::ScalarContext(format!(
                "exponent {} does not divide N = {}",
                group.exponent(),
                self.n
            )));
        }
        if group.order() > self.max_order {
            return Err(Error::ScalarContext(format!(
                "order {} exceeds the bound {} this prime was chosen for",
                group.order(),
                self.max_order
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn zeta(&self) -> u64 {
        self.zeta
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        powmod(a, self.p - 2, self.p)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let p = self.p as i128;
        (((x as i128) % p + p) % p) as u64
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn lift(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    /// `ζ_o^k` where `ζ_o = ζ^{N/o}` is the chosen primitive `o`-th root of unity.
    pub fn root_of_unity(&self, o: u64, k: u64) -> u64 {
        debug_assert!(self.n.is_multiple_of(o));
        self.pow(self.zeta, (self.n / o) * (k % o))
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn find_root_of_unity(p: u64, n: u64) -> u64 {
    let factors = prime_factors(n);
    (2..p)
        .map(|a| powmod(a, (p - 1) / n, p))
        .find(|&z| factors.iter().all(|&r| powmod(z, n / r, p) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 1..=24 {
            let ctx = ScalarContext::new(n, 48).unwrap();
            assert_eq!(ctx.p() % n, 1 % n);
            assert!(ctx.p() > 2 * 48 * 48);
            let mut seen = alloc::collections::BTreeSet::new();
            for k in 0..n {
                assert!(seen.insert(ctx.pow(ctx.zeta(), k)));
            }
            assert_eq!(ctx.pow(ctx.zeta(), n), 1);
        }
    }

    #[test]
    fn lift_is_symmetric() {
        let ctx = ScalarContext::new(2, 4).unwrap();
        assert_eq!(ctx.lift(ctx.from_i64(-5)), -5);
        assert_eq!(ctx.lift(ctx.from_i64(7)), 7);
        assert_eq!(ctx.mul(ctx.inv(3), 3), 1);
    }
}
