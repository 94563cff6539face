//! Solutions of `x^2 + 1 = 0 (mod q)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Moduli up to this bound are solved by scanning every residue.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// All `x` in `[0, q)` with `x^2 + 1 = 0 (mod q)`, ascending.
pub fn solve_congruence(q: &BigUint) -> Vec<BigUint> {
    match q.to_u64() {
        Some(small) if small <= BRUTE_FORCE_LIMIT => solve_by_scan(small)
            .into_iter()
            .map(BigUint::from)
            .collect(),
        _ => solve_by_factoring(q),
    }
}

pub fn solve_by_scan(q: u64) -> Vec<u64> {
    if q == 0 {
        return Vec::new();
    }
    let q128 = u128::from(q);
    (0..q)
        .filter(|&x| (u128::from(x) * u128::from(x) + 1) % q128 == 0)
        .collect()
}

/// Factor `q`, solve modulo each prime power, and combine by CRT.
pub fn solve_by_factoring(q: &BigUint) -> Vec<BigUint> {
    if q.is_zero() {
        return Vec::new();
    }
    if q.is_one() {
        return vec![BigUint::zero()];
    }
    let mut modulus = BigUint::one();
    let mut solutions = vec![BigUint::zero()];
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        let local = roots_mod_prime_power(&p, e);
        if local.is_empty() {
            return Vec::new();
        }
        let mut combined = Vec::with_capacity(solutions.len() * local.len());
        for s in &solutions {
            for r in &local {
                combined.push(crt(s, &modulus, r, &pe));
            }
        }
        modulus *= &pe;
        solutions = combined;
    }
    solutions.sort();
    solutions
}

/// `x = a (mod m)`, `x = b (mod n)` for coprime `m`, `n`.
fn crt(a: &BigUint, m: &BigUint, b: &BigUint, n: &BigUint) -> BigUint {
    let mn = m * n;
    let m_inv = mod_inverse(&(m % n), n).expect("coprime moduli");
    // x = a + m * ((b - a) * m^-1 mod n)
    let diff = (b + n - (a % n)) % n;
    (a + m * ((diff * m_inv) % n)) % mn
}

fn mod_inverse(a: &BigUint, n: &BigUint) -> Option<BigUint> {
    if n.is_one() {
        return Some(BigUint::zero());
    }
    let (a, n) = (
        num_bigint::BigInt::from(a.clone()),
        num_bigint::BigInt::from(n.clone()),
    );
    let e = a.extended_gcd(&n);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&n).to_biguint()
}

fn roots_mod_prime_power(p: &BigUint, e: u32) -> Vec<BigUint> {
    let two = BigUint::from(2u32);
    if p == &two {
        return if e == 1 {
            vec![BigUint::one()]
        } else {
            Vec::new()
        };
    }
    if (p % 4u32) != BigUint::one() {
        return Vec::new();
    }
    let mut r = sqrt_minus_one_mod_prime(p);
    let mut pk = p.clone();
    for _ in 1..e {
        // Hensel: r <- r - (r^2 + 1) / (2r) mod p^(k+1)
        pk *= p;
        let f = (&r * &r + 1u32) % &pk;
        let inv = mod_inverse(&((&two * &r) % &pk), &pk).expect("2r is a unit");
        r = (&r + &pk - (f * inv) % &pk) % &pk;
    }
    let mut roots = vec![r.clone(), &pk - &r];
    roots.sort();
    roots
}

/// A square root of -1 modulo a prime `p = 1 (mod 4)`.
fn sqrt_minus_one_mod_prime(p: &BigUint) -> BigUint {
    let pm1 = p - 1u32;
    let half = &pm1 >> 1;
    let quarter = &pm1 >> 2;
    let mut c = BigUint::from(2u32);
    loop {
        if c.modpow(&half, p) == pm1 {
            return c.modpow(&quarter, p);
        }
        c += 1u32;
    }
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases: deterministic below
/// `3.3 * 10^24`, probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of a composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut n = n.clone();
    for p in 2u32..1000 {
        let bp = BigUint::from(p);
        while !n.is_zero() && (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(bp.clone()).or_default() += 1;
        }
    }
    let mut stack = Vec::new();
    if n > BigUint::one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            *out.entry(m).or_default() += 1;
        } else {
            let d = pollard_brent(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out.into_iter().collect()
}
