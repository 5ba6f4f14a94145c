//! Dense polynomials over the prime field `F_p`, coefficients ascending.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc: u64 = 1 % p as u64;
    let m = p as u64;
    let mut base = a as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(a: &Poly, b: &Poly, p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let m = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % m;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `b`.
pub(crate) fn rem(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let m = p as u64;
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % m;
        if c != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                let sub = c * bj as u64 % m;
                r[shift + j] = ((r[shift + j] as u64 + m - sub) % m) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * li % p as u64) as u32;
        }
    }
    x
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, f: &Poly, p: u32) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_poly_mod(a: &Poly, mut e: u64, f: &Poly, p: u32) -> Poly {
    let mut acc = rem(&vec![1], f, p);
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Degree of the smallest irreducible factor of `f` (distinct-degree factorization),
/// or `None` when `f` is irreducible.
pub(crate) fn smallest_factor_degree(f: &Poly, p: u32) -> Option<u32> {
    let n = (f.len() - 1) as u32;
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for d in 1..=n / 2 {
        h = pow_poly_mod(&h, p as u64, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if g.len() > 1 {
            return Some(d);
        }
    }
    None
}

pub(crate) fn is_prime(n: u64) -> bool {
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

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
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
