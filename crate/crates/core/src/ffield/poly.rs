//! Dense polynomials over a prime field `F_p`, coefficients low degree first.
//! Zero is the empty vector; every result is trimmed.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut base = a as u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    a = acc as u32;
    a
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u64 * y as u64;
        }
    }
    trim(acc.into_iter().map(|c| (c % p as u64) as u32).collect())
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
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

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// `X^(p^k) mod m`.
pub(crate) fn x_pow_p_pow(k: u32, m: &[u32], p: u32) -> Poly {
    let mut x = rem(&[0, 1], m, p);
    for _ in 0..k {
        x = pow_poly_mod(&x, p as u64, m, p);
    }
    x
}

pub(crate) fn pow_poly_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test: a monic `f` of degree `s` is irreducible iff
/// `X^(p^s) = X mod f` and `gcd(X^(p^(s/l)) - X, f) = 1` for each prime `l | s`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let x = vec![0, 1];
    if x_pow_p_pow(s as u32, f, p) != rem(&x, f, p) {
        return false;
    }
    for l in prime_factors(s as u64) {
        let h = x_pow_p_pow((s as u64 / l) as u32, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Berlekamp-Massey over `F_p`: the shortest connection polynomial
/// `C(z) = 1 + c_1 z + ... + c_L z^L` with `sum_i c_i s_(n-i) = 0` for `n >= L`.
pub(crate) fn berlekamp_massey(seq: &[u32], p: u32) -> Poly {
    let p64 = p as u64;
    let mut c: Vec<u32> = vec![1];
    let mut b: Vec<u32> = vec![1];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u32;
    for n in 0..seq.len() {
        let mut d = seq[n] as u64;
        for i in 1..=l {
            d = (d + c.get(i).copied().unwrap_or(0) as u64 * seq[n - i] as u64) % p64;
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = d * inv_mod(bd, p) as u64 % p64;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            let idx = i + m;
            c[idx] = ((c[idx] as u64 + (p64 - coef) * bi as u64) % p64) as u32;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d as u32;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, 0);
    c
}
