//! Prime fields `F_p` and their extensions `F_(p^s)`, built from a
//! deterministic modulus so equal `(p, s)` always give the same field.

mod poly;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub(crate) use poly::{inv_mod, is_prime, prime_factors};


/// Largest field order handled; elements are packed into `u64` indices.
pub const MAX_ORDER: u64 = 1 << 62;

/// Lexicographically smallest monic irreducible polynomial of degree `s`
/// over `F_p`. Coefficient vectors `(c_0, ..., c_(s-1))` are compared from the
/// constant term upward. The result lists coefficients low degree first and
/// includes the leading 1.
pub fn canonical_irreducible(p: u32, s: usize) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if s == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let count = checked_order(p, s)?;
    // c_0 is the leading lex digit, and c_0 = 0 means X divides f.
    let start = if s == 1 { 0 } else { count / p as u64 };
    for key in start..count {
        let mut f = lex_digits(key, p, s);
        f.push(1);
        if s > 1 && (1..p).any(|a| eval_prime(&f, a, p) == 0) {
            continue;
        }
        if poly::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {s} over F_{p}")))
}

fn eval_prime(f: &[u32], a: u32, p: u32) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| (acc * a as u64 + c as u64) % p as u64)
}

fn checked_order(p: u32, s: usize) -> Result<u64> {
    let mut q: u64 = 1;
    for _ in 0..s {
        q = q
            .checked_mul(p as u64)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::invalid(format!("field F_{p}^{s} is too large")))?;
    }
    Ok(q)
}

/// Digits of a lex key: `c_0` is the most significant base-`p` digit.
fn lex_digits(key: u64, p: u32, s: usize) -> Vec<u32> {
    let mut c = vec![0u32; s];
    let mut k = key;
    for i in (0..s).rev() {
        c[i] = (k % p as u64) as u32;
        k /= p as u64;
    }
    c
}

pub struct FieldSpec {
    p: u32,
    s: usize,
    order: u64,
    modulus: Vec<u32>,
    /// Column `i` holds the coordinates of `(X^i)^p`.
    frobenius: Vec<Vec<u32>>,
    /// `Tr(X^i)` down to `F_p`.
    trace: Vec<u32>,
    primitive: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.s, self.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.s)
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(p: u32, s: usize) -> Result<Arc<FieldSpec>> {
        let modulus = canonical_irreducible(p, s)?;
        let order = checked_order(p, s)?;
        let mut spec = FieldSpec {
            p,
            s,
            order,
            modulus,
            frobenius: Vec::new(),
            trace: Vec::new(),
            primitive: OnceLock::new(),
        };
        spec.frobenius = (0..s)
            .map(|i| {
                let mut xi = vec![0u32; i + 1];
                xi[i] = 1;
                let img = poly::pow_poly_mod(&xi, p as u64, &spec.modulus, p);
                spec.pad(img)
            })
            .collect();
        // Tr(X^i) is the trace of multiplication by X^i: sum over j of the
        // X^j-coordinate of X^(i+j).
        spec.trace = (0..s)
            .map(|i| {
                let mut t = 0u64;
                for j in 0..s {
                    let mut e = vec![0u32; i + j + 1];
                    e[i + j] = 1;
                    let r = poly::rem(&e, &spec.modulus, p);
                    t += r.get(j).copied().unwrap_or(0) as u64;
                }
                (t % p as u64) as u32
            })
            .collect();
        Ok(Arc::new(spec))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `Tr(X^i)` for `i < s`; the trace form is `x -> sum x_i * trace[i]`.
    pub fn trace_vector(&self) -> &[u32] {
        &self.trace
    }

    fn pad(&self, mut c: Vec<u32>) -> Vec<u32> {
        c.resize(self.s, 0);
        c
    }

    pub(crate) fn mul_coeffs(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let s = self.s;
        let p = self.p as u64;
        let mut acc = vec![0u64; 2 * s - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        for k in (s..2 * s - 1).rev() {
            let c = acc[k] % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for i in 0..s {
                acc[k - s + i] += neg * self.modulus[i] as u64;
            }
        }
        acc.truncate(s);
        acc.into_iter().map(|c| (c % p) as u32).collect()
    }

    pub fn zero(self: &Arc<Self>) -> FqElement {
        FqElement { spec: self.clone(), c: vec![0; self.s] }
    }

    pub fn one(self: &Arc<Self>) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FqElement {
        let mut c = vec![0; self.s];
        c[0] = v.rem_euclid(self.p as i64) as u32;
        FqElement { spec: self.clone(), c }
    }

    /// Element with the given polynomial-basis coordinates (reduced mod p;
    /// missing trailing coordinates are zero).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[i64]) -> Result<FqElement> {
        if coeffs.len() > self.s {
            return Err(Error::invalid(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.s
            )));
        }
        let mut c = vec![0; self.s];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v.rem_euclid(self.p as i64) as u32;
        }
        Ok(FqElement { spec: self.clone(), c })
    }

    /// The class of `X`, which generates the field over `F_p`.
    pub fn generator(self: &Arc<Self>) -> FqElement {
        let c = self.pad(poly::rem(&[0, 1], &self.modulus, self.p));
        FqElement { spec: self.clone(), c }
    }

    /// Element whose packed index `sum c_i p^i` is `index`.
    pub fn from_index(self: &Arc<Self>, index: u64) -> FqElement {
        let mut c = vec![0; self.s];
        let mut k = index;
        for ci in c.iter_mut() {
            *ci = (k % self.p as u64) as u32;
            k /= self.p as u64;
        }
        FqElement { spec: self.clone(), c }
    }

    /// Element at position `key` of the lexicographic order (constant term
    /// most significant).
    pub fn from_lex_key(self: &Arc<Self>, key: u64) -> FqElement {
        FqElement { spec: self.clone(), c: lex_digits(key, self.p, self.s) }
    }

    /// All elements in lexicographic order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.order).map(move |k| self.from_lex_key(k))
    }

    /// Lexicographically first generator of the multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FqElement {
        let c = self
            .primitive
            .get_or_init(|| {
                let n = self.order - 1;
                let factors = prime_factors(n);
                (1..self.order)
                    .map(|k| self.from_lex_key(k))
                    .find(|x| factors.iter().all(|&l| !x.pow(n / l).is_one()))
                    .expect("the multiplicative group of a finite field is cyclic")
                    .c
            })
            .clone();
        FqElement { spec: self.clone(), c }
    }
}

#[derive(Clone)]
pub struct FqElement {
    spec: Arc<FieldSpec>,
    c: Vec<u32>,
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.c, self.spec)
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.s == 1 {
            write!(f, "{}", self.c[0])
        } else {
            let parts: Vec<String> = self.c.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.c == other.c
    }
}

impl Eq for FqElement {}

impl Hash for FqElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.p.hash(state);
        self.spec.s.hash(state);
        self.c.hash(state);
    }
}

impl FqElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn index(&self) -> u64 {
        self.c.iter().rev().fold(0u64, |acc, &c| acc * self.spec.p as u64 + c as u64)
    }

    pub fn lex_key(&self) -> u64 {
        self.c.iter().fold(0u64, |acc, &c| acc * self.spec.p as u64 + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }

    /// The value as an element of `F_p`, when it lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        self.c[1..].iter().all(|&c| c == 0).then_some(self.c[0])
    }

    fn same_field(&self, other: &FqElement) -> Result<()> {
        if *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.spec.to_string(), right: other.spec.to_string() })
        }
    }

    pub fn try_add(&self, other: &FqElement) -> Result<FqElement> {
        self.same_field(other)?;
        let p = self.spec.p;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| (a + b) % p).collect();
        Ok(FqElement { spec: self.spec.clone(), c })
    }

    pub fn try_sub(&self, other: &FqElement) -> Result<FqElement> {
        self.same_field(other)?;
        let p = self.spec.p;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| (a + p - b) % p).collect();
        Ok(FqElement { spec: self.spec.clone(), c })
    }

    pub fn try_mul(&self, other: &FqElement) -> Result<FqElement> {
        self.same_field(other)?;
        Ok(FqElement { spec: self.spec.clone(), c: self.spec.mul_coeffs(&self.c, &other.c) })
    }

    pub fn scale(&self, k: u32) -> FqElement {
        let p = self.spec.p as u64;
        let c = self.c.iter().map(|&a| (a as u64 * k as u64 % p) as u32).collect();
        FqElement { spec: self.spec.clone(), c }
    }

    pub fn pow(&self, mut e: u64) -> FqElement {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `x^e` for exponents beyond `u64`, as used by Hasse monomials.
    pub fn pow_u128(&self, e: u128) -> FqElement {
        if self.is_zero() {
            return if e == 0 { self.spec.one() } else { self.clone() };
        }
        // the multiplicative group has order q - 1
        let reduced = (e % (self.spec.order as u128 - 1)) as u64;
        if reduced == 0 {
            self.spec.one()
        } else {
            self.pow(reduced)
        }
    }

    pub fn inv(&self) -> Option<FqElement> {
        (!self.is_zero()).then(|| self.pow(self.spec.order - 2))
    }

    /// `x^p`, applied through the precomputed Frobenius matrix.
    pub fn frobenius(&self) -> FqElement {
        let s = self.spec.s;
        let p = self.spec.p as u64;
        let mut acc = vec![0u64; s];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (k, &f) in self.spec.frobenius[i].iter().enumerate() {
                acc[k] += x as u64 * f as u64;
            }
        }
        let c = acc.into_iter().map(|v| (v % p) as u32).collect();
        FqElement { spec: self.spec.clone(), c }
    }

    /// Absolute trace down to `F_p`, via the precomputed trace form.
    pub fn trace_to_prime(&self) -> u32 {
        let p = self.spec.p as u64;
        let t: u64 = self.c.iter().zip(&self.spec.trace).map(|(&a, &t)| a as u64 * t as u64).sum();
        (t % p) as u32
    }

    /// Absolute trace as `sum_(i<s) x^(p^i)`; slow reference for
    /// [`FqElement::trace_to_prime`].
    pub fn trace_by_conjugates(&self) -> u32 {
        let mut acc = self.spec.zero();
        let mut y = self.clone();
        for _ in 0..self.spec.s {
            acc = &acc + &y;
            y = y.frobenius();
        }
        acc.as_prime().expect("the trace lies in the prime field")
    }
}

impl Add for &FqElement {
    type Output = FqElement;
    fn add(self, rhs: &FqElement) -> FqElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FqElement {
    type Output = FqElement;
    fn sub(self, rhs: &FqElement) -> FqElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FqElement {
    type Output = FqElement;
    fn mul(self, rhs: &FqElement) -> FqElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FqElement {
    type Output = FqElement;
    fn neg(self) -> FqElement {
        let p = self.spec.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FqElement { spec: self.spec.clone(), c }
    }
}

/// Canonical embedding `F_(p^m) -> F_(p^(mr))`: the class of `X` in the source
/// goes to the lexicographically first root of the source modulus in the
/// target.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: Arc<FieldSpec>,
    target: Arc<FieldSpec>,
    /// Images of `1, X, ..., X^(m-1)`.
    basis_images: Vec<FqElement>,
}

impl Embedding {
    pub fn new(source: &Arc<FieldSpec>, target: &Arc<FieldSpec>) -> Result<Embedding> {
        if source.p != target.p || !target.s.is_multiple_of(source.s) {
            return Err(Error::invalid(format!("{source} does not embed in {target}")));
        }
        let root = first_root(source.modulus(), target);
        let mut basis_images = Vec::with_capacity(source.s);
        let mut acc = target.one();
        for _ in 0..source.s {
            basis_images.push(acc.clone());
            acc = &acc * &root;
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), basis_images })
    }

    pub fn source(&self) -> &Arc<FieldSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldSpec> {
        &self.target
    }

    /// Image of the source generator.
    pub fn root(&self) -> FqElement {
        if self.source.s == 1 {
            // F_p = F_p[X]/(X + c): X is the constant -c
            self.target.from_int(-(self.source.modulus[0] as i64))
        } else {
            self.basis_images[1].clone()
        }
    }

    pub fn apply(&self, x: &FqElement) -> Result<FqElement> {
        x.same_field(&self.source.zero())?;
        let mut acc = self.target.zero();
        for (&c, img) in x.c.iter().zip(&self.basis_images) {
            if c != 0 {
                acc = &acc + &img.scale(c);
            }
        }
        Ok(acc)
    }
}

/// Lexicographically first root in `target` of a monic polynomial over `F_p`
/// that splits there. Roots of a polynomial of degree `m` lie in the subfield
/// of order `p^m`, reached as powers of a primitive element.
fn first_root(f: &[u32], target: &Arc<FieldSpec>) -> FqElement {
    let m = f.len() - 1;
    let eval = |y: &FqElement| {
        let mut acc = target.zero();
        for &c in f.iter().rev() {
            acc = &(&acc * y) + &target.from_int(c as i64);
        }
        acc
    };
    let q_sub = (target.p as u64).pow(m as u32);
    let step = (target.order - 1) / (q_sub - 1);
    let gamma = target.primitive_element().pow(step);
    let mut candidates = vec![target.zero()];
    let mut y = target.one();
    for _ in 0..q_sub - 1 {
        candidates.push(y.clone());
        y = &y * &gamma;
    }
    candidates
        .into_iter()
        .filter(|y| eval(y).is_zero())
        .min_by_key(|y| y.lex_key())
        .expect("the source modulus splits in the target field")
}

/// Image of `x` under the canonical embedding into `target`.
pub fn embed(x: &FqElement, target: &Arc<FieldSpec>) -> Result<FqElement> {
    Embedding::new(&x.spec, target)?.apply(x)
}

/// `sum_d a_d x^d` over a single field.
pub fn poly_eval(f: &BTreeMap<u64, FqElement>, x: &FqElement) -> Result<FqElement> {
    let mut acc = x.spec.zero();
    let mut power = x.spec.one();
    let mut last = 0u64;
    for (&d, a) in f {
        x.same_field(a)?;
        power = &power * &x.pow(d - last);
        last = d;
        acc = &acc + &(a * &power);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(canonical_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(canonical_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert!(matches!(canonical_irreducible(4, 2), Err(Error::InvalidInput(_))));
        assert!(canonical_irreducible(3, 0).is_err());
    }

    /// Exhaustive oracle: first monic polynomial in lex order without a
    /// factor of degree <= s/2 (found by brute-force root and quadratic
    /// factor search for s <= 3).
    #[test]
    fn canonical_modulus_is_lex_first_irreducible() {
        for p in [2u32, 3, 5, 7] {
            for s in 2..=3usize {
                let f = canonical_irreducible(p, s).unwrap();
                let count = (p as u64).pow(s as u32);
                for key in 0..count {
                    let mut g = lex_digits(key, p, s);
                    g.push(1);
                    let has_root = (0..p).any(|x| {
                        g.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) == 0
                    });
                    if g == f {
                        assert!(!has_root);
                        break;
                    }
                    // degree <= 3 polynomials without roots are irreducible
                    assert!(has_root, "skipped irreducible {g:?} before {f:?}");
                }
            }
        }
    }

    #[test]
    fn traces_in_f4() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.zero().trace_to_prime(), 0);
        assert_eq!(f4.one().trace_to_prime(), 0);
        let g = f4.generator();
        assert_eq!(&(&g * &g), &(&g + &f4.one()));
        assert_eq!(g.trace_to_prime(), 1);
    }

    #[test]
    fn frobenius_is_identity_after_s_steps() {
        for (p, s) in [(2u32, 1usize), (2, 5), (3, 4), (5, 3), (7, 2), (2, 12), (3, 7)] {
            let f = FieldSpec::new(p, s).unwrap();
            if f.order() > 4096 {
                continue;
            }
            for x in f.elements() {
                let mut y = x.clone();
                for _ in 0..s {
                    y = y.frobenius();
                }
                assert_eq!(y, x);
                assert_eq!(x.frobenius(), x.pow(p as u64));
                if let Some(a) = x.as_prime() {
                    assert_eq!(x.frobenius().as_prime(), Some(a));
                }
            }
        }
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        for (p, s) in [(2u32, 3usize), (3, 3), (5, 2), (2, 6)] {
            let f = FieldSpec::new(p, s).unwrap();
            let mut hit = vec![false; p as usize];
            let elems: Vec<_> = f.elements().collect();
            for x in &elems {
                let t = x.trace_to_prime();
                assert_eq!(t, x.trace_by_conjugates());
                hit[t as usize] = true;
                for y in elems.iter().step_by(7) {
                    assert_eq!((x + y).trace_to_prime(), (t + y.trace_to_prime()) % p);
                }
                assert_eq!(x.scale(2 % p).trace_to_prime(), (2 * t) % p);
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn embedding_examples() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f16 = FieldSpec::new(2, 4).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        assert!(e.apply(&f4.zero()).unwrap().is_zero());
        assert!(e.apply(&f4.one()).unwrap().is_one());
        // oracle: enumerate F_16 in lex order for the first root of x^2+x+1
        let expected = f16
            .elements()
            .find(|y| (&(y * y) + &(y + &f16.one())).is_zero())
            .unwrap();
        assert_eq!(e.apply(&f4.generator()).unwrap(), expected);
        assert!(Embedding::new(&f4, &FieldSpec::new(2, 3).unwrap()).is_err());
        assert!(Embedding::new(&f4, &FieldSpec::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn prime_field_constants_embed_to_constants() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let f27 = FieldSpec::new(3, 3).unwrap();
        for a in 0..3 {
            let x = embed(&f3.from_int(a), &f27).unwrap();
            assert_eq!(x.as_prime(), Some(a as u32));
        }
    }

    #[test]
    fn embedding_is_an_injective_ring_map_commuting_with_frobenius() {
        for (p, m, r) in [(2u32, 2usize, 3usize), (3, 2, 2), (2, 3, 2), (5, 1, 3)] {
            let src = FieldSpec::new(p, m).unwrap();
            let dst = FieldSpec::new(p, m * r).unwrap();
            let e = Embedding::new(&src, &dst).unwrap();
            let elems: Vec<_> = src.elements().collect();
            let imgs: Vec<_> = elems.iter().map(|x| e.apply(x).unwrap()).collect();
            let distinct: std::collections::HashSet<_> = imgs.iter().map(|y| y.index()).collect();
            assert_eq!(distinct.len(), elems.len());
            for (x, ex) in elems.iter().zip(&imgs) {
                for (y, ey) in elems.iter().zip(&imgs) {
                    assert_eq!(e.apply(&(x + y)).unwrap(), ex + ey);
                    assert_eq!(e.apply(&(x * y)).unwrap(), ex * ey);
                }
                let mut fx = x.clone();
                let mut fex = ex.clone();
                for _ in 0..m {
                    fx = fx.frobenius();
                    fex = fex.frobenius();
                }
                assert_eq!(e.apply(&fx).unwrap(), fex);
            }
        }
    }

    #[test]
    fn poly_eval_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let cube: BTreeMap<u64, FqElement> = [(3, f2.one())].into_iter().collect();
        assert!(poly_eval(&cube, &f2.one()).unwrap().is_one());
        let f4 = FieldSpec::new(2, 2).unwrap();
        let cube4: BTreeMap<u64, FqElement> = [(3, f4.one())].into_iter().collect();
        assert!(poly_eval(&cube4, &f4.generator()).unwrap().is_one());
        let f3 = FieldSpec::new(3, 1).unwrap();
        let g: BTreeMap<u64, FqElement> = [(1, f3.one()), (2, f3.from_int(2))].into_iter().collect();
        assert_eq!(poly_eval(&g, &f3.from_int(2)).unwrap().as_prime(), Some(1));
    }

    #[test]
    fn mixing_fields_is_reported() {
        let a = FieldSpec::new(2, 2).unwrap().one();
        let b = FieldSpec::new(2, 3).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn inverse_and_primitive() {
        let f = FieldSpec::new(3, 3).unwrap();
        for x in f.elements().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        let g = f.primitive_element();
        let mut seen = std::collections::HashSet::new();
        let mut y = f.one();
        for _ in 0..f.order() - 1 {
            assert!(seen.insert(y.index()));
            y = &y * &g;
        }
        assert!(y.is_one());
    }
}
