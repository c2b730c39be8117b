//! Prime-field polynomial arithmetic and factorization shapes.
//!
//! Only the factor *pattern* (degrees and multiplicities of irreducible
//! factors) is needed by the cycle-type machinery; full equal-degree
//! splitting is provided as well, both as a verification oracle and for
//! exact root extraction mod p.

use crate::poly::{BigInt, IntPoly};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

/// Largest admissible modulus; keeps every product inside u128.
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiniteError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the word-size bound 2^62")]
    ModulusTooLarge(u64),
    #[error("modulus polynomial must be nonconstant")]
    ConstantModulus,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("degree must be at least 1")]
    DegreeZero,
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    pow_mod_u64(a, p - 2, p)
}

/// Dense polynomial over the prime field F_p, coefficients ascending and
/// reduced to [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Checks the modulus (prime, word-sized) and reduces the coefficients.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self, FiniteError> {
        check_modulus(p)?;
        let c = coeffs
            .iter()
            .map(|&c| (c.rem_euclid(p as i64)) as u64)
            .collect();
        Ok(Self::from_reduced(p, c))
    }

    pub fn from_u64(p: u64, coeffs: Vec<u64>) -> Result<Self, FiniteError> {
        check_modulus(p)?;
        Ok(Self::from_reduced(
            p,
            coeffs.into_iter().map(|c| c % p).collect(),
        ))
    }

    fn from_reduced(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    /// Reduction of an integer polynomial mod p.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Result<Self, FiniteError> {
        check_modulus(p)?;
        let pm = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pm).to_u64().expect("reduced below 2^62"))
            .collect();
        Ok(Self::from_reduced(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_reduced(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::from_reduced(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn assert_same_field(&self, rhs: &ModPoly) {
        assert_eq!(self.p, rhs.p, "mixed moduli");
    }

    pub fn add(&self, rhs: &ModPoly) -> ModPoly {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push((self.coeff(k) + rhs.coeff(k)) % self.p);
        }
        Self::from_reduced(self.p, out)
    }

    pub fn sub(&self, rhs: &ModPoly) -> ModPoly {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push((self.coeff(k) + self.p - rhs.coeff(k)) % self.p);
        }
        Self::from_reduced(self.p, out)
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod_u64(a, b, self.p)) % self.p;
            }
        }
        Self::from_reduced(self.p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let c = c % self.p;
        Self::from_reduced(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| mul_mod_u64(a, c, self.p))
                .collect(),
        )
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod_u64(self.lc(), self.p))
    }

    pub fn divrem(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        self.assert_same_field(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Self::zero(self.p), self.clone());
        }
        let inv = inv_mod_u64(divisor.lc(), self.p);
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = mul_mod_u64(c, inv, self.p);
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let t = mul_mod_u64(q, b, self.p);
                rem[k - dd + j] = (rem[k - dd + j] + self.p - t) % self.p;
            }
            quo[k - dd] = q;
        }
        (
            Self::from_reduced(self.p, quo),
            Self::from_reduced(self.p, rem),
        )
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.divrem(divisor).1
    }

    pub fn div_exact(&self, divisor: &ModPoly) -> ModPoly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn gcd(&self, rhs: &ModPoly) -> ModPoly {
        self.assert_same_field(rhs);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod_u64(c, (k as u64) % self.p, self.p))
            .collect();
        Self::from_reduced(self.p, out)
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod_u64(acc, x, self.p) + c) % self.p;
        }
        acc
    }
}

fn check_modulus(p: u64) -> Result<(), FiniteError> {
    if p >= MAX_MODULUS {
        return Err(FiniteError::ModulusTooLarge(p));
    }
    if !is_prime_u64(p) {
        return Err(FiniteError::NotPrime(p));
    }
    Ok(())
}

/// base^e reduced modulo `modulus`, by square-and-multiply over the bits
/// of the (arbitrary-precision) exponent.
pub fn mod_pow_poly(base: &ModPoly, e: &BigInt, modulus: &ModPoly) -> Result<ModPoly, FiniteError> {
    if modulus.is_constant() {
        return Err(FiniteError::ConstantModulus);
    }
    assert!(!e.is_negative(), "negative exponent");
    let p = base.modulus();
    let mut acc = ModPoly::one(p);
    let mut b = base.rem(modulus);
    let (_, digits) = e.to_u64_digits();
    let bits = e.bits();
    for i in 0..bits {
        let digit = digits[(i / 64) as usize];
        if (digit >> (i % 64)) & 1 == 1 {
            acc = acc.mul(&b).rem(modulus);
        }
        if i + 1 < bits {
            b = b.mul(&b).rem(modulus);
        }
    }
    Ok(acc)
}

fn pow_poly_u64(base: &ModPoly, e: u64, modulus: &ModPoly) -> ModPoly {
    mod_pow_poly(base, &BigInt::from(e), modulus).expect("nonconstant modulus")
}

/// One factor of a factorization pattern: the degree of an irreducible
/// factor together with its multiplicity in the polynomial.
pub type PatternEntry = (usize, usize);

/// Degrees and multiplicities of the irreducible factors of a polynomial
/// mod p, sorted by degree then multiplicity. Each distinct irreducible
/// factor contributes its own entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorPattern {
    entries: Vec<PatternEntry>,
}

impl FactorPattern {
    pub fn new(mut entries: Vec<PatternEntry>) -> Self {
        entries.sort_unstable();
        let pat = FactorPattern { entries };
        debug_assert!(pat.entries.iter().all(|&(d, m)| d > 0 && m > 0));
        pat
    }

    pub fn entries(&self) -> &[PatternEntry] {
        &self.entries
    }

    /// Sum of degree * multiplicity; equals the degree of the polynomial.
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|&(d, m)| d * m).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    /// Factor degrees with multiplicities expanded, descending.
    pub fn expanded_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(d, m) in &self.entries {
            for _ in 0..m {
                out.push(d);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Squarefree decomposition: pairwise coprime squarefree monic parts with
/// multiplicities whose weighted product is monic(f). Handles the f' = 0
/// case by p-th root descent.
pub fn squarefree_split(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>, FiniteError> {
    if f.is_constant() {
        return Err(FiniteError::ConstantPolynomial);
    }
    let mut out = Vec::new();
    split_squarefree_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Ok(out)
}

fn split_squarefree_into(f: &ModPoly, mult: usize, out: &mut Vec<(ModPoly, usize)>) {
    let p = f.modulus();
    if f.is_one() {
        return;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p) = g(x)^p over F_p
        split_squarefree_into(&pth_root(f), mult * p as usize, out);
        return;
    }
    let mut g = f.gcd(&deriv);
    let mut w = f.div_exact(&g);
    let mut i = mult;
    while !w.is_one() {
        let y = w.gcd(&g);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += mult;
        g = g.div_exact(&y);
        w = y;
    }
    if !g.is_one() {
        // leftover multiplicity divisible by p
        split_squarefree_into(&pth_root(&g), mult * p as usize, out);
    }
}

/// For f with f' = 0 over F_p, the unique g with g^p = f.
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = f.modulus() as usize;
    let deg = f.degree().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(deg / p + 1);
    let mut k = 0;
    while k <= deg {
        // c^(1/p) = c over the prime field
        coeffs.push(f.coeff(k));
        k += p;
    }
    ModPoly::from_reduced(f.modulus(), coeffs)
}

/// Multiset of irreducible-factor degrees with multiplicities, via
/// squarefree splitting followed by distinct-degree factorization of each
/// part with gcd(x^(p^d) - x, part).
pub fn distinct_degree_pattern(f: &ModPoly) -> Result<FactorPattern, FiniteError> {
    let parts = squarefree_split(f)?;
    let mut entries = Vec::new();
    for (part, mult) in parts {
        for (d, count) in distinct_degree_degrees(&part) {
            for _ in 0..count {
                entries.push((d, mult));
            }
        }
    }
    let pattern = FactorPattern::new(entries);
    debug_assert_eq!(pattern.total_degree(), f.degree().unwrap());
    Ok(pattern)
}

/// For squarefree monic h: the degrees d of its irreducible factors with
/// how many factors of each degree occur.
fn distinct_degree_degrees(h: &ModPoly) -> Vec<(usize, usize)> {
    let p = h.modulus();
    let x = ModPoly::x(p);
    let mut rem = h.clone();
    let mut out = Vec::new();
    let mut w = x.rem(&rem);
    let mut d = 0;
    while rem.degree().map_or(false, |deg| deg >= 1) {
        d += 1;
        if 2 * d > rem.degree().unwrap() {
            // what remains is irreducible
            out.push((rem.degree().unwrap(), 1));
            break;
        }
        w = pow_poly_u64(&w, p, &rem);
        let g = w.sub(&x.rem(&rem)).gcd(&rem);
        if !g.is_constant() {
            out.push((d, g.degree().unwrap() / d));
            rem = rem.div_exact(&g);
            w = w.rem(&rem);
        }
    }
    out
}

/// Irreducibility over F_p: x^(p^n) = x (mod f) together with
/// gcd(x^(p^(n/l)) - x, f) = 1 for every prime l dividing n.
pub fn is_irreducible(f: &ModPoly) -> Result<bool, FiniteError> {
    let n = match f.degree() {
        Some(0) | None => return Err(FiniteError::DegreeZero),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let p = f.modulus();
    let f = f.monic();
    let x = ModPoly::x(p);
    let mut frob_at = Vec::with_capacity(n + 1);
    frob_at.push(x.rem(&f));
    for d in 1..=n {
        let next = pow_poly_u64(&frob_at[d - 1], p, &f);
        frob_at.push(next);
    }
    if frob_at[n] != x.rem(&f) {
        return Ok(false);
    }
    for l in prime_factors(n as u64) {
        let d = n / l as usize;
        let g = frob_at[d].sub(&x.rem(&f)).gcd(&f);
        if !g.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic irreducible of degree n over F_p by seeded rejection sampling.
/// Identical seeds give identical polynomials.
pub fn random_irreducible(n: usize, p: u64, seed: u64) -> Result<ModPoly, FiniteError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_irreducible_with(n, p, &mut rng)
}

/// Same as [`random_irreducible`] but drawing from a caller-owned generator.
pub fn random_irreducible_with<R: Rng>(
    n: usize,
    p: u64,
    rng: &mut R,
) -> Result<ModPoly, FiniteError> {
    if n == 0 {
        return Err(FiniteError::DegreeZero);
    }
    check_modulus(p)?;
    loop {
        let mut coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(1);
        let cand = ModPoly::from_reduced(p, coeffs);
        if cand.degree() == Some(n) && is_irreducible(&cand)? {
            return Ok(cand);
        }
    }
}

/// Trial-division prime factorization for word-sized n (small inputs only).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Full factorization into monic irreducibles with multiplicities.
/// Serves as the verification oracle for the pattern computation and as
/// the root extractor; the pattern computation never depends on it.
pub fn factor(f: &ModPoly, seed: u64) -> Result<Vec<(ModPoly, usize)>, FiniteError> {
    let parts = squarefree_split(f)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in parts {
        let p = part.modulus();
        let x = ModPoly::x(p);
        let mut rem = part;
        let mut w = x.rem(&rem);
        let mut d = 0;
        while rem.degree().map_or(false, |deg| deg >= 1) {
            d += 1;
            if 2 * d > rem.degree().unwrap() {
                out.push((rem.clone(), mult));
                break;
            }
            w = pow_poly_u64(&w, p, &rem);
            let g = w.sub(&x.rem(&rem)).gcd(&rem);
            if !g.is_constant() {
                for factor in equal_degree_split(&g, d, &mut rng) {
                    out.push((factor, mult));
                }
                rem = rem.div_exact(&g);
                w = w.rem(&rem);
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then_with(|| a.1.cmp(&b.1))
    });
    Ok(out)
}

/// Cantor-Zassenhaus splitting of a squarefree product of irreducibles of
/// equal degree d.
fn equal_degree_split<R: Rng>(h: &ModPoly, d: usize, rng: &mut R) -> Vec<ModPoly> {
    let p = h.modulus();
    let deg = h.degree().unwrap();
    if deg == d {
        return vec![h.monic()];
    }
    loop {
        let a = {
            let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
            ModPoly::from_reduced(p, coeffs)
        };
        if a.is_constant() {
            continue;
        }
        let g = if p == 2 {
            // trace-map splitting in characteristic 2
            let mut t = a.rem(h);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(h);
                acc = acc.add(&t);
            }
            acc.gcd(h)
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            let b = mod_pow_poly(&a, &e, h).expect("nonconstant modulus");
            b.sub(&ModPoly::one(p)).gcd(h)
        };
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < deg {
                let mut left = equal_degree_split(&g, d, rng);
                let right = equal_degree_split(&h.div_exact(&g), d, rng);
                left.extend(right);
                return left;
            }
        }
    }
}

/// All roots of f in F_p, ascending.
pub fn roots_mod_p(f: &ModPoly, seed: u64) -> Vec<u64> {
    let p = f.modulus();
    if f.is_constant() {
        return Vec::new();
    }
    let x = ModPoly::x(p);
    let monic = f.monic();
    let xp = pow_poly_u64(&x, p, &monic);
    let lin = xp.sub(&x.rem(&monic)).gcd(&monic);
    if lin.is_constant() {
        return Vec::new();
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut roots: Vec<u64> = equal_degree_split(&lin, 1, &mut rng)
        .into_iter()
        .map(|l| (p - l.coeff(0)) % p)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[i64]) -> ModPoly {
        ModPoly::new(p, c).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert!(matches!(ModPoly::new(6, &[1]), Err(FiniteError::NotPrime(6))));
        assert!(ModPoly::new(2, &[1, 1]).is_ok());
    }

    #[test]
    fn mod_pow_defining_relation() {
        // x^2 mod (x^2+1) over F_3 is -1 = 2
        let m = mp(3, &[1, 0, 1]);
        let x = ModPoly::x(3);
        let r = mod_pow_poly(&x, &BigInt::from(2), &m).unwrap();
        assert_eq!(r, mp(3, &[2]));
    }

    #[test]
    fn mod_pow_frobenius_fixes_field() {
        // x^9 mod (x^2+1) over F_3: the 9th-power map is the identity on
        // F_9, so x^9 = x.
        let m = mp(3, &[1, 0, 1]);
        let x = ModPoly::x(3);
        let r = mod_pow_poly(&x, &BigInt::from(9), &m).unwrap();
        assert_eq!(r, mp(3, &[0, 1]));
    }

    #[test]
    fn mod_pow_zero_exponent() {
        let m = mp(5, &[1, 0, 1]);
        let f = mp(5, &[2, 3]);
        assert_eq!(
            mod_pow_poly(&f, &BigInt::from(0), &m).unwrap(),
            ModPoly::one(5)
        );
    }

    #[test]
    fn mod_pow_rejects_constant_modulus() {
        let m = mp(5, &[2]);
        let x = ModPoly::x(5);
        assert_eq!(
            mod_pow_poly(&x, &BigInt::from(3), &m),
            Err(FiniteError::ConstantModulus)
        );
    }

    #[test]
    fn squarefree_split_examples() {
        // (x+1)^2 mod 3
        let f = mp(3, &[1, 1]).mul(&mp(3, &[1, 1]));
        assert_eq!(squarefree_split(&f).unwrap(), vec![(mp(3, &[1, 1]), 2)]);
        // x^3 - x mod 5 is already squarefree
        let f = mp(5, &[0, -1, 0, 1]);
        assert_eq!(
            squarefree_split(&f).unwrap(),
            vec![(mp(5, &[0, -1, 0, 1]).monic(), 1)]
        );
        // x^3 mod 3: derivative vanishes, p-th root descent
        let f = mp(3, &[0, 0, 0, 1]);
        assert_eq!(squarefree_split(&f).unwrap(), vec![(mp(3, &[0, 1]), 3)]);
    }

    #[test]
    fn squarefree_split_reassembles() {
        let cases = [
            mp(3, &[2, 1, 0, 1]),
            mp(3, &[0, 1]).mul(&mp(3, &[1, 1])).mul(&mp(3, &[1, 1])),
            mp(2, &[1, 1, 0, 0, 1]),
            mp(5, &[1, 2, 3, 4, 1]),
            mp(2, &[0, 1]).mul(&mp(2, &[0, 1])).mul(&mp(2, &[1, 1])),
        ];
        for f in cases {
            let parts = squarefree_split(&f).unwrap();
            let mut prod = ModPoly::one(f.modulus());
            for (part, m) in &parts {
                for _ in 0..*m {
                    prod = prod.mul(part);
                }
                assert!(part.derivative().is_zero() || part.gcd(&part.derivative()).is_constant());
            }
            assert_eq!(prod, f.monic());
        }
    }

    #[test]
    fn pattern_examples() {
        // x^4+1 mod 3 = (x^2+x+2)(x^2+2x+2)
        let f = mp(3, &[1, 0, 0, 0, 1]);
        assert_eq!(
            distinct_degree_pattern(&f).unwrap().entries(),
            &[(2, 1), (2, 1)]
        );
        let check = mp(3, &[2, 1, 1]).mul(&mp(3, &[2, 2, 1]));
        assert_eq!(check, f);
        // x^2+1 mod 5 splits into two linears (2^2 = -1 mod 5)
        let f = mp(5, &[1, 0, 1]);
        assert_eq!(
            distinct_degree_pattern(&f).unwrap().entries(),
            &[(1, 1), (1, 1)]
        );
        // x^3+x+1 irreducible mod 2
        let f = mp(2, &[1, 1, 0, 1]);
        assert_eq!(distinct_degree_pattern(&f).unwrap().entries(), &[(3, 1)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&mp(3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&mp(5, &[1, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&mp(5, &[3])), Err(FiniteError::DegreeZero));
    }

    /// Brute-force irreducibility by trial division against every monic
    /// divisor candidate of degree at most n/2.
    fn irreducible_by_trial_division(f: &ModPoly) -> bool {
        let p = f.modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let mut trial = vec![0u64; d];
            loop {
                let mut coeffs = trial.clone();
                coeffs.push(1);
                let cand = ModPoly::from_u64(p, coeffs).unwrap();
                if f.rem(&cand).is_zero() {
                    return false;
                }
                let mut i = 0;
                loop {
                    if i == trial.len() {
                        break;
                    }
                    trial[i] += 1;
                    if trial[i] < p {
                        break;
                    }
                    trial[i] = 0;
                    i += 1;
                }
                if i == trial.len() {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_matches_trial_division_small_fields() {
        for p in [2u64, 3, 5] {
            let mut cases = 0;
            for n in 2..=6usize {
                for s in 0..20u64 {
                    let mut coeffs: Vec<u64> = (0..n)
                        .map(|k| (s.wrapping_mul(2654435761).wrapping_add(k as u64 * 40503)) % p)
                        .collect();
                    coeffs.push(1);
                    let f = ModPoly::from_u64(p, coeffs).unwrap();
                    if f.degree() != Some(n) {
                        continue;
                    }
                    assert_eq!(
                        is_irreducible(&f).unwrap(),
                        irreducible_by_trial_division(&f),
                        "disagreement at p={} f={:?}",
                        p,
                        f
                    );
                    cases += 1;
                }
            }
            assert!(cases > 50);
        }
    }

    #[test]
    fn random_irreducible_is_deterministic_and_irreducible() {
        let a = random_irreducible(2, 3, 1).unwrap();
        let b = random_irreducible(2, 3, 1).unwrap();
        assert_eq!(a, b);
        assert!(is_irreducible(&a).unwrap());
        for seed in 0..20 {
            for (n, p) in [(2usize, 3u64), (3, 2), (4, 5), (5, 7)] {
                let f = random_irreducible(n, p, seed).unwrap();
                assert_eq!(f.degree(), Some(n));
                assert!(is_irreducible(&f).unwrap());
            }
        }
        assert_eq!(random_irreducible(0, 3, 1), Err(FiniteError::DegreeZero));
    }

    #[test]
    fn pattern_degrees_sum_and_factors_reassemble() {
        // randomized pass across small fields; factor() doubles as the
        // equal-degree splitting oracle
        let mut s = 0x12345u64;
        let mut next = move |m: u64| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s % m
        };
        let primes = [2u64, 3, 5, 7, 11, 13];
        for trial in 0..1000u64 {
            let p = primes[(trial % primes.len() as u64) as usize];
            let n = 1 + (next(6) as usize);
            let mut coeffs: Vec<u64> = (0..n).map(|_| next(p)).collect();
            coeffs.push(1 + next(p - 1));
            let f = ModPoly::from_u64(p, coeffs).unwrap();
            if f.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let pattern = distinct_degree_pattern(&f).unwrap();
            assert_eq!(pattern.total_degree(), f.degree().unwrap());
            let factors = factor(&f, trial).unwrap();
            let mut prod = ModPoly::one(p);
            for (g, m) in &factors {
                assert!(is_irreducible(g).unwrap());
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f.monic());
            let mut from_factors: Vec<(usize, usize)> = factors
                .iter()
                .map(|(g, m)| (g.degree().unwrap(), *m))
                .collect();
            from_factors.sort_unstable();
            assert_eq!(pattern.entries(), &from_factors[..]);
        }
    }

    #[test]
    fn roots_extraction() {
        // x^2+1 mod 5: roots 2 and 3
        assert_eq!(roots_mod_p(&mp(5, &[1, 0, 1]), 0), vec![2, 3]);
        assert_eq!(roots_mod_p(&mp(3, &[1, 0, 1]), 0), Vec::<u64>::new());
        // (x-1)(x-2)(x-3) mod 7
        let f = mp(7, &[-1, 1]).mul(&mp(7, &[-2, 1])).mul(&mp(7, &[-3, 1]));
        assert_eq!(roots_mod_p(&f, 0), vec![1, 2, 3]);
    }
}
