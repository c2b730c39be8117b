//! The universal splitting algebra of a monic polynomial and its tensor
//! square.
//!
//! For monic f of degree n the algebra is presented on the monomial basis
//! x_1^{e_1} ... x_n^{e_n}, 0 <= e_i <= n-i (dimension n!), with rewrite
//! rules derived from the chain of successive division quotients of f:
//! the first relation is f(x_1), the next the quotient of f(x_1) by
//! x_1 - x_2, and so on. Symmetric polynomials reduce to the constants
//! given by the coefficients, which is what makes the algebra an exact
//! stand-in for "the roots" without factoring anything.
//!
//! The tensor of two such algebras (dimension n!^2, at most 576 here)
//! carries the elements sum_i x_i^k y_i whose characteristic polynomials
//! are the degree-n! mixed equations; those characteristic polynomials are
//! computed from power traces via Newton's identities, with the heavy
//! arithmetic done modulo word-sized primes and recombined exactly by CRT.

use crate::crt::crt_combine;
use crate::finite::is_prime_u64;
use crate::poly::{BigInt, BigRat, IntPoly, RatPoly};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplittingError {
    #[error("defining polynomial must be monic of degree 1..=4, got {0:?}")]
    BadDefiningPolynomial(Option<usize>),
    #[error("elements belong to different defining polynomials")]
    MismatchedDefining,
    #[error("k must lie in 1..=n-1, got {0}")]
    BadMixedIndex(usize),
}

const MAX_VARS: usize = 4;
type Mono = [u8; MAX_VARS];
type MPoly = BTreeMap<Mono, BigRat>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i] + b[i];
    }
    out
}

fn mpoly_add_term(p: &mut MPoly, m: Mono, c: BigRat) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m).or_insert_with(BigRat::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

/// Element of a splitting algebra: coordinates on the monomial basis,
/// tagged with the defining polynomial it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitElem {
    defining: RatPoly,
    coords: Vec<BigRat>,
}

impl SplitElem {
    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }

    pub fn defining(&self) -> &RatPoly {
        &self.defining
    }
}

/// The universal splitting algebra of a monic polynomial of degree <= 4.
#[derive(Debug, Clone)]
pub struct SplitAlgebra {
    f: RatPoly,
    n: usize,
    dim: usize,
    caps: Vec<u8>,
    exps: Vec<Mono>,
    index_of: HashMap<Mono, usize>,
    /// rewrite for x_i^(cap_i + 1), involving variables 0..=i only
    rules: Vec<MPoly>,
    /// basis_mul[a][b] = coordinates of basis_a * basis_b
    basis_mul: Vec<Vec<Vec<BigRat>>>,
    /// trace[b] = trace of multiplication by basis_b
    trace: Vec<BigRat>,
}

impl SplitAlgebra {
    pub fn new(f: &RatPoly) -> Result<SplitAlgebra, SplittingError> {
        let n = match f.degree() {
            Some(n) if (1..=MAX_VARS).contains(&n) && f.is_monic() => n,
            d => return Err(SplittingError::BadDefiningPolynomial(d)),
        };
        // caps: variable i (0-based) has exponent cap n-1-i
        let caps: Vec<u8> = (0..n).map(|i| (n - 1 - i) as u8).collect();
        let mut exps = Vec::new();
        let mut cur = [0u8; MAX_VARS];
        loop {
            exps.push(cur);
            // odometer over the capped exponents
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                cur[i] += 1;
                if cur[i] <= caps[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        let dim = exps.len();
        debug_assert_eq!(dim, (1..=n).product::<usize>());
        let index_of: HashMap<Mono, usize> =
            exps.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        // Cauchy-module chain: C_1 = f(x_1); C_{j+1} is the divided
        // difference of C_j in its last variable. Each C_j is monic of
        // degree n-j+1 in x_j and provides the rewrite for x_j^(n-j).
        let mut rules: Vec<MPoly> = Vec::with_capacity(n);
        let mut chain: MPoly = BTreeMap::new();
        for (k, c) in f.coeffs().iter().enumerate() {
            let mut m = [0u8; MAX_VARS];
            m[0] = k as u8;
            mpoly_add_term(&mut chain, m, c.clone());
        }
        for j in 0..n {
            // rewrite: x_j^(cap_j + 1) = x_j^(cap_j + 1) - C_{j+1}
            let top = caps[j] + 1;
            let mut rule: MPoly = BTreeMap::new();
            for (m, c) in &chain {
                if m[j] == top {
                    debug_assert!(c.is_one(), "Cauchy module is monic in its variable");
                    continue;
                }
                mpoly_add_term(&mut rule, *m, -c.clone());
            }
            rules.push(rule);
            if j + 1 < n {
                // divided difference: u*x_j^a -> u * sum_t x_j^t x_{j+1}^(a-1-t)
                let mut next: MPoly = BTreeMap::new();
                for (m, c) in &chain {
                    let a = m[j];
                    for t in 0..a {
                        let mut nm = *m;
                        nm[j] = t;
                        nm[j + 1] += a - 1 - t;
                        mpoly_add_term(&mut next, nm, c.clone());
                    }
                }
                chain = next;
            }
        }

        let mut alg = SplitAlgebra {
            f: f.clone(),
            n,
            dim,
            caps,
            exps,
            index_of,
            rules,
            basis_mul: Vec::new(),
            trace: Vec::new(),
        };

        // eager basis multiplication table and trace functional
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in a..dim {
                let prod = mono_mul(&alg.exps[a], &alg.exps[b]);
                let mut p: MPoly = BTreeMap::new();
                mpoly_add_term(&mut p, prod, BigRat::one());
                let coords = alg.reduce(p);
                table[a][b] = coords.clone();
                table[b][a] = coords;
            }
        }
        alg.basis_mul = table;
        alg.trace = (0..dim)
            .map(|b| {
                let mut t = BigRat::zero();
                for a in 0..dim {
                    t += alg.basis_mul[b][a][a].clone();
                }
                t
            })
            .collect();
        Ok(alg)
    }

    pub fn defining(&self) -> &RatPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Normal form of an arbitrary polynomial in the roots.
    fn reduce(&self, mut p: MPoly) -> Vec<BigRat> {
        loop {
            // pick a violating monomial, highest variable index first
            let mut target: Option<(Mono, usize)> = None;
            for m in p.keys() {
                for i in (0..self.n).rev() {
                    if m[i] > self.caps[i] {
                        match target {
                            Some((_, ti)) if ti > i => {}
                            _ => target = Some((*m, i)),
                        }
                        break;
                    }
                }
            }
            let (m, i) = match target {
                Some(t) => t,
                None => break,
            };
            let c = p.remove(&m).expect("key present");
            // m = x_i^(cap+1) * rest; substitute the rewrite for the power
            let mut rest = m;
            rest[i] -= self.caps[i] + 1;
            for (rm, rc) in &self.rules[i] {
                mpoly_add_term(&mut p, mono_mul(&rest, rm), &c * rc);
            }
        }
        let mut coords = vec![BigRat::zero(); self.dim];
        for (m, c) in p {
            coords[self.index_of[&m]] = c;
        }
        coords
    }

    fn elem(&self, coords: Vec<BigRat>) -> SplitElem {
        SplitElem {
            defining: self.f.clone(),
            coords,
        }
    }

    fn check(&self, e: &SplitElem) -> Result<(), SplittingError> {
        if e.defining != self.f {
            return Err(SplittingError::MismatchedDefining);
        }
        Ok(())
    }

    pub fn zero(&self) -> SplitElem {
        self.elem(vec![BigRat::zero(); self.dim])
    }

    pub fn one(&self) -> SplitElem {
        self.constant(BigRat::one())
    }

    pub fn constant(&self, c: BigRat) -> SplitElem {
        let mut coords = vec![BigRat::zero(); self.dim];
        coords[self.index_of[&[0u8; MAX_VARS]]] = c;
        self.elem(coords)
    }

    /// The i-th generic root x_i (0-based).
    pub fn root(&self, i: usize) -> SplitElem {
        assert!(i < self.n);
        let mut m = [0u8; MAX_VARS];
        m[i] = 1;
        let mut p: MPoly = BTreeMap::new();
        mpoly_add_term(&mut p, m, BigRat::one());
        self.elem(self.reduce(p))
    }

    /// Reduces a polynomial given as (exponent vector, coefficient) terms.
    pub fn from_terms(&self, terms: &[(Vec<u8>, BigRat)]) -> SplitElem {
        let mut p: MPoly = BTreeMap::new();
        for (e, c) in terms {
            let mut m = [0u8; MAX_VARS];
            m[..e.len()].copy_from_slice(e);
            mpoly_add_term(&mut p, m, c.clone());
        }
        self.elem(self.reduce(p))
    }

    pub fn add(&self, a: &SplitElem, b: &SplitElem) -> Result<SplitElem, SplittingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        ))
    }

    pub fn sub(&self, a: &SplitElem, b: &SplitElem) -> Result<SplitElem, SplittingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        ))
    }

    pub fn scale(&self, a: &SplitElem, c: &BigRat) -> SplitElem {
        self.elem(a.coords.iter().map(|x| x * c).collect())
    }

    /// Exact product in canonical coordinates.
    pub fn mul(&self, a: &SplitElem, b: &SplitElem) -> Result<SplitElem, SplittingError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![BigRat::zero(); self.dim];
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let w = ca * cb;
                for (k, t) in self.basis_mul[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &w * t;
                    }
                }
            }
        }
        Ok(self.elem(out))
    }

    /// Horner evaluation of a univariate polynomial at an algebra element.
    pub fn eval_poly(&self, p: &RatPoly, at: &SplitElem) -> Result<SplitElem, SplittingError> {
        self.check(at)?;
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, at)?;
            acc = self.add(&acc, &self.constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Some(c) when the element is the constant c.
    pub fn as_constant(&self, e: &SplitElem) -> Option<BigRat> {
        let idx = self.index_of[&[0u8; MAX_VARS]];
        for (i, c) in e.coords.iter().enumerate() {
            if i != idx && !c.is_zero() {
                return None;
            }
        }
        Some(e.coords[idx].clone())
    }

    /// Trace of multiplication by e on the algebra.
    pub fn trace_of(&self, e: &SplitElem) -> BigRat {
        e.coords
            .iter()
            .zip(&self.trace)
            .map(|(c, t)| c * t)
            .fold(BigRat::zero(), |acc, v| acc + v)
    }

    /// True when every table entry is integral (monic integer f).
    fn tables_are_integral(&self) -> bool {
        self.basis_mul
            .iter()
            .flatten()
            .flatten()
            .all(|c| c.denom().is_one())
    }
}

/// Exact product of two elements of the same splitting algebra.
pub fn split_mul(
    alg: &SplitAlgebra,
    a: &SplitElem,
    b: &SplitElem,
) -> Result<SplitElem, SplittingError> {
    alg.mul(a, b)
}

/// Element of the tensor of two splitting algebras, in the product basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElem {
    defining: (RatPoly, RatPoly),
    coords: Vec<BigRat>,
}

impl TensorElem {
    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }
}

/// The tensor square used as the exact oracle for mixed equations.
pub struct TensorAlgebra {
    pub left: SplitAlgebra,
    pub right: SplitAlgebra,
}

/// A sum of pure tensors u (x) w, the only shape ever multiplied by.
pub type StructuredTerms = Vec<(Vec<BigRat>, Vec<BigRat>)>;

impl TensorAlgebra {
    pub fn new(f: &RatPoly, g: &RatPoly) -> Result<TensorAlgebra, SplittingError> {
        Ok(TensorAlgebra {
            left: SplitAlgebra::new(f)?,
            right: SplitAlgebra::new(g)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.left.dim * self.right.dim
    }

    pub fn one(&self) -> TensorElem {
        let mut coords = vec![BigRat::zero(); self.dim()];
        let ia = self.left.index_of[&[0u8; MAX_VARS]];
        let ib = self.right.index_of[&[0u8; MAX_VARS]];
        coords[ia * self.right.dim + ib] = BigRat::one();
        TensorElem {
            defining: (self.left.f.clone(), self.right.f.clone()),
            coords,
        }
    }

    /// The element sum_i x_i^k (x) y_i as structured terms.
    pub fn mixed_power_terms(&self, k: usize) -> StructuredTerms {
        let n = self.left.n;
        (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = k as u8;
                let u = self.left.from_terms(&[(e, BigRat::one())]);
                let w = self.right.root(i);
                (u.coords, w.coords)
            })
            .collect()
    }

    /// Multiplies an element by a sum of pure tensors.
    pub fn mul_structured(&self, v: &TensorElem, terms: &StructuredTerms) -> TensorElem {
        let (dl, dr) = (self.left.dim, self.right.dim);
        let mut out = vec![BigRat::zero(); dl * dr];
        for (u, w) in terms {
            // left/right multiplication tables for this pure tensor
            let lmul: Vec<Vec<BigRat>> = (0..dl)
                .map(|a| {
                    let mut row = vec![BigRat::zero(); dl];
                    for (c_idx, uc) in u.iter().enumerate() {
                        if uc.is_zero() {
                            continue;
                        }
                        for (k, t) in self.left.basis_mul[a][c_idx].iter().enumerate() {
                            if !t.is_zero() {
                                row[k] += uc * t;
                            }
                        }
                    }
                    row
                })
                .collect();
            let rmul: Vec<Vec<BigRat>> = (0..dr)
                .map(|b| {
                    let mut row = vec![BigRat::zero(); dr];
                    for (c_idx, wc) in w.iter().enumerate() {
                        if wc.is_zero() {
                            continue;
                        }
                        for (k, t) in self.right.basis_mul[b][c_idx].iter().enumerate() {
                            if !t.is_zero() {
                                row[k] += wc * t;
                            }
                        }
                    }
                    row
                })
                .collect();
            for a in 0..dl {
                for b in 0..dr {
                    let c = &v.coords[a * dr + b];
                    if c.is_zero() {
                        continue;
                    }
                    for (a2, la) in lmul[a].iter().enumerate() {
                        if la.is_zero() {
                            continue;
                        }
                        let cla = c * la;
                        for (b2, rb) in rmul[b].iter().enumerate() {
                            if !rb.is_zero() {
                                out[a2 * dr + b2] += &cla * rb;
                            }
                        }
                    }
                }
            }
        }
        TensorElem {
            defining: (self.left.f.clone(), self.right.f.clone()),
            coords: out,
        }
    }

    /// Trace of multiplication by v on the tensor algebra.
    pub fn trace_of(&self, v: &TensorElem) -> BigRat {
        let dr = self.right.dim;
        let mut acc = BigRat::zero();
        for a in 0..self.left.dim {
            for b in 0..dr {
                let c = &v.coords[a * dr + b];
                if !c.is_zero() {
                    acc += c * &self.left.trace[a] * &self.right.trace[b];
                }
            }
        }
        acc
    }
}

/// Exact characteristic polynomial of multiplication by sum_i x_i^k y_i on
/// the tensor algebra, de-duplicated to degree n!: the monic polynomial
/// whose roots are all values sum_i x_i^k y_{sigma(i)}.
///
/// Requires monic *integer* f, g of equal degree n in 2..=4 and
/// 1 <= k <= n-1. Power traces are computed modulo word-sized primes and
/// recombined by CRT; Newton's identities then yield the coefficients
/// exactly over the rationals (asserted integral).
pub fn mixed_charpoly_int(f: &IntPoly, g: &IntPoly, k: usize) -> Result<RatPoly, SplittingError> {
    let fr = f.to_rat();
    let gr = g.to_rat();
    let n = match (fr.degree(), gr.degree()) {
        (Some(a), Some(b)) if a == b && (2..=MAX_VARS).contains(&a) => a,
        _ => return Err(SplittingError::BadDefiningPolynomial(fr.degree())),
    };
    if !(1..n).contains(&k) {
        return Err(SplittingError::BadMixedIndex(k));
    }
    let tensor = TensorAlgebra::new(&fr, &gr)?;
    assert!(tensor.left.tables_are_integral() && tensor.right.tables_are_integral());
    let big_n = factorial(n);

    // |trace(t^m)| <= (n!)^2 (n Rf^k Rg)^m with R = 1 + max |coeff|
    let rf = root_bound(f);
    let rg = root_bound(g);
    let val_bound = BigInt::from(n) * rf.pow(k as u32) * rg;
    let mut bound = BigInt::from(big_n) * BigInt::from(big_n);
    for _ in 0..big_n {
        bound *= &val_bound;
    }
    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    let target = bound * 2 + 1;
    let mut p = (1u64 << 25) - 1;
    while modulus < target {
        while !is_prime_u64(p) {
            p -= 1;
        }
        primes.push(p);
        modulus *= BigInt::from(p);
        p -= 1;
    }

    // traces over each prime
    let mut residue_traces: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        residue_traces.push(power_traces_mod_p(&tensor, k, big_n, p));
    }

    // CRT each power trace, divide by n!, then Newton
    let mut power_sums = Vec::with_capacity(big_n);
    for m in 0..big_n {
        let residues: Vec<(BigInt, BigInt)> = primes
            .iter()
            .zip(&residue_traces)
            .map(|(&p, tr)| (BigInt::from(tr[m]), BigInt::from(p)))
            .collect();
        let (t, _) = crt_combine(&residues).expect("distinct primes");
        let (q, r) = t.div_rem(&BigInt::from(big_n));
        assert!(r.is_zero(), "tensor trace divisible by n!");
        power_sums.push(BigRat::from_integer(q));
    }

    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = vec![BigRat::one()];
    for m in 1..=big_n {
        let mut acc = BigRat::zero();
        for i in 1..=m {
            let term = &e[m - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRat::from_integer(BigInt::from(m)));
    }
    let mut coeffs = vec![BigRat::zero(); big_n + 1];
    for (m, em) in e.iter().enumerate() {
        let sign = if m % 2 == 1 { -em.clone() } else { em.clone() };
        assert!(sign.denom().is_one(), "mixed equation has integer coefficients");
        coeffs[big_n - m] = sign;
    }
    Ok(RatPoly::new(coeffs))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn root_bound(f: &IntPoly) -> BigInt {
    let mut m = BigInt::one();
    for c in f.coeffs() {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    m + 1
}

/// Power traces tr(t^m), m = 1..=count, modulo p, where t = sum x_i^k y_i.
fn power_traces_mod_p(tensor: &TensorAlgebra, k: usize, count: usize, p: u64) -> Vec<u64> {
    let dl = tensor.left.dim;
    let dr = tensor.right.dim;
    let left_tab = tables_mod_p(&tensor.left, p);
    let right_tab = tables_mod_p(&tensor.right, p);
    let left_trace = trace_mod_p(&tensor.left, p);
    let right_trace = trace_mod_p(&tensor.right, p);

    // structured terms of t reduced mod p
    let terms: Vec<(Vec<u64>, Vec<u64>)> = tensor
        .mixed_power_terms(k)
        .into_iter()
        .map(|(u, w)| (vec_mod_p(&u, p), vec_mod_p(&w, p)))
        .collect();

    // left/right multiplication matrices per term (precomputed once)
    let lmats: Vec<Vec<Vec<u64>>> = terms
        .iter()
        .map(|(u, _)| mul_matrix(&left_tab, u, dl, p))
        .collect();
    let rmats: Vec<Vec<Vec<u64>>> = terms
        .iter()
        .map(|(_, w)| mul_matrix(&right_tab, w, dr, p))
        .collect();

    let mut v = vec![0u64; dl * dr];
    let ia = tensor.left.index_of[&[0u8; MAX_VARS]];
    let ib = tensor.right.index_of[&[0u8; MAX_VARS]];
    v[ia * dr + ib] = 1;

    let mut traces = Vec::with_capacity(count);
    for _ in 0..count {
        // v <- v * t
        let mut out = vec![0u64; dl * dr];
        for (lm, rm) in lmats.iter().zip(&rmats) {
            for a in 0..dl {
                for b in 0..dr {
                    let c = v[a * dr + b];
                    if c == 0 {
                        continue;
                    }
                    let la = &lm[a];
                    let rb = &rm[b];
                    for (a2, &lv) in la.iter().enumerate() {
                        if lv == 0 {
                            continue;
                        }
                        let t = (c as u128 * lv as u128 % p as u128) as u64;
                        if t == 0 {
                            continue;
                        }
                        let row = &mut out[a2 * dr..(a2 + 1) * dr];
                        for (b2, &rv) in rb.iter().enumerate() {
                            // p < 2^25 keeps this accumulation far from overflow
                            row[b2] += t * rv;
                        }
                    }
                }
            }
            for cell in out.iter_mut() {
                *cell %= p;
            }
        }
        v = out;
        let mut tr: u128 = 0;
        for a in 0..dl {
            for b in 0..dr {
                let c = v[a * dr + b];
                if c != 0 {
                    tr += c as u128 * (left_trace[a] as u128 * right_trace[b] as u128 % p as u128);
                }
            }
        }
        traces.push((tr % p as u128) as u64);
    }
    traces
}

fn vec_mod_p(v: &[BigRat], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter()
        .map(|c| {
            assert!(c.denom().is_one(), "integral coordinates expected");
            c.numer().mod_floor(&pb).to_u64().unwrap()
        })
        .collect()
}

fn tables_mod_p(alg: &SplitAlgebra, p: u64) -> Vec<Vec<Vec<u64>>> {
    alg.basis_mul
        .iter()
        .map(|row| row.iter().map(|v| vec_mod_p(v, p)).collect())
        .collect()
}

fn trace_mod_p(alg: &SplitAlgebra, p: u64) -> Vec<u64> {
    vec_mod_p(&alg.trace, p)
}

/// Matrix of multiplication by the element u on the basis, mod p:
/// mat[a] = coordinates of basis_a * u.
fn mul_matrix(tab: &[Vec<Vec<u64>>], u: &[u64], dim: usize, p: u64) -> Vec<Vec<u64>> {
    (0..dim)
        .map(|a| {
            let mut row = vec![0u64; dim];
            for (c_idx, &uc) in u.iter().enumerate() {
                if uc == 0 {
                    continue;
                }
                for (k, &t) in tab[a][c_idx].iter().enumerate() {
                    if t != 0 {
                        row[k] = (row[k] + (uc as u128 * t as u128 % p as u128) as u64) % p;
                    }
                }
            }
            row
        })
        .collect()
}
