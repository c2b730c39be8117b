//! Exact rational root extraction.
//!
//! Roots of f are located by clearing denominators and testing the divisor
//! candidates of the trailing and leading coefficients; when those
//! coefficients are too large to factor by trial division (mixed equations
//! of degree n! produce constants with hundreds of bits), candidates are
//! instead lifted from roots modulo a few word-sized primes. Every returned
//! root is verified by exact evaluation, so the strategy choice cannot
//! affect correctness.

use crate::finite::{self, is_prime_u64, ModPoly};
use crate::poly::{ArithError, BigInt, BigRat, IntPoly, RatPoly};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Threshold above which divisor enumeration of the trailing/leading
/// coefficients gives way to modular lifting.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// All rational roots of f, ascending, each verified by exact evaluation.
pub fn rational_roots(f: &RatPoly) -> Result<Vec<BigRat>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut g = IntPoly::from_rat_primitive(f);
    let mut roots = Vec::new();
    // strip x^k: zero is a root iff the constant term vanishes
    let mut coeffs = g.coeffs().to_vec();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(BigRat::zero());
        coeffs.drain(..shift);
        g = IntPoly::new(coeffs);
    }
    if g.degree().map_or(true, |d| d == 0) {
        roots.sort();
        return Ok(roots);
    }
    let candidates = candidate_roots(&g);
    for cand in candidates {
        if f.evaluate(&cand).is_zero() {
            roots.push(cand);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Convenience wrapper for integer polynomials.
pub fn rational_roots_int(f: &IntPoly) -> Result<Vec<BigRat>, ArithError> {
    rational_roots(&f.to_rat())
}

/// Candidate rational roots of a primitive integer polynomial with nonzero
/// constant term.
fn candidate_roots(g: &IntPoly) -> Vec<BigRat> {
    let a0 = g.coeff(0).abs();
    let lc = g.lc().abs();
    let small = |v: &BigInt| v.to_u64().map_or(false, |x| x <= TRIAL_DIVISION_LIMIT);
    if small(&a0) && small(&lc) {
        let mut out = Vec::new();
        for n in divisors_u64(a0.to_u64().unwrap()) {
            for d in divisors_u64(lc.to_u64().unwrap()) {
                let q = BigRat::new(BigInt::from(n), BigInt::from(d));
                out.push(q.clone());
                out.push(-q);
            }
        }
        out
    } else {
        modular_candidates(g)
    }
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Root candidates for huge coefficients: the rational roots of g
/// correspond to integer roots of the monic transform
/// h(y) = lc^(n-1) g(y/lc); integer roots of h are reconstructed from
/// their residues modulo a few primes, bounded by the Cauchy bound.
fn modular_candidates(g: &IntPoly) -> Vec<BigRat> {
    let n = g.degree().unwrap();
    let lc = g.lc();
    // h(y) = lc^(n-1) * g(y / lc), monic with integer coefficients
    let mut h_coeffs = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for k in (0..=n).rev() {
        h_coeffs.push((g.coeff(k) * &scale, k));
        if k > 0 {
            scale *= &lc;
        }
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (c, k) in h_coeffs {
        coeffs[k] = c;
    }
    let h = IntPoly::new(coeffs);
    debug_assert!(h.is_monic() || h.lc() == -BigInt::one() || n == 0);

    // Cauchy bound on integer roots of h
    let mut bound = BigInt::one();
    for c in h.coeffs() {
        let a = c.abs();
        if a > bound {
            bound = a;
        }
    }
    bound += 1;

    // enough primes so the CRT modulus exceeds 2*bound
    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    let mut p = (1u64 << 31) - 1;
    while modulus <= &bound * 2 {
        while !is_prime_u64(p) || (&lc % BigInt::from(p)).is_zero() {
            p -= 1;
        }
        primes.push(p);
        modulus *= BigInt::from(p);
        p -= 1;
    }

    // residue sets per prime
    let mut residue_sets: Vec<(u64, Vec<u64>)> = Vec::new();
    for &p in &primes {
        let hp = ModPoly::from_int_poly(&h, p).expect("prime checked");
        if hp.degree() != h.degree() {
            continue;
        }
        residue_sets.push((p, finite::roots_mod_p(&hp, 0)));
    }
    if residue_sets.is_empty() {
        return Vec::new();
    }

    // combine residue choices across primes; root sets are tiny (<= deg)
    let mut combos: Vec<(BigInt, BigInt)> = residue_sets[0]
        .1
        .iter()
        .map(|&r| (BigInt::from(r), BigInt::from(residue_sets[0].0)))
        .collect();
    for (p, set) in &residue_sets[1..] {
        let mut next = Vec::new();
        for (v, m) in &combos {
            for &r in set {
                let combined = crate::crt::crt_combine(&[
                    (v.clone(), m.clone()),
                    (BigInt::from(r), BigInt::from(*p)),
                ])
                .expect("distinct primes");
                next.push(combined);
            }
        }
        combos = next;
        if combos.is_empty() {
            return Vec::new();
        }
    }

    combos
        .into_iter()
        .filter(|(v, _)| v.abs() <= bound)
        .map(|(v, _)| BigRat::new(v, lc.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn roots_of(coeffs: &[i64]) -> Vec<BigRat> {
        rational_roots(&RatPoly::from_ints(coeffs)).unwrap()
    }

    #[test]
    fn cubic_with_two_rational_roots() {
        // z^3 - 3z - 2 = (z-2)(z+1)^2
        assert_eq!(roots_of(&[-2, -3, 0, 1]), vec![rat(-1, 1), rat(2, 1)]);
    }

    #[test]
    fn no_rational_roots() {
        assert_eq!(roots_of(&[1, 0, 1]), Vec::<BigRat>::new());
    }

    #[test]
    fn fractional_roots() {
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        assert_eq!(roots_of(&[1, -5, 6]), vec![rat(1, 3), rat(1, 2)]);
    }

    #[test]
    fn zero_root_and_errors() {
        assert_eq!(roots_of(&[0, 0, 1, 1]), vec![rat(-1, 1), rat(0, 1)]);
        assert!(rational_roots(&RatPoly::zero()).is_err());
    }

    #[test]
    fn huge_coefficients_go_modular() {
        // (x - a)(x + b)(x^2 + 3) with ~20-digit a, b exercises the
        // modular path end to end
        let a = BigInt::parse_bytes(b"123456789012345678901", 10).unwrap();
        let b = BigInt::parse_bytes(b"98765432109876543", 10).unwrap();
        let fa = RatPoly::new(vec![
            BigRat::from_integer(-a.clone()),
            BigRat::one(),
        ]);
        let fb = RatPoly::new(vec![BigRat::from_integer(b.clone()), BigRat::one()]);
        let f = fa.mul(&fb).mul(&RatPoly::from_ints(&[3, 0, 1]));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(
            roots,
            vec![BigRat::from_integer(-b), BigRat::from_integer(a)]
        );
    }

    #[test]
    fn random_linear_products_lose_no_root() {
        let mut s = 0xdeadbeefu64;
        let mut next = move |m: i64| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % (m as u64)) as i64 - m / 2
        };
        for _ in 0..50 {
            let mut f = RatPoly::one();
            let mut expected = Vec::new();
            for _ in 0..4 {
                let num = next(19);
                let den = 1 + next(7).abs();
                f = f.mul(&RatPoly::new(vec![rat(-num, 1), rat(den, 1)]));
                expected.push(rat(num, den));
            }
            expected.sort();
            expected.dedup();
            assert_eq!(rational_roots(&f).unwrap(), expected);
        }
    }
}
