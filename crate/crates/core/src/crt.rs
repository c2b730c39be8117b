//! Chinese remaindering for integers and, coefficientwise, for polynomials.
//!
//! Representatives are chosen in the symmetric range (-M/2, M/2] so that
//! combined polynomials keep small coefficients.

use crate::poly::{BigInt, IntPoly};
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrtError {
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(BigInt, BigInt),
    #[error("empty residue list")]
    Empty,
    #[error("modulus must be >= 2, got {0}")]
    BadModulus(BigInt),
}

/// Maps `a` into the symmetric range (-m/2, m/2] modulo m > 0.
pub fn symmetric_rep(a: &BigInt, m: &BigInt) -> BigInt {
    let mut r = a.mod_floor(m);
    let twice = &r * 2;
    if &twice > m {
        r -= m;
    }
    r
}

/// Combines residues `(value, modulus)` with pairwise coprime moduli into
/// the unique representative modulo the product, in the symmetric range.
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt), CrtError> {
    if residues.is_empty() {
        return Err(CrtError::Empty);
    }
    let mut acc = residues[0].0.clone();
    let mut m = residues[0].1.clone();
    if m < BigInt::from(2) {
        return Err(CrtError::BadModulus(m));
    }
    acc = acc.mod_floor(&m);
    for (v, p) in &residues[1..] {
        if *p < BigInt::from(2) {
            return Err(CrtError::BadModulus(p.clone()));
        }
        let g = m.gcd(p);
        if !g.is_one() {
            return Err(CrtError::NonCoprimeModuli(m, p.clone()));
        }
        // acc + m * t = v (mod p)  =>  t = (v - acc) * m^{-1} (mod p)
        let minv = mod_inverse(&m, p).expect("coprime by the gcd check");
        let t = ((v - &acc) * minv).mod_floor(p);
        acc += &m * t;
        m *= p;
        acc = acc.mod_floor(&m);
    }
    Ok((symmetric_rep(&acc, &m), m))
}

/// Coefficientwise CRT lift: each input pairs a polynomial with a modulus;
/// the result reduces to every input modulo its modulus and has all
/// coefficients in the symmetric range modulo the product.
pub fn crt_combine_poly(inputs: &[(IntPoly, BigInt)]) -> Result<(IntPoly, BigInt), CrtError> {
    if inputs.is_empty() {
        return Err(CrtError::Empty);
    }
    let deg = inputs
        .iter()
        .map(|(f, _)| f.degree().map_or(0, |d| d))
        .max()
        .unwrap();
    let mut coeffs = Vec::with_capacity(deg + 1);
    let mut modulus = BigInt::one();
    for k in 0..=deg {
        let residues: Vec<(BigInt, BigInt)> = inputs
            .iter()
            .map(|(f, m)| (f.coeff(k), m.clone()))
            .collect();
        let (c, m) = crt_combine(&residues)?;
        modulus = m;
        coeffs.push(c);
    }
    Ok((IntPoly::new(coeffs), modulus))
}

/// Inverse of `a` modulo `m`, when gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn r(v: i64, m: i64) -> (BigInt, BigInt) {
        (int(v), int(m))
    }

    #[test]
    fn zero_residues() {
        assert_eq!(crt_combine(&[r(0, 2), r(0, 3)]).unwrap(), (int(0), int(6)));
    }

    #[test]
    fn common_residue() {
        assert_eq!(crt_combine(&[r(1, 2), r(1, 3)]).unwrap(), (int(1), int(6)));
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(matches!(
            crt_combine(&[r(1, 4), r(3, 6)]),
            Err(CrtError::NonCoprimeModuli(..))
        ));
    }

    #[test]
    fn symmetric_range_choice() {
        // 5 mod 6 -> -1 in the symmetric range
        assert_eq!(crt_combine(&[r(1, 2), r(2, 3)]).unwrap(), (int(-1), int(6)));
        // 3 mod 6 stays 3 (range is half-open on the left)
        assert_eq!(crt_combine(&[r(1, 2), r(0, 3)]).unwrap(), (int(3), int(6)));
    }

    #[test]
    fn poly_lift_worked_example() {
        // f = x^3 + x + 1 (mod 2), f = x^3 + x (mod 3)  ->  x^3 + x + 3 (mod 6)
        let f2 = IntPoly::from_i64(&[1, 1, 0, 1]);
        let f3 = IntPoly::from_i64(&[0, 1, 0, 1]);
        let (f, m) = crt_combine_poly(&[(f2, int(2)), (f3, int(3))]).unwrap();
        assert_eq!(f, IntPoly::from_i64(&[3, 1, 0, 1]));
        assert_eq!(m, int(6));
    }

    #[test]
    fn combined_value_reduces_to_inputs() {
        let cases = [vec![r(1, 5), r(3, 7), r(2, 9)], vec![r(-4, 11), r(6, 13)]];
        for residues in cases {
            let (v, m) = crt_combine(&residues).unwrap();
            let mut prod = BigInt::one();
            for (orig, p) in &residues {
                assert_eq!(v.mod_floor(p), orig.mod_floor(p));
                prod *= p;
            }
            assert_eq!(m, prod);
            assert!(&v * 2 <= m && &v * 2 > -&m);
        }
    }
}
