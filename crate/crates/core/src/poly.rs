//! Dense univariate polynomials with exact rational or integer coefficients.
//!
//! Coefficients are stored ascending by exponent; the canonical zero
//! polynomial is the empty coefficient list, and no polynomial carries
//! trailing zero coefficients. All operations are exact and allocate fresh
//! values; nothing here mutates shared state.

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type BigInt = num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

/// Errors from exact polynomial arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("discriminant requires degree >= 1, got a constant")]
    DiscriminantOfConstant,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Polynomial over the rationals, coefficients ascending by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRat>,
}

impl RatPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRat::from_integer(int(c))).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: BigRat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[k] = c;
        RatPoly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(BigRat::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRat) -> RatPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> RatPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), ArithError> {
        if divisor.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = divisor.lc().recip();
        let mut quo = vec![BigRat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let q = c * &lead_inv;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[k - dd + j] -= t;
            }
            quo[k - dd] = q;
        }
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &RatPoly) -> Result<RatPoly, ArithError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact evaluation by Horner's rule.
    pub fn evaluate(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `inner` for the variable: self(inner(x)).
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRat::from_integer(int(k as i64)))
                .collect(),
        )
    }

    /// Divides by the leading coefficient. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<RatPoly, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let inv = self.lc().recip();
        Ok(self.scale(&inv))
    }

    /// Monic greatest common divisor. One argument may be zero, not both.
    ///
    /// Internally runs a primitive pseudo-remainder sequence over the
    /// integers to keep coefficient growth in check.
    pub fn gcd(&self, rhs: &RatPoly) -> Result<RatPoly, ArithError> {
        if self.is_zero() && rhs.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        let mut a = IntPoly::from_rat_primitive(self);
        let mut b = IntPoly::from_rat_primitive(rhs);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.to_rat().monic()
    }

    /// Resultant of the two polynomials, by the Euclidean recurrence.
    ///
    /// Res(a, b) = lc(a)^deg(b) * prod of b over the roots of a; zero when
    /// the polynomials share a root (or either is zero beside a constant).
    pub fn resultant(&self, rhs: &RatPoly) -> BigRat {
        fn go(a: &RatPoly, b: &RatPoly) -> BigRat {
            if a.is_zero() || b.is_zero() {
                return BigRat::zero();
            }
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if da == 0 {
                return pow_rat(&a.lc(), db);
            }
            if db == 0 {
                return pow_rat(&b.lc(), da);
            }
            let r = a.rem(b).expect("nonzero divisor");
            if r.is_zero() {
                return BigRat::zero();
            }
            let dr = r.degree().unwrap();
            let sign = if (da * db) % 2 == 1 {
                -BigRat::one()
            } else {
                BigRat::one()
            };
            sign * pow_rat(&b.lc(), da - dr) * go(b, &r)
        }
        go(self, rhs)
    }

    /// Discriminant with the sign convention
    /// `(-1)^(n(n-1)/2) * Res(f, f') / lc(f)`, so that
    /// disc(x^3 + p x + q) = -4 p^3 - 27 q^2.
    pub fn discriminant(&self) -> Result<BigRat, ArithError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(ArithError::DiscriminantOfConstant),
        };
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            -BigRat::one()
        } else {
            BigRat::one()
        };
        Ok(sign * res / self.lc())
    }

    /// True when gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.is_constant())
                .unwrap_or(false),
        }
    }

    /// Substitutes x -> x + c.
    pub fn shift(&self, c: &BigRat) -> RatPoly {
        self.compose(&RatPoly::new(vec![c.clone(), BigRat::one()]))
    }

    /// Substitutes x -> x / lambda and rescales to keep the polynomial
    /// monic: for monic f of degree n returns lambda^n f(x / lambda),
    /// whose roots are lambda times the roots of f.
    pub fn scale_roots(&self, lambda: &BigRat) -> RatPoly {
        let n = match self.degree() {
            None => return Self::zero(),
            Some(n) => n,
        };
        let mut out = Vec::with_capacity(n + 1);
        let mut factor = BigRat::one();
        for k in (0..=n).rev() {
            out.push((self.coeff(k) * &factor, k));
            factor *= lambda;
        }
        let mut coeffs = vec![BigRat::zero(); n + 1];
        for (c, k) in out {
            coeffs[k] = c;
        }
        Self::new(coeffs)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }

    /// Exact conversion to an integer polynomial, when every coefficient is
    /// an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }
}

/// Exact square root of a rational, when it is a perfect square.
pub fn rational_sqrt(v: &BigRat) -> Option<BigRat> {
    if v.is_negative() {
        return None;
    }
    let sn = v.numer().sqrt();
    let sd = v.denom().sqrt();
    if &(&sn * &sn) == v.numer() && &(&sd * &sd) == v.denom() {
        Some(BigRat::new(sn, sd))
    } else {
        None
    }
}

fn pow_rat(base: &BigRat, e: usize) -> BigRat {
    let mut acc = BigRat::one();
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * &b;
        }
    }
    acc
}

impl fmt::Display for RatPoly {
    /// Canonical descending form, e.g. `x^3 - x - 1` or `1/2x^2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, |c| c.is_zero(), |c| format_rat_coeff(c), "x")
    }
}

fn format_rat_coeff(c: &BigRat) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    let s = if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    (neg, s)
}

fn write_poly<C>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    is_zero: impl Fn(&C) -> bool,
    fmt_coeff: impl Fn(&C) -> (bool, String),
    var: &str,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if is_zero(c) {
            continue;
        }
        let (neg, mag) = fmt_coeff(c);
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = mag == "1";
        match k {
            0 => write!(f, "{}", mag)?,
            1 => {
                if unit {
                    write!(f, "{}", var)?
                } else {
                    write!(f, "{}{}", mag, var)?
                }
            }
            _ => {
                if unit {
                    write!(f, "{}^{}", var, k)?
                } else {
                    write!(f, "{}{}^{}", mag, var, k)?
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial over the integers, coefficients ascending by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Clears denominators of a rational polynomial and strips the content,
    /// keeping the sign of the leading coefficient.
    pub fn from_rat_primitive(p: &RatPoly) -> IntPoly {
        if p.is_zero() {
            return IntPoly::zero();
        }
        let l = p.denominator_lcm();
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        IntPoly::new(ints).primitive_part()
    }

    /// Content: gcd of the coefficients, with the sign of the leading one.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.lc().sign() == Sign::Minus {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Pseudo-remainder: the remainder of lc(b)^(deg a - deg b + 1) * a
    /// divided by b, computed entirely over the integers.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo_rem by zero");
        let db = b.degree().unwrap();
        let mut r = self.clone();
        if r.degree().map_or(true, |d| d < db) {
            return r;
        }
        let lb = b.lc();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            // r <- lb * r - lr * x^(dr-db) * b
            let mut out = vec![BigInt::zero(); dr + 1];
            for (k, c) in r.coeffs.iter().enumerate() {
                out[k] = c * &lb;
            }
            for (j, c) in b.coeffs.iter().enumerate() {
                out[dr - db + j] -= c * &lr;
            }
            r = IntPoly::new(out);
        }
        r
    }

    pub fn discriminant(&self) -> Result<BigRat, ArithError> {
        self.to_rat().discriminant()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(
            f,
            &self.coeffs,
            |c| c.is_zero(),
            |c| (c.sign() == Sign::Minus, c.abs().to_string()),
            "x",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn product_difference_of_squares() {
        // (x+1)(x-1) = x^2 - 1
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_synthetic_division() {
        // x^3 - x - 1 = (x - 2)(x^2 + 2x + 3) + 5, and 2^3 - 2 - 1 = 5
        let (q, r) = p(&[-1, -1, 0, 1]).divrem(&p(&[-2, 1])).unwrap();
        assert_eq!(q, p(&[3, 2, 1]));
        assert_eq!(r, p(&[5]));
        assert_eq!(
            p(&[-1, -1, 0, 1]).evaluate(&rat(2, 1)),
            rat(5, 1)
        );
    }

    #[test]
    fn divrem_by_zero_is_an_error() {
        assert_eq!(
            p(&[1, 1]).divrem(&RatPoly::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn compose_square_of_shift() {
        // (x+1)^2 = x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn gcd_shared_linear_factor() {
        // gcd(x^2 - 1, x^3 - 1) = x - 1
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_of_squarefree_poly_and_derivative() {
        let f = p(&[-1, -1, 0, 1]); // disc = -23 != 0
        assert_eq!(f.gcd(&f.derivative()).unwrap(), RatPoly::one());
    }

    #[test]
    fn gcd_with_zero_is_monic_part() {
        let f = p(&[2, 4]);
        assert_eq!(f.gcd(&RatPoly::zero()).unwrap(), p(&[1, 2]).scale(&rat(1, 2)));
        assert_eq!(
            RatPoly::zero().gcd(&RatPoly::zero()),
            Err(ArithError::GcdOfZeros)
        );
    }

    #[test]
    fn discriminant_examples() {
        // disc(x^3 - x) = -4(-1)^3 - 27*0 = 4
        assert_eq!(p(&[0, -1, 0, 1]).discriminant().unwrap(), rat(4, 1));
        // disc(x^3 - x - 1) = 4 - 27 = -23
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant().unwrap(), rat(-23, 1));
        // double root
        assert_eq!(p(&[1, -2, 1]).discriminant().unwrap(), rat(0, 1));
        assert_eq!(
            p(&[7]).discriminant(),
            Err(ArithError::DiscriminantOfConstant)
        );
    }

    /// Sylvester-matrix determinant, used as an independent resultant oracle.
    fn sylvester_resultant(a: &RatPoly, b: &RatPoly) -> BigRat {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let n = da + db;
        let mut m = vec![vec![BigRat::zero(); n]; n];
        for row in 0..db {
            for (k, c) in a.coeffs().iter().enumerate() {
                m[row][row + da - k] = c.clone();
            }
        }
        for row in 0..da {
            for (k, c) in b.coeffs().iter().enumerate() {
                m[db + row][row + db - k] = c.clone();
            }
        }
        // Gaussian elimination over the rationals.
        let mut det = BigRat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let pivot = match pivot {
                Some(r) => r,
                None => return BigRat::zero(),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let inv = m[col][col].recip();
            det *= &m[col][col];
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let t = &factor * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn depressed_cubic_discriminant_formula_vs_sylvester() {
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state % 41) as i64 - 20
        };
        for _ in 0..100 {
            let (pp, qq) = (next(), next());
            let f = p(&[qq, pp, 0, 1]);
            let expect = rat(-4 * pp * pp * pp - 27 * qq * qq, 1);
            assert_eq!(f.discriminant().unwrap(), expect);
            let fd = f.derivative();
            assert_eq!(f.resultant(&fd), sylvester_resultant(&f, &fd));
        }
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in prop::collection::vec(-9i64..=9, 0..7),
                               b in prop::collection::vec(-9i64..=9, 1..5)) {
            let fa = p(&a);
            let fb = p(&b);
            prop_assume!(!fb.is_zero());
            let (q, r) = fa.divrem(&fb).unwrap();
            prop_assert_eq!(q.mul(&fb).add(&r), fa);
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < fb.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both(a in prop::collection::vec(-6i64..=6, 1..6),
                            b in prop::collection::vec(-6i64..=6, 1..6)) {
            let fa = p(&a);
            let fb = p(&b);
            prop_assume!(!fa.is_zero() || !fb.is_zero());
            let g = fa.gcd(&fb).unwrap();
            if !fa.is_zero() {
                prop_assert!(fa.rem(&g).unwrap().is_zero());
            }
            if !fb.is_zero() {
                prop_assert!(fb.rem(&g).unwrap().is_zero());
            }
        }

        #[test]
        fn gcd_scales_with_common_factor(a in prop::collection::vec(-5i64..=5, 1..4),
                                         b in prop::collection::vec(-5i64..=5, 1..4),
                                         c in prop::collection::vec(-5i64..=5, 2..4)) {
            let fa = p(&a);
            let fb = p(&b);
            let fc = p(&c);
            prop_assume!(!fa.is_zero() && !fb.is_zero() && !fc.is_zero());
            let lhs = fa.mul(&fc).gcd(&fb.mul(&fc)).unwrap();
            let rhs = fa.gcd(&fb).unwrap().mul(&fc).monic().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_multiplicative(a in prop::collection::vec(-4i64..=4, 2..4),
                                    b in prop::collection::vec(-4i64..=4, 2..4),
                                    c in prop::collection::vec(-4i64..=4, 2..4)) {
            let fa = p(&a);
            let fb = p(&b);
            let fc = p(&c);
            prop_assume!(!fa.is_zero() && !fb.is_zero() && !fc.is_zero());
            // Res(a*b, c) = Res(a, c) * Res(b, c)
            let lhs = fa.mul(&fb).resultant(&fc);
            let rhs = fa.resultant(&fc) * fb.resultant(&fc);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_round_shapes() {
        assert_eq!(p(&[3, 1, 0, 1]).to_string(), "x^3 + x + 3");
        assert_eq!(p(&[-1, -1, 0, 1]).to_string(), "x^3 - x - 1");
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(
            RatPoly::new(vec![rat(1, 2), rat(-2, 3)]).to_string(),
            "-2/3x + 1/2"
        );
    }

    #[test]
    fn scale_roots_keeps_monic_and_maps_roots() {
        // f = x^2 - 2x + 3/4 has roots 1/2, 3/2; scaling by 2 gives roots 1, 3.
        let f = RatPoly::new(vec![rat(3, 4), rat(-2, 1), rat(1, 1)]);
        let g = f.scale_roots(&rat(2, 1));
        assert_eq!(g, p(&[3, -4, 1]));
    }
}
