//! Exact elliptic curve group law over the rationals and division
//! polynomials, used as the torsion oracle.

use crate::poly::{BigInt, BigRat, RatPoly};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    Singular,
    #[error("point ({0}, {1}) is not on the curve")]
    NotOnCurve(BigRat, BigRat),
}

/// Short Weierstrass curve y^2 = x^3 + a x + b over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: BigRat,
    pub b: BigRat,
}

/// Affine point or the point at infinity (the group identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(BigRat, BigRat),
}

impl CurvePoint {
    pub fn affine(x: BigRat, y: BigRat) -> CurvePoint {
        CurvePoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl WeierstrassCurve {
    pub fn new(a: BigRat, b: BigRat) -> Result<WeierstrassCurve, CurveError> {
        let four = BigRat::from_integer(BigInt::from(4));
        let tw7 = BigRat::from_integer(BigInt::from(27));
        if (four * &a * &a * &a + tw7 * &b * &b).is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(WeierstrassCurve { a, b })
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y * y == x * x * x + &self.a * x + &self.b,
        }
    }

    fn ensure_on_curve(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            match p {
                CurvePoint::Affine(x, y) => Err(CurveError::NotOnCurve(x.clone(), y.clone())),
                CurvePoint::Infinity => unreachable!(),
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y.clone()),
        }
    }

    /// Exact chord-and-tangent addition with all special cases.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        match (p, q) {
            (CurvePoint::Infinity, _) => q.clone(),
            (_, CurvePoint::Infinity) => p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => {
                if x1 == x2 {
                    if (y1 + y2).is_zero() {
                        // vertical line (includes doubling a 2-torsion point)
                        return CurvePoint::Infinity;
                    }
                    // tangent: lambda = (3 x1^2 + a) / (2 y1)
                    let three = BigRat::from_integer(BigInt::from(3));
                    let two = BigRat::from_integer(BigInt::from(2));
                    let lambda = (three * x1 * x1 + &self.a) / (two * y1);
                    let x3 = &lambda * &lambda - x1 - x2;
                    let y3 = lambda * (x1 - &x3) - y1;
                    CurvePoint::Affine(x3, y3)
                } else {
                    let lambda = (y2 - y1) / (x2 - x1);
                    let x3 = &lambda * &lambda - x1 - x2;
                    let y3 = lambda * (x1 - &x3) - y1;
                    CurvePoint::Affine(x3, y3)
                }
            }
        }
    }

    pub fn mul_scalar(&self, n: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// Division polynomial psi_n as x-polynomial data: psi_n = poly * y for
/// even n and psi_n = poly for odd n (with y^2 already reduced to
/// x^3 + ax + b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionPolynomial {
    pub n: u64,
    pub x_part: RatPoly,
    pub has_y_factor: bool,
}

impl DivisionPolynomial {
    /// Value of psi_n at an affine point.
    pub fn evaluate(&self, x: &BigRat, y: &BigRat) -> BigRat {
        let v = self.x_part.evaluate(x);
        if self.has_y_factor {
            v * y
        } else {
            v
        }
    }
}

/// psi_1, ..., psi_n via the standard two-term recursions, with y^2
/// reduced to the curve cubic throughout.
pub fn division_polynomials(curve: &WeierstrassCurve, n: u64) -> Vec<DivisionPolynomial> {
    let a = &curve.a;
    let b = &curve.b;
    let c = RatPoly::new(vec![b.clone(), a.clone(), BigRat::zero(), BigRat::one()]);
    let ri = |v: i64| BigRat::from_integer(BigInt::from(v));
    // f[m] = x-part of psi_m, index shifted by 1 so f[0] is psi_{-1} = -1
    let mut f: Vec<RatPoly> = Vec::with_capacity(n as usize + 2);
    f.push(RatPoly::constant(ri(-1))); // psi_{-1}
    f.push(RatPoly::zero()); // psi_0
    f.push(RatPoly::one()); // psi_1
    f.push(RatPoly::constant(ri(2))); // psi_2 = 2y
    // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2
    f.push(RatPoly::new(vec![
        -(a * a),
        ri(12) * b,
        ri(6) * a,
        BigRat::zero(),
        ri(3),
    ]));
    // psi_4 = 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    f.push(RatPoly::new(vec![
        ri(-8) * b * b - a * a * a,
        ri(-4) * a * b,
        ri(-5) * a * a,
        ri(20) * b,
        ri(5) * a,
        BigRat::zero(),
        BigRat::one(),
    ])
    .scale(&ri(4)));
    let idx = |m: i64| (m + 1) as usize;
    for m_val in 5..=n.max(1) {
        let m = m_val as i64;
        let next = if m % 2 == 1 {
            // psi_{2k+1} with k = (m-1)/2
            let k = (m - 1) / 2;
            let t1 = f[idx(k + 2)].mul(&f[idx(k)].pow(3));
            let t2 = f[idx(k - 1)].mul(&f[idx(k + 1)].pow(3));
            let c2 = c.mul(&c);
            if k % 2 == 0 {
                // psi_{k+2}, psi_k carry y-factors: y^4 = c^2
                t1.mul(&c2).sub(&t2)
            } else {
                t1.sub(&t2.mul(&c2))
            }
        } else {
            // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y):
            // the x-part is f_k (f_{k+2} f_{k-1}^2 - f_{k-2} f_{k+1}^2) / 2
            // for either parity of k
            let k = m / 2;
            let d = f[idx(k + 2)]
                .mul(&f[idx(k - 1)].pow(2))
                .sub(&f[idx(k - 2)].mul(&f[idx(k + 1)].pow(2)));
            f[idx(k)].mul(&d).scale(&BigRat::new(BigInt::one(), BigInt::from(2)))
        };
        f.push(next);
    }
    (1..=n)
        .map(|m| DivisionPolynomial {
            n: m,
            x_part: f[idx(m as i64)].clone(),
            has_y_factor: m % 2 == 0,
        })
        .collect()
}

/// Single division polynomial psi_n.
pub fn division_polynomial(curve: &WeierstrassCurve, n: u64) -> DivisionPolynomial {
    division_polynomials(curve, n).pop().expect("n >= 1")
}

/// Outcome of the torsion oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionResult {
    Order(u64),
    NonTorsionWithinCap { cap: u64 },
}

/// Exact order of the point by repeated addition up to `cap`, cross-checked
/// against the vanishing of the division polynomials.
pub fn torsion_order(
    curve: &WeierstrassCurve,
    point: &CurvePoint,
    cap: u64,
) -> Result<TorsionResult, CurveError> {
    curve.ensure_on_curve(point)?;
    if point.is_infinity() {
        return Ok(TorsionResult::Order(1));
    }
    let mut acc = point.clone();
    for m in 1..=cap {
        if acc.is_infinity() {
            // cross-check: psi_m vanishes at the point, and no proper
            // divisor d of m has psi_d vanishing
            if let CurvePoint::Affine(x, y) = point {
                let psis = division_polynomials(curve, m);
                assert!(
                    psis[m as usize - 1].evaluate(x, y).is_zero(),
                    "psi_{m} vanishes at a point of order {m}"
                );
                for d in 2..m {
                    if m % d == 0 {
                        assert!(
                            !psis[d as usize - 1].evaluate(x, y).is_zero(),
                            "psi_{d} must not vanish at a point of exact order {m}"
                        );
                    }
                }
            }
            return Ok(TorsionResult::Order(m));
        }
        acc = curve.add(&acc, point);
    }
    if acc.is_infinity() {
        return Ok(TorsionResult::Order(cap + 1));
    }
    Ok(TorsionResult::NonTorsionWithinCap { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn curve(a: i64, b: i64) -> WeierstrassCurve {
        WeierstrassCurve::new(rat(a, 1), rat(b, 1)).unwrap()
    }

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::affine(rat(x, 1), rat(y, 1))
    }

    #[test]
    fn rejects_singular() {
        assert_eq!(
            WeierstrassCurve::new(rat(-3, 1), rat(2, 1)),
            Err(CurveError::Singular)
        );
    }

    #[test]
    fn order_six_walkthrough() {
        // y^2 = x^3 + 1, P = (2,3): 2P = (0,1), 3P = (-1,0), 6P = O
        let e = curve(0, 1);
        let p = pt(2, 3);
        assert!(e.contains(&p));
        assert_eq!(e.add(&p, &p), pt(0, 1));
        assert_eq!(e.mul_scalar(3, &p), pt(-1, 0));
        assert_eq!(e.mul_scalar(6, &p), CurvePoint::Infinity);
        assert_eq!(torsion_order(&e, &p, 16).unwrap(), TorsionResult::Order(6));
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve(0, 1);
        let p = pt(2, 3);
        assert_eq!(e.add(&p, &CurvePoint::Infinity), p);
        assert_eq!(e.add(&p, &e.neg(&p)), CurvePoint::Infinity);
        assert_eq!(
            torsion_order(&e, &CurvePoint::Infinity, 16).unwrap(),
            TorsionResult::Order(1)
        );
    }

    #[test]
    fn non_torsion_point() {
        // y^2 = x^3 - 2, P = (3, 5) has infinite order
        let e = curve(0, -2);
        let p = pt(3, 5);
        assert!(e.contains(&p));
        assert_eq!(
            torsion_order(&e, &p, 16).unwrap(),
            TorsionResult::NonTorsionWithinCap { cap: 16 }
        );
    }

    #[test]
    fn psi_small_values() {
        let e = curve(0, 1);
        let psis = division_polynomials(&e, 4);
        assert_eq!(psis[0].x_part, RatPoly::one());
        assert_eq!(psis[1].x_part, RatPoly::from_ints(&[2]));
        assert!(psis[1].has_y_factor);
        // psi_3 = 3x^4 + 12x for a = 0, b = 1
        assert_eq!(psis[2].x_part, RatPoly::from_ints(&[0, 12, 0, 0, 3]));
        // (0,1) has order 3: psi_3(0) = 0
        assert!(psis[2].evaluate(&rat(0, 1), &rat(1, 1)).is_zero());
        assert_eq!(torsion_order(&e, &pt(0, 1), 16).unwrap(), TorsionResult::Order(3));
    }

    #[test]
    fn psi_degrees() {
        let e = curve(-7, 10);
        let psis = division_polynomials(&e, 12);
        for psi in &psis {
            let n = psi.n as usize;
            if n < 2 {
                continue;
            }
            let expect = if n % 2 == 1 {
                (n * n - 1) / 2
            } else {
                (n * n - 4) / 2
            };
            assert_eq!(
                psi.x_part.degree(),
                Some(expect),
                "degree of psi_{n} x-part"
            );
        }
    }

    #[test]
    fn psi_vanishing_matches_repeated_addition() {
        // points of small order on standard curves
        let cases: Vec<(WeierstrassCurve, CurvePoint, u64)> = vec![
            (curve(0, 1), pt(2, 3), 6),
            (curve(0, 1), pt(0, 1), 3),
            (curve(0, 1), pt(-1, 0), 2),
            (curve(0, 4), pt(0, 2), 3),
            (curve(4, 0), pt(2, 4), 4),
            (curve(-1, 0), pt(0, 0), 2),
            (
                WeierstrassCurve::new(rat(-432, 1), rat(8208, 1)).unwrap(),
                CurvePoint::affine(rat(-12, 1), rat(108, 1)),
                5,
            ),
        ];
        for (e, p, expect) in cases {
            assert!(e.contains(&p), "{p:?}");
            // the cross-check inside torsion_order exercises psi vanishing
            assert_eq!(
                torsion_order(&e, &p, 16).unwrap(),
                TorsionResult::Order(expect)
            );
            if let CurvePoint::Affine(x, y) = &p {
                let psis = division_polynomials(&e, 12);
                for k in 1..=12u64 {
                    let vanishes = psis[k as usize - 1].evaluate(x, y).is_zero();
                    let is_multiple = e.mul_scalar(k, &p).is_infinity();
                    assert_eq!(vanishes, is_multiple, "psi_{k} at order-{expect} point");
                }
            }
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let e = curve(-2, 5);
        let p = pt(2, 3); // 8 - 4 + 5 = 9
        assert!(e.contains(&p));
        let q = e.mul_scalar(2, &p);
        let r = e.mul_scalar(3, &p);
        let lhs = e.add(&e.add(&p, &q), &r);
        let rhs = e.add(&p, &e.add(&q, &r));
        assert_eq!(lhs, rhs);
        assert_eq!(e.add(&p, &e.neg(&p)), CurvePoint::Infinity);
        // and with unrelated points on y^2 = x^3 + 17
        let e = curve(0, 17);
        let (a, b, c) = (pt(-2, 3), pt(2, 5), pt(4, 9));
        assert!(e.contains(&a) && e.contains(&b) && e.contains(&c));
        assert_eq!(
            e.add(&e.add(&a, &b), &c),
            e.add(&a, &e.add(&b, &c))
        );
    }

    #[test]
    fn point_not_on_curve_is_an_error() {
        let e = curve(0, 1);
        assert!(matches!(
            torsion_order(&e, &pt(5, 5), 16),
            Err(CurveError::NotOnCurve(..))
        ));
    }
}
