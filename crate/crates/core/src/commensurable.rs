//! The torsion/periodicity decision for genus-1 quartics y^2 = R(x).
//!
//! A squarefree quartic R with square leading coefficient has two rational
//! places at infinity; the continued fraction of sqrt(R) is quasi-periodic
//! exactly when the class of their difference is torsion on the Jacobian.
//! The birational transformation below sends the curve to short
//! Weierstrass form with one place at the origin and the other at a marked
//! rational point T, so the decision reduces to the exact torsion oracle:
//! the order of T over Q is bounded by 12 (the classical bound on rational
//! torsion, an input from outside this crate), which makes the procedure
//! total with the cap at 16.

use crate::elliptic::{torsion_order, CurveError, CurvePoint, TorsionResult, WeierstrassCurve};
use crate::pell::{cf_expand, poly_sqrt_part, CfReport, CfVerdict, PellError};
use crate::poly::{rational_sqrt, BigInt, BigRat, IntPoly, RatPoly};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CommensurableError {
    #[error("radicand must be a quartic, got degree {0:?}")]
    NotQuartic(Option<usize>),
    #[error(transparent)]
    Pell(#[from] PellError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Torsion cap: rational torsion orders never exceed 12, so any point
/// surviving 16 additions is non-torsion over Q.
pub const TORSION_CAP: u64 = 16;

/// The curve data produced by the quartic-to-Weierstrass transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticModel {
    pub curve: WeierstrassCurve,
    /// image of the second place at infinity (the first maps to the origin)
    pub marked_point: CurvePoint,
    /// internal transformation coefficients, for the map description
    pub sqrt_part: RatPoly,
    pub remainder: RatPoly,
    pub shift: BigRat,
    pub description: String,
}

/// Transforms y^2 = R(x) (squarefree quartic, square leading coefficient)
/// to short Weierstrass form.
///
/// With A the polynomial square root part (R = A^2 + l, deg l <= 1,
/// A = a x^2 + b x + c, l = d x + e) the function w = y + A satisfies
/// w^2 = 2 A w + l; eliminating x through V = x w gives a cubic model in
/// (w, V) which the affine changes X1 = 8 a w, Y1 = 8 a (4 a V + 2 b w + d)
/// and the depressing shift X = X1 + c2/3 bring to y^2 = x^3 + p x + q.
/// The place at infinity where y ~ +A maps to the origin; the other maps
/// to the marked point (c2/3, -8 a d).
pub fn quartic_to_weierstrass(r: &IntPoly) -> Result<QuarticModel, CommensurableError> {
    let rr = r.to_rat();
    if rr.degree() != Some(4) {
        return Err(CommensurableError::NotQuartic(rr.degree()));
    }
    let a_poly = poly_sqrt_part(r)?;
    let ell = rr.sub(&a_poly.mul(&a_poly));
    let a = a_poly.coeff(2);
    let b = a_poly.coeff(1);
    let d = ell.coeff(1);
    let e = ell.coeff(0);
    let c = a_poly.coeff(0);
    let ri = |v: i64| BigRat::from_integer(BigInt::from(v));

    let c2 = ri(4) * &b * &b - ri(16) * &a * &c;
    let c1 = ri(4) * &b * &d - ri(8) * &a * &e;
    let c0 = &d * &d;
    // X1^3 + c2 X1^2 + 8a c1 X1 + 64 a^2 c0, then depress by X1 = X - c2/3
    let alpha = ri(8) * &a * &c1;
    let beta = ri(64) * &a * &a * &c0;
    let p = &alpha - &c2 * &c2 / ri(3);
    let q = beta - &alpha * &c2 / ri(3) + ri(2) * &c2 * &c2 * &c2 / ri(27);
    let curve = WeierstrassCurve::new(p, q)?;
    let shift = &c2 / ri(3);
    let marked = CurvePoint::affine(shift.clone(), ri(-8) * &a * &d);
    assert!(curve.contains(&marked), "marked point lies on the curve");
    let description = format!(
        "w = y + ({a_poly}); X = 8({a})w + ({shift}); Y = 8({a})(4({a})xw + 2({b})w + ({d}))",
    );
    let model = QuarticModel {
        curve,
        marked_point: marked,
        sqrt_part: a_poly,
        remainder: ell,
        shift,
        description,
    };
    verify_roundtrip(&model, &rr);
    Ok(model)
}

/// Symbolic round-trip check in the function field Q(x)[y]/(y^2 - R):
/// composing the forward map with the inverse returns (x, y) identically,
/// which subsumes the identity on any sample of x-values; the sample
/// points 0, 1, 2, 3, 5 are evaluated explicitly as well.
fn verify_roundtrip(model: &QuarticModel, rr: &RatPoly) {
    let a = model.sqrt_part.coeff(2);
    let b = model.sqrt_part.coeff(1);
    let d = model.remainder.coeff(1);
    let ri = |v: i64| BigRat::from_integer(BigInt::from(v));

    // elements u + v y over Q(x) with common polynomial denominator
    #[derive(Clone, Debug)]
    struct Fn2 {
        u: RatPoly,
        v: RatPoly,
        den: RatPoly,
    }
    let norm = |mut f: Fn2| -> Fn2 {
        // strip a common polynomial factor to keep degrees small
        let mut g = f.u.gcd(&f.v).unwrap_or_else(|_| f.den.clone());
        g = g.gcd(&f.den).unwrap();
        if g.degree().map_or(false, |dg| dg > 0) {
            f.u = f.u.divrem(&g).unwrap().0;
            f.v = f.v.divrem(&g).unwrap().0;
            f.den = f.den.divrem(&g).unwrap().0;
        }
        f
    };
    let from_poly = |p: RatPoly| Fn2 {
        u: p,
        v: RatPoly::zero(),
        den: RatPoly::one(),
    };
    let y_elem = Fn2 {
        u: RatPoly::zero(),
        v: RatPoly::one(),
        den: RatPoly::one(),
    };
    let add = |f: &Fn2, g: &Fn2| {
        norm(Fn2 {
            u: f.u.mul(&g.den).add(&g.u.mul(&f.den)),
            v: f.v.mul(&g.den).add(&g.v.mul(&f.den)),
            den: f.den.mul(&g.den),
        })
    };
    let mul = |f: &Fn2, g: &Fn2| {
        norm(Fn2 {
            u: f.u.mul(&g.u).add(&rr.mul(&f.v.mul(&g.v))),
            v: f.u.mul(&g.v).add(&f.v.mul(&g.u)),
            den: f.den.mul(&g.den),
        })
    };
    let scale = |f: &Fn2, c: &BigRat| Fn2 {
        u: f.u.scale(c),
        v: f.v.scale(c),
        den: f.den.clone(),
    };
    let inv = |f: &Fn2| {
        // 1/(u + vy) = (u - vy) / (u^2 - v^2 R), all over den
        let denom = f.u.mul(&f.u).sub(&rr.mul(&f.v.mul(&f.v)));
        norm(Fn2 {
            u: f.den.mul(&f.u),
            v: f.den.mul(&f.v).neg(),
            den: denom,
        })
    };
    let eq = |f: &Fn2, g: &Fn2| {
        f.u.mul(&g.den) == g.u.mul(&f.den) && f.v.mul(&g.den) == g.v.mul(&f.den)
    };

    let x = from_poly(RatPoly::x());
    // forward
    let w = add(&y_elem, &from_poly(model.sqrt_part.clone()));
    let v_big = mul(&x, &w);
    let vprime = add(
        &add(&scale(&v_big, &(ri(4) * &a)), &scale(&w, &(ri(2) * &b))),
        &from_poly(RatPoly::constant(d.clone())),
    );
    let x1 = scale(&w, &(ri(8) * &a));
    let big_x = add(&x1, &from_poly(RatPoly::constant(model.shift.clone())));
    let big_y = scale(&vprime, &(ri(8) * &a));

    // inverse
    let x1_back = add(
        &big_x,
        &from_poly(RatPoly::constant(-model.shift.clone())),
    );
    let w_back = scale(&x1_back, &(ri(8) * &a).recip());
    let vp_back = scale(&big_y, &(ri(8) * &a).recip());
    let v_back = scale(
        &add(
            &add(&vp_back, &scale(&w_back, &(-(ri(2) * &b)))),
            &from_poly(RatPoly::constant(-d.clone())),
        ),
        &(ri(4) * &a).recip(),
    );
    let x_back = mul(&v_back, &inv(&w_back));
    let y_back = add(&w_back, &from_poly(model.sqrt_part.clone()).neg_fn());

    trait NegFn {
        fn neg_fn(&self) -> Self;
    }
    impl NegFn for Fn2 {
        fn neg_fn(&self) -> Fn2 {
            Fn2 {
                u: self.u.neg(),
                v: self.v.neg(),
                den: self.den.clone(),
            }
        }
    }

    assert!(eq(&x_back, &x), "round trip returns x");
    assert!(eq(&y_back, &y_elem), "round trip returns y");

    // the spec'd sample points, evaluated through the symbolic identity
    for sample in [0i64, 1, 2, 3, 5] {
        let s = BigRat::from_integer(BigInt::from(sample));
        let den_at = x_back.den.evaluate(&s);
        if den_at.is_zero() {
            continue;
        }
        // x_back = (u + v y)/den must equal the constant x = sample:
        // u(sample)/den(sample) = sample and v(sample)/den(sample) = 0
        assert_eq!(x_back.u.evaluate(&s) / &den_at, s);
        assert!(x_back.v.evaluate(&s).is_zero());
    }
}

/// Verdict for the commensurability of the quartic's infinity divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commensurability {
    Commensurable {
        torsion_order: u64,
        cf: CfReport,
    },
    NonCommensurable {
        /// the first multiples of the marked point, as evidence of escape
        oracle_trace: Vec<CurvePoint>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommensurabilityReport {
    pub model: QuarticModel,
    pub verdict: Commensurability,
}

/// Decides whether the argument of the marked point is commensurable with
/// the periods: torsion of the infinity class. Torsion verdicts re-run the
/// continued fraction and must find a quasi-period; non-torsion verdicts
/// rest on the documented rational-torsion bound.
pub fn is_commensurable(r: &IntPoly) -> Result<CommensurabilityReport, CommensurableError> {
    let model = quartic_to_weierstrass(r)?;
    match torsion_order(&model.curve, &model.marked_point, TORSION_CAP)? {
        TorsionResult::Order(m) => {
            let cap = 64usize.max(6 * m as usize);
            let cf = cf_expand(r, cap)?;
            assert!(
                matches!(cf.verdict, CfVerdict::Periodic { .. }),
                "torsion order {m} forces a quasi-period within {cap} steps"
            );
            Ok(CommensurabilityReport {
                model,
                verdict: Commensurability::Commensurable {
                    torsion_order: m,
                    cf,
                },
            })
        }
        TorsionResult::NonTorsionWithinCap { cap } => {
            let mut trace = Vec::new();
            let mut acc = model.marked_point.clone();
            for _ in 0..6 {
                trace.push(acc.clone());
                acc = model.curve.add(&acc, &model.marked_point);
            }
            let _ = cap;
            Ok(CommensurabilityReport {
                model,
                verdict: Commensurability::NonCommensurable {
                    oracle_trace: trace,
                },
            })
        }
    }
}

/// Inverse construction for tests and instance generation: a monic
/// integer quartic R whose infinity divisor class matches the given
/// marked point (projection from the line pencil through -T).
pub fn quartic_from_curve_point(
    curve: &WeierstrassCurve,
    point: &CurvePoint,
) -> Option<IntPoly> {
    let (tx, ty) = match point {
        CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
        CurvePoint::Infinity => return None,
    };
    if !curve.contains(point) {
        return None;
    }
    // substitute Y = xi (X - tx) - ty into the curve and remove the known
    // root X = tx; coefficients are polynomials in xi
    // cubic in X: X^3 - xi^2 X^2 + (2 tx xi^2 + 2 ty xi + a) X
    //             - (tx^2 xi^2 + 2 tx ty xi + ty^2 - b)
    let ri = |v: i64| BigRat::from_integer(BigInt::from(v));
    let c2 = RatPoly::new(vec![BigRat::zero(), BigRat::zero(), ri(-1)]);
    let c1 = RatPoly::new(vec![curve.a.clone(), ri(2) * &ty, ri(2) * &tx]);
    let c0 = RatPoly::new(vec![
        -(&ty * &ty) + &curve.b,
        ri(-2) * &tx * &ty,
        -(&tx * &tx),
    ]);
    // synthetic division of X^3 + c2 X^2 + c1 X + c0 by (X - tx):
    // quotient X^2 + beta X + gamma
    let beta = c2.add(&RatPoly::constant(tx.clone()));
    let gamma = c1.add(&beta.scale(&tx));
    // remainder must vanish: c0 + gamma * tx = 0
    debug_assert!(c0.add(&gamma.scale(&tx)).is_zero());
    // y^2 = beta^2 - 4 gamma, the quartic model
    let r = beta.mul(&beta).sub(&gamma.scale(&ri(4)));
    if r.degree() != Some(4) || !r.is_squarefree() {
        return None;
    }
    debug_assert!(rational_sqrt(&r.lc()).is_some());
    // clear denominators: R(x) -> lambda^4 R(x/lambda)
    let lambda = BigRat::from_integer(r.denominator_lcm());
    let scaled = r.scale_roots(&lambda);
    scaled.to_int()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn x4_plus_1_model_and_verdict() {
        let r = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let model = quartic_to_weierstrass(&r).unwrap();
        // A = x^2, l = 1: curve Y^2 = X^3 - 64 X, marked point (0, 0)
        assert_eq!(model.curve, WeierstrassCurve::new(rat(-64, 1), rat(0, 1)).unwrap());
        assert_eq!(model.marked_point, CurvePoint::affine(rat(0, 1), rat(0, 1)));
        let report = is_commensurable(&r).unwrap();
        match report.verdict {
            Commensurability::Commensurable { torsion_order, ref cf } => {
                assert_eq!(torsion_order, 2);
                match cf.verdict {
                    CfVerdict::Periodic { quasi_period, .. } => assert_eq!(quasi_period, 1),
                    _ => panic!("expected periodic"),
                }
            }
            ref v => panic!("expected commensurable, got {v:?}"),
        }
    }

    #[test]
    fn torsion_instance_from_order_six_curve() {
        // y^2 = x^3 + 1 with P = (2,3) of order 6
        let e = WeierstrassCurve::new(rat(0, 1), rat(1, 1)).unwrap();
        let p = CurvePoint::affine(rat(2, 1), rat(3, 1));
        let r = quartic_from_curve_point(&e, &p).expect("valid quartic");
        let report = is_commensurable(&r).unwrap();
        match report.verdict {
            Commensurability::Commensurable { torsion_order, .. } => {
                assert_eq!(torsion_order, 6);
            }
            ref v => panic!("expected commensurable, got {v:?}"),
        }
    }

    #[test]
    fn non_torsion_instance() {
        // y^2 = x^3 - 2 with P = (3, 5) non-torsion
        let e = WeierstrassCurve::new(rat(0, 1), rat(-2, 1)).unwrap();
        let p = CurvePoint::affine(rat(3, 1), rat(5, 1));
        let r = quartic_from_curve_point(&e, &p).expect("valid quartic");
        let report = is_commensurable(&r).unwrap();
        match report.verdict {
            Commensurability::NonCommensurable { ref oracle_trace } => {
                assert_eq!(oracle_trace.len(), 6);
            }
            ref v => panic!("expected non-commensurable, got {v:?}"),
        }
        // and the continued fraction indeed fails to close within a small cap
        let cf = cf_expand(&r, 12).unwrap();
        assert!(matches!(cf.verdict, CfVerdict::NoPeriodWithinCap { .. }));
    }

    #[test]
    fn order_two_and_three_instances() {
        let cases: Vec<(WeierstrassCurve, CurvePoint, u64)> = vec![
            (
                WeierstrassCurve::new(rat(-1, 1), rat(0, 1)).unwrap(),
                CurvePoint::affine(rat(0, 1), rat(0, 1)),
                2,
            ),
            (
                WeierstrassCurve::new(rat(0, 1), rat(4, 1)).unwrap(),
                CurvePoint::affine(rat(0, 1), rat(2, 1)),
                3,
            ),
            (
                WeierstrassCurve::new(rat(4, 1), rat(0, 1)).unwrap(),
                CurvePoint::affine(rat(2, 1), rat(4, 1)),
                4,
            ),
        ];
        for (e, p, order) in cases {
            let r = quartic_from_curve_point(&e, &p).expect("valid quartic");
            let report = is_commensurable(&r).unwrap();
            match report.verdict {
                Commensurability::Commensurable { torsion_order, .. } => {
                    assert_eq!(torsion_order, order);
                }
                ref v => panic!("expected commensurable, got {v:?}"),
            }
        }
    }
}
