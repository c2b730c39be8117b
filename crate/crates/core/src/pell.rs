//! Continued fraction expansion of sqrt(R(x)) over Q(x), quasi-periodicity
//! detection, and functional-unit extraction.
//!
//! The expansion iterates on states (P_k, Q_k) with
//!
//! ```text
//! a_k = polynomial part of (sqrt(R) + P_k) / Q_k,
//! P_{k+1} = a_k Q_k - P_k,    Q_{k+1} = (R - P_{k+1}^2) / Q_k,
//! ```
//!
//! and is quasi-periodic exactly when some Q_k becomes a nonzero constant;
//! the convergent just before that point is a functional unit: a pair
//! (p, q) with p^2 - R q^2 a nonzero constant. Over the rationals the
//! recurrence can also run forever with growing coefficients, so the
//! expansion takes a step cap and reports the growth trace when it stops
//! undecided.

use crate::poly::{rational_sqrt, BigRat, IntPoly, RatPoly};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PellError {
    #[error("radicand must have even degree >= 2, got {0:?}")]
    OddOrSmallDegree(Option<usize>),
    #[error("leading coefficient is not a rational square (the place at infinity is not rational)")]
    NonSquareLeadingCoefficient,
    #[error("radicand must be squarefree")]
    NotSquarefree,
    #[error("report is not periodic; no unit to extract")]
    NotPeriodic,
    #[error(transparent)]
    Arith(#[from] crate::poly::ArithError),
}

/// One continued-fraction state: xi_k = (sqrt(R) + P_k) / Q_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdState {
    pub step: usize,
    pub p: RatPoly,
    pub q: RatPoly,
}

/// A solution of p^2 - R q^2 = constant != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalUnit {
    pub p: RatPoly,
    pub q: RatPoly,
    pub norm: BigRat,
}

impl FunctionalUnit {
    /// Brahmagupta-style composition: (p^2 + R q^2, 2pq) with norm squared.
    pub fn compose_with_self(&self, r: &IntPoly) -> FunctionalUnit {
        let rr = r.to_rat();
        let p2 = self.p.mul(&self.p).add(&rr.mul(&self.q.mul(&self.q)));
        let q2 = self
            .p
            .mul(&self.q)
            .scale(&BigRat::from_integer(2.into()));
        FunctionalUnit {
            p: p2,
            q: q2,
            norm: &self.norm * &self.norm,
        }
    }

    pub fn verify(&self, r: &IntPoly) -> bool {
        let rr = r.to_rat();
        let lhs = self.p.mul(&self.p).sub(&rr.mul(&self.q.mul(&self.q)));
        !self.norm.is_zero() && lhs == RatPoly::constant(self.norm.clone())
    }
}

/// Height/degree growth sample for undecided expansions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSample {
    pub step: usize,
    pub q_degree: usize,
    /// maximum numerator/denominator bit length over the state coefficients
    pub height_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfVerdict {
    Periodic {
        preperiod: usize,
        quasi_period: usize,
        unit: FunctionalUnit,
    },
    NoPeriodWithinCap {
        cap: usize,
        growth: Vec<GrowthSample>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfReport {
    pub radicand: IntPoly,
    pub sqrt_part: RatPoly,
    pub partial_quotients: Vec<RatPoly>,
    pub states: Vec<SurdState>,
    pub verdict: CfVerdict,
}

/// The polynomial part A of sqrt(R): the unique polynomial with
/// deg(R - A^2) < deg A, by undetermined coefficients from the top down.
/// The leading coefficient of A is the positive square root of lc(R).
pub fn poly_sqrt_part(r: &IntPoly) -> Result<RatPoly, PellError> {
    let rr = r.to_rat();
    let deg = match rr.degree() {
        Some(d) if d >= 2 && d % 2 == 0 => d,
        d => return Err(PellError::OddOrSmallDegree(d)),
    };
    let lead = rational_sqrt(&rr.lc()).ok_or(PellError::NonSquareLeadingCoefficient)?;
    if !rr.is_squarefree() {
        return Err(PellError::NotSquarefree);
    }
    let m = deg / 2;
    let mut a = vec![BigRat::zero(); m + 1];
    a[m] = lead;
    for i in (0..m).rev() {
        // coefficient of x^(m+i) in A^2 must match R
        let mut acc = BigRat::zero();
        for j in i + 1..m {
            if m + i >= j && m + i - j <= m {
                acc += &a[j] * &a[m + i - j];
            }
        }
        let target = rr.coeff(m + i);
        a[i] = (target - acc) / (BigRat::from_integer(2.into()) * &a[m]);
    }
    let a = RatPoly::new(a);
    debug_assert!(a
        .mul(&a)
        .sub(&rr)
        .degree()
        .map_or(true, |d| d < m));
    Ok(a)
}

fn state_height_bits(p: &RatPoly, q: &RatPoly) -> u64 {
    let mut h = 0u64;
    for c in p.coeffs().iter().chain(q.coeffs()) {
        h = h.max(c.numer().bits()).max(c.denom().bits());
    }
    h
}

/// Expands the continued fraction of sqrt(R) for at most `max_steps`
/// partial quotients past a_0 and decides quasi-periodicity.
pub fn cf_expand(r: &IntPoly, max_steps: usize) -> Result<CfReport, PellError> {
    let a0 = poly_sqrt_part(r)?;
    let rr = r.to_rat();

    let mut p_state = RatPoly::zero();
    let mut q_state = RatPoly::one();
    let mut states = vec![SurdState {
        step: 0,
        p: p_state.clone(),
        q: q_state.clone(),
    }];
    let mut quotients: Vec<RatPoly> = Vec::new();
    // convergents: p_k = a_k p_{k-1} + p_{k-2}, seeded at k = -1, -2
    let mut p_prev = RatPoly::zero();
    let mut q_prev = RatPoly::one();
    let mut p_cur = RatPoly::one();
    let mut q_cur = RatPoly::zero();
    let mut growth: Vec<GrowthSample> = Vec::new();
    let mut unit_at: Option<(usize, FunctionalUnit)> = None;
    // association table on (P_k, monic Q_k) for quasi-period detection
    let mut seen: Vec<(usize, RatPoly, RatPoly)> = Vec::new();

    for k in 0..=max_steps {
        // a_k = floor((A + P_k) / Q_k); the fractional parts of both
        // (sqrt(R) - A) and the division have negative degree
        let (a_k, _) = a0.add(&p_state).divrem(&q_state)?;
        quotients.push(a_k.clone());
        if k >= 1 {
            debug_assert!(a_k.degree().map_or(false, |d| d >= 1), "deg a_k >= 1 for k >= 1");
        }
        // convergent update
        let p_next = a_k.mul(&p_cur).add(&p_prev);
        let q_next = a_k.mul(&q_cur).add(&q_prev);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        // unimodular relation p_k q_{k-1} - p_{k-1} q_k = +-1
        let det = p_cur.mul(&q_prev).sub(&p_prev.mul(&q_cur));
        assert!(
            det == RatPoly::one() || det == RatPoly::constant(-BigRat::one()),
            "convergent determinant is a unit"
        );

        // state update
        let p_new = a_k.mul(&q_state).sub(&p_state);
        let num = rr.sub(&p_new.mul(&p_new));
        let (q_new, rem) = num.divrem(&q_state)?;
        assert!(rem.is_zero(), "Q_k divides R - P_{{k+1}}^2");
        assert!(!q_new.is_zero());

        // norm relation: p_k^2 - R q_k^2 = (nonzero constant) * Q_{k+1}
        let norm_poly = p_cur.mul(&p_cur).sub(&rr.mul(&q_cur.mul(&q_cur)));
        let (ratio, rrem) = norm_poly.divrem(&q_new)?;
        assert!(rrem.is_zero() && ratio.is_constant() && !ratio.is_zero());

        p_state = p_new;
        q_state = q_new;
        states.push(SurdState {
            step: k + 1,
            p: p_state.clone(),
            q: q_state.clone(),
        });
        growth.push(GrowthSample {
            step: k + 1,
            q_degree: q_state.degree().unwrap_or(0),
            height_bits: state_height_bits(&p_state, &q_state),
        });

        if q_state.is_constant() && unit_at.is_none() {
            // at a constant Q the convergent norm p^2 - R q^2 is constant:
            // a functional unit
            let unit = FunctionalUnit {
                p: p_cur.clone(),
                q: q_cur.clone(),
                norm: norm_poly.coeff(0),
            };
            assert!(unit.verify(r));
            unit_at = Some((k + 1, unit));
        }
        // quasi-period detection: (P, monic Q) recurs
        let q_monic = q_state.monic()?;
        if let Some((j, _, _)) = seen
            .iter()
            .find(|(_, sp, sq)| *sp == p_state && *sq == q_monic)
        {
            let (_, unit) = unit_at.expect("a constant Q precedes any state recurrence");
            return Ok(CfReport {
                radicand: r.clone(),
                sqrt_part: a0,
                partial_quotients: quotients,
                states,
                verdict: CfVerdict::Periodic {
                    preperiod: *j,
                    quasi_period: k + 1 - *j,
                    unit,
                },
            });
        }
        seen.push((k + 1, p_state.clone(), q_monic));
    }
    if let Some((c, unit)) = unit_at {
        // constant Q reached but the cap cut the table recurrence short
        return Ok(CfReport {
            radicand: r.clone(),
            sqrt_part: a0,
            partial_quotients: quotients,
            states,
            verdict: CfVerdict::Periodic {
                preperiod: 1,
                quasi_period: c,
                unit,
            },
        });
    }
    Ok(CfReport {
        radicand: r.clone(),
        sqrt_part: a0,
        partial_quotients: quotients,
        states,
        verdict: CfVerdict::NoPeriodWithinCap {
            cap: max_steps,
            growth,
        },
    })
}

/// The functional unit of a periodic expansion: the convergent at the
/// quasi-period boundary, re-verified exactly.
pub fn unit_from_period(report: &CfReport) -> Result<FunctionalUnit, PellError> {
    match &report.verdict {
        CfVerdict::Periodic { unit, .. } => {
            if !unit.verify(&report.radicand) {
                return Err(PellError::NotPeriodic);
            }
            Ok(unit.clone())
        }
        CfVerdict::NoPeriodWithinCap { .. } => Err(PellError::NotPeriodic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn sqrt_part_examples() {
        assert_eq!(
            poly_sqrt_part(&IntPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap(),
            RatPoly::from_ints(&[0, 0, 1])
        );
        assert_eq!(
            poly_sqrt_part(&IntPoly::from_i64(&[2, 2, 3, 2, 1])).unwrap(),
            RatPoly::from_ints(&[1, 1, 1])
        );
        assert!(matches!(
            poly_sqrt_part(&IntPoly::from_i64(&[1, 0, 0, 1])),
            Err(PellError::OddOrSmallDegree(Some(3)))
        ));
        assert!(matches!(
            poly_sqrt_part(&IntPoly::from_i64(&[1, 0, 0, 0, 2])),
            Err(PellError::NonSquareLeadingCoefficient)
        ));
        // (x^2+1)^2 is not squarefree
        assert!(matches!(
            poly_sqrt_part(&IntPoly::from_i64(&[1, 0, 2, 0, 1])),
            Err(PellError::NotSquarefree)
        ));
    }

    #[test]
    fn pell_x4_plus_1() {
        let r = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let report = cf_expand(&r, 24).unwrap();
        match &report.verdict {
            CfVerdict::Periodic {
                quasi_period, unit, ..
            } => {
                assert_eq!(*quasi_period, 1);
                assert_eq!(unit.p, RatPoly::from_ints(&[0, 0, 1]));
                assert_eq!(unit.q, RatPoly::one());
                assert_eq!(unit.norm, rat(-1, 1));
            }
            v => panic!("expected periodic, got {v:?}"),
        }
        // a_0 = x^2, then a_k = 2x^2 repeating
        assert_eq!(report.partial_quotients[0], RatPoly::from_ints(&[0, 0, 1]));
        assert_eq!(report.partial_quotients[1], RatPoly::from_ints(&[0, 0, 2]));
        let unit = unit_from_period(&report).unwrap();
        let squared = unit.compose_with_self(&r);
        assert!(squared.verify(&r));
        assert_eq!(squared.norm, rat(1, 1));
    }

    #[test]
    fn classical_pell_degree_two() {
        // sqrt(x^2 + 2): A = x, unit (x, 1) with norm -2... p^2 - R q^2 =
        // x^2 - x^2 - 2 = -2
        let r = IntPoly::from_i64(&[2, 0, 1]);
        let report = cf_expand(&r, 8).unwrap();
        match &report.verdict {
            CfVerdict::Periodic { unit, .. } => {
                assert!(unit.verify(&r));
            }
            v => panic!("expected periodic, got {v:?}"),
        }
    }

    #[test]
    fn growing_expansion_hits_cap() {
        // a quartic whose infinity divisor class is non-torsion; the
        // heights of the states grow without recurrence
        let r = IntPoly::from_i64(&[2, 2, 3, 2, 1]);
        // R = (x^2+x+1)^2 + 1: A = x^2+x+1, remainder 1 -> Q_1 = 1 would
        // mean instant periodicity; so perturb instead
        let r2 = IntPoly::from_i64(&[5, 1, 3, 2, 1]);
        for candidate in [r, r2] {
            let report = cf_expand(&candidate, 10).unwrap();
            match report.verdict {
                CfVerdict::Periodic { .. } => {}
                CfVerdict::NoPeriodWithinCap { ref growth, .. } => {
                    assert_eq!(growth.len(), 11);
                    // heights eventually grow strictly
                    let tail: Vec<u64> = growth.iter().skip(3).map(|g| g.height_bits).collect();
                    for w in tail.windows(2) {
                        assert!(w[1] > w[0], "height growth in {growth:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn unit_from_nonperiodic_is_an_error() {
        let r = IntPoly::from_i64(&[5, 1, 3, 2, 1]);
        let report = cf_expand(&r, 6).unwrap();
        if matches!(report.verdict, CfVerdict::NoPeriodWithinCap { .. }) {
            assert_eq!(unit_from_period(&report), Err(PellError::NotPeriodic));
        }
    }
}
