//! Identity of cubic and quartic number fields with explicit Tschirnhaus
//! map recovery.
//!
//! Two monic irreducible polynomials of equal degree n generate the same
//! field exactly when one of the degree-n! mixed equations (for the
//! elements sum_i x_i^k y_i, k = 1..n-1) has a rational root that
//! *certifies*: the moments it induces determine a candidate map
//! y = alpha_0 + alpha_1 x + ... through the power-sum linear system, and
//! the candidate is accepted only when g(map(x)) = 0 mod f holds exactly.
//! Identical verdicts therefore carry a self-validating witness;
//! NotIdentical verdicts follow either from a non-square product of
//! discriminants or from the exhaustion of all certifying candidates.

use crate::poly::{rational_sqrt, BigInt, BigRat, RatPoly};
use crate::roots::rational_roots;
use crate::splitting::{mixed_charpoly_int, SplitAlgebra, SplitElem, SplittingError};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("polynomials must be monic")]
    NotMonic,
    #[error("degree must be 3 or 4, got {0:?}")]
    DegreeOutOfRange(Option<usize>),
    #[error("polynomials must have equal degree")]
    DegreeMismatch,
    #[error("reducible input: {0}")]
    Reducible(String),
    #[error("mixed-equation index k must lie in 1..=n-1, got {0}")]
    BadMixedIndex(usize),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Arith(#[from] crate::poly::ArithError),
}

/// The map y = alpha_0 + alpha_1 x + ... + alpha_{n-1} x^{n-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TschirnhausMap {
    pub coeffs: Vec<BigRat>,
}

impl TschirnhausMap {
    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    /// Exact certification: g(map(x)) = 0 (mod f).
    pub fn certifies(&self, f: &RatPoly, g: &RatPoly) -> bool {
        let m = self.as_poly();
        let mut acc = RatPoly::zero();
        for c in g.coeffs().iter().rev() {
            acc = acc.mul(&m).add(&RatPoly::constant(c.clone()));
            acc = match acc.rem(f) {
                Ok(r) => r,
                Err(_) => return false,
            };
        }
        acc.is_zero()
    }
}

/// Auxiliary resolvent quantities attached to an Identical verdict, all
/// validated against the splitting-algebra oracle before being returned.
#[derive(Debug, Clone, PartialEq)]
pub enum MixedResolventSet {
    Cubic {
        /// z = sum x_i y_i and u = sum x_i^2 y_i for the certified pairing,
        /// in the depressed frame
        z: BigRat,
        u: BigRat,
    },
    Quartic {
        resolvent_cubic: RatPoly,
        resolvent_cubic_bar: RatPoly,
        zeta: BigRat,
        u: BigRat,
        ubar: BigRat,
        /// the quartic F(T) built from the chain quantities
        pairing_quartic: RatPoly,
        t: BigRat,
        theta: BigRat,
        z_cap: BigRat,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdenticalWitness {
    /// certified map in the coordinates of the original inputs
    pub map: TschirnhausMap,
    /// mixed-equation index that produced the certifying candidate
    pub k_used: usize,
    /// moments sum x_i^m y_i, m = 1..n-1, in the depressed integer frame
    pub depressed_moments: Vec<BigRat>,
    pub resolvents: MixedResolventSet,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NotIdenticalEvidence {
    /// disc(f) * disc(g) is not a rational square, so the fields differ
    NonSquareDiscriminantProduct { product: BigRat },
    /// every rational root of every mixed equation failed certification
    NoCertifyingRationalRoot { candidates_tried: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldVerdict {
    Identical(IdenticalWitness),
    NotIdentical(NotIdenticalEvidence),
}

/// The degree-n! monic polynomial whose roots are all the values
/// sum_i x_i^k y_{sigma(i)} over permutations sigma.
pub fn mixed_equation(f: &RatPoly, g: &RatPoly, k: usize) -> Result<RatPoly, IdentityError> {
    let n = check_pair(f, g)?;
    if !(1..n).contains(&k) {
        return Err(IdentityError::BadMixedIndex(k));
    }
    // scale both to integer monic; values scale by lf^k * lg
    let lf = BigRat::from_integer(f.denominator_lcm());
    let lg = BigRat::from_integer(g.denominator_lcm());
    let fi = f.scale_roots(&lf).to_int().expect("denominators cleared");
    let gi = g.scale_roots(&lg).to_int().expect("denominators cleared");
    let m = mixed_charpoly_int(&fi, &gi, k)?;
    // undo the scaling: M(z) = Mtilde(lambda z) / lambda^(n!)
    let lambda = pow_rat(&lf, k) * lg;
    let big_n = m.degree().unwrap();
    let coeffs: Vec<BigRat> = m
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = c.clone();
            if i >= big_n {
                return v;
            }
            // multiply by lambda^(i - N) = divide by lambda^(N - i)
            for _ in 0..(big_n - i) {
                v /= &lambda;
            }
            v
        })
        .collect();
    Ok(RatPoly::new(coeffs))
}

fn pow_rat(b: &BigRat, e: usize) -> BigRat {
    let mut acc = BigRat::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// The pair of coset cubics for the mixed equations of two depressed
/// cubics x^3 + px + q and y^3 + pbar y + qbar.
#[derive(Debug, Clone, PartialEq)]
pub enum CubicResolvent {
    /// the product of the discriminants is not a square, so the fields
    /// cannot be identical and the coset split is not rational
    NotApplicable { disc_product: BigRat },
    Pair {
        /// z^3 - 3 p pbar z - (27 q qbar - s)/2
        even: RatPoly,
        /// z^3 - 3 p pbar z - (27 q qbar + s)/2
        odd: RatPoly,
        /// the square root s of disc(f) disc(g) used for the split; for
        /// f = g it is taken as -disc(f) (the diagonal pairing lands in
        /// the even cubic), otherwise as the positive root, and the
        /// even/odd labels are canonical only up to this sign choice
        sqrt_disc_product: BigRat,
    },
}

/// Splits the degree-6 mixed equation of two depressed cubics into the
/// two coset cubics. The displayed constant term reads
/// -(27 q qbar -+ s)/2 with s^2 = D Dbar; the whole pair multiplies back
/// to the mixed equation exactly (checked in the test suite).
pub fn cubic_mixed_resolvent(p: &BigRat, q: &BigRat, pbar: &BigRat, qbar: &BigRat) -> CubicResolvent {
    let d = disc_depressed_cubic(p, q);
    let dbar = disc_depressed_cubic(pbar, qbar);
    let product = &d * &dbar;
    let s = match rational_sqrt(&product) {
        None => return CubicResolvent::NotApplicable { disc_product: product },
        Some(s) => s,
    };
    let s = if p == pbar && q == qbar { -d } else { s };
    let three_ppbar = BigRat::from_integer(BigInt::from(3)) * p * pbar;
    let qq27 = BigRat::from_integer(BigInt::from(27)) * q * qbar;
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let even = RatPoly::new(vec![
        -(&qq27 - &s) * &half,
        -three_ppbar.clone(),
        BigRat::zero(),
        BigRat::one(),
    ]);
    let odd = RatPoly::new(vec![
        -(&qq27 + &s) * &half,
        -three_ppbar,
        BigRat::zero(),
        BigRat::one(),
    ]);
    CubicResolvent::Pair {
        even,
        odd,
        sqrt_disc_product: s,
    }
}

fn disc_depressed_cubic(p: &BigRat, q: &BigRat) -> BigRat {
    let four = BigRat::from_integer(BigInt::from(4));
    let tw7 = BigRat::from_integer(BigInt::from(27));
    -four * p * p * p - tw7 * q * q
}

/// Resolvent cubic z^3 - p2 z^2 - 4 p4 z + (4 p2 p4 - p3^2) of the
/// depressed quartic x^4 + p2 x^2 + p3 x + p4, satisfied by x1x2 + x3x4.
pub fn quartic_resolvent_cubic(p2: &BigRat, p3: &BigRat, p4: &BigRat) -> RatPoly {
    let four = BigRat::from_integer(BigInt::from(4));
    RatPoly::new(vec![
        &four * p2 * p4 - p3 * p3,
        -(&four * p4),
        -p2.clone(),
        BigRat::one(),
    ])
}

/// The quartic F(T) whose roots are the four pairing values
/// sum x_i xbar_{sigma(i)} compatible with fixed resolvent-level
/// quantities zeta, u, ubar.
///
/// The constant term's zeta-coefficient is 14/3 (the displayed 14/8 fails
/// the oracle identity; see the test suite, which pins this form against
/// the splitting algebra).
#[allow(clippy::too_many_arguments)]
pub fn quartic_pairing_polynomial(
    p2: &BigRat,
    p3: &BigRat,
    p4: &BigRat,
    pb2: &BigRat,
    pb3: &BigRat,
    pb4: &BigRat,
    zeta: &BigRat,
    u: &BigRat,
    ubar: &BigRat,
) -> RatPoly {
    let r = |n: i64, d: i64| BigRat::new(BigInt::from(n), BigInt::from(d));
    let t2 = -(r(2, 1) * p2 * pb2 + r(2, 1) * zeta);
    let t1 = -r(8, 1) * p3 * pb3;
    let t0 = -r(1, 3) * zeta * zeta - r(8, 3) * p2 * ubar - r(8, 3) * pb2 * u
        + r(14, 3) * p2 * pb2 * zeta
        + p2 * p2 * pb2 * pb2
        + r(16, 1) * p2 * p2 * pb4
        + r(16, 1) * pb2 * pb2 * p4
        + r(64, 3) * p4 * pb4;
    RatPoly::new(vec![t0, t1, t2, BigRat::zero(), BigRat::one()])
}

/// Decides whether f and g generate the identical field; Identical
/// verdicts carry a certified Tschirnhaus map.
pub fn same_field(f: &RatPoly, g: &RatPoly) -> Result<FieldVerdict, IdentityError> {
    let n = check_pair(f, g)?;
    ensure_irreducible(f)?;
    ensure_irreducible(g)?;

    // necessary condition: disc(f) disc(g) must be a rational square
    let product = f.discriminant()? * g.discriminant()?;
    if rational_sqrt(&product).is_none() {
        return Ok(FieldVerdict::NotIdentical(
            NotIdenticalEvidence::NonSquareDiscriminantProduct { product },
        ));
    }

    let sf = depress_and_integerize(f);
    let sg = depress_and_integerize(g);
    let mut tried = 0usize;

    // primary pass on the depressed pair, then shifted retries; the shift
    // replaces f by f(x - c), changing every candidate while preserving
    // the field
    for shift_c in 0..=2i64 {
        let shifted = if shift_c == 0 {
            sf.poly.clone()
        } else {
            sf.poly
                .shift(&BigRat::from_integer(BigInt::from(-shift_c)))
        };
        if let Some((k_used, moments, map_scaled)) =
            certify_candidates(&shifted, &sg.poly, n, &mut tried)?
        {
            // map back: y = (map_scaled(lf * (x + cf) + shift) ) / lg - cg
            let inner = RatPoly::new(vec![
                &sf.lambda * &sf.shift + BigRat::from_integer(BigInt::from(shift_c)),
                sf.lambda.clone(),
            ]);
            let composed = map_scaled.as_poly().compose(&inner);
            let y = composed
                .scale(&sg.lambda.recip())
                .sub(&RatPoly::constant(sg.shift.clone()));
            let reduced = y.rem(f)?;
            let mut coeffs = reduced.coeffs().to_vec();
            coeffs.resize(n, BigRat::zero());
            let map = TschirnhausMap { coeffs };
            assert!(map.certifies(f, g), "back-transformed map certifies");
            let resolvents = build_resolvent_set(&sf.poly, &sg.poly, n)?;
            return Ok(FieldVerdict::Identical(IdenticalWitness {
                map,
                k_used,
                depressed_moments: moments,
                resolvents,
            }));
        }
    }
    Ok(FieldVerdict::NotIdentical(
        NotIdenticalEvidence::NoCertifyingRationalRoot {
            candidates_tried: tried,
        },
    ))
}

/// Enumerates candidate moment vectors from the rational roots of the
/// mixed equations and returns the first certifying map, if any.
fn certify_candidates(
    f: &RatPoly,
    g: &RatPoly,
    n: usize,
    tried: &mut usize,
) -> Result<Option<(usize, Vec<BigRat>, TschirnhausMap)>, IdentityError> {
    let fi = f.to_int().expect("integer frame");
    let gi = g.to_int().expect("integer frame");
    let mut root_sets: Vec<Vec<BigRat>> = Vec::new();
    for k in 1..n {
        let m = mixed_charpoly_int(&fi, &gi, k)?;
        root_sets.push(rational_roots(&m)?);
    }
    // every moment of the diagonal pairing is rational, so an identical
    // pair cannot produce an empty root set
    if root_sets.iter().any(|r| r.is_empty()) {
        return Ok(None);
    }

    let s = power_sums(f, 2 * n - 1);
    let t0 = -g.coeff(n - 1); // trace of the target root

    let mut candidates: Vec<Vec<BigRat>> = Vec::new();
    if n == 3 {
        // the closed-form route: u = 3(q pbar z - p^2 qbar)/(z^2 - p pbar),
        // valid in the depressed frame with nonzero denominator
        let p = f.coeff(1);
        let q = f.coeff(0);
        let pbar = g.coeff(1);
        let qbar = g.coeff(0);
        let depressed = f.coeff(2).is_zero() && g.coeff(2).is_zero();
        if depressed {
            for z in &root_sets[0] {
                let den = z * z - &p * &pbar;
                if den.is_zero() {
                    continue;
                }
                let u = BigRat::from_integer(BigInt::from(3)) * (&q * &pbar * z - &p * &p * &qbar)
                    / den;
                candidates.push(vec![z.clone(), u]);
            }
        }
        for z in &root_sets[0] {
            for u in &root_sets[1] {
                candidates.push(vec![z.clone(), u.clone()]);
            }
        }
    } else {
        for t in &root_sets[0] {
            for theta in &root_sets[1] {
                for z in &root_sets[2] {
                    candidates.push(vec![t.clone(), theta.clone(), z.clone()]);
                }
            }
        }
    }
    candidates.dedup();

    for moments in candidates {
        *tried += 1;
        let mut rhs = vec![t0.clone()];
        rhs.extend(moments.iter().cloned());
        let alpha = match solve_moment_system(&s, &rhs, n) {
            Some(a) => a,
            None => continue,
        };
        let map = TschirnhausMap { coeffs: alpha };
        if map.certifies(f, g) {
            return Ok(Some((1, moments, map)));
        }
    }
    Ok(None)
}

/// Power sums s_0..s_count of the roots of monic f, by Newton's identities.
pub fn power_sums(f: &RatPoly, count: usize) -> Vec<BigRat> {
    let n = f.degree().expect("nonzero");
    let a = |i: usize| -> BigRat {
        if i == 0 {
            BigRat::one()
        } else if i <= n {
            f.coeff(n - i)
        } else {
            BigRat::zero()
        }
    };
    let mut s = vec![BigRat::from_integer(BigInt::from(n as i64))];
    for m in 1..=count {
        let mut acc = -BigRat::from_integer(BigInt::from(m as i64)) * a(m);
        for i in 1..m {
            acc -= a(i) * &s[m - i];
        }
        s.push(acc);
    }
    s
}

/// Solves the n x n power-sum system S alpha = rhs, S[i][j] = s_{i+j}.
fn solve_moment_system(s: &[BigRat], rhs: &[BigRat], n: usize) -> Option<Vec<BigRat>> {
    let mut m: Vec<Vec<BigRat>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRat> = (0..n).map(|j| s[i + j].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    // Gaussian elimination with exact pivoting
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..=n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| {
                let v = &m[i][n] / &m[i][i];
                v
            })
            .collect(),
    )
}

/// Builds and oracle-validates the auxiliary resolvent quantities for an
/// identical pair in the depressed frame, pairing the roots through the
/// certified map.
fn build_resolvent_set(
    f: &RatPoly,
    g: &RatPoly,
    n: usize,
) -> Result<MixedResolventSet, IdentityError> {
    // recover the certified map in the depressed frame by re-running a
    // cheap certification pass (the caller holds the scaled map already;
    // recomputing keeps this function self-contained)
    let mut tried = 0usize;
    let (_, moments, map) = certify_candidates(f, g, n, &mut tried)?
        .expect("identical pair certifies in the depressed frame");
    let alg = SplitAlgebra::new(f)?;
    let mp = map.as_poly();
    let roots: Vec<SplitElem> = (0..n).map(|i| alg.root(i)).collect();
    let images: Vec<SplitElem> = roots
        .iter()
        .map(|x| alg.eval_poly(&mp, x))
        .collect::<Result<_, _>>()?;

    if n == 3 {
        return Ok(MixedResolventSet::Cubic {
            z: moments[0].clone(),
            u: moments[1].clone(),
        });
    }

    // quartic chain quantities via the splitting algebra
    let pairings = [(0usize, 1usize, 2usize, 3usize), (0, 2, 1, 3), (0, 3, 1, 2)];
    let pair_elem = |a: &SplitElem, b: &SplitElem, c: &SplitElem, d: &SplitElem| {
        let ab = alg.mul(a, b).unwrap();
        let cd = alg.mul(c, d).unwrap();
        alg.add(&ab, &cd).unwrap()
    };
    let z_elems: Vec<SplitElem> = pairings
        .iter()
        .map(|&(a, b, c, d)| pair_elem(&roots[a], &roots[b], &roots[c], &roots[d]))
        .collect();
    let zbar_elems: Vec<SplitElem> = pairings
        .iter()
        .map(|&(a, b, c, d)| pair_elem(&images[a], &images[b], &images[c], &images[d]))
        .collect();
    let mut zeta = alg.zero();
    let mut u = alg.zero();
    let mut ubar = alg.zero();
    for (z, zb) in z_elems.iter().zip(&zbar_elems) {
        zeta = alg.add(&zeta, &alg.mul(z, zb)?)?;
        u = alg.add(&u, &alg.mul(&alg.mul(z, z)?, zb)?)?;
        ubar = alg.add(&ubar, &alg.mul(z, &alg.mul(zb, zb)?)?)?;
    }
    let zeta = alg.as_constant(&zeta).expect("zeta is symmetric");
    let u = alg.as_constant(&u).expect("u is symmetric");
    let ubar = alg.as_constant(&ubar).expect("ubar is symmetric");

    let (p2, p3, p4) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let (pb2, pb3, pb4) = (g.coeff(2), g.coeff(1), g.coeff(0));
    let rc = quartic_resolvent_cubic(&p2, &p3, &p4);
    let rcb = quartic_resolvent_cubic(&pb2, &pb3, &pb4);
    // oracle validation: the resolvent cubic annihilates x1x2 + x3x4
    let annihilated = alg.eval_poly(&rc, &z_elems[0])?;
    assert_eq!(
        alg.as_constant(&annihilated),
        Some(BigRat::zero()),
        "resolvent cubic annihilates the pairing element"
    );
    let pairing_quartic =
        quartic_pairing_polynomial(&p2, &p3, &p4, &pb2, &pb3, &pb4, &zeta, &u, &ubar);
    let t = moments[0].clone();
    let theta = moments[1].clone();
    let z_cap = moments[2].clone();
    assert!(
        pairing_quartic.evaluate(&t).is_zero(),
        "F(T) vanishes on the certified pairing value"
    );
    Ok(MixedResolventSet::Quartic {
        resolvent_cubic: rc,
        resolvent_cubic_bar: rcb,
        zeta,
        u,
        ubar,
        pairing_quartic,
        t,
        theta,
        z_cap,
    })
}

struct ScaledInput {
    /// depressed monic integer polynomial
    poly: RatPoly,
    /// c with root_scaled = lambda * (root + c)
    shift: BigRat,
    lambda: BigRat,
}

fn depress_and_integerize(f: &RatPoly) -> ScaledInput {
    let n = f.degree().expect("nonconstant");
    let c = f.coeff(n - 1) / BigRat::from_integer(BigInt::from(n as i64));
    let dep = f.shift(&-c.clone());
    debug_assert!(dep.coeff(n - 1).is_zero());
    let lambda = BigRat::from_integer(dep.denominator_lcm());
    let poly = dep.scale_roots(&lambda);
    debug_assert!(poly.to_int().is_some());
    ScaledInput {
        poly,
        shift: c,
        lambda,
    }
}

fn check_pair(f: &RatPoly, g: &RatPoly) -> Result<usize, IdentityError> {
    let nf = f.degree();
    let ng = g.degree();
    let n = match nf {
        Some(n) if (3..=4).contains(&n) => n,
        d => return Err(IdentityError::DegreeOutOfRange(d)),
    };
    if ng != Some(n) {
        return match ng {
            Some(m) if (3..=4).contains(&m) => Err(IdentityError::DegreeMismatch),
            d => Err(IdentityError::DegreeOutOfRange(d)),
        };
    }
    if !f.is_monic() || !g.is_monic() {
        return Err(IdentityError::NotMonic);
    }
    Ok(n)
}

/// Exact irreducibility over Q for degrees 3 and 4: a cubic is reducible
/// iff it has a rational root; a quartic additionally iff it splits into
/// two rational quadratics, which is decided through the resolvent cubic
/// with every candidate verified by multiplication.
pub fn ensure_irreducible(f: &RatPoly) -> Result<(), IdentityError> {
    let n = f.degree().unwrap();
    let roots = rational_roots(f)?;
    if let Some(r) = roots.first() {
        return Err(IdentityError::Reducible(format!("rational root {r}")));
    }
    if n == 4 {
        let s = depress_and_integerize(f);
        let dep = s.poly;
        let (p2, p3, p4) = (dep.coeff(2), dep.coeff(1), dep.coeff(0));
        let rc = quartic_resolvent_cubic(&p2, &p3, &p4);
        for z0 in rational_roots(&rc)? {
            let u2 = &z0 - &p2;
            if u2.is_zero() {
                if !p3.is_zero() {
                    continue;
                }
                let inner = &z0 * &z0 - BigRat::from_integer(BigInt::from(4)) * &p4;
                if let Some(root) = rational_sqrt(&inner) {
                    let v = (&z0 - &root) / BigRat::from_integer(BigInt::from(2));
                    let w = (&z0 + &root) / BigRat::from_integer(BigInt::from(2));
                    if check_quadratic_split(&dep, &BigRat::zero(), &v, &w) {
                        return Err(IdentityError::Reducible(
                            "product of two rational quadratics".into(),
                        ));
                    }
                }
            } else if let Some(uu) = rational_sqrt(&u2) {
                let diff = &p3 / &uu;
                let v = (&z0 - &diff) / BigRat::from_integer(BigInt::from(2));
                let w = (&z0 + &diff) / BigRat::from_integer(BigInt::from(2));
                if check_quadratic_split(&dep, &uu, &v, &w) {
                    return Err(IdentityError::Reducible(
                        "product of two rational quadratics".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Verifies (x^2 + ux + v)(x^2 - ux + w) = f by exact multiplication.
fn check_quadratic_split(f: &RatPoly, u: &BigRat, v: &BigRat, w: &BigRat) -> bool {
    let a = RatPoly::new(vec![v.clone(), u.clone(), BigRat::one()]);
    let b = RatPoly::new(vec![w.clone(), -u.clone(), BigRat::one()]);
    a.mul(&b) == *f
}

/// Minimal polynomial of w(x) in Q[x]/(f), when it has full degree n
/// (None when the image generates a proper subfield).
pub fn minimal_polynomial_of_image(f: &RatPoly, w: &RatPoly) -> Option<RatPoly> {
    let n = f.degree()?;
    let y = w.rem(f).ok()?;
    // rows: coordinates of y^m for m = 0..=n
    let mut powers: Vec<Vec<BigRat>> = Vec::with_capacity(n + 1);
    let mut cur = RatPoly::one();
    for _ in 0..=n {
        let mut row: Vec<BigRat> = (0..n).map(|i| cur.coeff(i)).collect();
        row.resize(n, BigRat::zero());
        powers.push(row);
        cur = cur.mul(&y).rem(f).ok()?;
    }
    // solve sum_{m<n} c_m y^m = -y^n  =>  monic minimal polynomial; if the
    // system is singular the image has degree < n
    let mut m: Vec<Vec<BigRat>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRat> = (0..n).map(|j| powers[j][i].clone()).collect();
            row.push(-powers[n][i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..=n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    let mut coeffs: Vec<BigRat> = (0..n).map(|i| &m[i][n] / &m[i][i]).collect();
    coeffs.push(BigRat::one());
    let g = RatPoly::new(coeffs);
    debug_assert!(TschirnhausMap {
        coeffs: y.coeffs().to_vec()
    }
    .certifies(f, &g));
    Some(g)
}
