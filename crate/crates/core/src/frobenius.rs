//! Frobenius cycle-type sampling over primes.
//!
//! For an unramified prime p the degrees of the irreducible factors of
//! f mod p form a partition of deg f: the cycle type of the Frobenius
//! substitution at p. Sampling those types over many primes is the
//! observable evidence this module collects; identification against group
//! tables lives in [`crate::groups`].

use crate::finite::{distinct_degree_pattern, ModPoly};
use crate::poly::{BigInt, BigRat, IntPoly};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("polynomial must have degree >= {0}")]
    DegreeTooSmall(usize),
    #[error("empty prime set")]
    EmptyPrimes,
    #[error(transparent)]
    Finite(#[from] crate::finite::FiniteError),
}

/// Partition of n recording cycle lengths, parts descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "cycle lengths are positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parity of a permutation with these cycle lengths: even iff
    /// n minus the number of cycles is even.
    pub fn is_even(&self) -> bool {
        (self.total() - self.0.len()) % 2 == 0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Classification of a prime against a fixed polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeClass {
    /// Unramified: the factor degrees of f mod p.
    Type(CycleType),
    /// p divides the discriminant (or the discriminant is zero).
    Ramified,
    /// p divides the leading coefficient; excluded like a ramified prime
    /// but reported under its own tag.
    LeadingDrop,
}

/// Cycle type of the Frobenius substitution at p, or the exclusion marker.
///
/// Requires integer f with deg f >= 1. A zero discriminant makes every
/// prime ramified by convention.
pub fn cycle_type_at(f: &IntPoly, p: u64) -> Result<PrimeClass, FrobeniusError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(FrobeniusError::DegreeTooSmall(1)),
    };
    let pb = BigInt::from(p);
    if f.lc().mod_floor(&pb).is_zero() {
        return Ok(PrimeClass::LeadingDrop);
    }
    let disc = f.discriminant().expect("degree checked above");
    if divides_rational(&pb, &disc) {
        return Ok(PrimeClass::Ramified);
    }
    let fp = ModPoly::from_int_poly(f, p)?;
    let pattern = distinct_degree_pattern(&fp)?;
    debug_assert!(pattern.is_squarefree(), "p does not divide the discriminant");
    let ty = CycleType::new(pattern.expanded_degrees());
    debug_assert_eq!(ty.total(), n);
    Ok(PrimeClass::Type(ty))
}

/// p-divisibility for an exact rational that is an integer up to a
/// denominator coprime to p (discriminants of integer polynomials).
fn divides_rational(p: &BigInt, v: &BigRat) -> bool {
    if v.is_zero() {
        return true;
    }
    v.numer().mod_floor(p).is_zero() && !v.denom().mod_floor(p).is_zero()
}

/// Deterministic sampling report: every prime in the input, classified,
/// with frequency counts over unramified primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub polynomial: String,
    pub degree: usize,
    pub records: Vec<(u64, PrimeClass)>,
    pub frequencies: BTreeMap<CycleType, usize>,
    pub unramified: usize,
    pub ramified: Vec<u64>,
    pub leading_drops: Vec<u64>,
}

impl SampleReport {
    pub fn observed_types(&self) -> Vec<CycleType> {
        self.frequencies.keys().cloned().collect()
    }
}

/// Classifies every prime in `primes` against f. Work is split over
/// `workers` threads; the merged report is ordered by prime and identical
/// for every worker count.
pub fn sample_cycle_types(
    f: &IntPoly,
    primes: &[u64],
    workers: usize,
) -> Result<SampleReport, FrobeniusError> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(FrobeniusError::DegreeTooSmall(2)),
    };
    if primes.is_empty() {
        return Err(FrobeniusError::EmptyPrimes);
    }
    let workers = workers.max(1).min(primes.len());
    let chunk = (primes.len() + workers - 1) / workers;
    let mut records: Vec<(u64, PrimeClass)> = Vec::with_capacity(primes.len());
    if workers == 1 {
        for &p in primes {
            records.push((p, cycle_type_at(f, p)?));
        }
    } else {
        let chunks: Vec<&[u64]> = primes.chunks(chunk).collect();
        let results: Vec<Result<Vec<(u64, PrimeClass)>, FrobeniusError>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|slice| {
                        scope.spawn(move || {
                            slice
                                .iter()
                                .map(|&p| cycle_type_at(f, p).map(|c| (p, c)))
                                .collect()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
        for chunk_result in results {
            records.extend(chunk_result?);
        }
    }
    records.sort_by_key(|&(p, _)| p);

    let mut frequencies = BTreeMap::new();
    let mut ramified = Vec::new();
    let mut leading_drops = Vec::new();
    let mut unramified = 0usize;
    for (p, class) in &records {
        match class {
            PrimeClass::Type(t) => {
                *frequencies.entry(t.clone()).or_insert(0) += 1;
                unramified += 1;
            }
            PrimeClass::Ramified => ramified.push(*p),
            PrimeClass::LeadingDrop => leading_drops.push(*p),
        }
    }
    Ok(SampleReport {
        polynomial: f.to_string(),
        degree: n,
        records,
        frequencies,
        unramified,
        ramified,
        leading_drops,
    })
}

/// Primes below `bound`, ascending (sieve of Eratosthenes).
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| if is_p { Some(i as u64) } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(parts: &[usize]) -> CycleType {
        CycleType::new(parts.to_vec())
    }

    #[test]
    fn worked_cubic_types() {
        let f = IntPoly::from_i64(&[3, 1, 0, 1]); // x^3 + x + 3
        assert_eq!(cycle_type_at(&f, 2).unwrap(), PrimeClass::Type(ty(&[3])));
        assert_eq!(cycle_type_at(&f, 3).unwrap(), PrimeClass::Type(ty(&[2, 1])));
    }

    #[test]
    fn ramified_prime() {
        let f = IntPoly::from_i64(&[-1, 0, 1]); // disc = 4
        assert_eq!(cycle_type_at(&f, 2).unwrap(), PrimeClass::Ramified);
        assert_eq!(cycle_type_at(&f, 3).unwrap(), PrimeClass::Type(ty(&[1, 1])));
    }

    #[test]
    fn leading_coefficient_drop() {
        let f = IntPoly::from_i64(&[1, 1, 6]);
        assert_eq!(cycle_type_at(&f, 3).unwrap(), PrimeClass::LeadingDrop);
    }

    #[test]
    fn zero_discriminant_always_ramified() {
        let f = IntPoly::from_i64(&[0, 0, 1]); // x^2
        let report = sample_cycle_types(&f, &primes_below(50), 1).unwrap();
        assert_eq!(report.unramified, 0);
        assert_eq!(report.ramified.len(), report.records.len());
    }

    #[test]
    fn sampling_for_x3_minus_x_minus_1() {
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(100), 1).unwrap();
        assert_eq!(report.ramified, vec![23]);
        let observed = report.observed_types();
        for t in &observed {
            assert!(
                [ty(&[1, 1, 1]), ty(&[2, 1]), ty(&[3])].contains(t),
                "unexpected type {t}"
            );
        }
        assert_eq!(observed.len(), 3, "all three S3 types appear below 100");
    }

    #[test]
    fn sampling_for_x4_plus_1_sees_only_two_types() {
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(100), 1).unwrap();
        for t in report.observed_types() {
            assert!(
                t == ty(&[1, 1, 1, 1]) || t == ty(&[2, 2]),
                "unexpected type {t}"
            );
        }
        assert_eq!(report.ramified, vec![2]);
    }

    #[test]
    fn parallel_partitioning_is_invisible() {
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        let primes = primes_below(500);
        let base = sample_cycle_types(&f, &primes, 1).unwrap();
        for workers in [2, 3, 7, 16] {
            assert_eq!(sample_cycle_types(&f, &primes, workers).unwrap(), base);
        }
    }

    #[test]
    fn type_parts_always_sum_to_degree() {
        let f = IntPoly::from_i64(&[2, 0, 1, -3, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(300), 2).unwrap();
        for (_, class) in &report.records {
            if let PrimeClass::Type(t) = class {
                assert_eq!(t.total(), 5);
            }
        }
        assert!(report.unramified > 0);
    }

    #[test]
    fn primes_below_small() {
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_below(2), Vec::<u64>::new());
    }
}
