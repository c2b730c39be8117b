//! Transitive permutation groups of degrees 2..=5 and statistical group
//! identification from sampled cycle types.
//!
//! The table content is not hardcoded: each group is enumerated at build
//! time by closing its standard generators, and the table constructor
//! asserts both that element counts sum to the group order and that the
//! cycle-type *sets* of distinct groups of the same degree are pairwise
//! distinct. Degrees outside 2..=5 are rejected (type sets stop being
//! distinguishing at degree 6).

use crate::frobenius::{CycleType, SampleReport};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentifyError {
    #[error("identification table covers degrees 2..=5, got {0}")]
    DegreeOutOfRange(usize),
    #[error("no unramified samples in the report")]
    NoUnramifiedSamples,
    #[error("observed cycle type {0} fits no transitive group of degree {1}")]
    ImpossibleType(CycleType, usize),
}

/// One transitive group with its exact cycle-type statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveGroup {
    pub name: &'static str,
    pub degree: usize,
    pub order: usize,
    /// element count per cycle type; counts sum to the order
    pub type_counts: BTreeMap<CycleType, usize>,
}

impl TransitiveGroup {
    pub fn type_set(&self) -> BTreeSet<CycleType> {
        self.type_counts.keys().cloned().collect()
    }

    /// Exact density of a cycle type among group elements.
    pub fn density(&self, t: &CycleType) -> f64 {
        *self.type_counts.get(t).unwrap_or(&0) as f64 / self.order as f64
    }
}

/// Tables of transitive groups for degrees 2..=5.
#[derive(Debug, Clone)]
pub struct GroupTable {
    by_degree: BTreeMap<usize, Vec<TransitiveGroup>>,
}

/// Permutation as the image list of 0..n-1.
type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a o b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn cycle_type_of(p: &Perm) -> CycleType {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

/// Closes a generator set under composition.
fn close_group(n: usize, generators: &[Perm]) -> BTreeSet<Perm> {
    let id: Perm = (0..n).collect();
    let mut elements = BTreeSet::new();
    elements.insert(id);
    let mut frontier: Vec<Perm> = elements.iter().cloned().collect();
    while let Some(g) = frontier.pop() {
        for gen in generators {
            let h = compose(gen, &g);
            if elements.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    elements
}

/// One permutation of 0..n-1 from disjoint cycles written over 1..=n,
/// e.g. `perm(4, &[&[1,2],&[3,4]])` is (1 2)(3 4).
fn perm(n: usize, cycles: &[&[usize]]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for cycle in cycles {
        for w in 0..cycle.len() {
            let from = cycle[w] - 1;
            let to = cycle[(w + 1) % cycle.len()] - 1;
            p[from] = to;
        }
    }
    p
}

fn group_from_generators(name: &'static str, n: usize, generators: Vec<Perm>) -> TransitiveGroup {
    let elements = close_group(n, &generators);
    let mut type_counts: BTreeMap<CycleType, usize> = BTreeMap::new();
    for e in &elements {
        *type_counts.entry(cycle_type_of(e)).or_insert(0) += 1;
    }
    TransitiveGroup {
        name,
        degree: n,
        order: elements.len(),
        type_counts,
    }
}

impl GroupTable {
    /// The standard table: every transitive group of degree 2..=5,
    /// enumerated from generators and sanity-checked.
    pub fn standard() -> GroupTable {
        let mut by_degree: BTreeMap<usize, Vec<TransitiveGroup>> = BTreeMap::new();
        by_degree.insert(
            2,
            vec![group_from_generators("S2", 2, vec![perm(2, &[&[1, 2]])])],
        );
        by_degree.insert(
            3,
            vec![
                group_from_generators("C3", 3, vec![perm(3, &[&[1, 2, 3]])]),
                group_from_generators(
                    "S3",
                    3,
                    vec![perm(3, &[&[1, 2, 3]]), perm(3, &[&[1, 2]])],
                ),
            ],
        );
        by_degree.insert(
            4,
            vec![
                group_from_generators("C4", 4, vec![perm(4, &[&[1, 2, 3, 4]])]),
                group_from_generators(
                    "V4",
                    4,
                    vec![perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])],
                ),
                group_from_generators(
                    "D4",
                    4,
                    vec![perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 3]])],
                ),
                group_from_generators(
                    "A4",
                    4,
                    vec![perm(4, &[&[1, 2, 3]]), perm(4, &[&[2, 3, 4]])],
                ),
                group_from_generators(
                    "S4",
                    4,
                    vec![perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 2]])],
                ),
            ],
        );
        by_degree.insert(
            5,
            vec![
                group_from_generators("C5", 5, vec![perm(5, &[&[1, 2, 3, 4, 5]])]),
                group_from_generators(
                    "D5",
                    5,
                    vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[2, 5], &[3, 4]])],
                ),
                // F20 = AGL(1,5): the 5-cycle x -> x+1 and the
                // multiplication-by-2 map (1 2 4 3)
                group_from_generators(
                    "F20",
                    5,
                    vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[1, 2, 4, 3]])],
                ),
                group_from_generators(
                    "A5",
                    5,
                    vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[1, 2, 3]])],
                ),
                group_from_generators(
                    "S5",
                    5,
                    vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[1, 2]])],
                ),
            ],
        );

        let expected_orders: BTreeMap<&str, usize> = [
            ("S2", 2),
            ("C3", 3),
            ("S3", 6),
            ("C4", 4),
            ("V4", 4),
            ("D4", 8),
            ("A4", 12),
            ("S4", 24),
            ("C5", 5),
            ("D5", 10),
            ("F20", 20),
            ("A5", 60),
            ("S5", 120),
        ]
        .into_iter()
        .collect();

        for (degree, groups) in &by_degree {
            for g in groups {
                assert_eq!(g.order, expected_orders[g.name], "order of {}", g.name);
                let total: usize = g.type_counts.values().sum();
                assert_eq!(total, g.order, "counts sum to order for {}", g.name);
                for t in g.type_counts.keys() {
                    assert_eq!(t.total(), *degree);
                }
            }
            // pairwise distinct type sets make identification sound
            for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    assert_ne!(
                        groups[i].type_set(),
                        groups[j].type_set(),
                        "{} and {} share a type set",
                        groups[i].name,
                        groups[j].name
                    );
                }
            }
        }
        GroupTable { by_degree }
    }

    pub fn groups_of_degree(&self, n: usize) -> Option<&[TransitiveGroup]> {
        self.by_degree.get(&n).map(|v| v.as_slice())
    }

    pub fn group(&self, n: usize, name: &str) -> Option<&TransitiveGroup> {
        self.by_degree
            .get(&n)
            .and_then(|v| v.iter().find(|g| g.name == name))
    }
}

/// A candidate group with its goodness of fit against the observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFit {
    pub name: String,
    pub order: usize,
    /// chi-square distance between observed frequencies and exact densities
    pub chi_square: f64,
    /// exact densities over the group's full type set
    pub densities: BTreeMap<String, f64>,
}

/// Identification result: the candidate set ordered by fit. Uniqueness is
/// asserted only when a single candidate remains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identification {
    pub degree: usize,
    pub samples: usize,
    pub candidates: Vec<GroupFit>,
    /// groups containing all observed types but excluded because an
    /// unobserved type was overwhelmingly likely to appear
    pub excluded: Vec<String>,
    pub unique: bool,
}

/// Probability threshold for ruling out a containing group: G is dropped
/// when some type of G was never observed although the chance of that
/// under G is below this bound.
const MISS_PROBABILITY_EPSILON: f64 = 0.01;

/// Returns the groups whose cycle-type set contains every observed type,
/// ranked by chi-square distance; statistically untenable candidates are
/// excluded as described on [`Identification`].
pub fn identify_group(
    report: &SampleReport,
    table: &GroupTable,
) -> Result<Identification, IdentifyError> {
    let n = report.degree;
    let groups = table
        .groups_of_degree(n)
        .ok_or(IdentifyError::DegreeOutOfRange(n))?;
    if report.unramified == 0 {
        return Err(IdentifyError::NoUnramifiedSamples);
    }
    let samples = report.unramified;
    let observed = &report.frequencies;

    for t in observed.keys() {
        if !groups.iter().any(|g| g.type_counts.contains_key(t)) {
            return Err(IdentifyError::ImpossibleType(t.clone(), n));
        }
    }

    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    for g in groups {
        let contains_all = observed.keys().all(|t| g.type_counts.contains_key(t));
        if !contains_all {
            continue;
        }
        // exclusion test on unobserved types
        let mut untenable = false;
        for (t, &count) in &g.type_counts {
            if observed.contains_key(t) {
                continue;
            }
            let d = count as f64 / g.order as f64;
            if (1.0 - d).powi(samples as i32) < MISS_PROBABILITY_EPSILON {
                untenable = true;
                break;
            }
        }
        if untenable {
            excluded.push(g.name.to_string());
            continue;
        }
        let mut chi_square = 0.0;
        let mut densities = BTreeMap::new();
        for (t, &count) in &g.type_counts {
            let d = count as f64 / g.order as f64;
            let expected = samples as f64 * d;
            let obs = *observed.get(t).unwrap_or(&0) as f64;
            chi_square += (obs - expected) * (obs - expected) / expected;
            densities.insert(t.to_string(), d);
        }
        candidates.push(GroupFit {
            name: g.name.to_string(),
            order: g.order,
            chi_square,
            densities,
        });
    }
    candidates.sort_by(|a, b| a.chi_square.partial_cmp(&b.chi_square).unwrap());
    let unique = candidates.len() == 1;
    Ok(Identification {
        degree: n,
        samples,
        candidates,
        excluded,
        unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{primes_below, sample_cycle_types};
    use crate::poly::IntPoly;

    #[test]
    fn table_builds_with_expected_sets() {
        let table = GroupTable::standard();
        let v4 = table.group(4, "V4").unwrap();
        let names: Vec<String> = v4.type_set().iter().map(|t| t.to_string()).collect();
        assert_eq!(names, vec!["[1,1,1,1]", "[2,2]"]);
        let a4 = table.group(4, "A4").unwrap();
        assert_eq!(a4.type_counts.len(), 3);
        assert_eq!(
            a4.type_counts[&CycleType::new(vec![3, 1])],
            8,
            "eight 3-cycles in A4"
        );
        let s5 = table.group(5, "S5").unwrap();
        assert_eq!(s5.type_counts.len(), 7);
        assert_eq!(s5.type_counts[&CycleType::new(vec![2, 2, 1])], 15);
    }

    #[test]
    fn s3_densities() {
        let table = GroupTable::standard();
        let s3 = table.group(3, "S3").unwrap();
        assert_eq!(s3.type_counts[&CycleType::new(vec![1, 1, 1])], 1);
        assert_eq!(s3.type_counts[&CycleType::new(vec![2, 1])], 3);
        assert_eq!(s3.type_counts[&CycleType::new(vec![3])], 2);
    }

    #[test]
    fn identify_x4_plus_1_as_v4() {
        let table = GroupTable::standard();
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(100), 1).unwrap();
        let id = identify_group(&report, &table).unwrap();
        assert!(id.unique, "candidates: {:?}", id.candidates);
        assert_eq!(id.candidates[0].name, "V4");
        assert!(id.excluded.contains(&"C4".to_string()));
        assert!(id.excluded.contains(&"S4".to_string()));
    }

    #[test]
    fn identify_s3_from_cubic() {
        let table = GroupTable::standard();
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(1000), 1).unwrap();
        let id = identify_group(&report, &table).unwrap();
        assert!(id.unique);
        assert_eq!(id.candidates[0].name, "S3");
    }

    #[test]
    fn single_sample_keeps_both_cubic_groups() {
        // one prime of type [3] cannot separate C3 from S3
        let table = GroupTable::standard();
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        // p = 2 gives type [3] for x^3 - x - 1
        let report = sample_cycle_types(&f, &[2], 1).unwrap();
        let id = identify_group(&report, &table).unwrap();
        let names: Vec<&str> = id.candidates.iter().map(|c| c.name.as_str()).collect();
        assert!(!id.unique);
        assert!(names.contains(&"C3") && names.contains(&"S3"));
    }

    #[test]
    fn refuses_degree_out_of_range_and_empty() {
        let table = GroupTable::standard();
        let f = IntPoly::from_i64(&[1, 1, 0, 0, 0, 0, 1]);
        let report = sample_cycle_types(&f, &primes_below(50), 1).unwrap();
        assert_eq!(
            identify_group(&report, &table),
            Err(IdentifyError::DegreeOutOfRange(6))
        );
        let sq = IntPoly::from_i64(&[0, 0, 1]);
        let ramified_only = sample_cycle_types(&sq, &primes_below(30), 1).unwrap();
        assert_eq!(
            identify_group(&ramified_only, &table),
            Err(IdentifyError::NoUnramifiedSamples)
        );
    }

    #[test]
    fn never_returns_group_missing_an_observed_type() {
        let table = GroupTable::standard();
        for coeffs in [
            vec![1i64, 1, 0, 1],
            vec![-2, 0, 0, 1],
            vec![2, 0, 1, 0, 1],
            vec![1, -1, 2, -1, 1],
            vec![3, 1, 0, 0, 0, 1],
            vec![-1, 1, 1, 0, 0, 1],
        ] {
            let f = IntPoly::new(coeffs.iter().map(|&c| c.into()).collect());
            let report = sample_cycle_types(&f, &primes_below(200), 1).unwrap();
            if report.unramified == 0 {
                continue;
            }
            let id = match identify_group(&report, &table) {
                Ok(id) => id,
                Err(_) => continue,
            };
            for fit in &id.candidates {
                let g = table.group(report.degree, &fit.name).unwrap();
                for t in report.frequencies.keys() {
                    assert!(g.type_counts.contains_key(t));
                }
            }
        }
    }
}
