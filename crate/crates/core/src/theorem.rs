//! Predicted ratio of labeled to reduced class sizes and its comparison
//! with enumeration.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classes::{
    enumerate_labeled, enumerate_reduced, ClassError, EnumerateOptions, RauzyDiagram,
};
use crate::exec::Execution;
use crate::invariants::{
    classify_component, profile, ComponentId, ComponentKind, InvariantsError, MarkedProfile,
};
use crate::perm::{irreducible_permutations, ReducedPermutation};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error("predicted ratio {0} is not a positive integer")]
    NotAnInteger(BigRational),
}

fn rational(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Correction factor of the ratio formula.
pub fn epsilon(c: &ComponentId) -> BigRational {
    epsilon_of(c.kind, c.profile.genus)
}

fn epsilon_of(kind: ComponentKind, genus: u32) -> BigRational {
    match kind {
        ComponentKind::HyperellipticPair => rational(1, genus as u64),
        ComponentKind::NonHypWithOdd => rational(1, 2),
        ComponentKind::Other => rational(1, 1),
    }
}

/// Number of connected components of the labeled cover over the component.
pub fn component_count(c: &ComponentId) -> u32 {
    component_count_of(c.kind, c.profile.genus)
}

fn component_count_of(kind: ComponentKind, genus: u32) -> u32 {
    match kind {
        ComponentKind::HyperellipticPair => genus,
        ComponentKind::NonHypWithOdd => 2,
        ComponentKind::Other => 1,
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `prod n_i! (k_i + 1)^n_i`.
fn labeling_count(profile: &MarkedProfile) -> BigInt {
    profile.entries.iter().fold(BigInt::one(), |acc, &(k, n)| {
        acc * factorial(n) * BigInt::from(k + 1).pow(n)
    })
}

/// `prod n_i! (k_i + 1)^n_i / c`.
pub fn covering_degree(profile: &MarkedProfile, components: u32) -> BigRational {
    BigRational::new(labeling_count(profile), BigInt::from(components))
}

fn marked_factor(profile: &MarkedProfile) -> BigInt {
    BigInt::from(profile.marked_multiplicity()) * BigInt::from(profile.marked_degree + 1)
}

/// `prod n_i! (k_i + 1)^n_i * eps / (n (k + 1))`.
pub fn predicted_ratio(c: &ComponentId) -> Result<BigRational, TheoremError> {
    predicted_for(&c.profile, c.kind)
}

fn predicted_for(
    profile: &MarkedProfile,
    kind: ComponentKind,
) -> Result<BigRational, TheoremError> {
    let value = BigRational::from_integer(labeling_count(profile))
        * epsilon_of(kind, profile.genus)
        / BigRational::from_integer(marked_factor(profile));
    if !value.is_integer() || value <= BigRational::from_integer(BigInt::from(0)) {
        return Err(TheoremError::NotAnInteger(value));
    }
    Ok(value)
}

/// Same prediction through the covering degree.
pub fn predicted_via_covering(c: &ComponentId) -> BigRational {
    covering_degree(&c.profile, component_count(c))
        / BigRational::from_integer(marked_factor(&c.profile))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Unclassified,
}

/// Candidate outcome for a component whose kind is not decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub kind: ComponentKind,
    #[serde(serialize_with = "as_text")]
    pub epsilon: BigRational,
    #[serde(serialize_with = "as_text")]
    pub predicted: BigRational,
}

/// Outcome of comparing the predicted ratio with the enumerated one.
/// Serialized fields keep their declaration order; rationals are written as
/// `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub seed: String,
    pub d: usize,
    pub profile: MarkedProfile,
    pub profile_text: String,
    pub kind: Option<ComponentKind>,
    #[serde(serialize_with = "opt_as_text")]
    pub epsilon: Option<BigRational>,
    #[serde(serialize_with = "opt_as_text")]
    pub predicted: Option<BigRational>,
    #[serde(serialize_with = "as_text")]
    pub enumerated: BigRational,
    pub reduced_size: usize,
    pub labeled_size: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<Candidate>,
    pub verdict: Verdict,
}

impl RatioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// Enumerated ratio as an integer, when it is one.
    pub fn enumerated_integer(&self) -> Option<u64> {
        self.enumerated
            .is_integer()
            .then(|| self.enumerated.to_integer().to_u64())
            .flatten()
    }
}

fn as_text<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn opt_as_text<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Enumerates both classes of `seed` and compares the sizes with the
/// prediction.
pub fn verify(
    seed: &ReducedPermutation,
    opts: &EnumerateOptions,
) -> Result<RatioReport, TheoremError> {
    let reduced = enumerate_reduced(seed, opts)?;
    verify_in_class(seed, &reduced, opts)
}

/// As [`verify`], reusing an enumerated reduced class of `seed`.
pub fn verify_in_class(
    seed: &ReducedPermutation,
    reduced: &RauzyDiagram,
    opts: &EnumerateOptions,
) -> Result<RatioReport, TheoremError> {
    let labeled = enumerate_labeled(&seed.embed(), opts)?;
    let enumerated = rational(labeled.len() as u64, reduced.len() as u64);
    let (profile, kind) = match classify_component(seed, reduced) {
        Ok(c) => (c.profile, Some(c.kind)),
        Err(InvariantsError::UnclassifiedHyperellipticCandidate { profile }) => (profile, None),
        Err(e) => return Err(e.into()),
    };
    let mut report = RatioReport {
        seed: seed.to_string(),
        d: seed.d(),
        profile_text: profile.to_string(),
        profile,
        kind,
        epsilon: None,
        predicted: None,
        enumerated,
        reduced_size: reduced.len(),
        labeled_size: labeled.len(),
        candidates: Vec::new(),
        verdict: Verdict::Unclassified,
    };
    match kind {
        Some(kind) => {
            let predicted = predicted_for(&report.profile, kind)?;
            report.verdict = if predicted == report.enumerated {
                Verdict::Match
            } else {
                Verdict::Mismatch
            };
            report.epsilon = Some(epsilon_of(kind, report.profile.genus));
            report.predicted = Some(predicted);
        }
        None => {
            let other = if report.profile.has_odd_degree() {
                ComponentKind::NonHypWithOdd
            } else {
                ComponentKind::Other
            };
            for kind in [ComponentKind::HyperellipticPair, other] {
                let epsilon = epsilon_of(kind, report.profile.genus);
                let predicted = BigRational::from_integer(labeling_count(&report.profile))
                    * &epsilon
                    / BigRational::from_integer(marked_factor(&report.profile));
                report.candidates.push(Candidate {
                    kind,
                    epsilon,
                    predicted,
                });
            }
        }
    }
    Ok(report)
}

/// One representative per reduced class with `2 <= d <= max_d`: the
/// lexicographically least word of the class.
pub fn class_representatives(
    max_d: usize,
    opts: &EnumerateOptions,
) -> Result<Vec<(ReducedPermutation, RauzyDiagram)>, TheoremError> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        let mut seen: HashSet<Box<[u8]>> = HashSet::new();
        for p in irreducible_permutations(d) {
            if seen.contains(p.word()) {
                continue;
            }
            let diag = enumerate_reduced(&p, opts)?;
            seen.extend(diag.states().iter().cloned());
            out.push((p, diag));
        }
    }
    Ok(out)
}

/// Verifies every reduced class with `d <= max_d`. Classes are handled
/// independently under `execution`; each one enumerates sequentially.
pub fn sweep(
    max_d: usize,
    budget: usize,
    execution: Execution,
) -> Result<Vec<RatioReport>, TheoremError> {
    let inner = EnumerateOptions {
        budget,
        execution: Execution::Sequential,
    };
    let classes = class_representatives(max_d, &EnumerateOptions { budget, execution })?;
    execution
        .map(&classes, |(p, diag)| verify_in_class(p, diag, &inner))
        .into_iter()
        .collect()
}

/// Verifies each seed independently.
pub fn verify_all(
    seeds: &[ReducedPermutation],
    budget: usize,
    execution: Execution,
) -> Vec<Result<RatioReport, TheoremError>> {
    let inner = EnumerateOptions {
        budget,
        execution: Execution::Sequential,
    };
    execution.map(seeds, |p| verify(p, &inner))
}

/// Profile and component of `seed`, enumerating its reduced class.
pub fn component_of(
    seed: &ReducedPermutation,
    opts: &EnumerateOptions,
) -> Result<ComponentId, TheoremError> {
    let diag = enumerate_reduced(seed, opts)?;
    Ok(classify_component(seed, &diag)?)
}

/// Profile of `seed` without classification.
pub fn stratum(seed: &ReducedPermutation) -> Result<MarkedProfile, TheoremError> {
    Ok(profile(seed)?)
}
