//! Stratum data of a permutation and the connected-component kind of its
//! Rauzy class.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{DiagramMode, RauzyDiagram};
use crate::geometry::{build_polygon, cone_degrees, GeometryError};
use crate::induction::{canonical_suspension, InductionError};
use crate::perm::{PermError, ReducedPermutation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantsError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("degree sum {degree_sum} does not match genus {genus}")]
    DegreeSum { degree_sum: u32, genus: u32 },
    #[error("{d} intervals do not fit genus {genus} with {singularities} singularities")]
    IntervalCount {
        d: usize,
        genus: u32,
        singularities: u32,
    },
    #[error("diagram is not the reduced class of {0}")]
    DiagramMismatch(String),
    #[error("no rule decides whether the component of {profile} is hyperelliptic")]
    UnclassifiedHyperellipticCandidate { profile: MarkedProfile },
}

/// Singularity degrees with multiplicities, the degree of the marked
/// singularity, and the genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedProfile {
    /// `(degree, multiplicity)` by decreasing degree.
    pub entries: Vec<(u32, u32)>,
    pub marked_degree: u32,
    pub genus: u32,
}

impl MarkedProfile {
    /// Builds a profile from the degree of every singularity.
    pub fn from_degrees(degrees: &[u32], marked_degree: u32) -> MarkedProfile {
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut entries: Vec<(u32, u32)> = Vec::new();
        for k in sorted {
            match entries.last_mut() {
                Some((last, n)) if *last == k => *n += 1,
                _ => entries.push((k, 1)),
            }
        }
        let degree_sum: u32 = degrees.iter().sum();
        MarkedProfile {
            entries,
            marked_degree,
            genus: degree_sum / 2 + 1,
        }
    }

    pub fn multiplicity(&self, degree: u32) -> u32 {
        self.entries
            .iter()
            .find(|(k, _)| *k == degree)
            .map_or(0, |(_, n)| *n)
    }

    pub fn marked_multiplicity(&self) -> u32 {
        self.multiplicity(self.marked_degree)
    }

    pub fn singularities(&self) -> u32 {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    pub fn degree_sum(&self) -> u32 {
        self.entries.iter().map(|(k, n)| k * n).sum()
    }

    pub fn has_odd_degree(&self) -> bool {
        self.entries.iter().any(|(k, _)| k % 2 == 1)
    }

    /// Number of regular marked points.
    pub fn marked_points(&self) -> u32 {
        self.multiplicity(0)
    }

    /// Two zeros of degree `g - 1` and nothing else besides marked points.
    pub fn is_pair_shape(&self) -> bool {
        let g = self.genus;
        g >= 2
            && self
                .entries
                .iter()
                .all(|&(k, n)| (k == g - 1 && n == 2) || k == 0)
            && self.multiplicity(g - 1) == 2
    }

    /// A single zero of degree `2g - 2` besides marked points.
    pub fn is_single_shape(&self) -> bool {
        let g = self.genus;
        g >= 2
            && self
                .entries
                .iter()
                .all(|&(k, n)| (k == 2 * g - 2 && n == 1) || k == 0)
            && self.multiplicity(2 * g - 2) == 1
    }
}

impl fmt::Display for MarkedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("H(")?;
        for (i, (k, n)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *n == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{n}")?;
            }
        }
        write!(f, ") marked {}", self.marked_degree)
    }
}

/// Profile of the surface built from the canonical suspension of `p`.
pub fn profile(p: &ReducedPermutation) -> Result<MarkedProfile, InvariantsError> {
    p.ensure_irreducible()?;
    let labeled = p.embed();
    let surface = build_polygon(&labeled, &canonical_suspension(&labeled)?)?;
    let cones = cone_degrees(&surface);
    let profile = MarkedProfile::from_degrees(&cones.degrees, cones.marked_degree());
    let genus = surface.genus() as u32;
    if profile.degree_sum() + 2 != 2 * genus {
        return Err(InvariantsError::DegreeSum {
            degree_sum: profile.degree_sum(),
            genus,
        });
    }
    let s = profile.singularities();
    if p.d() as u32 != 2 * genus + s - 1 {
        return Err(InvariantsError::IntervalCount {
            d: p.d(),
            genus,
            singularities: s,
        });
    }
    Ok(profile)
}

/// Case of the ratio formula a connected component falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// Hyperelliptic component with two zeros of degree `g - 1`.
    HyperellipticPair,
    /// Not of the previous kind, with a zero of odd degree.
    NonHypWithOdd,
    Other,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::HyperellipticPair => "hyperelliptic_pair",
            ComponentKind::NonHypWithOdd => "non_hyp_with_odd",
            ComponentKind::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentId {
    pub profile: MarkedProfile,
    pub kind: ComponentKind,
}

/// `(d, d-1, ..., 1)`, whose class is the hyperelliptic component without
/// marked points.
pub fn symmetric_representative(d: usize) -> ReducedPermutation {
    ReducedPermutation::symmetric(d).expect("d within range")
}

/// `(d, d-2, d-3, ..., 2, d-1, 1)`: the symmetric permutation on `d - 1`
/// symbols with a marked point inserted at the left end.
pub fn marked_point_representative(d: usize) -> ReducedPermutation {
    assert!(d >= 3, "needs at least three intervals");
    let mut word = vec![d];
    word.extend((2..=d - 2).rev());
    word.extend([d - 1, 1]);
    ReducedPermutation::from_word(&word).expect("valid word")
}

/// Component kind of the reduced class `diag` of `p`.
///
/// Hyperellipticity of a two-zero profile is decided by membership of the
/// known representatives. Genus two needs no test since every genus-two
/// surface is hyperelliptic.
pub fn classify_component(
    p: &ReducedPermutation,
    diag: &RauzyDiagram,
) -> Result<ComponentId, InvariantsError> {
    if diag.mode() != DiagramMode::Reduced || diag.find_reduced(p).is_none() {
        return Err(InvariantsError::DiagramMismatch(p.to_string()));
    }
    let profile = profile(p)?;
    let kind = classify_profile(&profile, |rep| diag.find_reduced(rep).is_some())?;
    Ok(ComponentId { profile, kind })
}

fn classify_profile(
    profile: &MarkedProfile,
    contains: impl Fn(&ReducedPermutation) -> bool,
) -> Result<ComponentKind, InvariantsError> {
    let g = profile.genus;
    if profile.is_pair_shape() {
        let d = (2 * g + profile.singularities() - 1) as usize;
        let unclassified = || InvariantsError::UnclassifiedHyperellipticCandidate {
            profile: profile.clone(),
        };
        let hyperelliptic = if g == 2 {
            true
        } else {
            match profile.marked_points() {
                0 => contains(&symmetric_representative(d)),
                1 if profile.marked_degree == 0 => contains(&marked_point_representative(d)),
                _ => return Err(unclassified()),
            }
        };
        if hyperelliptic {
            return Ok(ComponentKind::HyperellipticPair);
        }
    }
    Ok(if profile.has_odd_degree() {
        ComponentKind::NonHypWithOdd
    } else {
        ComponentKind::Other
    })
}
