//! Rauzy moves and Rauzy–Veech induction.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{LabeledPermutation, ReducedPermutation, Symbol};

/// Exact rational used for lengths and heights.
pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("the last top and last bottom symbols coincide; the move is undefined")]
    Degenerate,
    #[error("the two last intervals have equal length; the induction type is undefined")]
    EqualLengths,
    #[error("length of symbol {0} is not positive")]
    NonPositiveLength(usize),
    #[error("expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("heights do not satisfy the suspension inequalities")]
    NotASuspension,
    #[error("permutation {0} is reducible")]
    Reducible(String),
}

/// Type of a Rauzy move: the top symbol wins (`Top`) or the bottom one does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Top,
    Bottom,
}

impl MoveKind {
    pub const BOTH: [MoveKind; 2] = [MoveKind::Top, MoveKind::Bottom];

    pub fn letter(self) -> char {
        match self {
            MoveKind::Top => 't',
            MoveKind::Bottom => 'b',
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Top => "top",
            MoveKind::Bottom => "bottom",
        })
    }
}

/// Type, winner and looser of one induction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: MoveKind,
    pub winner: Symbol,
    pub looser: Symbol,
}

/// Moves the last entry of `row` to just after position `k` (0-based index
/// `k`), shifting the entries in between one step to the right.
fn reinsert_last(row: &[Symbol], k: usize) -> Box<[Symbol]> {
    let d = row.len();
    let last = row[d - 1];
    let mut out = Vec::with_capacity(d);
    out.extend_from_slice(&row[..=k]);
    out.push(last);
    out.extend_from_slice(&row[k + 1..d - 1]);
    out.into_boxed_slice()
}

/// New top and bottom rows, then winner and looser.
pub(crate) type MovedRows = (Box<[Symbol]>, Box<[Symbol]>, Symbol, Symbol);

/// Raw labeled move on two rows.
pub(crate) fn labeled_move_rows(
    top: &[Symbol],
    bottom: &[Symbol],
    kind: MoveKind,
) -> Result<MovedRows, InductionError> {
    let d = top.len();
    let (t, b) = (top[d - 1], bottom[d - 1]);
    if t == b {
        return Err(InductionError::Degenerate);
    }
    Ok(match kind {
        MoveKind::Top => {
            let k = position(bottom, t);
            (top.into(), reinsert_last(bottom, k), t, b)
        }
        MoveKind::Bottom => {
            let k = position(top, b);
            (reinsert_last(top, k), bottom.into(), b, t)
        }
    })
}

/// Raw reduced move on a 0-based word. Returns the new word plus winner and
/// looser, as symbols of the source permutation's `1..=d` labeling.
pub(crate) fn reduced_move_word(
    word: &[Symbol],
    kind: MoveKind,
) -> Result<(Box<[Symbol]>, Symbol, Symbol), InductionError> {
    let d = word.len();
    let top_last = (d - 1) as Symbol;
    let bottom_last = word[d - 1];
    if top_last == bottom_last {
        return Err(InductionError::Degenerate);
    }
    Ok(match kind {
        MoveKind::Top => {
            let k = position(word, top_last);
            (reinsert_last(word, k), top_last, bottom_last)
        }
        MoveKind::Bottom => {
            // top row becomes 0..=k, d-1, k+1..d-1; renumber by new top position
            let k = bottom_last;
            let relabel = |s: Symbol| {
                if s <= k {
                    s
                } else if s == top_last {
                    k + 1
                } else {
                    s + 1
                }
            };
            let new_word = word.iter().map(|&s| relabel(s)).collect();
            (new_word, bottom_last, top_last)
        }
    })
}

fn position(row: &[Symbol], s: Symbol) -> usize {
    row.iter()
        .position(|&x| x == s)
        .expect("rows are permutations of the same alphabet")
}

/// Top move `R_t`: the last bottom symbol is reinserted right after the
/// bottom position of the last top symbol.
pub fn rauzy_top(p: &LabeledPermutation) -> Result<LabeledPermutation, InductionError> {
    rauzy_move(p, MoveKind::Top)
}

/// Bottom move `R_b`, the mirror of [`rauzy_top`].
pub fn rauzy_bottom(p: &LabeledPermutation) -> Result<LabeledPermutation, InductionError> {
    rauzy_move(p, MoveKind::Bottom)
}

pub fn rauzy_move(
    p: &LabeledPermutation,
    kind: MoveKind,
) -> Result<LabeledPermutation, InductionError> {
    let (top, bottom, _, _) = labeled_move_rows(p.top(), p.bottom(), kind)?;
    Ok(LabeledPermutation::from_rows_unchecked(
        p.alphabet().clone(),
        top,
        bottom,
    ))
}

/// Rauzy move on a reduced permutation, renumbered back to identity top.
pub fn rauzy_reduced(
    p: &ReducedPermutation,
    kind: MoveKind,
) -> Result<ReducedPermutation, InductionError> {
    let (word, _, _) = reduced_move_word(p.word(), kind)?;
    Ok(ReducedPermutation::from_zero_based_unchecked(word))
}

/// Lengths `lambda` and heights `tau`, indexed by symbol id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionData {
    pub lengths: Vec<Rational>,
    pub heights: Vec<Rational>,
}

impl SuspensionData {
    pub fn new(lengths: Vec<Rational>, heights: Vec<Rational>) -> Result<Self, InductionError> {
        if lengths.len() != heights.len() {
            return Err(InductionError::SizeMismatch {
                expected: lengths.len(),
                got: heights.len(),
            });
        }
        if let Some(i) = lengths.iter().position(|l| !l.is_positive()) {
            return Err(InductionError::NonPositiveLength(i));
        }
        Ok(SuspensionData { lengths, heights })
    }

    /// Builds from integer lengths and heights.
    pub fn from_integers(lengths: &[i128], heights: &[i128]) -> Result<Self, InductionError> {
        SuspensionData::new(
            lengths.iter().map(|&x| Rational::from_integer(x)).collect(),
            heights.iter().map(|&x| Rational::from_integer(x)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

/// Type of the induction step for `(p, lengths)`.
pub fn step_type(p: &LabeledPermutation, lengths: &[Rational]) -> Result<Step, InductionError> {
    let d = p.d();
    if lengths.len() != d {
        return Err(InductionError::SizeMismatch {
            expected: d,
            got: lengths.len(),
        });
    }
    let t = p.top()[d - 1];
    let b = p.bottom()[d - 1];
    if t == b {
        return Err(InductionError::Degenerate);
    }
    let (lt, lb) = (lengths[t as usize], lengths[b as usize]);
    match lt.cmp(&lb) {
        std::cmp::Ordering::Greater => Ok(Step {
            kind: MoveKind::Top,
            winner: t,
            looser: b,
        }),
        std::cmp::Ordering::Less => Ok(Step {
            kind: MoveKind::Bottom,
            winner: b,
            looser: t,
        }),
        std::cmp::Ordering::Equal => Err(InductionError::EqualLengths),
    }
}

/// One Rauzy–Veech step on `(p, lambda, tau)`.
pub fn induce_suspension(
    p: &LabeledPermutation,
    zeta: &SuspensionData,
) -> Result<(LabeledPermutation, SuspensionData, Step), InductionError> {
    if !is_suspension(p, &zeta.heights) {
        return Err(InductionError::NotASuspension);
    }
    let step = step_type(p, &zeta.lengths)?;
    let next = rauzy_move(p, step.kind)?;
    let (w, l) = (step.winner as usize, step.looser as usize);
    let mut lengths = zeta.lengths.clone();
    let mut heights = zeta.heights.clone();
    lengths[w] = lengths[w] - lengths[l];
    heights[w] = heights[w] - heights[l];
    Ok((next, SuspensionData { lengths, heights }, step))
}

/// `lambda = 1`, `tau_a = pi_b(a) - pi_t(a)`. The heights sum to zero, so the
/// two broken lines share both endpoints on the horizontal axis.
pub fn canonical_suspension(p: &LabeledPermutation) -> Result<SuspensionData, InductionError> {
    if !p.is_irreducible() {
        return Err(InductionError::Reducible(p.to_string()));
    }
    let pt = p.top_positions();
    let pb = p.bottom_positions();
    let heights = pt
        .iter()
        .zip(&pb)
        .map(|(&t, &b)| Rational::from_integer(b as i128 - t as i128))
        .collect();
    Ok(SuspensionData {
        lengths: vec![Rational::one(); p.d()],
        heights,
    })
}

/// Top partial sums of `tau` are positive and bottom partial sums negative,
/// for every proper prefix.
pub fn is_suspension(p: &LabeledPermutation, heights: &[Rational]) -> bool {
    let d = p.d();
    if heights.len() != d {
        return false;
    }
    let mut top = Rational::zero();
    let mut bottom = Rational::zero();
    for k in 0..d - 1 {
        top += heights[p.top()[k] as usize];
        bottom += heights[p.bottom()[k] as usize];
        if !top.is_positive() || !bottom.is_negative() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::irreducible_permutations;
    use std::collections::HashSet;

    fn lp(s: &str) -> LabeledPermutation {
        LabeledPermutation::parse(s).unwrap()
    }

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    /// Literal transcription of the case formula for `pi_b'^{-1}`, on
    /// 1-based positions. Used as an oracle for the top move.
    fn top_move_oracle(top: &[usize], bottom: &[usize]) -> Vec<usize> {
        let d = top.len();
        let inv_b = |j: usize| bottom[j - 1];
        let pi_b = |a: usize| bottom.iter().position(|&x| x == a).unwrap() + 1;
        let k = pi_b(top[d - 1]);
        assert!(k < d);
        (1..=d)
            .map(|j| {
                if j <= k {
                    inv_b(j)
                } else if j == k + 1 {
                    inv_b(d)
                } else {
                    inv_b(j - 1)
                }
            })
            .collect()
    }

    #[test]
    fn top_move_examples() {
        let p = rauzy_top(&lp("1 2 3 4 / 4 3 2 1")).unwrap();
        assert_eq!(p.to_string(), "1 2 3 4 / 4 1 3 2");
        let p = rauzy_top(&lp("1 2 / 2 1")).unwrap();
        assert_eq!(p.to_string(), "1 2 / 2 1");
        // k = d - 1: reinsertion puts the last symbol back where it was
        assert_eq!(top_move_oracle(&[1, 2, 3], &[1, 3, 2]), vec![1, 3, 2]);
        let p = rauzy_top(&lp("1 2 3 / 1 3 2")).unwrap();
        assert_eq!(p.to_string(), "1 2 3 / 1 3 2");
    }

    #[test]
    fn bottom_move_examples() {
        let p = rauzy_bottom(&lp("1 2 3 4 / 4 3 2 1")).unwrap();
        assert_eq!(p.to_string(), "1 4 2 3 / 4 3 2 1");
        let p = rauzy_bottom(&lp("1 2 / 2 1")).unwrap();
        assert_eq!(p.to_string(), "1 2 / 2 1");
        assert_eq!(
            rauzy_bottom(&lp("1 2 3 / 2 1 3")),
            Err(InductionError::Degenerate)
        );
        assert_eq!(
            rauzy_top(&lp("1 2 3 / 2 1 3")),
            Err(InductionError::Degenerate)
        );
    }

    #[test]
    fn top_move_matches_literal_formula() {
        for d in 2..=6 {
            let mut word: Vec<Symbol> = (0..d as Symbol).collect();
            loop {
                if word[d - 1] as usize != d - 1 {
                    let p = ReducedPermutation::from_word(
                        &word.iter().map(|&w| w as usize + 1).collect::<Vec<_>>(),
                    )
                    .unwrap()
                    .embed();
                    let top: Vec<usize> = (1..=d).collect();
                    let bottom: Vec<usize> = p.bottom().iter().map(|&s| s as usize + 1).collect();
                    let got: Vec<usize> = rauzy_top(&p)
                        .unwrap()
                        .bottom()
                        .iter()
                        .map(|&s| s as usize + 1)
                        .collect();
                    assert_eq!(got, top_move_oracle(&top, &bottom));
                }
                if !crate::perm::next_permutation(&mut word) {
                    break;
                }
            }
        }
    }

    #[test]
    fn reduced_move_examples() {
        let tau4 = ReducedPermutation::from_word(&[4, 3, 2, 1]).unwrap();
        assert_eq!(
            rauzy_reduced(&tau4, MoveKind::Top)
                .unwrap()
                .word_one_based(),
            vec![4, 1, 3, 2]
        );
        assert_eq!(
            rauzy_reduced(&tau4, MoveKind::Bottom)
                .unwrap()
                .word_one_based(),
            vec![2, 4, 3, 1]
        );
        let tau2 = ReducedPermutation::from_word(&[2, 1]).unwrap();
        for m in MoveKind::BOTH {
            assert_eq!(rauzy_reduced(&tau2, m).unwrap(), tau2);
        }
    }

    fn all_labeled(d: usize) -> Vec<LabeledPermutation> {
        let alphabet = crate::perm::Alphabet::numeric(d);
        let rows: Vec<Vec<Symbol>> = {
            let mut out = Vec::new();
            let mut w: Vec<Symbol> = (0..d as Symbol).collect();
            loop {
                out.push(w.clone());
                if !crate::perm::next_permutation(&mut w) {
                    break;
                }
            }
            out
        };
        let mut out = Vec::new();
        for t in &rows {
            for b in &rows {
                out.push(
                    LabeledPermutation::from_rows(alphabet.clone(), t.clone(), b.clone()).unwrap(),
                );
            }
        }
        out
    }

    #[test]
    fn moves_are_injective() {
        for d in 2..=6 {
            let perms = all_labeled(d);
            for m in MoveKind::BOTH {
                let mut images = HashSet::new();
                let mut count = 0;
                for p in &perms {
                    if let Ok(img) = rauzy_move(p, m) {
                        count += 1;
                        assert!(images.insert(img), "collision at d={d}");
                    }
                }
                assert_eq!(images.len(), count);
            }
        }
    }

    #[test]
    fn reduced_moves_commute_with_reduce() {
        for d in 2..=5 {
            for p in all_labeled(d) {
                for m in MoveKind::BOTH {
                    match rauzy_move(&p, m) {
                        Ok(img) => assert_eq!(rauzy_reduced(&p.reduce(), m).unwrap(), img.reduce()),
                        Err(e) => assert_eq!(rauzy_reduced(&p.reduce(), m), Err(e)),
                    }
                }
            }
        }
    }

    #[test]
    fn step_type_examples() {
        let tau2 = lp("1 2 / 2 1");
        // top-last is `2`, bottom-last is `1`
        let s = step_type(&tau2, &[q(2), q(1)]).unwrap();
        assert_eq!((s.kind, s.winner, s.looser), (MoveKind::Bottom, 0, 1));
        let s = step_type(&tau2, &[q(1), q(2)]).unwrap();
        assert_eq!((s.kind, s.winner, s.looser), (MoveKind::Top, 1, 0));
        assert_eq!(
            step_type(&tau2, &[q(1), q(1)]),
            Err(InductionError::EqualLengths)
        );
    }

    #[test]
    fn induce_example() {
        let tau2 = lp("1 2 / 2 1");
        let zeta = SuspensionData::from_integers(&[2, 1], &[1, -1]).unwrap();
        let (p, z, _) = induce_suspension(&tau2, &zeta).unwrap();
        assert_eq!(p, tau2);
        assert_eq!(z.lengths, vec![q(1), q(1)]);
        assert_eq!(z.heights, vec![q(2), q(-1)]);
        assert!(is_suspension(&p, &z.heights));
    }

    #[test]
    fn canonical_suspension_examples() {
        let z = canonical_suspension(&lp("1 2 3 4 / 4 3 2 1")).unwrap();
        assert_eq!(z.heights, vec![q(3), q(1), q(-1), q(-3)]);
        assert!(z.lengths.iter().all(|l| l.is_one()));
        let z = canonical_suspension(&lp("1 2 / 2 1")).unwrap();
        assert_eq!(z.heights, vec![q(1), q(-1)]);
        assert!(matches!(
            canonical_suspension(&lp("1 2 3 / 1 3 2")),
            Err(InductionError::Reducible(_))
        ));
    }

    #[test]
    fn canonical_suspension_is_valid_everywhere() {
        for d in 2..=7 {
            for p in irreducible_permutations(d) {
                let l = p.embed();
                let z = canonical_suspension(&l).unwrap();
                assert!(is_suspension(&l, &z.heights));
                assert!(z.heights.iter().copied().sum::<Rational>().is_zero());
            }
        }
    }

    #[test]
    fn is_suspension_examples() {
        let tau4 = lp("1 2 3 4 / 4 3 2 1");
        assert!(is_suspension(&tau4, &[q(3), q(1), q(-1), q(-3)]));
        assert!(!is_suspension(&tau4, &[q(-1), q(1), q(1), q(-1)]));
        assert!(is_suspension(&lp("1 2 / 2 1"), &[q(1), q(-1)]));
    }
}
