use std::f64::consts::TAU;

use num_traits::Zero;

use super::*;
use crate::induction::{canonical_suspension, Rational, SuspensionData};
use crate::perm::{irreducible_permutations, LabeledPermutation, ReducedPermutation};

fn lp(s: &str) -> LabeledPermutation {
    LabeledPermutation::parse(s).unwrap()
}

fn canonical(p: &LabeledPermutation) -> PolygonSurface {
    build_polygon(p, &canonical_suspension(p).unwrap()).unwrap()
}

fn sorted_degrees(s: &PolygonSurface) -> Vec<u32> {
    let mut d = cone_degrees(s).degrees;
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

#[test]
fn torus_is_one_flat_point() {
    let s = canonical(&lp("1 2 / 2 1"));
    assert_eq!(s.corners().len(), 4);
    assert_eq!(s.vertex_classes().len(), 1);
    assert!((s.vertex_classes()[0].angle - TAU).abs() < 1e-12);
    assert_eq!(cone_degrees(&s).degrees, vec![0]);
    assert_eq!(cone_degrees(&s).marked_degree(), 0);
    assert_eq!(s.genus(), 1);
}

#[test]
fn symmetric_permutation_profiles() {
    let s = canonical(&lp("1 2 3 4 / 4 3 2 1"));
    assert_eq!(s.vertex_classes().len(), 1);
    assert!((s.vertex_classes()[0].angle - 3.0 * TAU).abs() < 1e-9);
    assert_eq!(sorted_degrees(&s), vec![2]);

    let s = canonical(&lp("1 2 3 4 5 / 5 4 3 2 1"));
    assert_eq!(sorted_degrees(&s), vec![1, 1]);
    assert_eq!(cone_degrees(&s).marked_degree(), 1);
}

#[test]
fn pi_family_profile() {
    let s = canonical(&lp("0 2 3 1 4 / 4 3 2 1 0"));
    assert_eq!(sorted_degrees(&s), vec![2, 0]);
    assert_eq!(cone_degrees(&s).marked_degree(), 0);
}

#[test]
fn nine_interval_example_is_in_h1111() {
    let s = canonical(&lp("1 2 3 4 5 6 7 8 9 / 9 1 4 3 2 5 8 7 6"));
    assert_eq!(sorted_degrees(&s), vec![1, 1, 1, 1]);
    assert_eq!(s.genus(), 3);
}

#[test]
fn torus_area() {
    let p = lp("1 2 / 2 1");
    let z = SuspensionData::from_integers(&[1, 1], &[1, -1]).unwrap();
    assert_eq!(area(&p, &z), Rational::from_integer(2));
    assert_eq!(
        build_polygon(&p, &z).unwrap().shoelace_area(),
        Rational::from_integer(2)
    );
}

#[test]
fn area_formulas_agree_on_canonical_polygons() {
    for d in 2..=6 {
        for r in irreducible_permutations(d) {
            let p = r.embed();
            let z = canonical_suspension(&p).unwrap();
            let s = build_polygon(&p, &z).unwrap();
            let a = area(&p, &z);
            assert!(a > Rational::zero());
            assert_eq!(a, s.shoelace_area(), "{r}");
        }
    }
}

#[test]
fn crossing_lines_are_rejected() {
    // the last top side touches an interior bottom vertex at (4, -1)
    let p = lp("1 2 3 4 / 4 1 3 2");
    let z = SuspensionData::from_integers(&[1, 1, 1, 2], &[3, -2, 0, -4]).unwrap();
    assert!(crate::induction::is_suspension(&p, &z.heights));
    assert_eq!(build_polygon(&p, &z).unwrap_err(), GeometryError::Crossing);
}

#[test]
fn non_suspension_is_rejected() {
    let p = lp("1 2 3 4 / 4 3 2 1");
    let z = SuspensionData::from_integers(&[1, 1, 1, 1], &[-1, 1, 1, -1]).unwrap();
    assert_eq!(
        build_polygon(&p, &z).unwrap_err(),
        GeometryError::NotASuspension
    );
}

#[test]
fn torus_cycle_basis() {
    let s = canonical(&lp("1 2 / 2 1"));
    let b = cycle_basis(&s).unwrap();
    assert_eq!(b.rank(), 2);
    let x = b.intersection[0][1];
    assert_eq!(x.abs(), 1);
    assert_eq!(b.intersection, vec![vec![0, x], vec![-x, 0]]);
}

#[test]
fn genus_two_cycle_basis() {
    let s = canonical(&lp("1 2 3 4 / 4 3 2 1"));
    assert_eq!(cycle_basis(&s).unwrap().rank(), 4);
}

#[test]
fn cycle_bases_are_symplectic() {
    for d in 2..=7 {
        for r in irreducible_permutations(d) {
            let s = canonical(&r.embed());
            let b = cycle_basis(&s).unwrap();
            assert_eq!(b.rank(), 2 * s.genus(), "{r}");
            for c in &b.cycles {
                // closed chain: boundary vanishes at every vertex
                let mut boundary = vec![0i64; s.vertex_classes().len()];
                for step in c {
                    let (from, to) = s.edge_ends(step.symbol);
                    let (from, to) = if step.forward { (from, to) } else { (to, from) };
                    boundary[from] -= 1;
                    boundary[to] += 1;
                }
                assert!(boundary.iter().all(|&x| x == 0));
                turning_index(&s, c).unwrap();
            }
            for (i, (ai, bi)) in b.symplectic_basis.iter().enumerate() {
                for (j, (aj, bj)) in b.symplectic_basis.iter().enumerate() {
                    assert_eq!(b.pair(ai, bj), (i == j) as i64);
                    assert_eq!(b.pair(ai, aj), 0);
                    assert_eq!(b.pair(bi, bj), 0);
                }
            }
        }
    }
}

#[test]
fn small_loop_around_a_cone_point_turns_by_its_angle() {
    // a loop edge pushed off with the vertex on its left winds once around it
    let s = canonical(&lp("1 2 3 4 / 4 3 2 1"));
    for c in fundamental_cycles(&s) {
        let ind = turning_index(&s, &c).unwrap();
        assert!(ind.abs() <= 3);
    }
}

#[test]
fn torus_parity_is_odd() {
    // every simple closed geodesic on a flat torus has turning index 0
    assert_eq!(spin_parity(&canonical(&lp("1 2 / 2 1"))).unwrap(), 1);
}

#[test]
fn spin_requires_even_degrees() {
    let s = canonical(&lp("1 2 3 4 5 / 5 4 3 2 1"));
    assert_eq!(spin_parity(&s), Err(GeometryError::OddDegree(1)));
}

/// Arf invariant from the transverse curves crossing each side once. Each
/// is a straight segment inside the polygon closed up by the gluing, so its
/// index is zero and `q = 1`; two of them meet once (mod 2) exactly when
/// their symbols appear in opposite orders on the two rows.
fn side_curve_arf(p: &LabeledPermutation) -> u8 {
    let d = p.d();
    let pt = p.top_positions();
    let pb = p.bottom_positions();
    let omega =
        |a: usize, b: usize| -> u8 { (a != b && ((pt[a] < pt[b]) != (pb[a] < pb[b]))) as u8 };
    let form = |x: &[u8], y: &[u8]| -> u8 {
        let mut t = 0;
        for (a, &xa) in x.iter().enumerate() {
            for (b, &yb) in y.iter().enumerate() {
                t ^= xa & yb & omega(a, b);
            }
        }
        t
    };
    let q = |x: &[u8]| -> u8 {
        let mut t = 0;
        for a in 0..d {
            t ^= x[a];
            for b in a + 1..d {
                t ^= x[a] & x[b] & omega(a, b);
            }
        }
        t
    };
    let mut remaining: Vec<Vec<u8>> = (0..d)
        .map(|a| (0..d).map(|b| (a == b) as u8).collect())
        .collect();
    let mut arf = 0;
    while !remaining.is_empty() {
        let a = remaining.remove(0);
        let Some(j) = remaining.iter().position(|r| form(&a, r) == 1) else {
            assert_eq!(q(&a), 0, "q must vanish on the radical");
            continue;
        };
        let b = remaining.remove(j);
        for u in remaining.iter_mut() {
            let (ub, ua) = (form(u, &b), form(u, &a));
            for k in 0..d {
                u[k] ^= (ub & a[k]) ^ (ua & b[k]);
            }
        }
        arf ^= q(&a) & q(&b);
    }
    arf
}

#[test]
fn spin_parity_matches_side_curve_oracle() {
    let mut checked = 0;
    for d in 2..=7 {
        for r in irreducible_permutations(d) {
            let s = canonical(&r.embed());
            if cone_degrees(&s).degrees.iter().any(|k| k % 2 == 1) {
                continue;
            }
            assert_eq!(spin_parity(&s).unwrap(), side_curve_arf(&r.embed()), "{r}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn spin_parity_ignores_the_suspension() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let r = ReducedPermutation::from_word(&[6, 5, 4, 3, 2, 1]).unwrap();
    let p = r.embed();
    let base = spin_parity(&canonical(&p)).unwrap();
    let canon = canonical_suspension(&p).unwrap();
    let mut tried = 0;
    while tried < 50 {
        let lengths: Vec<Rational> = (0..6)
            .map(|_| Rational::new(rng.gen_range(1..20), rng.gen_range(1..5)))
            .collect();
        // any positive multiple of the canonical heights plus a zero-sum
        // perturbation keeps both endpoints on the axis
        let scale = Rational::from_integer(rng.gen_range(1..4));
        let mut heights: Vec<Rational> = canon.heights.iter().map(|h| *h * scale).collect();
        let shift = Rational::new(rng.gen_range(-3..4), 7);
        heights[0] += shift;
        heights[5] -= shift;
        let z = SuspensionData::new(lengths, heights).unwrap();
        if let Ok(s) = build_polygon(&p, &z) {
            assert_eq!(spin_parity(&s).unwrap(), base);
            assert_eq!(sorted_degrees(&s), vec![4]);
            tried += 1;
        }
    }
}

#[test]
fn hyperelliptic_parity_follows_genus() {
    // floor((g + 1) / 2) mod 2 on hyperelliptic components
    for (d, g) in [(2, 1), (3, 1), (6, 3), (7, 3), (10, 5), (11, 5)] {
        let s = canonical(&ReducedPermutation::symmetric(d).unwrap().embed());
        assert_eq!(s.genus(), g);
        assert_eq!(
            spin_parity(&s).unwrap() as usize,
            g.div_ceil(2) % 2,
            "d={d}"
        );
    }
}
