//! Homology of the glued polygon: fundamental cycles of the edge graph,
//! their intersection form, turning indices of pushed-off representatives,
//! and the parity of the spin structure.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use super::polygon::{Germ, PolygonSurface, ROUNDING_TOLERANCE};
use super::symplectic::{symplectic_reduction, Coefficients};
use super::GeometryError;
use crate::perm::Symbol;

/// One traversal of a surface edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeStep {
    pub symbol: Symbol,
    pub forward: bool,
}

impl EdgeStep {
    fn arrival(self) -> Germ {
        Germ {
            symbol: self.symbol,
            at_end: self.forward,
        }
    }

    fn departure(self) -> Germ {
        Germ {
            symbol: self.symbol,
            at_end: !self.forward,
        }
    }
}

/// A closed walk on the edge graph.
pub type ClosedWalk = Vec<EdgeStep>;

/// Passage of a walk through a vertex: the germ it arrives along and the
/// germ it leaves along.
#[derive(Clone, Copy, Debug)]
struct Visit {
    class: usize,
    arrive: Germ,
    leave: Germ,
}

fn visits(surface: &PolygonSurface, walk: &[EdgeStep]) -> Vec<Visit> {
    let n = walk.len();
    (0..n)
        .map(|i| {
            let leave = walk[(i + 1) % n].departure();
            Visit {
                class: surface.class_of_germ(leave),
                arrive: walk[i].arrival(),
                leave,
            }
        })
        .collect()
}

/// Integer turning number of the walk pushed off its vertices so that each
/// cone point stays on the left of the direction of travel.
///
/// Between vertices the direction is constant. At a vertex the pushed-off
/// curve sweeps counterclockwise from the arrival germ to the departure
/// germ, which turns its tangent by that angle minus a half turn.
pub fn turning_index(surface: &PolygonSurface, walk: &[EdgeStep]) -> Result<i64, GeometryError> {
    let total: f64 = visits(surface, walk)
        .iter()
        .map(|v| surface.angle_between(v.arrive, v.leave) - PI)
        .sum();
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() >= ROUNDING_TOLERANCE {
        return Err(GeometryError::TurningResidue(turns));
    }
    Ok(rounded as i64)
}

/// Algebraic intersection number `a . b` of two closed walks.
///
/// `a` is pushed off as in [`turning_index`]; its arc around a vertex then
/// crosses exactly the germs of `b` that lie strictly between its own
/// arrival and departure germs. A crossing of an outgoing germ of `b`
/// counts `-1`, of an incoming one `+1`.
pub fn intersection(surface: &PolygonSurface, a: &[EdgeStep], b: &[EdgeStep]) -> i64 {
    let vb = visits(surface, b);
    let mut total = 0;
    for va in visits(surface, a) {
        let inside = surface.germs_between(va.arrive, va.leave);
        for v in vb.iter().filter(|v| v.class == va.class) {
            if inside.contains(&v.arrive) {
                total += 1;
            }
            if inside.contains(&v.leave) {
                total -= 1;
            }
        }
    }
    total
}

/// Fundamental cycles of a spanning tree together with their intersection
/// form and a symplectic basis.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub cycles: Vec<ClosedWalk>,
    /// Edge-chain coordinates of each cycle, indexed by symbol.
    pub chains: Vec<Vec<i64>>,
    pub intersection: Vec<Vec<i64>>,
    /// Pairs `(a_i, b_i)` as coefficient vectors over `cycles`.
    pub symplectic_basis: Vec<(Coefficients, Coefficients)>,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Intersection number of two coefficient vectors over `cycles`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                total += xi * self.intersection[i][j] * yj;
            }
        }
        total
    }
}

/// Fundamental cycles of the BFS spanning tree rooted at the marked vertex.
/// Edges are scanned in symbol order, so the basis is deterministic.
pub fn fundamental_cycles(surface: &PolygonSurface) -> Vec<ClosedWalk> {
    let d = surface.d();
    let v = surface.vertex_classes().len();
    let mut adjacency: Vec<Vec<(usize, EdgeStep)>> = vec![Vec::new(); v];
    for s in 0..d {
        let (from, to) = surface.edge_ends(s as Symbol);
        adjacency[from].push((
            to,
            EdgeStep {
                symbol: s as Symbol,
                forward: true,
            },
        ));
        adjacency[to].push((
            from,
            EdgeStep {
                symbol: s as Symbol,
                forward: false,
            },
        ));
    }

    // parent[x] = step from the parent of x to x
    let mut parent: Vec<Option<EdgeStep>> = vec![None; v];
    let mut depth = vec![usize::MAX; v];
    let mut in_tree = vec![false; d];
    let root = surface.marked_class();
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, step) in &adjacency[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some(step);
                in_tree[step.symbol as usize] = true;
                queue.push_back(y);
            }
        }
    }

    let up = |x: usize| -> (usize, EdgeStep) {
        let step = parent[x].expect("non-root vertex");
        let (from, to) = surface.edge_ends(step.symbol);
        let p = if step.forward { from } else { to };
        (p, step)
    };

    let mut cycles = Vec::new();
    for s in (0..d).filter(|&s| !in_tree[s]) {
        let (from, to) = surface.edge_ends(s as Symbol);
        let mut walk = vec![EdgeStep {
            symbol: s as Symbol,
            forward: true,
        }];
        // tree path from `to` back to `from` through their common ancestor
        let (mut x, mut y) = (to, from);
        let mut climb_x = Vec::new();
        let mut climb_y = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let (p, step) = up(x);
                climb_x.push(EdgeStep {
                    symbol: step.symbol,
                    forward: !step.forward,
                });
                x = p;
            } else {
                let (p, step) = up(y);
                climb_y.push(step);
                y = p;
            }
        }
        walk.extend(climb_x);
        walk.extend(climb_y.into_iter().rev());
        cycles.push(walk);
    }
    cycles
}

fn chain(d: usize, walk: &[EdgeStep]) -> Vec<i64> {
    let mut c = vec![0; d];
    for step in walk {
        c[step.symbol as usize] += if step.forward { 1 } else { -1 };
    }
    c
}

pub fn cycle_basis(surface: &PolygonSurface) -> Result<CycleBasis, GeometryError> {
    let cycles = fundamental_cycles(surface);
    let intersection: Vec<Vec<i64>> = cycles
        .iter()
        .map(|a| cycles.iter().map(|b| intersection(surface, a, b)).collect())
        .collect();
    let symplectic_basis = symplectic_reduction(&intersection)?;
    let chains = cycles.iter().map(|c| chain(surface.d(), c)).collect();
    Ok(CycleBasis {
        cycles,
        chains,
        intersection,
        symplectic_basis,
    })
}

/// Parity of the spin structure, `sum (ind(a_i) + 1)(ind(b_i) + 1) mod 2`
/// over a symplectic basis.
///
/// The fundamental cycles are simple closed curves, so `ind + 1 mod 2` is
/// read off their turning indices directly. On the symplectic basis it is
/// extended by `q(x + y) = q(x) + q(y) + x . y mod 2`.
pub fn spin_parity(surface: &PolygonSurface) -> Result<u8, GeometryError> {
    if let Some(odd) = surface
        .vertex_classes()
        .iter()
        .map(|c| c.degree)
        .find(|k| k % 2 == 1)
    {
        return Err(GeometryError::OddDegree(odd));
    }
    let basis = cycle_basis(surface)?;
    let q_cycles = basis
        .cycles
        .iter()
        .map(|c| turning_index(surface, c).map(|ind| (ind + 1).rem_euclid(2)))
        .collect::<Result<Vec<_>, _>>()?;
    let q = |x: &[i64]| -> i64 {
        let mut total = 0;
        for i in 0..x.len() {
            total += x[i] * q_cycles[i];
            for j in i + 1..x.len() {
                total += x[i] * x[j] * basis.intersection[i][j];
            }
        }
        total.rem_euclid(2)
    };
    let arf: i64 = basis
        .symplectic_basis
        .iter()
        .map(|(a, b)| q(a) * q(b))
        .sum();
    Ok(arf.rem_euclid(2) as u8)
}
