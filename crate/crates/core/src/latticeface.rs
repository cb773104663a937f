//! The lattice-face and projection-general-position predicates, lattice
//! counting over the nonnegative part, and the search for triangulations into
//! lattice-face simplices.
//!
//! A full-dimensional polytope is *lattice-face* when, for every `k` and
//! every vertex subset spanning a `k`-flat, the lattice points of that flat
//! project onto `Z^k` under dropping the last `d - k` coordinates. The
//! equivalent test used here: the flat is the graph of an affine map
//! `y -> C y + e` over its projection, and lattice points project onto `Z^k`
//! exactly when `C` and `e` are integral.

use num_traits::Zero;

use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, affine_hull};
use crate::polytope::{Polytope, Triangulation, validate_triangulation};
use crate::rational::{Int, Rat, ceil_int, floor_int, to_rat_point};

/// Why a vertex-subset flat fails the check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessReason {
    /// The flat loses dimension under the coordinate-dropping projection.
    ProjectionDropsDimension,
    /// The flat projects with full dimension but its lattice does not cover
    /// the target lattice.
    LatticeNotOnto,
}

impl WitnessReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessReason::ProjectionDropsDimension => "projection-drops-dimension",
            WitnessReason::LatticeNotOnto => "lattice-not-onto",
        }
    }
}

/// First failing flat found by a predicate scan: an affinely independent
/// subset of size `k + 1` spanning a `k`-flat, with the failure reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatWitness {
    pub subset: Vec<usize>,
    pub k: usize,
    pub reason: WitnessReason,
}

/// Outcome of a predicate with an optional first failing witness. The scan
/// order is deterministic: `k` ascending, subsets lexicographic.
#[derive(Clone, Debug)]
pub struct PredicateReport {
    pub holds: bool,
    pub witness: Option<FlatWitness>,
}

impl PredicateReport {
    fn pass() -> Self {
        PredicateReport {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Option<FlatWitness>) -> Self {
        PredicateReport {
            holds: false,
            witness,
        }
    }
}

/// Splits the affine hull of `points` (spanning a `k`-flat in `R^d`) into the
/// graph data of the map `y -> C y + e` from `R^k` to `R^(d-k)`; `None` when
/// the projection of the flat drops dimension.
fn graph_map(points: &[Vec<Rat>], k: usize) -> Result<Option<(QMatrix, Vec<Rat>)>> {
    let hull = affine_hull(points)?;
    let d = hull.base.len();
    debug_assert_eq!(hull.dim, k);
    let projected: Vec<Vec<Rat>> = points.iter().map(|p| p[..k].to_vec()).collect();
    if affine_hull(&projected)?.dim < k {
        return Ok(None);
    }
    // Directions split as (eta_i, zeta_i); the eta block is invertible since
    // the projection keeps dimension k.
    let eta = QMatrix::from_rows(
        (0..k)
            .map(|row| hull.basis.iter().map(|b| b[row].clone()).collect())
            .collect(),
    )?;
    let zeta = QMatrix::from_rows(
        (k..d)
            .map(|row| hull.basis.iter().map(|b| b[row].clone()).collect())
            .collect(),
    )?;
    let c = zeta.mul(&eta.inverse()?)?;
    let y0 = &hull.base[..k];
    let z0 = &hull.base[k..];
    let cy0 = c.apply(y0)?;
    let e: Vec<Rat> = z0.iter().zip(&cy0).map(|(z, v)| z - v).collect();
    Ok(Some((c, e)))
}

/// True iff the lattice of `aff(points)` (a `k`-flat in `R^d`) projects onto
/// `Z^k` under dropping the last `d - k` coordinates. Errors when the affine
/// span does not have dimension exactly `k`.
pub fn lattice_projects_onto(points: &[Vec<Rat>], k: usize) -> Result<bool> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.len();
    if k >= d {
        return Err(Error::WrongAffineDimension {
            expected: k,
            got: d,
        });
    }
    let hull = affine_hull(points)?;
    if hull.dim != k {
        return Err(Error::WrongAffineDimension {
            expected: k,
            got: hull.dim,
        });
    }
    match graph_map(points, k)? {
        None => Ok(false),
        Some((c, e)) => {
            let integral =
                c.rows().iter().flatten().all(Rat::is_integer) && e.iter().all(Rat::is_integer);
            Ok(integral)
        }
    }
}

fn first_failing_flat(
    points: &[Vec<Rat>],
    d: usize,
    check_lattice: bool,
) -> Result<Option<FlatWitness>> {
    let n = points.len();
    for k in 0..d {
        for subset in k_subsets(n, k + 1) {
            let pts: Vec<Vec<Rat>> = subset.iter().map(|&i| points[i].clone()).collect();
            if affine_hull(&pts)?.dim != k {
                continue;
            }
            match graph_map(&pts, k)? {
                None => {
                    return Ok(Some(FlatWitness {
                        subset,
                        k,
                        reason: WitnessReason::ProjectionDropsDimension,
                    }));
                }
                Some((c, e)) => {
                    if check_lattice {
                        let integral = c.rows().iter().flatten().all(Rat::is_integer)
                            && e.iter().all(Rat::is_integer);
                        if !integral {
                            return Ok(Some(FlatWitness {
                                subset,
                                k,
                                reason: WitnessReason::LatticeNotOnto,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// True iff `aff(points) = R^d` and no vertex-subset flat loses dimension
/// under the coordinate-dropping projections.
pub fn is_pi_general_position(points: &[Vec<Rat>]) -> PredicateReport {
    let Some(first) = points.first() else {
        return PredicateReport::fail(None);
    };
    let d = first.len();
    match affine_hull(points) {
        Ok(hull) if hull.dim == d => {}
        _ => return PredicateReport::fail(None),
    }
    match first_failing_flat(points, d, false) {
        Ok(None) => PredicateReport::pass(),
        Ok(Some(w)) => PredicateReport::fail(Some(w)),
        Err(_) => PredicateReport::fail(None),
    }
}

/// The lattice-face predicate for a full-dimensional polytope: every
/// affinely independent vertex subset must pass [`lattice_projects_onto`].
/// Subset indices in the witness refer to the sorted vertex list.
pub fn is_lattice_face(p: &Polytope) -> Result<PredicateReport> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    let witness = first_failing_flat(p.vertices(), p.dim(), true)?;
    Ok(match witness {
        None => PredicateReport::pass(),
        Some(w) => PredicateReport::fail(Some(w)),
    })
}

/// True iff `x` lies in the nonnegative part of `p`: inside the polytope but
/// not the lowest point of its vertical fiber.
pub fn omega_membership(p: &Polytope, x: &[Int]) -> Result<bool> {
    let x_rat = to_rat_point(x);
    if !p.contains(&x_rat)? {
        return Ok(false);
    }
    let (n, _) = p
        .fiber(&x_rat[..p.dim() - 1])?
        .expect("contained point has a nonempty fiber");
    Ok(x_rat.last() != n.last())
}

/// `|L(Omega(p))|`: lattice points of the polytope minus its negative
/// boundary, counted by a recursive fiber scan over the projection.
pub fn count_omega_lattice_points(p: &Polytope) -> Result<Int> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    let shadow = p.project(1)?;
    let mut total = Int::zero();
    for y in shadow.lattice_points()? {
        let y_rat = to_rat_point(&y);
        let Some((n, top)) = p.fiber(&y_rat)? else {
            continue;
        };
        let lo = n.last().expect("fiber point");
        let hi = top.last().expect("fiber point");
        // Integers in the half-open fiber (lo, hi].
        let lowest = if lo.is_integer() {
            lo.to_integer() + 1
        } else {
            ceil_int(lo)
        };
        let highest = floor_int(hi);
        if lowest <= highest {
            total += highest - lowest + 1;
        }
    }
    Ok(total)
}

/// The integral points of the negative boundary, one per lattice point of the
/// projection whose fiber minimum is integral, in projection order. Requires
/// the unique-boundary-fiber property (no vertical facets).
pub fn negative_boundary_lattice_points(p: &Polytope) -> Result<Vec<Vec<Int>>> {
    if !p.satisfies_unique_boundary_fiber()? {
        return Err(Error::VerticalFacet);
    }
    let shadow = p.project(1)?;
    let mut out = Vec::new();
    for y in shadow.lattice_points()? {
        let y_rat = to_rat_point(&y);
        let Some((n, _)) = p.fiber(&y_rat)? else {
            continue;
        };
        let lo = n.last().expect("fiber point");
        if lo.is_integer() {
            let mut point = y.clone();
            point.push(lo.to_integer());
            out.push(point);
        }
    }
    Ok(out)
}

fn all_simplices_lattice_face(t: &Triangulation) -> Result<bool> {
    for s in &t.simplices {
        let report = is_lattice_face(&s.to_polytope()?)?;
        if !report.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for a triangulation of `p` into lattice-face simplices.
///
/// With a witness: the witness is validated geometrically (an invalid witness
/// is an error, distinct from not-found) and returned iff all of its
/// simplices are lattice-face. Without one: single-apex pulling orders are
/// tried in vertex order and the first all-lattice-face triangulation wins;
/// `Ok(None)` when none qualifies.
pub fn find_lattice_face_triangulation(
    p: &Polytope,
    witness: Option<&Triangulation>,
) -> Result<Option<Triangulation>> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    if let Some(t) = witness {
        if !validate_triangulation(p, t)? {
            return Err(Error::InvalidWitness);
        }
        if all_simplices_lattice_face(t)? {
            return Ok(Some(t.clone()));
        }
        return Ok(None);
    }
    let n = p.vertices().len();
    for apex in 0..n {
        let mut order = vec![apex];
        order.extend((0..n).filter(|&i| i != apex));
        let t = p.pulling_triangulation(&order)?;
        if all_simplices_lattice_face(&t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
