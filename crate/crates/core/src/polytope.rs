//! V-representation polytopes over `Q` with exact vertex extraction, facet
//! enumeration, projections, fibers, volumes, and pulling triangulations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::linalg::{
    AffineHull, IntHyperplane, QMatrix, affine_hull, coordinates_in_affine_basis,
    hyperplane_equation, sub_points,
};
use crate::lp::in_convex_hull;
use crate::rational::{Int, Rat, ceil_int, floor_int};

/// Facet orientation with respect to the last coordinate axis: positive
/// facets face upward, negative facets face downward, vertical facets contain
/// the vertical direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetSign {
    Positive,
    Negative,
    Vertical,
}

/// A facet of a full-dimensional polytope. The hyperplane is oriented
/// outward: `alpha . x <= a` holds on the polytope.
#[derive(Clone, Debug)]
pub struct Facet {
    pub hyperplane: IntHyperplane,
    /// Indices into the vertex list, sorted ascending; these span dimension
    /// `d - 1`.
    pub incident_vertices: Vec<usize>,
    pub sign: FacetSign,
}

fn facet_sign(h: &IntHyperplane) -> FacetSign {
    let last = h.last_coefficient();
    if last.is_positive() {
        FacetSign::Positive
    } else if last.is_negative() {
        FacetSign::Negative
    } else {
        FacetSign::Vertical
    }
}

/// Convex polytope given by generating points. Vertices and (for
/// full-dimensional polytopes) outward-oriented facets are computed once at
/// construction; every value is immutable afterwards.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    points: Vec<Vec<Rat>>,
    vertices: Vec<Vec<Rat>>,
    facets: Option<Vec<Facet>>,
}

impl Polytope {
    /// Builds the polytope `conv(points)` in `R^dim`. Vertices are extracted
    /// exactly and stored in lexicographic order; facets are enumerated when
    /// the polytope is full-dimensional.
    pub fn from_points(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        let vertices = extract_vertices(&points)?;
        let full = affine_hull(&vertices)?.dim == dim;
        let facets = if full {
            let data = facet_data(dim, &vertices)?;
            Some(
                data.into_iter()
                    .map(|(hyperplane, incident_vertices)| Facet {
                        sign: facet_sign(&hyperplane),
                        hyperplane,
                        incident_vertices,
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok(Polytope {
            dim,
            points,
            vertices,
            facets,
        })
    }

    pub fn from_integer_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
            .collect();
        Self::from_points(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// Extreme points, lexicographically sorted.
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.facets.is_some()
    }

    /// Outward-oriented facets; errors for degenerate (non-full-dimensional)
    /// polytopes.
    pub fn facets(&self) -> Result<&[Facet]> {
        self.facets.as_deref().ok_or(Error::DegeneratePolytope)
    }

    /// True iff `x` satisfies every facet inequality.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let facets = self.facets()?;
        Ok(facets
            .iter()
            .all(|f| f.hyperplane.dot(x) <= Rat::from_integer(f.hyperplane.a.clone())))
    }

    /// True iff `x` satisfies every facet inequality strictly.
    pub fn contains_in_interior(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let facets = self.facets()?;
        Ok(facets
            .iter()
            .all(|f| f.hyperplane.dot(x) < Rat::from_integer(f.hyperplane.a.clone())))
    }

    /// Drops the last `count` coordinates of every generating point and
    /// rebuilds; `count = 0` is the identity, `count = dim` the
    /// zero-dimensional point.
    pub fn project(&self, count: usize) -> Result<Polytope> {
        if count > self.dim {
            return Err(Error::ProjectionOutOfRange {
                count,
                dim: self.dim,
            });
        }
        if count == 0 {
            return Ok(self.clone());
        }
        let target = self.dim - count;
        let projected: Vec<Vec<Rat>> = self.points.iter().map(|p| p[..target].to_vec()).collect();
        Polytope::from_points(target, projected)
    }

    /// Intersection of the polytope with the vertical line over `y`, as its
    /// lowest and highest points `(n, p)`; `None` when `y` is outside the
    /// projection.
    pub fn fiber(&self, y: &[Rat]) -> Result<Option<(Vec<Rat>, Vec<Rat>)>> {
        if self.dim == 0 || y.len() != self.dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim.saturating_sub(1),
                got: y.len(),
            });
        }
        let facets = self.facets()?;
        let mut lower: Option<Rat> = None;
        let mut upper: Option<Rat> = None;
        for facet in facets {
            let h = &facet.hyperplane;
            let mut partial = Rat::zero();
            for (c, v) in h.alpha[..self.dim - 1].iter().zip(y) {
                partial += Rat::from_integer(c.clone()) * v;
            }
            let slack = Rat::from_integer(h.a.clone()) - partial;
            let last = h.last_coefficient();
            if last.is_zero() {
                // Vertical facet: a pure constraint on y.
                if slack.is_negative() {
                    return Ok(None);
                }
            } else {
                let bound = slack / Rat::from_integer(last.clone());
                if last.is_positive() {
                    upper = Some(match upper {
                        None => bound,
                        Some(u) => u.min(bound),
                    });
                } else {
                    lower = Some(match lower {
                        None => bound,
                        Some(l) => l.max(bound),
                    });
                }
            }
        }
        match (lower, upper) {
            (Some(lo), Some(hi)) if lo <= hi => {
                let mut n = y.to_vec();
                n.push(lo);
                let mut p = y.to_vec();
                p.push(hi);
                Ok(Some((n, p)))
            }
            _ => Ok(None),
        }
    }

    /// True iff the fiber over every boundary point of the projection is a
    /// single point; for polytopes this is exactly the absence of vertical
    /// facets.
    pub fn satisfies_unique_boundary_fiber(&self) -> Result<bool> {
        Ok(self.facets()?.iter().all(|f| f.sign != FacetSign::Vertical))
    }

    /// Euclidean volume in the ambient space: 1 in `R^0`, 0 for degenerate
    /// polytopes, otherwise the sum of simplex volumes over a pulling
    /// triangulation.
    pub fn volume(&self) -> Rat {
        if self.dim == 0 {
            return Rat::one();
        }
        if !self.is_full_dimensional() {
            return Rat::zero();
        }
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        let triangulation = self
            .pulling_triangulation(&order)
            .expect("full-dimensional polytope triangulates");
        triangulation
            .simplices
            .iter()
            .map(Simplex::volume)
            .fold(Rat::zero(), |acc, v| acc + v)
    }

    /// The dilate `m * P`. Vertices and facet incidences carry over; facet
    /// offsets scale and the equations are re-reduced to primitive form
    /// without disturbing the outward orientation.
    pub fn dilate(&self, m: u32) -> Polytope {
        assert!(m >= 1, "dilation factor must be positive");
        let factor = Rat::from_integer(Int::from(m));
        let scale = |pts: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
            pts.iter()
                .map(|p| p.iter().map(|c| &factor * c).collect())
                .collect()
        };
        let facets = self.facets.as_ref().map(|facets| {
            facets
                .iter()
                .map(|f| {
                    let mut alpha = f.hyperplane.alpha.clone();
                    let mut a = &f.hyperplane.a * Int::from(m);
                    let mut g = a.clone();
                    for c in &alpha {
                        g = num_integer::Integer::gcd(&g, c);
                    }
                    if !g.is_zero() && !g.is_one() {
                        for c in alpha.iter_mut() {
                            *c /= &g;
                        }
                        a /= &g;
                    }
                    Facet {
                        hyperplane: IntHyperplane { alpha, a },
                        incident_vertices: f.incident_vertices.clone(),
                        sign: f.sign,
                    }
                })
                .collect()
        });
        Polytope {
            dim: self.dim,
            points: scale(&self.points),
            vertices: scale(&self.vertices),
            facets,
        }
    }

    /// Image of the polytope under an invertible matrix, rebuilt from the
    /// mapped generating points.
    pub fn linear_image(&self, matrix: &QMatrix) -> Result<Polytope> {
        let mapped = self
            .points
            .iter()
            .map(|p| matrix.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_points(self.dim, mapped)
    }

    /// Pulling triangulation: cones the first vertex in `apex_order` over the
    /// recursively triangulated facets that do not contain it. Introduces no
    /// new vertices and is deterministic given the order.
    pub fn pulling_triangulation(&self, apex_order: &[usize]) -> Result<Triangulation> {
        let n = self.vertices.len();
        if !self.is_full_dimensional() {
            return Err(Error::DegeneratePolytope);
        }
        let mut seen = vec![false; n];
        if apex_order.len() != n {
            return Err(Error::InvalidApexOrder);
        }
        for &i in apex_order {
            if i >= n || seen[i] {
                return Err(Error::InvalidApexOrder);
            }
            seen[i] = true;
        }
        let mut rank = vec![0usize; n];
        for (pos, &i) in apex_order.iter().enumerate() {
            rank[i] = pos;
        }
        let all: Vec<usize> = (0..n).collect();
        let index_simplices = pull_indices(&all, &self.vertices, self.dim, &rank)?;
        let simplices = index_simplices
            .iter()
            .map(|idx| {
                Simplex::new(
                    self.dim,
                    idx.iter().map(|&i| self.vertices[i].clone()).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Triangulation {
            simplices,
            steiner_points: Vec::new(),
        })
    }

    /// All lattice points of the polytope, in lexicographic order, by
    /// recursive fiber scan over the lattice points of the projection.
    pub fn lattice_points(&self) -> Result<Vec<Vec<Int>>> {
        if self.dim == 0 {
            return Ok(vec![Vec::new()]);
        }
        let shadow = self.project(1)?;
        let mut out = Vec::new();
        for y in shadow.lattice_points()? {
            let y_rat: Vec<Rat> = y.iter().cloned().map(Rat::from_integer).collect();
            if let Some((n, p)) = self.fiber(&y_rat)? {
                let lo = ceil_int(n.last().expect("fiber point"));
                let hi = floor_int(p.last().expect("fiber point"));
                let mut t = lo;
                while t <= hi {
                    let mut point = y.clone();
                    point.push(t.clone());
                    out.push(point);
                    t += 1;
                }
            }
        }
        Ok(out)
    }

    /// `|L(P)|` without materializing the last axis.
    pub fn lattice_point_count(&self) -> Result<Int> {
        if self.dim == 0 {
            return Ok(Int::one());
        }
        let shadow = self.project(1)?;
        let mut total = Int::zero();
        for y in shadow.lattice_points()? {
            let y_rat: Vec<Rat> = y.iter().cloned().map(Rat::from_integer).collect();
            if let Some((n, p)) = self.fiber(&y_rat)? {
                let lo = ceil_int(n.last().expect("fiber point"));
                let hi = floor_int(p.last().expect("fiber point"));
                if lo <= hi {
                    total += hi - lo + 1;
                }
            }
        }
        Ok(total)
    }
}

/// Exactly the extreme points of `conv(points)`, lexicographically sorted.
/// A point is kept iff it is not a convex combination of the other distinct
/// points, decided by exact linear feasibility.
pub fn extract_vertices(points: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let distinct: Vec<Vec<Rat>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if distinct.len() == 1 {
        return Ok(distinct);
    }
    let mut vertices = Vec::new();
    for (i, candidate) in distinct.iter().enumerate() {
        let others: Vec<&Vec<Rat>> = distinct
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p)
            .collect();
        if !in_convex_hull(candidate, &others) {
            vertices.push(candidate.clone());
        }
    }
    Ok(vertices)
}

/// Enumerates the supporting facet hyperplanes of `conv(vertices)` in `R^dim`
/// (full-dimensional input), outward-oriented, deduplicated by primitive
/// form, with sorted incident vertex indices. Returned in canonical
/// hyperplane order.
pub(crate) fn facet_data(
    dim: usize,
    vertices: &[Vec<Rat>],
) -> Result<Vec<(IntHyperplane, Vec<usize>)>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let n = vertices.len();
    let mut found: BTreeMap<IntHyperplane, Vec<usize>> = BTreeMap::new();
    for combo in k_subsets(n, dim) {
        let pts: Vec<Vec<Rat>> = combo.iter().map(|&i| vertices[i].clone()).collect();
        let Ok(h) = hyperplane_equation(&pts) else {
            continue;
        };
        if found.contains_key(&h) || found.contains_key(&h.negated()) {
            continue;
        }
        let a = Rat::from_integer(h.a.clone());
        let mut any_below = false;
        let mut any_above = false;
        for v in vertices {
            let val = h.dot(v);
            if val < a {
                any_below = true;
            } else if val > a {
                any_above = true;
            }
            if any_below && any_above {
                break;
            }
        }
        let oriented = match (any_below, any_above) {
            (true, true) => continue,     // cuts through the polytope
            (false, false) => continue,   // all vertices on it: degenerate
            (true, false) => h,           // alpha . x <= a already holds
            (false, true) => h.negated(), // flip outward
        };
        let bound = Rat::from_integer(oriented.a.clone());
        let incident: Vec<usize> = (0..n)
            .filter(|&i| oriented.dot(&vertices[i]) == bound)
            .collect();
        found.insert(oriented, incident);
    }
    Ok(found.into_iter().collect())
}

/// A full-dimensional simplex: `dim + 1` affinely independent points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
}

impl Simplex {
    pub fn new(dim: usize, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if vertices.len() != dim + 1 {
            return Err(Error::WrongAffineDimension {
                expected: dim,
                got: vertices.len().saturating_sub(1),
            });
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        if affine_hull(&vertices)?.dim != dim {
            return Err(Error::WrongAffineDimension {
                expected: dim,
                got: affine_hull(&vertices)?.dim,
            });
        }
        Ok(Simplex { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// `|det(edge matrix)| / dim!`.
    pub fn volume(&self) -> Rat {
        if self.dim == 0 {
            return Rat::one();
        }
        let rows: Vec<Vec<Rat>> = self.vertices[1..]
            .iter()
            .map(|v| sub_points(v, &self.vertices[0]))
            .collect();
        let det = QMatrix::from_rows(rows)
            .expect("edge matrix is rectangular")
            .det()
            .expect("edge matrix is square");
        let mut factorial = Int::one();
        for i in 1..=self.dim {
            factorial *= Int::from(i);
        }
        det.abs() / Rat::from_integer(factorial)
    }

    /// The `dim + 1` facet hyperplanes, outward-oriented.
    pub fn facet_hyperplanes(&self) -> Vec<IntHyperplane> {
        let mut out = Vec::with_capacity(self.dim + 1);
        for omit in 0..self.vertices.len() {
            let pts: Vec<Vec<Rat>> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .map(|(_, v)| v.clone())
                .collect();
            let h = hyperplane_equation(&pts).expect("simplex facet spans a hyperplane");
            let omitted = &self.vertices[omit];
            let oriented = if h.dot(omitted) < Rat::from_integer(h.a.clone()) {
                h
            } else {
                h.negated()
            };
            out.push(oriented);
        }
        out
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        Polytope::from_points(self.dim, self.vertices.clone())
    }
}

/// A set of simplices covering a polytope, possibly using auxiliary points
/// that are not vertices of the polytope.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub simplices: Vec<Simplex>,
    pub steiner_points: Vec<Vec<Rat>>,
}

/// Checks that every simplex lies in `p`, that the simplex volumes sum to the
/// volume of `p`, and that every pair of simplices is weakly separated by a
/// hyperplane from one of their facet lists (hence interior-disjoint).
pub fn validate_triangulation(p: &Polytope, t: &Triangulation) -> Result<bool> {
    for s in &t.simplices {
        if s.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: s.dim(),
            });
        }
    }
    if t.simplices.is_empty() {
        return Ok(false);
    }
    for s in &t.simplices {
        for v in s.vertices() {
            if !p.contains(v)? {
                return Ok(false);
            }
        }
    }
    let total: Rat = t
        .simplices
        .iter()
        .map(Simplex::volume)
        .fold(Rat::zero(), |acc, v| acc + v);
    if total != p.volume() {
        return Ok(false);
    }
    for i in 0..t.simplices.len() {
        for j in i + 1..t.simplices.len() {
            if !weakly_separated(&t.simplices[i], &t.simplices[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff some facet hyperplane of `s` or `t` has `s` and `t` weakly on
/// opposite sides.
fn weakly_separated(s: &Simplex, t: &Simplex) -> bool {
    let candidates = s
        .facet_hyperplanes()
        .into_iter()
        .chain(t.facet_hyperplanes());
    for h in candidates {
        let a = Rat::from_integer(h.a.clone());
        let s_le = s.vertices().iter().all(|v| h.dot(v) <= a);
        let s_ge = s.vertices().iter().all(|v| h.dot(v) >= a);
        let t_le = t.vertices().iter().all(|v| h.dot(v) <= a);
        let t_ge = t.vertices().iter().all(|v| h.dot(v) >= a);
        if (s_le && t_ge) || (s_ge && t_le) {
            return true;
        }
    }
    false
}

/// Recursive pulling of a face given by `subset` (global vertex indices) with
/// embedded coordinates `embed` in `R^k`; returns simplices as global index
/// lists, apex first.
fn pull_indices(
    subset: &[usize],
    embed: &[Vec<Rat>],
    k: usize,
    rank: &[usize],
) -> Result<Vec<Vec<usize>>> {
    debug_assert_eq!(subset.len(), embed.len());
    if subset.len() == k + 1 {
        return Ok(vec![subset.to_vec()]);
    }
    let apex_pos = (0..subset.len())
        .min_by_key(|&i| rank[subset[i]])
        .expect("nonempty face");
    let apex_global = subset[apex_pos];
    let mut out = Vec::new();
    for (_, incident) in facet_data(k, embed)? {
        if incident.contains(&apex_pos) {
            continue;
        }
        let sub_subset: Vec<usize> = incident.iter().map(|&i| subset[i]).collect();
        let face_points: Vec<Vec<Rat>> = incident.iter().map(|&i| embed[i].clone()).collect();
        let hull: AffineHull = affine_hull(&face_points)?;
        debug_assert_eq!(hull.dim, k - 1);
        let sub_embed: Vec<Vec<Rat>> = face_points
            .iter()
            .map(|pnt| {
                coordinates_in_affine_basis(&hull, pnt)
                    .expect("facet point lies in its own affine hull")
            })
            .collect();
        for mut simplex in pull_indices(&sub_subset, &sub_embed, k - 1, rank)? {
            let mut with_apex = vec![apex_global];
            with_apex.append(&mut simplex);
            out.push(with_apex);
        }
    }
    Ok(out)
}
