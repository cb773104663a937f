//! The pipeline that maps any full-dimensional rational polytope onto a
//! lattice-face polytope: first a unit upper-triangular integer shear tilts
//! every vertex-spanned hyperplane off vertical, then a diagonal integer
//! scaling makes every spanned flat's lattice project onto the target
//! lattice.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::latticeface::is_pi_general_position;
use crate::linalg::{IntHyperplane, QMatrix, affine_hull, hyperplane_equation};
use crate::polytope::Polytope;
use crate::rational::{Int, Rat, denominator_lcm, lcm_positive};

/// Provenance of one pipeline stage, in application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Unit upper-triangular shear acting on the leading `v.len()` block of
    /// coordinates; `v` is the chosen avoidance vector (last entry 1).
    Shear { v: Vec<Int> },
    /// Diagonal scaling by the nonzero integers `c`.
    Scale { c: Vec<Int> },
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |ints: &[Int]| {
            ints.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Stage::Shear { v } => write!(f, "shear v=({})", join(v)),
            Stage::Scale { c } => write!(f, "scale c=({})", join(c)),
        }
    }
}

/// An invertible linear map with its exact inverse and stage provenance.
#[derive(Clone, Debug)]
pub struct LinearMap {
    matrix: QMatrix,
    inverse: QMatrix,
    stages: Vec<Stage>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        LinearMap {
            matrix: QMatrix::identity(dim),
            inverse: QMatrix::identity(dim),
            stages: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &QMatrix {
        &self.inverse
    }

    /// Stages in application order (first applied first).
    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn apply_point(&self, p: &[Rat]) -> Result<Vec<Rat>> {
        self.matrix.apply(p)
    }

    pub fn apply_points(&self, points: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
        points.iter().map(|p| self.matrix.apply(p)).collect()
    }

    /// The composite `outer . self` (`self` applied first).
    pub fn then(&self, outer: &LinearMap) -> Result<LinearMap> {
        let matrix = outer.matrix.mul(&self.matrix)?;
        let inverse = self.inverse.mul(&outer.inverse)?;
        let mut stages = self.stages.clone();
        stages.extend(outer.stages.iter().cloned());
        Ok(LinearMap {
            matrix,
            inverse,
            stages,
        })
    }
}

/// The shear with unit diagonal and `-v_i` in the last column, for an integer
/// vector `v` with last entry 1. Any hyperplane whose normal is not
/// orthogonal to `v` becomes non-vertical under it.
pub fn shear_matrix(v: &[Int]) -> Result<LinearMap> {
    let d = v.len();
    if d == 0 || !v[d - 1].is_one() {
        return Err(Error::BadShearVector);
    }
    let mut rows = QMatrix::identity(d).rows().to_vec();
    let mut inv_rows = rows.clone();
    for i in 0..d - 1 {
        rows[i][d - 1] = Rat::from_integer(-v[i].clone());
        inv_rows[i][d - 1] = Rat::from_integer(v[i].clone());
    }
    Ok(LinearMap {
        matrix: QMatrix::from_rows(rows)?,
        inverse: QMatrix::from_rows(inv_rows)?,
        stages: vec![Stage::Shear { v: v.to_vec() }],
    })
}

/// The block-diagonal map `diag(A, 1)`, which commutes with dropping the last
/// coordinate. Errors when `A` is singular.
pub fn lift_block(a: &QMatrix) -> Result<LinearMap> {
    let inner = LinearMap {
        inverse: a.inverse()?,
        matrix: a.clone(),
        stages: Vec::new(),
    };
    Ok(lift_map(&inner))
}

/// Lifts a map of `R^(d-1)` to `diag(A, 1)` on `R^d`, carrying its stages.
fn lift_map(inner: &LinearMap) -> LinearMap {
    let k = inner.dim();
    let embed = |m: &QMatrix| {
        let mut rows = Vec::with_capacity(k + 1);
        for i in 0..k {
            let mut row = m.rows()[i].clone();
            row.push(Rat::zero());
            rows.push(row);
        }
        let mut last = vec![Rat::zero(); k];
        last.push(Rat::one());
        rows.push(last);
        QMatrix::from_rows(rows).expect("lifted matrix is rectangular")
    };
    LinearMap {
        matrix: embed(&inner.matrix),
        inverse: embed(&inner.inverse),
        stages: inner.stages.clone(),
    }
}

/// The diagonal map `diag(c)` for nonzero integers `c`.
pub fn diagonal_map(c: &[Int]) -> Result<LinearMap> {
    if c.iter().any(Int::is_zero) {
        return Err(Error::ZeroScaling);
    }
    let entries: Vec<Rat> = c.iter().cloned().map(Rat::from_integer).collect();
    let inv_entries: Vec<Rat> = entries.iter().map(|e| e.recip()).collect();
    Ok(LinearMap {
        matrix: QMatrix::diagonal(&entries),
        inverse: QMatrix::diagonal(&inv_entries),
        stages: vec![Stage::Scale { c: c.to_vec() }],
    })
}

/// First integer vector `(v_1, ..., v_{d-1}, 1)` with `v . n != 0` for every
/// normal, in the deterministic order: max-norm radius `R = 0, 1, 2, ...`,
/// coordinates `-R..=R` lexicographic. Terminates because the excluded set is
/// a finite union of hyperplanes.
pub fn choose_avoiding_vector(dim: usize, normals: &[Vec<Int>]) -> Vec<Int> {
    debug_assert!(dim >= 1);
    let free = dim - 1;
    let mut radius: i64 = 0;
    loop {
        let mut odometer = vec![-radius; free];
        'candidates: loop {
            let mut v: Vec<Int> = odometer.iter().map(|&c| Int::from(c)).collect();
            v.push(Int::one());
            if normals.iter().all(|n| {
                let dot: Int = n.iter().zip(&v).map(|(a, b)| a * b).sum();
                !dot.is_zero()
            }) {
                return v;
            }
            // Advance the odometer; done when every digit wraps.
            for pos in (0..free).rev() {
                if odometer[pos] < radius {
                    odometer[pos] += 1;
                    for digit in odometer.iter_mut().skip(pos + 1) {
                        *digit = -radius;
                    }
                    continue 'candidates;
                }
            }
            break;
        }
        radius += 1;
    }
}

/// All distinct hyperplanes spanned by subsets of `points`, via primitive
/// equations of affinely independent `d`-subsets, in canonical order.
fn distinct_hyperplane_spans(points: &[Vec<Rat>]) -> Result<Vec<IntHyperplane>> {
    let d = points.first().ok_or(Error::EmptyInput)?.len();
    let mut spans: BTreeSet<IntHyperplane> = BTreeSet::new();
    for combo in k_subsets(points.len(), d) {
        let pts: Vec<Vec<Rat>> = combo.iter().map(|&i| points[i].clone()).collect();
        if let Ok(h) = hyperplane_equation(&pts) {
            spans.insert(h);
        }
    }
    Ok(spans.into_iter().collect())
}

/// Shears a full-dimensional rational point set into projection-general
/// position. The returned map is integer, upper triangular, with unit
/// diagonal (determinant 1).
pub fn to_pi_general_position(points: &[Vec<Rat>]) -> Result<(LinearMap, Vec<Vec<Rat>>)> {
    let d = points.first().ok_or(Error::EmptyInput)?.len();
    let hull = affine_hull(points)?;
    if hull.dim != d {
        return Err(Error::WrongAffineDimension {
            expected: d,
            got: hull.dim,
        });
    }
    if d == 1 {
        return Ok((LinearMap::identity(1), points.to_vec()));
    }
    let normals: Vec<Vec<Int>> = distinct_hyperplane_spans(points)?
        .into_iter()
        .map(|h| h.alpha)
        .collect();
    let v = choose_avoiding_vector(d, &normals);
    let shear = shear_matrix(&v)?;
    let sheared = shear.apply_points(points)?;
    let projected: Vec<Vec<Rat>> = sheared
        .iter()
        .map(|p| p[..d - 1].to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (block, _) = to_pi_general_position(&projected)?;
    let map = shear.then(&lift_map(&block))?;
    let image = map.apply_points(points)?;
    Ok((map, image))
}

/// Last coefficient of the primitive equation of `aff(points)`; nonzero
/// exactly when the span stays full-dimensional under projection.
pub fn facet_scaling_factor(points: &[Vec<Rat>]) -> Result<Int> {
    let h = hyperplane_equation(points)?;
    let last = h.last_coefficient();
    if last.is_zero() {
        return Err(Error::VerticalHyperplane);
    }
    Ok(last.clone())
}

/// Diagonal scaling vector that brings a projection-general-position set into
/// lattice-face position: the first `d - 1` entries come from the projected
/// set, the last is the lcm of the span coefficients of the partially scaled
/// set.
pub fn to_lattice_face_scaling(points: &[Vec<Rat>]) -> Result<Vec<Int>> {
    if !is_pi_general_position(points).holds {
        return Err(Error::NotPiGeneralPosition);
    }
    let d = points.first().ok_or(Error::EmptyInput)?.len();
    if d == 1 {
        return Ok(vec![denominator_lcm(points.iter().map(|p| &p[0]))]);
    }
    let projected: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| p[..d - 1].to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut scaling = to_lattice_face_scaling(&projected)?;
    let mut partial = scaling.clone();
    partial.push(Int::one());
    let partial_map = diagonal_map(&partial)?;
    let scaled = partial_map.apply_points(points)?;
    let mut factors = Vec::new();
    for span in distinct_hyperplane_spans(&scaled)? {
        let last = span.last_coefficient();
        if last.is_zero() {
            return Err(Error::VerticalHyperplane);
        }
        factors.push(last.clone());
    }
    scaling.push(lcm_positive(factors));
    Ok(scaling)
}

/// The full pipeline: shear into projection-general position, then scale
/// diagonally into lattice-face position. Returns the combined map and the
/// transformed polytope.
pub fn make_lattice_face(p: &Polytope) -> Result<(LinearMap, Polytope)> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    let (shear, sheared_vertices) = to_pi_general_position(p.vertices())?;
    let scaling = to_lattice_face_scaling(&sheared_vertices)?;
    let scale = diagonal_map(&scaling)?;
    let map = shear.then(&scale)?;
    let image = p.linear_image(map.matrix())?;
    Ok((map, image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latticeface::is_lattice_face;
    use crate::rational::{rat, rat_int};

    fn pt(coords: &[i64]) -> Vec<Rat> {
        coords.iter().map(|&c| rat_int(c)).collect()
    }

    fn ints(coords: &[i64]) -> Vec<Int> {
        coords.iter().map(|&c| Int::from(c)).collect()
    }

    fn poly(dim: usize, points: &[Vec<i64>]) -> Polytope {
        Polytope::from_integer_points(dim, points).unwrap()
    }

    #[test]
    fn shear_matrix_entries() {
        let m = shear_matrix(&ints(&[2, 1])).unwrap();
        assert_eq!(m.matrix().rows()[0], vec![rat_int(1), rat_int(-2)]);
        assert_eq!(m.matrix().rows()[1], vec![rat_int(0), rat_int(1)]);
        assert_eq!(m.matrix().mul(m.inverse()).unwrap(), QMatrix::identity(2));
        let flipped = shear_matrix(&ints(&[-2, 1])).unwrap();
        assert_eq!(flipped.matrix().rows()[0], vec![rat_int(1), rat_int(2)]);
    }

    #[test]
    fn trivial_shear_is_identity() {
        let m = shear_matrix(&ints(&[0, 0, 1])).unwrap();
        assert_eq!(m.matrix(), &QMatrix::identity(3));
    }

    #[test]
    fn shear_requires_last_entry_one() {
        assert_eq!(
            shear_matrix(&ints(&[1, 2])).unwrap_err(),
            Error::BadShearVector
        );
    }

    #[test]
    fn lift_block_places_the_block() {
        let a = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(0), rat_int(1)],
        ])
        .unwrap();
        let lifted = lift_block(&a).unwrap();
        assert_eq!(lifted.matrix().rows()[0], pt(&[1, 2, 0]));
        assert_eq!(lifted.matrix().rows()[1], pt(&[0, 1, 0]));
        assert_eq!(lifted.matrix().rows()[2], pt(&[0, 0, 1]));
        assert_eq!(
            lift_block(&QMatrix::identity(2)).unwrap().matrix(),
            &QMatrix::identity(3)
        );
    }

    #[test]
    fn lift_block_rejects_singular() {
        let a = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ])
        .unwrap();
        assert_eq!(lift_block(&a).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn lift_commutes_with_projection() {
        let a = QMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ])
        .unwrap();
        let lifted = lift_block(&a).unwrap();
        let x = vec![rat(3, 2), rat_int(-1), rat(5, 3)];
        let lifted_then_project = &lifted.apply_point(&x).unwrap()[..2];
        let project_then_a = a.apply(&x[..2]).unwrap();
        assert_eq!(lifted_then_project, project_then_a.as_slice());
    }

    #[test]
    fn avoiding_vector_examples() {
        assert_eq!(choose_avoiding_vector(2, &[ints(&[1, -3])]), ints(&[0, 1]));
        assert_eq!(
            choose_avoiding_vector(2, &[ints(&[1, 0]), ints(&[0, 1])]),
            ints(&[-1, 1])
        );
        assert_eq!(
            choose_avoiding_vector(
                2,
                &[ints(&[1, 0]), ints(&[0, 1]), ints(&[1, -1]), ints(&[1, 1])]
            ),
            ints(&[-2, 1])
        );
    }

    #[test]
    fn avoiding_vector_avoids_all_normals() {
        let normals = vec![ints(&[3, -2, 1]), ints(&[0, 5, 1]), ints(&[1, 1, 1])];
        let v = choose_avoiding_vector(3, &normals);
        for n in &normals {
            let dot: Int = n.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(!dot.is_zero());
        }
    }

    fn unit_square_vertices() -> Vec<Vec<Rat>> {
        vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]
    }

    #[test]
    fn square_shears_to_pi_general_position() {
        let (map, image) = to_pi_general_position(&unit_square_vertices()).unwrap();
        assert_eq!(map.matrix().rows()[0], pt(&[1, 2]));
        assert_eq!(map.matrix().rows()[1], pt(&[0, 1]));
        let expected: BTreeSet<Vec<Rat>> = [pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 1]), pt(&[3, 1])]
            .into_iter()
            .collect();
        let got: BTreeSet<Vec<Rat>> = image.into_iter().collect();
        assert_eq!(got, expected);
        assert!(is_pi_general_position(&got.into_iter().collect::<Vec<_>>()).holds);
    }

    #[test]
    fn already_general_quad_gets_identity_shear() {
        let quad = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[1, 1]), pt(&[3, 1])];
        let (map, _) = to_pi_general_position(&quad).unwrap();
        assert_eq!(map.matrix(), &QMatrix::identity(2));
        assert_eq!(map.stages(), &[Stage::Shear { v: ints(&[0, 1]) },]);
    }

    #[test]
    fn shear_stage_output_is_unimodular_upper_triangular() {
        let points = vec![
            pt(&[0, 0, 0]),
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
        ];
        let (map, image) = to_pi_general_position(&points).unwrap();
        let m = map.matrix();
        assert_eq!(m.det().unwrap(), rat_int(1));
        for i in 0..3 {
            assert_eq!(*m.at(i, i), rat_int(1));
            for j in 0..i {
                assert_eq!(*m.at(i, j), rat_int(0));
            }
            for j in 0..3 {
                assert!(m.at(i, j).is_integer());
            }
        }
        assert!(is_pi_general_position(&image).holds);
    }

    #[test]
    fn sheared_spans_stay_off_vertical() {
        let points = unit_square_vertices();
        let spans = distinct_hyperplane_spans(&points).unwrap();
        let (map, _) = to_pi_general_position(&points).unwrap();
        for span in spans {
            // Map two points of each original span and check the image span
            // keeps full projection dimension.
            let on_span: Vec<Vec<Rat>> = points
                .iter()
                .filter(|p| span.contains(p))
                .cloned()
                .collect();
            let image = map.apply_points(&on_span).unwrap();
            let h = hyperplane_equation(&image).unwrap();
            assert!(!h.last_coefficient().is_zero());
        }
    }

    #[test]
    fn scaling_factor_examples() {
        assert_eq!(
            facet_scaling_factor(&[pt(&[0, 0]), pt(&[3, 1])]).unwrap(),
            Int::from(-3)
        );
        assert_eq!(
            facet_scaling_factor(&[pt(&[0, 0]), pt(&[1, 0])]).unwrap(),
            Int::from(1)
        );
        assert_eq!(
            facet_scaling_factor(&[pt(&[1, 0]), pt(&[2, 6])]).unwrap(),
            Int::from(-1)
        );
        assert_eq!(
            facet_scaling_factor(&[pt(&[0, 0]), pt(&[0, 1])]).unwrap_err(),
            Error::VerticalHyperplane
        );
    }

    #[test]
    fn scaling_of_half_integer_segment() {
        let points = vec![vec![rat_int(0)], vec![rat(1, 2)]];
        assert_eq!(to_lattice_face_scaling(&points).unwrap(), ints(&[2]));
    }

    #[test]
    fn scaling_of_sheared_square() {
        let points = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 1]), pt(&[3, 1])];
        assert_eq!(to_lattice_face_scaling(&points).unwrap(), ints(&[1, 6]));
    }

    #[test]
    fn scaling_of_integral_triangle() {
        let points = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[1, 1])];
        assert_eq!(to_lattice_face_scaling(&points).unwrap(), ints(&[1, 1]));
    }

    #[test]
    fn scaling_requires_pi_general_position() {
        assert_eq!(
            to_lattice_face_scaling(&unit_square_vertices()).unwrap_err(),
            Error::NotPiGeneralPosition
        );
    }

    #[test]
    fn square_pipeline_matrix() {
        let square = poly(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let (map, image) = make_lattice_face(&square).unwrap();
        assert_eq!(map.matrix().rows()[0], pt(&[1, 2]));
        assert_eq!(map.matrix().rows()[1], pt(&[0, 6]));
        let expected = poly(2, &[vec![0, 0], vec![1, 0], vec![2, 6], vec![3, 6]]);
        assert_eq!(image.vertices(), expected.vertices());
        assert!(is_lattice_face(&image).unwrap().holds);
        assert_eq!(map.stages().len(), 2);
    }

    #[test]
    fn quad_pipeline_keeps_lattice_face_output() {
        let quad = poly(2, &[vec![0, 0], vec![2, 0], vec![1, 1], vec![3, 1]]);
        let (map, image) = make_lattice_face(&quad).unwrap();
        assert!(is_lattice_face(&image).unwrap().holds);
        assert_eq!(image.vertices().len(), 4);
        assert_eq!(image.facets().unwrap().len(), quad.facets().unwrap().len());
        // Shear stage is trivial for this input.
        assert_eq!(map.stages()[0], Stage::Shear { v: ints(&[0, 1]) });
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let flat = poly(2, &[vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert_eq!(
            make_lattice_face(&flat).unwrap_err(),
            Error::DegeneratePolytope
        );
        let collinear = vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])];
        assert!(matches!(
            to_pi_general_position(&collinear),
            Err(Error::WrongAffineDimension { .. })
        ));
    }

    #[test]
    fn pipeline_is_idempotent_at_the_predicate_level() {
        let square = poly(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let (_, image) = make_lattice_face(&square).unwrap();
        let (_, image2) = make_lattice_face(&image).unwrap();
        assert!(is_lattice_face(&image2).unwrap().holds);
    }

    #[test]
    fn composed_map_inverse_is_exact() {
        let square = poly(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let (map, _) = make_lattice_face(&square).unwrap();
        assert_eq!(
            map.matrix().mul(map.inverse()).unwrap(),
            QMatrix::identity(2)
        );
    }
}
