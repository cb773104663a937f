//! Cross-module invariants: projection and dilation closure of the
//! lattice-face property, the negative-boundary bijection, nonnegative-part
//! additivity over triangulations, and scaling consistency of the counting
//! polynomial.

mod common;

use common::*;
use latticeface::ehrhart::ehrhart_via_projections;
use latticeface::latticeface::{
    count_omega_lattice_points, is_lattice_face, is_pi_general_position,
    negative_boundary_lattice_points, omega_membership,
};
use latticeface::multiset::{LatticeMultiset, multiset_combine};
use latticeface::polytope::{FacetSign, Polytope, Triangulation, validate_triangulation};
use latticeface::rational::{Int, Rat};
use latticeface::transform::make_lattice_face;

/// Fixed lattice-face instances exercised by every invariant below.
fn lattice_face_instances() -> Vec<Polytope> {
    let (_, simplex_image) = make_lattice_face(&skew_simplex()).unwrap();
    vec![
        good_triangle(),
        steep_quad(),
        poly(1, &[vec![0], vec![3]]),
        simplex_image,
    ]
}

#[test]
fn projections_of_lattice_face_polytopes_are_lattice_face() {
    for p in lattice_face_instances() {
        assert!(is_lattice_face(&p).unwrap().holds);
        if p.dim() >= 2 {
            let shadow = p.project(1).unwrap();
            assert!(
                is_lattice_face(&shadow).unwrap().holds,
                "projection of a lattice-face polytope must stay lattice-face"
            );
        }
    }
}

#[test]
fn dilates_of_lattice_face_polytopes_are_lattice_face() {
    for p in lattice_face_instances() {
        for m in [2, 3] {
            assert!(is_lattice_face(&p.dilate(m)).unwrap().holds);
        }
    }
}

#[test]
fn negative_boundary_projects_bijectively() {
    for p in lattice_face_instances() {
        if p.dim() == 0 {
            continue;
        }
        let nb = negative_boundary_lattice_points(&p).unwrap();
        let shadow_count = p.project(1).unwrap().lattice_point_count().unwrap();
        assert_eq!(Int::from(nb.len() as u64), shadow_count);
        // One fiber minimum per projected lattice point: projections are
        // pairwise distinct, so the projection is injective on them.
        let mut shadows: Vec<_> = nb.iter().map(|x| x[..x.len() - 1].to_vec()).collect();
        shadows.sort();
        shadows.dedup();
        assert_eq!(shadows.len(), nb.len());
        for x in &nb {
            let as_rat: Vec<Rat> = x.iter().cloned().map(Rat::from_integer).collect();
            assert!(p.contains(&as_rat).unwrap());
        }
    }
}

#[test]
fn lattice_points_project_onto_projection_lattice_points() {
    for p in lattice_face_instances() {
        if p.dim() == 0 {
            continue;
        }
        // Equality of the sets follows from: every projected lattice point
        // has an integer point in its fiber (the reverse inclusion is
        // trivial).
        for y in p.project(1).unwrap().lattice_points().unwrap() {
            let y_rat: Vec<Rat> = y.iter().cloned().map(Rat::from_integer).collect();
            let (n, top) = p.fiber(&y_rat).unwrap().expect("shadow point has a fiber");
            let lo = n.last().unwrap().ceil();
            let hi = top.last().unwrap().floor();
            assert!(
                lo <= hi,
                "fiber over a projected lattice point must contain a lattice point"
            );
        }
    }
}

#[test]
fn lattice_face_polytopes_are_integral_and_unique_fibered() {
    for p in lattice_face_instances() {
        for v in p.vertices() {
            assert!(v.iter().all(|c| c.is_integer()));
        }
        assert!(p.satisfies_unique_boundary_fiber().unwrap());
        assert!(is_pi_general_position(p.vertices()).holds);
    }
}

#[test]
fn omega_count_equals_volume_on_lattice_face_instances() {
    for p in lattice_face_instances() {
        let count = count_omega_lattice_points(&p).unwrap();
        assert_eq!(Rat::from_integer(count), p.volume());
    }
}

#[test]
fn every_vertex_pulling_of_a_lattice_face_polytope_is_lattice_face() {
    for p in lattice_face_instances() {
        if p.dim() == 0 {
            continue;
        }
        let n = p.vertices().len();
        for apex in 0..n {
            let mut order = vec![apex];
            order.extend((0..n).filter(|&i| i != apex));
            let t = p.pulling_triangulation(&order).unwrap();
            assert!(validate_triangulation(&p, &t).unwrap());
            for s in &t.simplices {
                assert!(is_lattice_face(&s.to_polytope().unwrap()).unwrap().holds);
            }
        }
    }
}

/// Pointwise additivity of the nonnegative part over a triangulation whose
/// pieces all have unique boundary fibers, checked as a multiset identity
/// over the integer bounding box.
fn assert_omega_additivity(p: &Polytope, t: &Triangulation) {
    let pieces: Vec<Polytope> = t
        .simplices
        .iter()
        .map(|s| s.to_polytope().unwrap())
        .collect();
    for piece in &pieces {
        assert!(piece.satisfies_unique_boundary_fiber().unwrap());
    }
    let (lows, highs) = bounding_box(p);
    let grid = box_points(&lows, &highs);

    let omega_set = |q: &Polytope| -> LatticeMultiset {
        let mut ms = LatticeMultiset::new();
        for x in &grid {
            if omega_membership(q, x).unwrap() {
                ms.add(x.clone(), 1);
            }
        }
        ms
    };

    let parts: Vec<(LatticeMultiset, i64)> =
        pieces.iter().map(|piece| (omega_set(piece), 1)).collect();
    let combined = multiset_combine(&parts);
    let whole = omega_set(p);
    assert_eq!(combined, whole);
}

#[test]
fn omega_is_additive_over_quad_triangulations() {
    let p = slanted_quad();
    // Both diagonals: every piece has unique boundary fibers, so additivity
    // holds even for the diagonal whose pieces are not lattice-face.
    for apex_first in [0, 1] {
        let mut order = vec![apex_first];
        order.extend((0..4).filter(|&i| i != apex_first));
        let t = p.pulling_triangulation(&order).unwrap();
        assert!(validate_triangulation(&p, &t).unwrap());
        assert_omega_additivity(&p, &t);
    }
}

#[test]
fn omega_is_additive_over_the_steiner_witness() {
    let p = steiner_trapezoid();
    let t = trapezoid_witness();
    assert!(validate_triangulation(&p, &t).unwrap());
    assert_omega_additivity(&p, &t);
}

#[test]
fn omega_is_additive_over_steep_quad_pullings() {
    let p = steep_quad();
    let t = p.pulling_triangulation(&[0, 1, 2, 3]).unwrap();
    assert!(validate_triangulation(&p, &t).unwrap());
    assert_omega_additivity(&p, &t);
}

#[test]
fn square_pulling_pieces_violate_the_fiber_hypothesis() {
    // The additivity lemma requires unique boundary fibers piecewise; the
    // unit square's vertex triangulations break that hypothesis.
    let p = unit_square();
    let t = p.pulling_triangulation(&[0, 1, 2, 3]).unwrap();
    assert!(validate_triangulation(&p, &t).unwrap());
    let violated = t.simplices.iter().any(|s| {
        !s.to_polytope()
            .unwrap()
            .satisfies_unique_boundary_fiber()
            .unwrap()
    });
    assert!(violated);
}

#[test]
fn facet_shadows_tile_the_projection() {
    // Over a generic interior point of the projection, exactly one positive
    // and one negative facet shadow contain it in their interiors. Points on
    // shadow boundaries (a measure-zero set) are skipped.
    let mut rng = XorShift64::new(0x7117E5);
    let mut instances = vec![
        slanted_quad(),
        unit_square(),
        steiner_trapezoid(),
        unit_cube(),
    ];
    for _ in 0..6 {
        instances.push(random_full_dim_polytope(
            &mut rng,
            2,
            6,
            (-6, 6),
            &[1, 2, 3],
        ));
        instances.push(random_full_dim_polytope(
            &mut rng,
            3,
            5,
            (-3, 3),
            &[1, 1, 2],
        ));
    }
    for p in &instances {
        let shadow = p.project(1).unwrap();
        let mut checked = 0;
        'samples: for _ in 0..40 {
            if checked >= 5 {
                break;
            }
            // A random rational convex combination of the vertices of P,
            // projected: always inside the shadow, generically interior.
            let weights: Vec<Rat> = p
                .vertices()
                .iter()
                .map(|_| Rat::new(Int::from(rng.int_in(1, 9)), Int::from(10)))
                .collect();
            let total: Rat = weights.iter().sum();
            let mut y = vec![Rat::new(Int::from(0), Int::from(1)); p.dim() - 1];
            for (w, v) in weights.iter().zip(p.vertices()) {
                for (acc, c) in y.iter_mut().zip(&v[..p.dim() - 1]) {
                    *acc += w / &total * c;
                }
            }
            if !shadow.contains_in_interior(&y).unwrap() {
                continue;
            }
            let mut positive = 0;
            let mut negative = 0;
            for f in p.facets().unwrap() {
                if f.sign == FacetSign::Vertical {
                    continue;
                }
                let pts: Vec<Vec<Rat>> = f
                    .incident_vertices
                    .iter()
                    .map(|&i| p.vertices()[i][..p.dim() - 1].to_vec())
                    .collect();
                let facet_shadow = Polytope::from_points(p.dim() - 1, pts).unwrap();
                let inside = facet_shadow.contains(&y).unwrap();
                let interior = facet_shadow.contains_in_interior(&y).unwrap();
                if inside && !interior {
                    continue 'samples; // on a shadow boundary: not generic
                }
                if interior {
                    match f.sign {
                        FacetSign::Positive => positive += 1,
                        FacetSign::Negative => negative += 1,
                        FacetSign::Vertical => unreachable!(),
                    }
                }
            }
            assert_eq!((positive, negative), (1, 1));
            checked += 1;
        }
        assert!(checked > 0, "no generic sample point found");
    }
}

#[test]
fn counting_polynomial_commutes_with_dilation() {
    for p in lattice_face_instances() {
        if p.dim() > 2 {
            continue; // volumes of high-dimensional dilates grow fast; 2D covers the identity
        }
        let base = ehrhart_via_projections(&p, None).unwrap();
        for m in [1u32, 2, 3] {
            let dilated = ehrhart_via_projections(&p.dilate(m), None).unwrap();
            assert_eq!(dilated.eval(1), base.eval(m));
        }
    }
}
