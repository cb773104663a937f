//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use latticeface::polytope::{Polytope, Simplex, Triangulation};
use latticeface::rational::{Int, Rat, ceil_int, floor_int, rat_int};
use num_traits::Signed;

pub fn pt(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| rat_int(c)).collect()
}

pub fn ipt(coords: &[i64]) -> Vec<Int> {
    coords.iter().map(|&c| Int::from(c)).collect()
}

pub fn poly(dim: usize, points: &[Vec<i64>]) -> Polytope {
    Polytope::from_integer_points(dim, points).unwrap()
}

/// conv{(0,0),(2,0),(1,1),(3,1)}: counting polynomial 2m^2 + 3m + 1; not
/// lattice-face, but one diagonal splits it into two lattice-face triangles.
pub fn slanted_quad() -> Polytope {
    poly(2, &[vec![0, 0], vec![2, 0], vec![1, 1], vec![3, 1]])
}

/// conv{(0,0),(4,0),(3,5),(1,5)}: counting polynomial 15m^2 + 4m + 1; needs
/// the auxiliary point (2,4) to triangulate into lattice-face simplices.
pub fn steiner_trapezoid() -> Polytope {
    poly(2, &[vec![0, 0], vec![4, 0], vec![3, 5], vec![1, 5]])
}

/// The four-triangle fan around (2,4) covering the trapezoid.
pub fn trapezoid_witness() -> Triangulation {
    let steiner = pt(&[2, 4]);
    let triangles = [
        [pt(&[0, 0]), pt(&[4, 0]), steiner.clone()],
        [pt(&[4, 0]), pt(&[3, 5]), steiner.clone()],
        [pt(&[3, 5]), pt(&[1, 5]), steiner.clone()],
        [pt(&[0, 0]), pt(&[1, 5]), steiner.clone()],
    ];
    Triangulation {
        simplices: triangles
            .iter()
            .map(|vs| Simplex::new(2, vs.to_vec()).unwrap())
            .collect(),
        steiner_points: vec![steiner],
    }
}

/// conv{(0,0),(2,0),(1,1)}: a lattice-face triangle of area 1.
pub fn good_triangle() -> Polytope {
    poly(2, &[vec![0, 0], vec![2, 0], vec![1, 1]])
}

/// conv{(0,0),(1,0),(2,6),(3,6)}: the lattice-face image of the unit square
/// under the pipeline, counting polynomial 6m^2 + 3m + 1.
pub fn steep_quad() -> Polytope {
    poly(2, &[vec![0, 0], vec![1, 0], vec![2, 6], vec![3, 6]])
}

pub fn unit_square() -> Polytope {
    poly(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
}

pub fn unit_cube() -> Polytope {
    let mut pts = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push(vec![x, y, z]);
            }
        }
    }
    poly(3, &pts)
}

/// A 3-simplex with no two vertices sharing a coordinate plane direction;
/// its lattice-face image stays small enough for exhaustive lattice scans.
pub fn skew_simplex() -> Polytope {
    poly(
        3,
        &[vec![0, 0, 0], vec![2, 1, 0], vec![1, 3, 1], vec![1, 1, 2]],
    )
}

/// Integer bounding box of the vertex set as (lows, highs).
pub fn bounding_box(p: &Polytope) -> (Vec<Int>, Vec<Int>) {
    let d = p.dim();
    let mut lows = Vec::with_capacity(d);
    let mut highs = Vec::with_capacity(d);
    for axis in 0..d {
        let mut lo = p.vertices()[0][axis].clone();
        let mut hi = lo.clone();
        for v in p.vertices() {
            if v[axis] < lo {
                lo = v[axis].clone();
            }
            if v[axis] > hi {
                hi = v[axis].clone();
            }
        }
        lows.push(ceil_int(&lo));
        highs.push(floor_int(&hi));
    }
    (lows, highs)
}

/// Independent lattice-point count of `m * P`: scan the integer bounding box
/// and test every point against the facet inequalities. No fiber recursion.
pub fn bbox_count(p: &Polytope, m: u32) -> Int {
    let dilated = p.dilate(m);
    let (lows, highs) = bounding_box(&dilated);
    let mut count = Int::from(0);
    for point in box_points(&lows, &highs) {
        let as_rat: Vec<Rat> = point.iter().cloned().map(Rat::from_integer).collect();
        if dilated.contains(&as_rat).unwrap() {
            count += 1;
        }
    }
    count
}

/// Odometer enumeration of the integer box.
pub fn box_points(lows: &[Int], highs: &[Int]) -> Vec<Vec<Int>> {
    let d = lows.len();
    if lows.iter().zip(highs).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = lows.to_vec();
    'outer: loop {
        out.push(current.clone());
        let mut axis = d;
        while axis > 0 {
            axis -= 1;
            if current[axis] < highs[axis] {
                current[axis] += 1;
                current[axis + 1..d].clone_from_slice(&lows[axis + 1..d]);
                continue 'outer;
            }
        }
        return out;
    }
}

/// Independent area oracle for full-dimensional polygons: order the vertices
/// around the centroid with exact comparisons and apply the boundary
/// (shoelace) formula.
pub fn shoelace_area(p: &Polytope) -> Rat {
    assert_eq!(p.dim(), 2);
    let verts = p.vertices();
    let n = verts.len();
    let inv_n = Rat::new(Int::from(1), Int::from(n as i64));
    let cx: Rat = verts.iter().map(|v| &v[0]).sum::<Rat>() * &inv_n;
    let cy: Rat = verts.iter().map(|v| &v[1]).sum::<Rat>() * &inv_n;
    let mut offsets: Vec<(Rat, Rat)> = verts.iter().map(|v| (&v[0] - &cx, &v[1] - &cy)).collect();
    let quadrant = |(dx, dy): &(Rat, Rat)| -> u8 {
        use num_traits::Zero;
        if dx > &Rat::zero() && dy >= &Rat::zero() {
            0
        } else if dx <= &Rat::zero() && dy > &Rat::zero() {
            1
        } else if dx < &Rat::zero() && dy <= &Rat::zero() {
            2
        } else {
            3
        }
    };
    offsets.sort_by(|a, b| {
        let (qa, qb) = (quadrant(a), quadrant(b));
        if qa != qb {
            return qa.cmp(&qb);
        }
        // Same quadrant: counterclockwise iff the cross product is positive.
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        use num_traits::Zero;
        Rat::zero().cmp(&cross)
    });
    let mut twice_area = Rat::from_integer(Int::from(0));
    for i in 0..n {
        let (x1, y1) = &offsets[i];
        let (x2, y2) = &offsets[(i + 1) % n];
        twice_area += x1 * y2 - y1 * x2;
    }
    twice_area.abs() / Rat::from_integer(Int::from(2))
}

/// xorshift64*: tiny deterministic PRNG so results never depend on an
/// external crate's stream stability.
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64 { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

/// A random rational with numerator and denominator drawn from the given
/// pools.
pub fn random_rat(rng: &mut XorShift64, numerators: (i64, i64), denominators: &[i64]) -> Rat {
    let n = rng.int_in(numerators.0, numerators.1);
    let d = *rng.pick(denominators);
    Rat::new(Int::from(n), Int::from(d))
}

/// Samples a full-dimensional polytope with at most `max_points` generators;
/// retries degenerate draws.
pub fn random_full_dim_polytope(
    rng: &mut XorShift64,
    dim: usize,
    max_points: usize,
    numerators: (i64, i64),
    denominators: &[i64],
) -> Polytope {
    loop {
        let count = dim + 1 + rng.below((max_points - dim) as u64) as usize;
        let points: Vec<Vec<Rat>> = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|_| random_rat(rng, numerators, denominators))
                    .collect()
            })
            .collect();
        let p = Polytope::from_points(dim, points).unwrap();
        if p.is_full_dimensional() {
            return p;
        }
    }
}
