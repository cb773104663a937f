//! Lattice-point counting in dilates, the projection-volume Ehrhart
//! polynomial, and an interpolation oracle.
//!
//! For a polytope with a triangulation into lattice-face simplices, the
//! coefficient of `m^k` in the lattice-point count of `m P` is the Euclidean
//! volume of the projection of `P` onto its first `k` coordinates. The
//! interpolation route solves for the same polynomial from brute-force counts
//! and serves as an independent oracle.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::latticeface::{count_omega_lattice_points, find_lattice_face_triangulation};
use crate::linalg::QMatrix;
use crate::polytope::{Polytope, Triangulation};
use crate::rational::{Int, Rat, is_integral_point};

/// Degree-`d` univariate polynomial with exact rational coefficients
/// `c_0..c_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coefficients: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn new(coefficients: Vec<Rat>) -> Self {
        EhrhartPolynomial { coefficients }
    }

    /// Coefficients `c_0..c_d`, constant term first.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, m: u32) -> Rat {
        let m_rat = Rat::from_integer(Int::from(m));
        let mut power = Rat::one();
        let mut acc = Rat::zero();
        for c in &self.coefficients {
            acc += c * &power;
            power *= &m_rat;
        }
        acc
    }
}

/// Exact `|L(m P)|` by recursive fiber enumeration.
pub fn count_lattice_points(p: &Polytope, m: u32) -> Result<Int> {
    assert!(m >= 1, "dilation factor must be positive");
    p.dilate(m).lattice_point_count()
}

/// The projection-volume Ehrhart polynomial: coefficient `k` is the volume of
/// the projection of `p` onto its first `k` coordinates. Applicable only when
/// a triangulation into lattice-face simplices exists (found automatically or
/// supplied as a witness); otherwise [`Error::FormulaInapplicable`].
pub fn ehrhart_via_projections(
    p: &Polytope,
    witness: Option<&Triangulation>,
) -> Result<EhrhartPolynomial> {
    if find_lattice_face_triangulation(p, witness)?.is_none() {
        return Err(Error::FormulaInapplicable);
    }
    let d = p.dim();
    let mut coefficients = Vec::with_capacity(d + 1);
    for k in 0..=d {
        coefficients.push(p.project(d - k)?.volume());
    }
    Ok(EhrhartPolynomial::new(coefficients))
}

/// Independent oracle: interpolates the degree-`d` counting polynomial of an
/// integral polytope through exact counts at `m = 1..=d+1` via a Vandermonde
/// solve. The constant term of the result is 1 by the counting theory.
pub fn ehrhart_via_interpolation(p: &Polytope) -> Result<EhrhartPolynomial> {
    if !p.vertices().iter().all(|v| is_integral_point(v)) {
        return Err(Error::OracleInapplicable);
    }
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    let d = p.dim();
    let mut rows = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for m in 1..=(d as u32 + 1) {
        let m_rat = Rat::from_integer(Int::from(m));
        let mut row = Vec::with_capacity(d + 1);
        let mut power = Rat::one();
        for _ in 0..=d {
            row.push(power.clone());
            power *= &m_rat;
        }
        rows.push(row);
        rhs.push(Rat::from_integer(count_lattice_points(p, m)?));
    }
    let coefficients = QMatrix::from_rows(rows)?.solve(&rhs)?;
    Ok(EhrhartPolynomial::new(coefficients))
}

/// One dilation factor's worth of identity checks, all exact.
#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub m: u32,
    /// Formula value at `m` equals the brute-force count.
    pub polynomial: bool,
    /// `|L(m P)| = Vol(m P) + |L(pi(m P))|`.
    pub decomposition: bool,
    /// `|L(Omega(m P))| = Vol(m P)`.
    pub omega: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.polynomial && r.decomposition && r.omega)
    }
}

/// Checks, for each `m` up to `m_max`: the formula value against the brute
/// count, the count decomposition into volume plus projected count, and the
/// nonnegative-part count against the volume. Propagates
/// [`Error::FormulaInapplicable`] when the polynomial route does not apply.
pub fn verify_ehrhart(
    p: &Polytope,
    witness: Option<&Triangulation>,
    m_max: u32,
) -> Result<VerifyReport> {
    let poly = ehrhart_via_projections(p, witness)?;
    let shadow = p.project(1)?;
    let mut report = VerifyReport::default();
    for m in 1..=m_max {
        let count = count_lattice_points(p, m)?;
        let dilated = p.dilate(m);
        let volume = dilated.volume();
        let shadow_count = count_lattice_points(&shadow, m)?;
        let omega_count = count_omega_lattice_points(&dilated)?;
        report.rows.push(VerifyRow {
            m,
            polynomial: poly.eval(m) == Rat::from_integer(count.clone()),
            decomposition: Rat::from_integer(count) == &volume + Rat::from_integer(shadow_count),
            omega: Rat::from_integer(omega_count) == volume,
        });
    }
    Ok(report)
}
