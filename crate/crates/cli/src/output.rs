//! Command implementations. Every command computes once and renders either
//! text or JSON from the same values, so the two formats agree
//! value-for-value.

use std::path::Path;

use serde_json::json;

use latticeface::ehrhart::{count_lattice_points, ehrhart_via_projections, verify_ehrhart};
use latticeface::latticeface::{
    FlatWitness, count_omega_lattice_points, find_lattice_face_triangulation, is_lattice_face,
    is_pi_general_position,
};
use latticeface::polytope::{Polytope, Simplex, Triangulation, validate_triangulation};
use latticeface::rational::format_rational;
use latticeface::transform::make_lattice_face;
use latticeface::{Error as MathError, Rat};

use crate::format::{
    PolytopeFile, TriangulationFile, parse_polytope_file, parse_triangulation_file, point_strings,
    write_polytope_json, write_polytope_text,
};
use crate::{CliError, Format};

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> Result<(PolytopeFile, Polytope), CliError> {
    let text = read_file(path)?;
    let file = parse_polytope_file(&text)?;
    let polytope = Polytope::from_points(file.dim, file.points.clone())?;
    Ok((file, polytope))
}

fn load_witness(
    path: &Path,
    file: &PolytopeFile,
) -> Result<(TriangulationFile, Triangulation), CliError> {
    let text = read_file(path)?;
    let parsed = parse_triangulation_file(&text, file.dim, file.points.len())?;
    let mut all_points = file.points.clone();
    all_points.extend(parsed.steiner.iter().cloned());
    let simplices = parsed
        .simplices
        .iter()
        .map(|indices| {
            let vertices: Vec<Vec<Rat>> = indices.iter().map(|&i| all_points[i].clone()).collect();
            Simplex::new(file.dim, vertices)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Math(MathError::InvalidWitness))?;
    let triangulation = Triangulation {
        simplices,
        steiner_points: parsed.steiner.clone(),
    };
    Ok((parsed, triangulation))
}

fn point_tuple(point: &[Rat]) -> String {
    let coords: Vec<String> = point.iter().map(format_rational).collect();
    format!("({})", coords.join(","))
}

fn witness_text(label: &str, w: &FlatWitness, vertices: &[Vec<Rat>]) -> String {
    let subset: Vec<String> = w.subset.iter().map(usize::to_string).collect();
    let points: Vec<String> = w
        .subset
        .iter()
        .map(|&i| point_tuple(&vertices[i]))
        .collect();
    format!(
        "{label}: k={} subset=[{}] points=[{}] reason={}\n",
        w.k,
        subset.join(","),
        points.join(","),
        w.reason.as_str()
    )
}

fn witness_json(w: &FlatWitness, vertices: &[Vec<Rat>]) -> serde_json::Value {
    let points: Vec<Vec<String>> = w
        .subset
        .iter()
        .map(|&i| point_strings(&vertices[i]))
        .collect();
    json!({
        "k": w.k,
        "subset": w.subset,
        "points": points,
        "reason": w.reason.as_str(),
    })
}

pub fn cmd_check(path: &Path, format: Format) -> Result<String, CliError> {
    let (_, polytope) = load_polytope(path)?;
    let lattice_face = is_lattice_face(&polytope)?;
    let pi_general = is_pi_general_position(polytope.vertices());
    match format {
        Format::Text => {
            let mut out = format!("lattice-face: {}\n", lattice_face.holds);
            if let Some(w) = &lattice_face.witness {
                out.push_str(&witness_text(
                    "lattice-face-witness",
                    w,
                    polytope.vertices(),
                ));
            }
            out.push_str(&format!("pi-general-position: {}\n", pi_general.holds));
            if let Some(w) = &pi_general.witness {
                out.push_str(&witness_text(
                    "pi-general-position-witness",
                    w,
                    polytope.vertices(),
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let mut value = json!({
                "lattice_face": lattice_face.holds,
                "pi_general_position": pi_general.holds,
            });
            let obj = value.as_object_mut().expect("object literal");
            if let Some(w) = &lattice_face.witness {
                obj.insert(
                    "lattice_face_witness".into(),
                    witness_json(w, polytope.vertices()),
                );
            }
            if let Some(w) = &pi_general.witness {
                obj.insert(
                    "pi_general_position_witness".into(),
                    witness_json(w, polytope.vertices()),
                );
            }
            Ok(format!("{value}\n"))
        }
    }
}

pub fn cmd_transform(path: &Path, out_path: &Path, format: Format) -> Result<String, CliError> {
    let (file, polytope) = load_polytope(path)?;
    let (map, _) = make_lattice_face(&polytope)?;
    let image_points = map.apply_points(&file.points)?;
    let image_file = PolytopeFile {
        dim: file.dim,
        points: image_points,
    };
    let payload = match format {
        Format::Text => write_polytope_text(&image_file),
        Format::Json => write_polytope_json(&image_file),
    };
    std::fs::write(out_path, payload)
        .map_err(|e| CliError::Io(format!("{}: {e}", out_path.display())))?;
    let stages: Vec<String> = map.stages().iter().map(|s| s.to_string()).collect();
    match format {
        Format::Text => {
            let mut out = String::from("matrix:\n");
            for row in map.matrix().rows() {
                let cells: Vec<String> = row.iter().map(format_rational).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
            out.push_str(&format!("stages: {}\n", stages.join("; ")));
            out.push_str(&format!("wrote: {}\n", out_path.display()));
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = map
                .matrix()
                .rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect();
            let value = json!({
                "matrix": rows,
                "stages": stages,
                "wrote": out_path.display().to_string(),
            });
            Ok(format!("{value}\n"))
        }
    }
}

pub fn cmd_ehrhart(
    path: &Path,
    witness_path: Option<&Path>,
    verify: Option<u32>,
    format: Format,
) -> Result<String, CliError> {
    let (file, polytope) = load_polytope(path)?;
    let witness = match witness_path {
        Some(w) => Some(load_witness(w, &file)?.1),
        None => None,
    };
    let poly = ehrhart_via_projections(&polytope, witness.as_ref())?;
    let coefficients: Vec<String> = poly.coefficients().iter().map(format_rational).collect();
    let report = match verify {
        Some(m_max) => Some(verify_ehrhart(&polytope, witness.as_ref(), m_max)?),
        None => None,
    };
    match format {
        Format::Text => {
            let mut out = format!("{}\n", coefficients.join(" "));
            if let Some(report) = &report {
                let verdict = |ok: bool| if ok { "pass" } else { "fail" };
                for row in &report.rows {
                    out.push_str(&format!(
                        "verify m={}: polynomial={} decomposition={} omega={}\n",
                        row.m,
                        verdict(row.polynomial),
                        verdict(row.decomposition),
                        verdict(row.omega)
                    ));
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut value = json!({ "coefficients": coefficients });
            if let Some(report) = &report {
                let rows: Vec<serde_json::Value> = report
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "m": r.m,
                            "polynomial": r.polynomial,
                            "decomposition": r.decomposition,
                            "omega": r.omega,
                        })
                    })
                    .collect();
                value
                    .as_object_mut()
                    .expect("object literal")
                    .insert("verify".into(), json!(rows));
            }
            Ok(format!("{value}\n"))
        }
    }
}

pub fn cmd_count(path: &Path, m: u32, format: Format) -> Result<String, CliError> {
    let (_, polytope) = load_polytope(path)?;
    let count = count_lattice_points(&polytope, m)?;
    Ok(match format {
        Format::Text => format!("{count}\n"),
        Format::Json => format!("{}\n", json!({ "count": count.to_string() })),
    })
}

pub fn cmd_volume(path: &Path, format: Format) -> Result<String, CliError> {
    let (_, polytope) = load_polytope(path)?;
    let volume = polytope.volume();
    Ok(match format {
        Format::Text => format!("{}\n", format_rational(&volume)),
        Format::Json => format!("{}\n", json!({ "volume": format_rational(&volume) })),
    })
}

pub fn cmd_omega(path: &Path, format: Format) -> Result<String, CliError> {
    let (_, polytope) = load_polytope(path)?;
    let count = count_omega_lattice_points(&polytope)?;
    Ok(match format {
        Format::Text => format!("{count}\n"),
        Format::Json => format!("{}\n", json!({ "omega": count.to_string() })),
    })
}

pub fn cmd_triangulate(
    path: &Path,
    witness_path: Option<&Path>,
    lattice_face: bool,
    format: Format,
) -> Result<String, CliError> {
    let (file, polytope) = load_polytope(path)?;
    let witness = match witness_path {
        Some(w) => Some(load_witness(w, &file)?.1),
        None => None,
    };
    let triangulation = if lattice_face {
        find_lattice_face_triangulation(&polytope, witness.as_ref())?
            .ok_or(CliError::Math(MathError::FormulaInapplicable))?
    } else if let Some(t) = witness {
        if !validate_triangulation(&polytope, &t)? {
            return Err(CliError::Math(MathError::InvalidWitness));
        }
        t
    } else {
        let order: Vec<usize> = (0..polytope.vertices().len()).collect();
        polytope.pulling_triangulation(&order)?
    };

    // Indices refer to the file's points followed by the steiner points.
    let mut all_points = file.points.clone();
    all_points.extend(triangulation.steiner_points.iter().cloned());
    let index_of = |point: &Vec<Rat>| -> usize {
        all_points
            .iter()
            .position(|p| p == point)
            .expect("triangulation vertex is a known point")
    };
    let simplices: Vec<Vec<usize>> = triangulation
        .simplices
        .iter()
        .map(|s| s.vertices().iter().map(&index_of).collect())
        .collect();
    match format {
        Format::Text => {
            let mut out = String::new();
            for point in &triangulation.steiner_points {
                let coords: Vec<String> = point.iter().map(format_rational).collect();
                out.push_str(&format!("steiner: {}\n", coords.join(" ")));
            }
            for simplex in &simplices {
                let cells: Vec<String> = simplex.iter().map(usize::to_string).collect();
                out.push_str(&format!("simplex: {}\n", cells.join(" ")));
            }
            Ok(out)
        }
        Format::Json => {
            let steiner: Vec<Vec<String>> = triangulation
                .steiner_points
                .iter()
                .map(|p| point_strings(p))
                .collect();
            let value = json!({
                "simplices": simplices,
                "steiner": steiner,
            });
            Ok(format!("{value}\n"))
        }
    }
}
