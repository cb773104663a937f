//! Polytope and triangulation file formats.
//!
//! Text polytope files: a header line `d n`, then `n` lines of `d`
//! whitespace-separated rationals (`p` or `p/q`, `q > 0`); `#` starts a
//! comment. The JSON alternative is `{"dim": d, "points": [["0","1/2"],...]}`
//! with coordinates as strings to preserve exactness. Canonical writers emit
//! reduced fractions, single spaces, and a trailing newline.

use latticeface::Rat;
use latticeface::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolytopeFile {
    pub dim: usize,
    pub points: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct TriangulationFile {
    pub steiner: Vec<Vec<Rat>>,
    /// Vertex-index lists, `dim + 1` entries each; indices refer to the
    /// polytope file's points followed by the steiner points, 0-based.
    pub simplices: Vec<Vec<usize>>,
}

/// Tokens of one line with 1-based character columns, comments stripped.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s + 1, &body[s..]));
    }
    tokens
}

/// Non-empty lines as (line number, tokens).
fn significant_lines(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, tokenize(line)))
        .filter(|(_, tokens)| !tokens.is_empty())
        .collect()
}

fn parse_usize(line: usize, col: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("invalid {what} `{token}`")))
}

fn parse_coordinate(line: usize, col: usize, token: &str) -> Result<Rat, ParseError> {
    parse_rational(token).map_err(|msg| ParseError::new(line, col, msg))
}

fn parse_point_line(
    line: usize,
    tokens: &[(usize, &str)],
    dim: usize,
) -> Result<Vec<Rat>, ParseError> {
    if tokens.len() != dim {
        return Err(ParseError::new(
            line,
            tokens.first().map_or(1, |t| t.0),
            format!("expected {dim} coordinates, got {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|&(col, tok)| parse_coordinate(line, col, tok))
        .collect()
}

pub fn parse_polytope_file(text: &str) -> Result<PolytopeFile, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_polytope_json(text);
    }
    let lines = significant_lines(text);
    let Some((header_line, header)) = lines.first() else {
        return Err(ParseError::new(1, 1, "empty polytope file"));
    };
    if header.len() != 2 {
        return Err(ParseError::new(
            *header_line,
            header[0].0,
            format!("expected header `d n`, got {} fields", header.len()),
        ));
    }
    let dim = parse_usize(*header_line, header[0].0, header[0].1, "dimension")?;
    let count = parse_usize(*header_line, header[1].0, header[1].1, "point count")?;
    if dim == 0 {
        return Err(ParseError::new(
            *header_line,
            header[0].0,
            "dimension must be at least 1",
        ));
    }
    if count == 0 {
        return Err(ParseError::new(
            *header_line,
            header[1].0,
            "point count must be at least 1",
        ));
    }
    let body = &lines[1..];
    if body.len() < count {
        return Err(ParseError::new(
            lines.last().map_or(1, |l| l.0),
            1,
            format!("expected {count} points, found {}", body.len()),
        ));
    }
    if body.len() > count {
        let (line, tokens) = &body[count];
        return Err(ParseError::new(*line, tokens[0].0, "unexpected extra line"));
    }
    let points = body
        .iter()
        .map(|(line, tokens)| parse_point_line(*line, tokens, dim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolytopeFile { dim, points })
}

fn json_error(msg: impl Into<String>) -> ParseError {
    ParseError::new(0, 0, msg)
}

fn parse_polytope_json(text: &str) -> Result<PolytopeFile, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| json_error("expected a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| json_error("missing or invalid `dim`"))? as usize;
    if dim == 0 {
        return Err(json_error("dimension must be at least 1"));
    }
    let raw_points = obj
        .get("points")
        .and_then(|v| v.as_array())
        .ok_or_else(|| json_error("missing or invalid `points`"))?;
    if raw_points.is_empty() {
        return Err(json_error("point count must be at least 1"));
    }
    let mut points = Vec::with_capacity(raw_points.len());
    for (i, raw) in raw_points.iter().enumerate() {
        let coords = raw
            .as_array()
            .ok_or_else(|| json_error(format!("point {i} is not an array")))?;
        if coords.len() != dim {
            return Err(json_error(format!(
                "point {i}: expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let mut point = Vec::with_capacity(dim);
        for (j, c) in coords.iter().enumerate() {
            let s = c
                .as_str()
                .ok_or_else(|| json_error(format!("point {i} coordinate {j} is not a string")))?;
            point.push(
                parse_rational(s)
                    .map_err(|msg| json_error(format!("point {i} coordinate {j}: {msg}")))?,
            );
        }
        points.push(point);
    }
    Ok(PolytopeFile { dim, points })
}

pub fn write_polytope_text(file: &PolytopeFile) -> String {
    let mut out = format!("{} {}\n", file.dim, file.points.len());
    for point in &file.points {
        let row: Vec<String> = point.iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn point_strings(point: &[Rat]) -> Vec<String> {
    point.iter().map(format_rational).collect()
}

pub fn write_polytope_json(file: &PolytopeFile) -> String {
    let points: Vec<Vec<String>> = file.points.iter().map(|p| point_strings(p)).collect();
    let value = serde_json::json!({
        "dim": file.dim,
        "points": points,
    });
    let mut out = value.to_string();
    out.push('\n');
    out
}

/// Parses a triangulation witness. Text form:
///
/// ```text
/// steiner S
/// <S lines of dim rationals>
/// simplices T
/// <T lines of dim+1 vertex indices>
/// ```
///
/// JSON form: `{"steiner": [["2","4"]], "simplices": [[0,1,4],...]}`.
/// Indices must stay below `point_count` plus the steiner count.
pub fn parse_triangulation_file(
    text: &str,
    dim: usize,
    point_count: usize,
) -> Result<TriangulationFile, ParseError> {
    let parsed = if text.trim_start().starts_with('{') {
        parse_triangulation_json(text, dim)?
    } else {
        parse_triangulation_text(text, dim)?
    };
    let limit = point_count + parsed.steiner.len();
    for (i, simplex) in parsed.simplices.iter().enumerate() {
        for &idx in simplex {
            if idx >= limit {
                return Err(json_error(format!(
                    "simplex {i}: vertex index {idx} out of range (have {limit} points)"
                )));
            }
        }
    }
    Ok(parsed)
}

fn parse_triangulation_text(text: &str, dim: usize) -> Result<TriangulationFile, ParseError> {
    let lines = significant_lines(text);
    let mut cursor = 0;
    let expect_keyword = |lines: &[(usize, Vec<(usize, &str)>)],
                          cursor: usize,
                          keyword: &str|
     -> Result<usize, ParseError> {
        let Some((line, tokens)) = lines.get(cursor) else {
            return Err(ParseError::new(
                lines.last().map_or(1, |l| l.0),
                1,
                format!("expected `{keyword} N`"),
            ));
        };
        if tokens.len() != 2 || tokens[0].1 != keyword {
            return Err(ParseError::new(
                *line,
                tokens[0].0,
                format!("expected `{keyword} N`"),
            ));
        }
        parse_usize(*line, tokens[1].0, tokens[1].1, "count")
    };

    let steiner_count = expect_keyword(&lines, cursor, "steiner")?;
    cursor += 1;
    let mut steiner = Vec::with_capacity(steiner_count);
    for _ in 0..steiner_count {
        let Some((line, tokens)) = lines.get(cursor) else {
            return Err(ParseError::new(
                lines.last().map_or(1, |l| l.0),
                1,
                "missing steiner point line",
            ));
        };
        steiner.push(parse_point_line(*line, tokens, dim)?);
        cursor += 1;
    }
    let simplex_count = expect_keyword(&lines, cursor, "simplices")?;
    cursor += 1;
    let mut simplices = Vec::with_capacity(simplex_count);
    for _ in 0..simplex_count {
        let Some((line, tokens)) = lines.get(cursor) else {
            return Err(ParseError::new(
                lines.last().map_or(1, |l| l.0),
                1,
                "missing simplex line",
            ));
        };
        if tokens.len() != dim + 1 {
            return Err(ParseError::new(
                *line,
                tokens[0].0,
                format!("expected {} vertex indices, got {}", dim + 1, tokens.len()),
            ));
        }
        let simplex = tokens
            .iter()
            .map(|&(col, tok)| parse_usize(*line, col, tok, "vertex index"))
            .collect::<Result<Vec<_>, _>>()?;
        simplices.push(simplex);
        cursor += 1;
    }
    if let Some((line, tokens)) = lines.get(cursor) {
        return Err(ParseError::new(*line, tokens[0].0, "unexpected extra line"));
    }
    Ok(TriangulationFile { steiner, simplices })
}

fn parse_triangulation_json(text: &str, dim: usize) -> Result<TriangulationFile, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| json_error("expected a JSON object"))?;
    let mut steiner = Vec::new();
    if let Some(raw) = obj.get("steiner") {
        let arr = raw
            .as_array()
            .ok_or_else(|| json_error("`steiner` is not an array"))?;
        for (i, point) in arr.iter().enumerate() {
            let coords = point
                .as_array()
                .ok_or_else(|| json_error(format!("steiner point {i} is not an array")))?;
            if coords.len() != dim {
                return Err(json_error(format!(
                    "steiner point {i}: expected {dim} coordinates, got {}",
                    coords.len()
                )));
            }
            let mut parsed = Vec::with_capacity(dim);
            for (j, c) in coords.iter().enumerate() {
                let s = c.as_str().ok_or_else(|| {
                    json_error(format!("steiner point {i} coordinate {j} is not a string"))
                })?;
                parsed.push(
                    parse_rational(s).map_err(|m| json_error(format!("steiner point {i}: {m}")))?,
                );
            }
            steiner.push(parsed);
        }
    }
    let raw_simplices = obj
        .get("simplices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| json_error("missing or invalid `simplices`"))?;
    let mut simplices = Vec::with_capacity(raw_simplices.len());
    for (i, raw) in raw_simplices.iter().enumerate() {
        let arr = raw
            .as_array()
            .ok_or_else(|| json_error(format!("simplex {i} is not an array")))?;
        if arr.len() != dim + 1 {
            return Err(json_error(format!(
                "simplex {i}: expected {} vertex indices, got {}",
                dim + 1,
                arr.len()
            )));
        }
        let mut simplex = Vec::with_capacity(dim + 1);
        for (j, v) in arr.iter().enumerate() {
            let idx = v
                .as_u64()
                .ok_or_else(|| json_error(format!("simplex {i} index {j} is not an integer")))?;
            simplex.push(idx as usize);
        }
        simplices.push(simplex);
    }
    Ok(TriangulationFile { steiner, simplices })
}
