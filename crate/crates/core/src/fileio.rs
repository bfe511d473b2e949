//! Plain-text file formats.
//!
//! Quandle tables (`.qnd`): a header line `quandle <n>` followed by `n`
//! rows of `n` indices; entry `(a,b)` is `a*b`. Group tables (`.grp`):
//! `group <n>` followed by the multiplication table, identity at index 0.
//! Construction specs (`.qspec`): line-oriented `key: value` pairs.
//! Permutations serialize as `perm <n> : i0 i1 ...` in image notation, and
//! congruences as `cong <n> : b0 b1 ...` with least representatives.
//! `#` starts a comment in every format.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::{GroupError, QuandleError};
use crate::group::{AbelianGroupSpec, FiniteGroup, GroupMap};
use crate::perm::Perm;
use crate::quandle::Quandle;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: invalid quandle: {source}")]
    Quandle {
        path: String,
        source: QuandleError,
    },
    #[error("{path}: invalid group: {source}")]
    Group { path: String, source: GroupError },
}

impl ParseError {
    fn format(path: &str, message: impl fmt::Display) -> Self {
        ParseError::Format {
            path: path.to_string(),
            message: message.to_string(),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .map(str::trim)
        .filter(|l| !l.is_empty())
}

fn parse_numbers(path: &str, line: &str) -> Result<Vec<usize>, ParseError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| ParseError::format(path, format!("expected an index, got `{t}`")))
        })
        .collect()
}

/// Parses `header <n>` followed by `n` rows of `n` entries.
fn parse_table(path: &str, text: &str, header: &str) -> Result<(usize, Vec<Vec<usize>>), ParseError> {
    let mut lines = content_lines(text);
    let first = lines
        .next()
        .ok_or_else(|| ParseError::format(path, "empty file"))?;
    let mut tokens = first.split_whitespace();
    match tokens.next() {
        Some(t) if t == header => {}
        other => {
            return Err(ParseError::format(
                path,
                format!("expected `{header} <n>`, got `{}`", other.unwrap_or("")),
            ))
        }
    }
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::format(path, format!("expected `{header} <n>`")))?;
    if tokens.next().is_some() {
        return Err(ParseError::format(path, "trailing tokens on the header line"));
    }
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        rows.push(parse_numbers(path, line)?);
    }
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(ParseError::format(
            path,
            format!("expected {n} rows of {n} entries"),
        ));
    }
    Ok((n, rows))
}

pub fn parse_quandle_text(path: &str, text: &str) -> Result<Quandle, ParseError> {
    let (_, rows) = parse_table(path, text, "quandle")?;
    Quandle::from_table(&rows).map_err(|source| ParseError::Quandle {
        path: path.to_string(),
        source,
    })
}

pub fn parse_group_text(path: &str, text: &str) -> Result<FiniteGroup, ParseError> {
    let (n, rows) = parse_table(path, text, "group")?;
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        for e in row {
            if e >= n {
                return Err(ParseError::format(path, format!("entry {e} out of range")));
            }
            entries.push(e as u16);
        }
    }
    FiniteGroup::from_table(n, entries).map_err(|source| ParseError::Group {
        path: path.to_string(),
        source,
    })
}

pub fn read_quandle(path: &Path) -> Result<Quandle, ParseError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: display.clone(),
        source,
    })?;
    parse_quandle_text(&display, &text)
}

pub fn read_group(path: &Path) -> Result<FiniteGroup, ParseError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: display.clone(),
        source,
    })?;
    parse_group_text(&display, &text)
}

pub fn render_quandle(q: &Quandle, comment: Option<&str>) -> String {
    let n = q.size();
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str(&format!("# {line}\n"));
        }
    }
    out.push_str(&format!("quandle {n}\n"));
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| q.op(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("group {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_perm(p: &Perm) -> String {
    let images: Vec<String> = p.images().iter().map(|i| i.to_string()).collect();
    format!("perm {} : {}", p.degree(), images.join(" "))
}

/// A parsed construction spec.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub kind: String,
    pub size: Option<usize>,
    pub group: Option<Vec<usize>>,
    pub group_file: Option<PathBuf>,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub auto: Option<Vec<usize>>,
    pub subset: Option<Vec<usize>>,
    pub subgroup: Option<Vec<usize>>,
    pub factors: Option<Vec<PathBuf>>,
    /// The normalized key/value lines, for reproducible build comments.
    pub lines: Vec<(String, String)>,
}

pub fn parse_spec_text(path: &str, text: &str) -> Result<ConstructionSpec, ParseError> {
    let mut spec = ConstructionSpec {
        kind: String::new(),
        size: None,
        group: None,
        group_file: None,
        matrix: None,
        auto: None,
        subset: None,
        subgroup: None,
        factors: None,
        lines: Vec::new(),
    };
    for line in content_lines(text) {
        let Some((key, value)) = line.split_once(':') else {
            return Err(ParseError::format(path, format!("expected `key: value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        spec.lines.push((key.to_string(), value.to_string()));
        match key {
            "kind" => spec.kind = value.to_string(),
            "size" => {
                spec.size = Some(value.parse().map_err(|_| {
                    ParseError::format(path, format!("size must be an integer, got `{value}`"))
                })?)
            }
            "group" => {
                let mut tokens = value.split_whitespace();
                match tokens.next() {
                    Some("Z") => {}
                    other => {
                        return Err(ParseError::format(
                            path,
                            format!("group must start with `Z`, got `{}`", other.unwrap_or("")),
                        ))
                    }
                }
                let orders: Vec<usize> = tokens
                    .map(|t| {
                        t.parse().map_err(|_| {
                            ParseError::format(path, format!("bad cyclic order `{t}`"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                spec.group = Some(orders);
            }
            "group_file" => spec.group_file = Some(PathBuf::from(value)),
            "matrix" => {
                let rows: Vec<Vec<i64>> = value
                    .split('/')
                    .map(|row| {
                        row.split_whitespace()
                            .map(|t| {
                                t.parse::<i64>().map_err(|_| {
                                    ParseError::format(path, format!("bad matrix entry `{t}`"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<_, _>>()?;
                spec.matrix = Some(rows);
            }
            "auto" => spec.auto = Some(parse_numbers(path, value)?),
            "subset" => spec.subset = Some(parse_numbers(path, value)?),
            "subgroup" => spec.subgroup = Some(parse_numbers(path, value)?),
            "factors" => {
                spec.factors = Some(value.split_whitespace().map(PathBuf::from).collect())
            }
            other => {
                return Err(ParseError::format(path, format!("unknown key `{other}`")));
            }
        }
    }
    if spec.kind.is_empty() {
        return Err(ParseError::format(path, "missing `kind`"));
    }
    Ok(spec)
}

pub fn read_spec(path: &Path) -> Result<ConstructionSpec, ParseError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: display.clone(),
        source,
    })?;
    parse_spec_text(&display, &text)
}

/// Builds the quandle a spec describes. Relative paths inside the spec are
/// resolved against `base_dir`.
pub fn build_spec(spec: &ConstructionSpec, base_dir: &Path) -> Result<Quandle, ParseError> {
    let path = "spec";
    let resolve = |p: &PathBuf| -> PathBuf {
        if p.is_absolute() {
            p.clone()
        } else {
            base_dir.join(p)
        }
    };
    let quandle_err = |source: QuandleError| ParseError::Quandle {
        path: path.to_string(),
        source,
    };
    let need_group = |spec: &ConstructionSpec| -> Result<FiniteGroup, ParseError> {
        match &spec.group_file {
            Some(p) => read_group(&resolve(p)),
            None => Err(ParseError::format(path, "missing `group_file`")),
        }
    };
    let need_auto_map = |g: &FiniteGroup, spec: &ConstructionSpec| -> Result<GroupMap, ParseError> {
        let images = spec
            .auto
            .as_ref()
            .ok_or_else(|| ParseError::format(path, "missing `auto`"))?;
        let images: Vec<u16> = images.iter().map(|&i| i as u16).collect();
        GroupMap::automorphism(g, images).map_err(|source| ParseError::Group {
            path: path.to_string(),
            source,
        })
    };
    match spec.kind.as_str() {
        "projection" => {
            let n = spec
                .size
                .ok_or_else(|| ParseError::format(path, "projection requires `size`"))?;
            Quandle::projection(n).map_err(quandle_err)
        }
        "affine" => {
            let orders = spec
                .group
                .clone()
                .ok_or_else(|| ParseError::format(path, "affine requires `group: Z ...`"))?;
            let abelian = AbelianGroupSpec::new(orders).map_err(|source| ParseError::Group {
                path: path.to_string(),
                source,
            })?;
            if let Some(matrix) = &spec.matrix {
                Quandle::affine_matrix(&abelian, matrix).map_err(quandle_err)
            } else if let Some(auto) = &spec.auto {
                let images: Vec<u16> = auto.iter().map(|&i| i as u16).collect();
                Quandle::affine(&abelian, &images).map_err(quandle_err)
            } else {
                Err(ParseError::format(path, "affine requires `matrix` or `auto`"))
            }
        }
        "principal" => {
            let g = need_group(spec)?;
            let f = need_auto_map(&g, spec)?;
            Quandle::principal(&g, &f).map_err(quandle_err)
        }
        "homogeneous" => {
            let g = need_group(spec)?;
            let f = need_auto_map(&g, spec)?;
            let h = spec
                .subgroup
                .clone()
                .ok_or_else(|| ParseError::format(path, "homogeneous requires `subgroup`"))?;
            Quandle::homogeneous(&g, &h, &f).map_err(quandle_err)
        }
        "conj" => {
            let g = need_group(spec)?;
            let subset = spec
                .subset
                .clone()
                .ok_or_else(|| ParseError::format(path, "conj requires `subset`"))?;
            Quandle::conj(&g, &subset).map_err(quandle_err)
        }
        "product" => {
            let factors = spec
                .factors
                .clone()
                .ok_or_else(|| ParseError::format(path, "product requires `factors`"))?;
            let mut quandles = Vec::new();
            for f in &factors {
                let full = resolve(f);
                let q = match full.extension().and_then(|e| e.to_str()) {
                    Some("qspec") => {
                        let inner = read_spec(&full)?;
                        let dir = full.parent().unwrap_or(base_dir).to_path_buf();
                        build_spec(&inner, &dir)?
                    }
                    _ => read_quandle(&full)?,
                };
                quandles.push(q);
            }
            Quandle::product(&quandles).map_err(quandle_err)
        }
        other => Err(ParseError::format(path, format!("unknown kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn quandle_round_trip() {
        let q = fixtures::r3();
        let text = render_quandle(&q, Some("built for tests"));
        let back = parse_quandle_text("mem", &text).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn group_round_trip() {
        let g = FiniteGroup::cyclic(6);
        let text = render_group(&g);
        let back = parse_group_text("mem", &text).unwrap();
        assert_eq!(back.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn rejects_bad_rows() {
        let text = "quandle 2\n0 0\n1 1\n";
        assert!(matches!(
            parse_quandle_text("mem", text),
            Err(ParseError::Quandle { .. })
        ));
        let text = "quandle 2\n0 1\n";
        assert!(matches!(
            parse_quandle_text("mem", text),
            Err(ParseError::Format { .. })
        ));
    }

    #[test]
    fn comments_are_ignored() {
        let text = "# a comment\nquandle 1 # trailing\n0\n";
        assert!(parse_quandle_text("mem", text).is_ok());
    }

    #[test]
    fn spec_affine_builds_r3() {
        let spec = parse_spec_text("mem", "kind: affine\ngroup: Z 3\nauto: 0 2 1\n").unwrap();
        let q = build_spec(&spec, Path::new(".")).unwrap();
        assert_eq!(q, fixtures::r3());
    }

    #[test]
    fn spec_projection_and_unknown_key() {
        let spec = parse_spec_text("mem", "kind: projection\nsize: 3\n").unwrap();
        let q = build_spec(&spec, Path::new(".")).unwrap();
        assert_eq!(q, Quandle::projection(3).unwrap());
        assert!(parse_spec_text("mem", "kind: projection\nbogus: 1\n").is_err());
    }

    #[test]
    fn spec_matrix_affine() {
        let spec =
            parse_spec_text("mem", "kind: affine\ngroup: Z 2 2\nmatrix: 0 1 / 1 1\n").unwrap();
        let q = build_spec(&spec, Path::new(".")).unwrap();
        assert_eq!(q, fixtures::ss4());
    }
}
