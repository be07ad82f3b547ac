//! Problem-file format: a small line-based `key: value` text format
//! holding the instance (dimension, frame, generators, target
//! polynomial) and optional overrides.
//!
//! ```text
//! # interval instance
//! n: 1
//! frame: simplex
//! f: x1 * y^2 + 1
//! gen: x1 - 1/4
//! gen: 3/4 - x1
//! f_min: 1/4          # optional
//! loja: 1 2           # optional: c1 c2
//! registry: reg.json  # optional path
//! max_N: 60
//! max_k: 12
//! max_lambda: 1048576
//! term_budget: 10000000
//! grid_step: 1/64
//! target_gap: 1/8
//! ```
//!
//! Blank lines and `#` comments are skipped; polynomials use the text
//! grammar; rationals are `p/q` or integers.

use std::path::PathBuf;

use crate::error::Error;
use crate::polya::ScheduleCaps;
use crate::polyring::{parse_poly, Poly};
use crate::region::Frame;
use crate::scalar::{parse_rat, Rat};

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub n: usize,
    pub frame: Frame,
    pub f: Poly,
    pub generators: Vec<Poly>,
    pub f_min: Option<Rat>,
    pub loja: Option<(Rat, Rat)>,
    pub registry_path: Option<PathBuf>,
    pub caps: ScheduleCaps,
    pub grid_step: Option<Rat>,
    pub target_gap: Option<Rat>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col: 1,
        msg: msg.into(),
    }
}

/// Parses the problem text format.
pub fn parse_problem(text: &str) -> Result<ProblemFile, Error> {
    struct RawLine<'a> {
        lineno: usize,
        key: &'a str,
        value: &'a str,
    }
    let mut raw: Vec<RawLine> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let stripped = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (key, value) = trimmed
            .split_once(':')
            .ok_or_else(|| perr(lineno, "expected 'key: value'"))?;
        raw.push(RawLine {
            lineno,
            key: key.trim(),
            value: value.trim(),
        });
    }

    let n_line = raw
        .iter()
        .find(|l| l.key == "n")
        .ok_or_else(|| perr(1, "missing required key 'n'"))?;
    let n: usize = n_line
        .value
        .parse()
        .map_err(|_| perr(n_line.lineno, "n must be a non-negative integer"))?;
    if n == 0 {
        return Err(perr(n_line.lineno, "n must be at least 1"));
    }

    let mut frame = None;
    let mut f = None;
    let mut generators = Vec::new();
    let mut f_min = None;
    let mut loja = None;
    let mut registry_path = None;
    let mut caps = ScheduleCaps::default();
    let mut grid_step = None;
    let mut target_gap = None;

    let parse_poly_at = |lineno: usize, src: &str| -> Result<Poly, Error> {
        parse_poly(src, n).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::Parse {
                line: lineno,
                col,
                msg,
            },
            other => other,
        })
    };
    let parse_rat_at =
        |lineno: usize, src: &str| -> Result<Rat, Error> { parse_rat(src).map_err(|m| perr(lineno, m)) };

    for l in &raw {
        match l.key {
            "n" => {}
            "frame" => {
                frame = Some(match l.value {
                    "simplex" => Frame::SimplexInterior,
                    "unit-box" => Frame::OpenUnitBox,
                    other => {
                        return Err(perr(
                            l.lineno,
                            format!("frame must be 'simplex' or 'unit-box', got '{other}'"),
                        ))
                    }
                });
            }
            "f" => f = Some(parse_poly_at(l.lineno, l.value)?),
            "gen" => generators.push(parse_poly_at(l.lineno, l.value)?),
            "f_min" => {
                let v = parse_rat_at(l.lineno, l.value)?;
                if !num_traits::Signed::is_positive(&v) {
                    return Err(perr(l.lineno, "f_min must be positive"));
                }
                f_min = Some(v);
            }
            "loja" => {
                let parts: Vec<&str> = l.value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(perr(l.lineno, "loja needs two values: c1 c2"));
                }
                loja = Some((
                    parse_rat_at(l.lineno, parts[0])?,
                    parse_rat_at(l.lineno, parts[1])?,
                ));
            }
            "registry" => registry_path = Some(PathBuf::from(l.value)),
            "max_N" => {
                caps.max_n = l
                    .value
                    .parse()
                    .map_err(|_| perr(l.lineno, "max_N must be an integer"))?
            }
            "max_k" => {
                caps.max_k = l
                    .value
                    .parse()
                    .map_err(|_| perr(l.lineno, "max_k must be an integer"))?
            }
            "max_lambda" => caps.max_lambda = parse_rat_at(l.lineno, l.value)?,
            "term_budget" => {
                caps.term_budget = l
                    .value
                    .parse()
                    .map_err(|_| perr(l.lineno, "term_budget must be an integer"))?
            }
            "grid_step" => grid_step = Some(parse_rat_at(l.lineno, l.value)?),
            "target_gap" => target_gap = Some(parse_rat_at(l.lineno, l.value)?),
            other => return Err(perr(l.lineno, format!("unknown key '{other}'"))),
        }
    }

    let frame = frame.ok_or_else(|| perr(1, "missing required key 'frame'"))?;
    let f = f.ok_or_else(|| perr(1, "missing required key 'f'"))?;
    if generators.is_empty() {
        return Err(perr(1, "need at least one 'gen' line"));
    }
    if f.uses_x0() || f.uses_z() {
        return Err(perr(1, "f must be a polynomial in x1..xn and y"));
    }
    Ok(ProblemFile {
        n,
        frame,
        f,
        generators,
        f_min,
        loja,
        registry_path,
        caps,
        grid_step,
        target_gap,
    })
}

pub fn load_problem(path: &std::path::Path) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_problem(&text)
}

/// Canonical text form; parse -> to_text -> parse is stable.
pub fn to_text(p: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("n: {}\n", p.n));
    out.push_str(&format!(
        "frame: {}\n",
        match p.frame {
            Frame::SimplexInterior => "simplex",
            Frame::OpenUnitBox => "unit-box",
        }
    ));
    out.push_str(&format!("f: {}\n", p.f));
    for g in &p.generators {
        out.push_str(&format!("gen: {g}\n"));
    }
    if let Some(v) = &p.f_min {
        out.push_str(&format!("f_min: {}\n", crate::scalar::fmt_rat(v)));
    }
    if let Some((c1, c2)) = &p.loja {
        out.push_str(&format!(
            "loja: {} {}\n",
            crate::scalar::fmt_rat(c1),
            crate::scalar::fmt_rat(c2)
        ));
    }
    if let Some(path) = &p.registry_path {
        out.push_str(&format!("registry: {}\n", path.display()));
    }
    let defaults = ScheduleCaps::default();
    if p.caps.max_n != defaults.max_n {
        out.push_str(&format!("max_N: {}\n", p.caps.max_n));
    }
    if p.caps.max_k != defaults.max_k {
        out.push_str(&format!("max_k: {}\n", p.caps.max_k));
    }
    if p.caps.max_lambda != defaults.max_lambda {
        out.push_str(&format!(
            "max_lambda: {}\n",
            crate::scalar::fmt_rat(&p.caps.max_lambda)
        ));
    }
    if p.caps.term_budget != defaults.term_budget {
        out.push_str(&format!("term_budget: {}\n", p.caps.term_budget));
    }
    if let Some(v) = &p.grid_step {
        out.push_str(&format!("grid_step: {}\n", crate::scalar::fmt_rat(v)));
    }
    if let Some(v) = &p.target_gap {
        out.push_str(&format!("target_gap: {}\n", crate::scalar::fmt_rat(v)));
    }
    out
}
