//! Field specification files: a small block-structured text format.
//!
//! ```text
//! # comments run to end of line
//! field {
//!     kolmogorov { alpha = 0, beta = 0, gamma = 0, a = 5, b = -1, c = 2 }
//! }
//! portrait {
//!     rings = 8
//!     spokes = 16
//!     duration = 6.0
//!     tol = 1e-8
//!     seed = 0
//! }
//! ```
//!
//! A `field` block holds exactly one of: raw `P = ..., Q = ..., R = ...`
//! entries, a `kolmogorov { ... }` block (keys `alpha beta gamma a b c`;
//! `A B C` are accepted for `a b c`), a `homogeneous { A = ..., B = ...,
//! C = ... }` block, or a `cubic { f g h A B C }` block. Polynomial values
//! use the expression syntax of the polynomial parser; scalar values are
//! rationals like `-3/2`. The `portrait` block is optional and only read by
//! the portrait pipeline.

use crate::field::{CubicDecomposition, KolmogorovParams, SphereField};
use crate::poly::{Polynomial, VarSpace};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;

/// One `name { ... }` block: leaf entries plus nested blocks.
#[derive(Debug, Clone, Default)]
pub struct Block {
    pub name: String,
    pub entries: Vec<(String, String)>,
    pub children: Vec<Block>,
}

impl Block {
    pub fn child(&self, name: &str) -> Option<&Block> {
        self.children.iter().find(|b| b.name == name)
    }

    pub fn entry(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Portrait parameters with their defaults.
#[derive(Debug, Clone)]
pub struct PortraitSettings {
    pub rings: usize,
    pub spokes: usize,
    pub duration: f64,
    pub tol: f64,
    pub seed: u64,
    pub arrowheads: bool,
}

impl Default for PortraitSettings {
    fn default() -> Self {
        PortraitSettings {
            rings: 8,
            spokes: 16,
            duration: 6.0,
            tol: 1e-8,
            seed: 0,
            arrowheads: true,
        }
    }
}

/// A fully parsed specification file.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub field: SphereField,
    pub portrait: PortraitSettings,
}

/// Parse the block structure without interpreting it. Braces open and
/// close blocks; entries are `key = value` runs terminated by a comma, a
/// newline, or a closing brace; `#` comments run to end of line. Values
/// never contain braces or commas, so a character scan suffices.
pub fn parse_blocks(src: &str) -> Result<Vec<Block>> {
    let mut root = Block::default();
    let mut stack: Vec<Block> = Vec::new();
    let mut pending = String::new();
    let mut lineno = 1usize;
    let mut in_comment = false;

    let flush = |pending: &mut String, stack: &mut Vec<Block>, lineno: usize| -> Result<()> {
        let text = pending.trim().to_string();
        pending.clear();
        if text.is_empty() {
            return Ok(());
        }
        let Some((key, value)) = text.split_once('=') else {
            return Err(Error::SpecFile(format!(
                "line {lineno}: cannot parse '{text}'"
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::SpecFile(format!(
                "line {lineno}: malformed entry '{text}'"
            )));
        }
        match stack.last_mut() {
            Some(parent) => {
                parent.entries.push((key, value));
                Ok(())
            }
            None => Err(Error::SpecFile(format!(
                "line {lineno}: entry '{key}' outside any block"
            ))),
        }
    };

    for c in src.chars() {
        match c {
            '\n' => {
                in_comment = false;
                flush(&mut pending, &mut stack, lineno)?;
                lineno += 1;
            }
            _ if in_comment => {}
            '#' => in_comment = true,
            '{' => {
                let name = pending.trim().to_string();
                pending.clear();
                if name.is_empty()
                    || !name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
                {
                    return Err(Error::SpecFile(format!(
                        "line {lineno}: block name '{name}' is not an identifier"
                    )));
                }
                stack.push(Block {
                    name,
                    ..Block::default()
                });
            }
            '}' => {
                flush(&mut pending, &mut stack, lineno)?;
                let done = stack
                    .pop()
                    .ok_or_else(|| Error::SpecFile(format!("line {lineno}: unmatched '}}'")))?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(done),
                    None => root.children.push(done),
                }
            }
            ',' => flush(&mut pending, &mut stack, lineno)?,
            _ => pending.push(c),
        }
    }
    flush(&mut pending, &mut stack, lineno)?;
    if !stack.is_empty() {
        return Err(Error::SpecFile(format!(
            "unclosed block '{}'",
            stack.last().unwrap().name
        )));
    }
    Ok(root.children)
}

fn parse_scalar(block: &Block, key: &str) -> Result<BigRational> {
    let Some(text) = block.entry(key) else {
        return Ok(BigRational::zero());
    };
    let p = Polynomial::parse(text, VarSpace::Sphere)
        .map_err(|e| Error::SpecFile(format!("value of '{key}': {e}")))?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::SpecFile(format!("'{key}' must be a rational number")));
    }
    Ok(p.coefficient([0, 0, 0]))
}

fn parse_poly(block: &Block, key: &str) -> Result<Polynomial> {
    match block.entry(key) {
        Some(text) => Polynomial::parse(text, VarSpace::Sphere)
            .map_err(|e| Error::SpecFile(format!("value of '{key}': {e}"))),
        None => Ok(Polynomial::zero(VarSpace::Sphere)),
    }
}

fn build_field(field_block: &Block) -> Result<SphereField> {
    if let Some(k) = field_block.child("kolmogorov") {
        let a = if k.entry("a").is_some() {
            parse_scalar(k, "a")?
        } else {
            parse_scalar(k, "A")?
        };
        let b = if k.entry("b").is_some() {
            parse_scalar(k, "b")?
        } else {
            parse_scalar(k, "B")?
        };
        let c = if k.entry("c").is_some() {
            parse_scalar(k, "c")?
        } else {
            parse_scalar(k, "C")?
        };
        let params = KolmogorovParams::new(
            parse_scalar(k, "alpha")?,
            parse_scalar(k, "beta")?,
            parse_scalar(k, "gamma")?,
            a,
            b,
            c,
        );
        return Ok(SphereField::kolmogorov(params));
    }
    if let Some(h) = field_block.child("homogeneous") {
        return SphereField::homogeneous(
            parse_poly(h, "A")?,
            parse_poly(h, "B")?,
            parse_poly(h, "C")?,
        );
    }
    if let Some(c) = field_block.child("cubic") {
        let d = CubicDecomposition::new(
            parse_poly(c, "f")?,
            parse_poly(c, "g")?,
            parse_poly(c, "h")?,
            parse_poly(c, "A")?,
            parse_poly(c, "B")?,
            parse_poly(c, "C")?,
        )?;
        return SphereField::cubic(d);
    }
    if field_block.entry("P").is_some()
        || field_block.entry("Q").is_some()
        || field_block.entry("R").is_some()
    {
        return SphereField::from_components(
            parse_poly(field_block, "P")?,
            parse_poly(field_block, "Q")?,
            parse_poly(field_block, "R")?,
        );
    }
    Err(Error::SpecFile(
        "field block needs raw P/Q/R entries or a kolmogorov/homogeneous/cubic block".into(),
    ))
}

fn parse_f64(block: &Block, key: &str, default: f64) -> Result<f64> {
    match block.entry(key) {
        None => Ok(default),
        Some(text) => text
            .parse::<f64>()
            .map_err(|_| Error::SpecFile(format!("'{key}' must be a number, got '{text}'"))),
    }
}

fn parse_usize(block: &Block, key: &str, default: usize) -> Result<usize> {
    match block.entry(key) {
        None => Ok(default),
        Some(text) => text
            .parse::<usize>()
            .map_err(|_| Error::SpecFile(format!("'{key}' must be a positive integer"))),
    }
}

fn build_portrait(block: Option<&Block>) -> Result<PortraitSettings> {
    let defaults = PortraitSettings::default();
    let Some(b) = block else {
        return Ok(defaults);
    };
    let settings = PortraitSettings {
        rings: parse_usize(b, "rings", defaults.rings)?,
        spokes: parse_usize(b, "spokes", defaults.spokes)?,
        duration: parse_f64(b, "duration", defaults.duration)?,
        tol: parse_f64(b, "tol", defaults.tol)?,
        seed: parse_usize(b, "seed", defaults.seed as usize)? as u64,
        arrowheads: match b.entry("arrowheads") {
            None => defaults.arrowheads,
            Some("true") => true,
            Some("false") => false,
            Some(other) => {
                return Err(Error::SpecFile(format!(
                    "'arrowheads' must be true or false, got '{other}'"
                )))
            }
        },
    };
    if settings.rings == 0 || settings.spokes == 0 {
        return Err(Error::SpecFile("rings and spokes must be positive".into()));
    }
    let positive = |x: f64| x.is_finite() && x > 0.0;
    if !positive(settings.duration) || !positive(settings.tol) {
        return Err(Error::SpecFile("duration and tol must be positive".into()));
    }
    Ok(settings)
}

/// Parse a complete specification file.
pub fn parse_spec(src: &str) -> Result<FieldSpec> {
    let blocks = parse_blocks(src)?;
    let field_block = blocks
        .iter()
        .find(|b| b.name == "field")
        .ok_or_else(|| Error::SpecFile("missing 'field' block".into()))?;
    let field = build_field(field_block)?;
    let portrait = build_portrait(blocks.iter().find(|b| b.name == "portrait"))?;
    Ok(FieldSpec { field, portrait })
}
