use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 64;
pub const MAX_VARS: usize = 16;

/// Named variables split into a u-block followed by a y-block, plus the
/// truncation precision used by every series computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    names: Vec<String>,
    split: usize,
    precision: u32,
}

impl Frame {
    /// `u` names then `y` names. The y-block may be empty (plain ring).
    pub fn new<S: AsRef<str>>(u: &[S], y: &[S]) -> Result<Self> {
        let names: Vec<String> =
            u.iter().chain(y.iter()).map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidFrame("no variables".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidFrame(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if n.is_empty() || !n.chars().next().unwrap().is_alphabetic() && !n.starts_with('_') {
                return Err(Error::InvalidFrame(format!("bad variable name `{n}`")));
            }
            if !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidFrame(format!("bad variable name `{n}`")));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::InvalidFrame(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Frame { names, split: u.len(), precision: DEFAULT_PRECISION })
    }

    /// Parses `"u1,u2|y1,y2"`. Without a `|` every name goes to the y-block.
    pub fn parse(spec: &str) -> Result<Self> {
        let list = |s: &str| -> Vec<String> {
            s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
        };
        match spec.split_once('|') {
            Some((u, y)) => {
                if y.contains('|') {
                    return Err(Error::InvalidFrame("more than one `|`".into()));
                }
                Frame::new(&list(u), &list(y))
            }
            None => Frame::new::<String>(&[], &list(spec)),
        }
    }

    pub fn with_precision(mut self, n: u32) -> Self {
        self.precision = n;
        self
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn u_count(&self) -> usize {
        self.split
    }

    pub fn y_count(&self) -> usize {
        self.names.len() - self.split
    }

    pub fn u_indices(&self) -> Vec<usize> {
        (0..self.split).collect()
    }

    pub fn y_indices(&self) -> Vec<usize> {
        (self.split..self.names.len()).collect()
    }

    /// Index of the `j`-th y-variable (0-based).
    pub fn y(&self, j: usize) -> usize {
        self.split + j
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn u_names(&self) -> &[String] {
        &self.names[..self.split]
    }

    pub fn y_names(&self) -> &[String] {
        &self.names[self.split..]
    }

    /// Requires a nonempty y-block and a nonempty u-block.
    pub fn require_split(&self) -> Result<()> {
        if self.y_count() == 0 {
            return Err(Error::InvalidFrame("the frame has no y-variables".into()));
        }
        if self.split == 0 {
            return Err(Error::InvalidFrame("the frame has no u-variables".into()));
        }
        Ok(())
    }

    pub fn check_poly(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::FrameMismatch(format!(
                "polynomial has {} variables, frame has {}",
                f.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn display(&self, f: &Poly) -> String {
        f.to_string_with(&self.names)
    }

    /// The block notation `"u1,u2|y1"`.
    pub fn spec_string(&self) -> String {
        format!("{}|{}", self.u_names().join(","), self.y_names().join(","))
    }
}

/// A polynomial whose terms of total degree up to `certified` are exact; no
/// term of higher degree is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    poly: Poly,
    certified: u32,
}

impl TruncSeries {
    /// Truncates `poly` to degree `certified`.
    pub fn new(poly: Poly, certified: u32) -> Self {
        let (poly, _) = poly.truncate(certified);
        TruncSeries { poly, certified }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn certified(&self) -> u32 {
        self.certified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_frames() {
        let f = Frame::parse("u1,u2|y1,y2").unwrap();
        assert_eq!(f.u_count(), 2);
        assert_eq!(f.y_count(), 2);
        assert_eq!(f.index_of("y1"), Some(2));
        assert_eq!(f.spec_string(), "u1,u2|y1,y2");
        assert!(Frame::parse("x,x").is_err());
        assert!(Frame::parse("a|b|c").is_err());
        assert!(Frame::parse("1x").is_err());
        let many: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
        assert!(Frame::parse(&many.join(",")).is_err());
    }

    #[test]
    fn default_precision() {
        assert_eq!(Frame::parse("u|y").unwrap().precision(), DEFAULT_PRECISION);
        assert_eq!(Frame::parse("u|y").unwrap().with_precision(8).precision(), 8);
    }
}
