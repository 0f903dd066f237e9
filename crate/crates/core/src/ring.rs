//! Polynomial rings described by an ordered variable list split into blocks.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Rings are limited to this many variables so supports fit in a `u64` mask.
pub const MAX_VARS: usize = 64;

/// A contiguous named run of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub range: Range<usize>,
}

/// A standard graded polynomial ring over an unspecified prime field.
///
/// The coefficient characteristic is not part of the ring; it only matters
/// when Betti numbers are computed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    blocks: Vec<Block>,
}

impl Ring {
    /// A single-block ring.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Ring>> {
        Self::with_blocks(vec![(
            String::from("B0"),
            vars.iter().map(|v| v.as_ref().to_string()).collect(),
        )])
    }

    /// A ring whose variables are the concatenation of the given blocks.
    pub fn with_blocks(blocks: Vec<(String, Vec<String>)>) -> Result<Arc<Ring>> {
        let mut vars = Vec::new();
        let mut out = Vec::with_capacity(blocks.len());
        for (name, bvars) in blocks {
            let start = vars.len();
            vars.extend(bvars);
            out.push(Block {
                name,
                range: start..vars.len(),
            });
        }
        if out.is_empty() {
            out.push(Block {
                name: "B0".into(),
                range: 0..0,
            });
        }
        let ring = Ring { vars, blocks: out };
        ring.validate()?;
        Ok(Arc::new(ring))
    }

    fn validate(&self) -> Result<()> {
        if self.vars.len() > MAX_VARS {
            return Err(Error::structural(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut seen = HashSet::new();
        for v in &self.vars {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::structural(format!(
                    "variable name `{v}` is empty or repeated"
                )));
            }
        }
        Ok(())
    }

    /// The tensor product ring: blocks of `self` followed by blocks of `other`.
    pub fn tensor(&self, other: &Ring) -> Result<Arc<Ring>> {
        let offset = self.vars.len();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block {
            name: b.name.clone(),
            range: b.range.start + offset..b.range.end + offset,
        }));
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let ring = Ring { vars, blocks };
        ring.validate()?;
        Ok(Arc::new(ring))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, j: usize) -> &str {
        &self.vars[j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Support mask of all variables.
    pub fn full_mask(&self) -> u64 {
        range_mask(0..self.vars.len())
    }

    pub fn block_mask(&self, block: usize) -> u64 {
        range_mask(self.blocks[block].range.clone())
    }
}

pub(crate) fn range_mask(r: Range<usize>) -> u64 {
    r.fold(0u64, |m, j| m | (1u64 << j))
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " |")?;
            }
            for j in b.range.clone() {
                if k > 0 || j > b.range.start {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.vars[j])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_appends_blocks() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let s = Ring::new(&["u"]).unwrap();
        let t = r.tensor(&s).unwrap();
        assert_eq!(t.nvars(), 3);
        assert_eq!(t.blocks().len(), 2);
        assert_eq!(t.blocks()[1].range, 2..3);
        assert_eq!(t.block_mask(0), 0b011);
        assert_eq!(t.to_string(), "[x y | u]");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Ring::new(&["x", "x"]).is_err());
        let r = Ring::new(&["x"]).unwrap();
        assert!(r.tensor(&r).is_err());
    }
}
