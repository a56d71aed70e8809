use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::RuleError;

/// A finite set of cells, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Region(Vec<i64>);

impl Region {
    pub fn new(cells: impl IntoIterator<Item = i64>) -> Self {
        let set: BTreeSet<i64> = cells.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(cell: i64) -> Self {
        Self(vec![cell])
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Self((lo..=hi).collect())
    }

    pub fn cells(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, cell: i64) -> bool {
        self.0.binary_search(&cell).is_ok()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn hull(&self) -> Option<(i64, i64)> {
        Some((self.min()?, self.max()?))
    }

    /// Minkowski sum `{a + b}`.
    pub fn sum(&self, other: &Region) -> Region {
        Region::new(self.0.iter().flat_map(|a| other.0.iter().map(move |b| a + b)))
    }

    /// Minkowski difference `{a - b}`.
    pub fn diff(&self, other: &Region) -> Region {
        Region::new(self.0.iter().flat_map(|a| other.0.iter().map(move |b| a - b)))
    }

    pub fn union(&self, other: &Region) -> Region {
        Region::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region(self.0.iter().copied().filter(|&c| other.contains(c)).collect())
    }

    /// Cells of `self` not in `other`.
    pub fn minus(&self, other: &Region) -> Region {
        Region(self.0.iter().copied().filter(|&c| !other.contains(c)).collect())
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.0.iter().all(|&c| other.contains(c))
    }

    pub fn translate(&self, k: i64) -> Region {
        Region(self.0.iter().map(|c| c + k).collect())
    }

    /// Parses `"a,b,c"`, `"a..b"` (inclusive) or a mix such as `"-2..0,5"`.
    /// The empty string is the empty region.
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let bad = || RuleError::BadRegion(text.to_string());
        let mut cells = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((a, b)) = part.split_once("..") {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                cells.extend(a..=b);
            } else {
                cells.push(part.parse().map_err(|_| bad())?);
            }
        }
        Ok(Region::new(cells))
    }
}

impl From<Vec<i64>> for Region {
    fn from(cells: Vec<i64>) -> Self {
        Region::new(cells)
    }
}

impl From<Region> for Vec<i64> {
    fn from(r: Region) -> Self {
        r.0
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski() {
        let a = Region::new([0, 5]);
        let n = Region::interval(-1, 1);
        assert_eq!(a.sum(&n), Region::new([-1, 0, 1, 4, 5, 6]));
        let nc = Region::new([0, 1]);
        assert_eq!(nc.diff(&nc), Region::interval(-1, 1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Region::parse("0,1").unwrap(), Region::new([0, 1]));
        assert_eq!(Region::parse("-2..1").unwrap(), Region::interval(-2, 1));
        assert_eq!(Region::parse("-2..0, 5").unwrap(), Region::new([-2, -1, 0, 5]));
        assert_eq!(Region::parse("").unwrap(), Region::empty());
        assert!(Region::parse("3..1").is_err());
        assert!(Region::parse("a").is_err());
    }
}
