use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ca::{checked_pow, word_index, Alphabet, Config, Region, Rule, Symbol};
use crate::quantum::STATE_TOL;

use super::{max_window_dim, LocalityError};

/// An operator `M ⊗ Id` acting on the cells of `region`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator {
    region: Region,
    alphabet_size: usize,
    matrix: DMatrix<Complex64>,
}

impl LocalOperator {
    pub fn new(region: Region, alphabet_size: usize, matrix: DMatrix<Complex64>) -> Result<Self, LocalityError> {
        let dim = checked_pow(alphabet_size, region.len()).ok_or(LocalityError::BadOperator)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(LocalityError::BadOperator);
        }
        Ok(Self {
            region,
            alphabet_size,
            matrix,
        })
    }

    /// `|z⟩⟨t|` on the words of `region`.
    pub fn basis(region: Region, alphabet_size: usize, z: &[Symbol], t: &[Symbol]) -> Self {
        let dim = alphabet_size.pow(region.len() as u32);
        let mut matrix = DMatrix::zeros(dim, dim);
        matrix[(word_index(z, alphabet_size), word_index(t, alphabet_size))] = Complex64::new(1.0, 0.0);
        Self {
            region,
            alphabet_size,
            matrix,
        }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

/// Sparse matrix over the configurations supported in a window, indexed by
/// window words (first cell most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct WindowMatrix {
    window: Region,
    alphabet_size: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl WindowMatrix {
    pub(crate) fn from_entries(
        window: Region,
        alphabet_size: usize,
        entries: BTreeMap<(usize, usize), Complex64>,
    ) -> Self {
        Self {
            window,
            alphabet_size,
            entries,
        }
    }

    pub fn window(&self) -> &Region {
        &self.window
    }

    pub fn get(&self, u: usize, v: usize) -> Complex64 {
        self.entries.get(&(u, v)).copied().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Complex64)> {
        self.entries.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.alphabet_size.pow(self.window.len() as u32)
    }

    /// The configuration carrying window word number `index`.
    pub fn config(&self, index: usize) -> Config {
        window_config(&self.window, self.alphabet_size, index)
    }
}

fn window_config(window: &Region, k: usize, index: usize) -> Config {
    let mut w = vec![0; window.len()];
    let mut i = index;
    for slot in w.iter_mut().rev() {
        *slot = (i % k) as Symbol;
        i /= k;
    }
    Config::from_cells(window.cells(), &w)
}

/// Configurations supported in a window, grouped by their image with the
/// operator region blanked. Two window configurations can only be linked by
/// an operator on `region` when they share a group.
pub(crate) struct ImageGroups {
    pub alphabet_size: usize,
    /// Per group: (window index, index of the image word on `region`).
    pub groups: Vec<Vec<(usize, usize)>>,
}

pub(crate) fn window_dim(window: &Region, k: usize) -> Result<usize, LocalityError> {
    let cap = max_window_dim();
    checked_pow(k, window.len())
        .filter(|&d| d <= cap)
        .ok_or(LocalityError::WindowTooLarge {
            cells: window.len(),
            cap,
        })
}

pub(crate) fn image_groups(rule: &Rule, region: &Region, window: &Region) -> Result<ImageGroups, LocalityError> {
    let required = region.sum(&rule.neighborhood_region());
    if !required.is_subset(window) {
        return Err(LocalityError::WindowTooSmall { required });
    }
    let k = rule.alphabet().len();
    let dim = window_dim(window, k)?;
    let mut by_key: BTreeMap<Config, Vec<(usize, usize)>> = BTreeMap::new();
    for u in 0..dim {
        let image = rule.step(&window_config(window, k, u));
        let r = word_index(&image.read(region.cells()), k);
        by_key.entry(image.blank(region.cells())).or_default().push((u, r));
    }
    Ok(ImageGroups {
        alphabet_size: k,
        groups: by_key.into_values().collect(),
    })
}

/// `⟨F(u)| (op ⊗ Id) |F(v)⟩` for all configurations `u`, `v` supported in
/// `window`.
pub fn conjugate_local_operator(
    rule: &Rule,
    op: &LocalOperator,
    window: &Region,
) -> Result<WindowMatrix, LocalityError> {
    if op.alphabet_size != rule.alphabet().len() {
        return Err(LocalityError::BadOperator);
    }
    let groups = image_groups(rule, &op.region, window)?;
    let mut entries = BTreeMap::new();
    for group in &groups.groups {
        for &(u, ru) in group {
            for &(v, rv) in group {
                let val = op.matrix[(ru, rv)];
                if val != Complex64::new(0.0, 0.0) {
                    entries.insert((u, v), val);
                }
            }
        }
    }
    Ok(WindowMatrix {
        window: window.clone(),
        alphabet_size: groups.alphabet_size,
        entries,
    })
}

/// Inside-region words and entries sharing one outside pair.
type Block = Vec<(Vec<Symbol>, Complex64)>;

/// A matrix entry that breaks the `B ⊗ Id` form.
#[derive(Clone, Debug, PartialEq)]
pub struct NotLocalized {
    pub u: Config,
    pub v: Config,
    pub value: Complex64,
}

/// Checks that `m` has the form `B ⊗ Id` with `B` acting on `region`:
/// entries vanish unless `u` and `v` agree on `window ∖ region`, and
/// `m[(x₁,u₂)][(y₁,u₂)]` does not depend on `u₂`.
pub fn check_localized(m: &WindowMatrix, region: &Region) -> Result<(), NotLocalized> {
    let k = m.alphabet_size;
    let cells = m.window.cells();
    let inside: Vec<usize> = (0..cells.len()).filter(|&i| region.contains(cells[i])).collect();
    let outside: Vec<usize> = (0..cells.len()).filter(|&i| !region.contains(cells[i])).collect();
    let split = |index: usize| {
        let mut w = vec![0; cells.len()];
        let mut i = index;
        for slot in w.iter_mut().rev() {
            *slot = (i % k) as Symbol;
            i /= k;
        }
        let a: Vec<Symbol> = inside.iter().map(|&p| w[p]).collect();
        let b: Vec<Symbol> = outside.iter().map(|&p| w[p]).collect();
        (a, b)
    };
    let join = |a: &[Symbol], b: &[Symbol]| {
        let mut w = vec![0; cells.len()];
        for (&p, &s) in inside.iter().zip(a) {
            w[p] = s;
        }
        for (&p, &s) in outside.iter().zip(b) {
            w[p] = s;
        }
        word_index(&w, k)
    };
    let fail = |u: usize, v: usize| NotLocalized {
        u: m.config(u),
        v: m.config(v),
        value: m.get(u, v),
    };

    let mut blocks: BTreeMap<(Vec<Symbol>, Vec<Symbol>), Block> = BTreeMap::new();
    for (&(u, v), &val) in &m.entries {
        if val.norm() <= STATE_TOL {
            continue;
        }
        let (x1, u2) = split(u);
        let (y1, v2) = split(v);
        if u2 != v2 {
            return Err(fail(u, v));
        }
        blocks.entry((x1, y1)).or_default().push((u2, val));
    }
    let full = k.pow(outside.len() as u32);
    for ((x1, y1), vals) in &blocks {
        let first = vals[0].1;
        if let Some((u2, _)) = vals.iter().find(|(_, v)| (v - first).norm() > STATE_TOL) {
            return Err(fail(join(x1, u2), join(y1, u2)));
        }
        if vals.len() < full {
            // some u₂ carries 0 where others carry `first`
            let present: Vec<usize> = vals.iter().map(|(u2, _)| word_index(u2, k)).collect();
            let missing = (0..full).find(|i| !present.contains(i)).unwrap();
            let u2 = Alphabet::digits(k).word_of_index(missing, outside.len());
            return Err(fail(join(x1, &u2), join(y1, &u2)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::catalog;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn projector_on_one() -> LocalOperator {
        LocalOperator::basis(Region::single(0), 2, &[1], &[1])
    }

    #[test]
    fn identity_rule_keeps_the_operator_in_place() {
        let window = Region::interval(-2, 2);
        let op = LocalOperator::new(
            Region::single(0),
            2,
            DMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(3.0), c(4.0)]),
        )
        .unwrap();
        let m = conjugate_local_operator(&catalog::identity(), &op, &window).unwrap();
        assert_eq!(m.nonzero_count(), 4 * 16);
        assert!(check_localized(&m, &Region::single(0)).is_ok());
        assert!(check_localized(&m, &Region::single(1)).is_err());
    }

    #[test]
    fn shift_moves_the_operator_one_cell() {
        let window = Region::interval(-1, 2);
        let m = conjugate_local_operator(&catalog::shift(), &projector_on_one(), &window).unwrap();
        assert!(check_localized(&m, &Region::single(1)).is_ok());
        assert!(check_localized(&m, &Region::single(0)).is_err());
        for u in 0..m.dim() {
            let x = m.config(u);
            assert_eq!(m.get(u, u), c(if x.get(1) == 1 { 1.0 } else { 0.0 }));
        }
    }

    #[test]
    fn xor_projector_is_diagonal_on_the_image_bit() {
        let rule = catalog::xor();
        let window = Region::interval(-2, 2);
        let m = conjugate_local_operator(&rule, &projector_on_one(), &window).unwrap();
        assert_eq!(m.dim(), 32);
        for (&(u, v), val) in m.entries() {
            assert_eq!(u, v);
            assert_eq!(*val, c(1.0));
        }
        for u in 0..32 {
            let bit = rule.step(&m.config(u)).get(0);
            assert_eq!(m.get(u, u), c(bit as f64));
        }
        assert!(check_localized(&m, &Region::interval(-1, 1)).is_ok());
    }

    #[test]
    fn swap_is_not_localized_on_one_cell() {
        // swap of cells 0 and 1 on a two-cell window
        let window = Region::interval(0, 1);
        let mut entries = BTreeMap::new();
        for (u, v) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            entries.insert((u, v), c(1.0));
        }
        let m = WindowMatrix {
            window,
            alphabet_size: 2,
            entries,
        };
        let err = check_localized(&m, &Region::single(0)).unwrap_err();
        assert_ne!(err.u, err.v);
        assert!(check_localized(&m, &Region::interval(0, 1)).is_ok());
    }

    #[test]
    fn window_must_cover_the_dependence_cone() {
        assert!(matches!(
            conjugate_local_operator(&catalog::xor(), &projector_on_one(), &Region::single(0)),
            Err(LocalityError::WindowTooSmall { .. })
        ));
    }
}
