use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::ca::{checked_pow, word_index, Alphabet, Region, Symbol};

use super::density::DensityOp;
use super::QuantumError;

/// Largest dimension of a dense reduced matrix.
pub const MAX_REDUCED_DIM: usize = 4096;

/// The reduction `ρ|_A` of a state to a finite region, as a dense matrix.
///
/// Rows and columns are indexed by words over the region's cells in
/// lexicographic order, the first (leftmost) cell most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedMatrix {
    region: Region,
    alphabet_size: usize,
    matrix: DMatrix<Complex64>,
}

fn dimension(region: &Region, k: usize) -> Result<usize, QuantumError> {
    let too_large = || QuantumError::RegionTooLarge {
        cells: region.len(),
        dim: checked_pow(k, region.len()).unwrap_or(usize::MAX),
        cap: MAX_REDUCED_DIM,
    };
    checked_pow(k, region.len())
        .filter(|&d| d <= MAX_REDUCED_DIM)
        .ok_or_else(too_large)
}

/// Partial trace of `rho` over the complement of `region`.
pub fn reduce(rho: &DensityOp, region: &Region, alphabet: &Alphabet) -> Result<ReducedMatrix, QuantumError> {
    let k = alphabet.len();
    let dim = dimension(region, k)?;
    let mut matrix = DMatrix::zeros(dim, dim);
    let cells = region.cells();
    for ((a, b), v) in rho.iter() {
        if a.blank(cells) == b.blank(cells) {
            let i = word_index(&a.read(cells), k);
            let j = word_index(&b.read(cells), k);
            matrix[(i, j)] += v;
        }
    }
    Ok(ReducedMatrix {
        region: region.clone(),
        alphabet_size: k,
        matrix,
    })
}

/// `ρ|_A` as a sparse map from word pairs to entries, for regions whose dense
/// dimension would exceed [`MAX_REDUCED_DIM`].
#[derive(Clone, Debug, PartialEq)]
pub struct SparseReduced {
    region: Region,
    entries: BTreeMap<(Vec<Symbol>, Vec<Symbol>), Complex64>,
}

pub fn reduce_sparse(rho: &DensityOp, region: &Region) -> SparseReduced {
    let cells = region.cells();
    let mut entries: BTreeMap<(Vec<Symbol>, Vec<Symbol>), Complex64> = BTreeMap::new();
    for ((a, b), v) in rho.iter() {
        if a.blank(cells) == b.blank(cells) {
            *entries.entry((a.read(cells), b.read(cells))).or_default() += v;
        }
    }
    entries.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    SparseReduced {
        region: region.clone(),
        entries,
    }
}

impl SparseReduced {
    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn entry(&self, x: &[Symbol], y: &[Symbol]) -> Complex64 {
        self.entries.get(&(x.to_vec(), y.to_vec())).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.iter().filter(|((x, y), _)| x == y).map(|(_, v)| *v).sum()
    }

    /// `‖self − other‖_F`.
    pub fn frobenius_distance(&self, other: &SparseReduced) -> Result<f64, QuantumError> {
        if self.region != other.region {
            return Err(QuantumError::RegionMismatch);
        }
        let mut sq = 0.0;
        for (key, v) in &self.entries {
            let w = other.entries.get(key).copied().unwrap_or_default();
            sq += (v - w).norm_sqr();
        }
        for (key, w) in &other.entries {
            if !self.entries.contains_key(key) {
                sq += w.norm_sqr();
            }
        }
        Ok(sq.sqrt())
    }
}

impl ReducedMatrix {
    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Builds a reduced matrix from raw parts; `None` if the shape does not
    /// match the region.
    pub fn from_parts(region: Region, alphabet_size: usize, matrix: DMatrix<Complex64>) -> Option<Self> {
        let dim = checked_pow(alphabet_size, region.len())?;
        (matrix.nrows() == dim && matrix.ncols() == dim).then_some(Self {
            region,
            alphabet_size,
            matrix,
        })
    }

    /// Row/column labels in index order.
    pub fn words(&self) -> Vec<Vec<Symbol>> {
        (0..self.dim())
            .map(|i| {
                let mut w = vec![0; self.region.len()];
                let mut i = i;
                for slot in w.iter_mut().rev() {
                    *slot = (i % self.alphabet_size) as Symbol;
                    i /= self.alphabet_size;
                }
                w
            })
            .collect()
    }

    pub fn entry(&self, x: &[Symbol], y: &[Symbol]) -> Complex64 {
        let k = self.alphabet_size;
        self.matrix[(word_index(x, k), word_index(y, k))]
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm() <= tol))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Partial trace down to a subregion.
    pub fn restrict(&self, sub: &Region) -> Result<ReducedMatrix, QuantumError> {
        if !sub.is_subset(&self.region) {
            return Err(QuantumError::RegionMismatch);
        }
        let k = self.alphabet_size;
        let dim = dimension(sub, k)?;
        let keep: Vec<usize> = self
            .region
            .cells()
            .iter()
            .enumerate()
            .filter(|(_, c)| sub.contains(**c))
            .map(|(i, _)| i)
            .collect();
        let traced: Vec<usize> = (0..self.region.len()).filter(|i| !keep.contains(i)).collect();
        let words = self.words();
        let pick = |w: &[Symbol], idx: &[usize]| -> Vec<Symbol> { idx.iter().map(|&i| w[i]).collect() };
        let mut out = DMatrix::zeros(dim, dim);
        for (i, wi) in words.iter().enumerate() {
            let ti = pick(wi, &traced);
            let si = word_index(&pick(wi, &keep), k);
            for (j, wj) in words.iter().enumerate() {
                if pick(wj, &traced) == ti {
                    out[(si, word_index(&pick(wj, &keep), k))] += self.matrix[(i, j)];
                }
            }
        }
        Ok(ReducedMatrix {
            region: sub.clone(),
            alphabet_size: k,
            matrix: out,
        })
    }

    /// `‖self − other‖_F`.
    pub fn frobenius_distance(&self, other: &ReducedMatrix) -> Result<f64, QuantumError> {
        self.check_same_space(other)?;
        Ok((&self.matrix - &other.matrix).norm())
    }

    fn check_same_space(&self, other: &ReducedMatrix) -> Result<(), QuantumError> {
        if self.region != other.region || self.alphabet_size != other.alphabet_size {
            return Err(QuantumError::RegionMismatch);
        }
        Ok(())
    }
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `½ Σ |λ|` over the eigenvalues of `m1 − m2`.
pub fn trace_distance(m1: &ReducedMatrix, m2: &ReducedMatrix) -> Result<f64, QuantumError> {
    m1.check_same_space(m2)?;
    let d = &m1.matrix - &m2.matrix;
    Ok(0.5 * hermitian_eigenvalues(&d).iter().map(|l| l.abs()).sum::<f64>())
}

/// `Tr((O ⊗ Id) ρ)` for an operator `O` on the words of `region`, computed
/// directly from the entries of `ρ`.
pub fn expectation_local(rho: &DensityOp, region: &Region, op: &DMatrix<Complex64>, alphabet: &Alphabet) -> Complex64 {
    let k = alphabet.len();
    let cells = region.cells();
    rho.iter()
        .filter(|((a, b), _)| a.blank(cells) == b.blank(cells))
        .map(|((a, b), v)| op[(word_index(&b.read(cells), k), word_index(&a.read(cells), k))] * v)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::Config;
    use crate::quantum::{make_superposition, pure_density, Superposition};

    fn bin(s: &str) -> Config {
        Config::parse(s, &Alphabet::binary()).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn pure_basis_reduces_to_a_projector() {
        let x = bin("0|1011");
        let rho = pure_density(&Superposition::basis(x.clone())).unwrap();
        let region = Region::new([1, 2, 5]);
        let m = reduce(&rho, &region, &Alphabet::binary()).unwrap();
        assert_eq!(m.dim(), 8);
        let w = x.read(region.cells());
        assert_eq!(w, vec![0, 1, 0]);
        assert_eq!(m.entry(&w, &w), one());
        assert!((m.matrix().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cross_terms_vanish_when_the_complement_differs() {
        let x = bin("0|");
        let y = bin("0|1111");
        let region = Region::new([0]);
        let alphabet = Alphabet::binary();
        let plus = pure_density(&make_superposition([(x.clone(), one()), (y.clone(), one())]).unwrap()).unwrap();
        let minus = pure_density(&make_superposition([(x, one()), (y, -one())]).unwrap()).unwrap();
        let mp = reduce(&plus, &region, &alphabet).unwrap();
        let mm = reduce(&minus, &region, &alphabet).unwrap();
        assert_eq!(mp, mm);
        assert_eq!(trace_distance(&mp, &mm).unwrap(), 0.0);
        assert_eq!(
            reduce_sparse(&plus, &region)
                .frobenius_distance(&reduce_sparse(&minus, &region))
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn orthogonal_pure_states_are_at_distance_one() {
        let alphabet = Alphabet::binary();
        let region = Region::new([0, 1]);
        let a = pure_density(&Superposition::basis(bin("0|1"))).unwrap();
        let b = pure_density(&Superposition::basis(bin("0|11"))).unwrap();
        let ma = reduce(&a, &region, &alphabet).unwrap();
        let mb = reduce(&b, &region, &alphabet).unwrap();
        assert!((trace_distance(&ma, &mb).unwrap() - 1.0).abs() < 1e-12);
        assert!((trace_distance(&mb, &ma).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(trace_distance(&ma, &ma).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_regions_are_rejected() {
        let alphabet = Alphabet::binary();
        let rho = pure_density(&Superposition::basis(bin("0|1"))).unwrap();
        let m0 = reduce(&rho, &Region::single(0), &alphabet).unwrap();
        let m1 = reduce(&rho, &Region::single(1), &alphabet).unwrap();
        assert_eq!(trace_distance(&m0, &m1), Err(QuantumError::RegionMismatch));
    }

    #[test]
    fn region_cap() {
        let rho = pure_density(&Superposition::basis(bin("0|1"))).unwrap();
        assert!(reduce(&rho, &Region::interval(0, 11), &Alphabet::binary()).is_ok());
        assert!(matches!(
            reduce(&rho, &Region::interval(0, 12), &Alphabet::binary()),
            Err(QuantumError::RegionTooLarge { dim: 8192, .. })
        ));
    }

    #[test]
    fn restriction_matches_direct_reduction() {
        let alphabet = Alphabet::binary();
        let s = make_superposition([
            (bin("0|1"), one()),
            (bin("0|11"), Complex64::new(0.0, 1.0)),
            (bin("1|101"), Complex64::new(0.5, -0.5)),
        ])
        .unwrap();
        let rho = pure_density(&s).unwrap();
        let big = reduce(&rho, &Region::new([0, 1, 3]), &alphabet).unwrap();
        for sub in [Region::new([0]), Region::new([1, 3]), Region::new([0, 3])] {
            let direct = reduce(&rho, &sub, &alphabet).unwrap();
            let nested = big.restrict(&sub).unwrap();
            assert!(direct.frobenius_distance(&nested).unwrap() < 1e-15);
        }
    }

    #[test]
    fn expectation_matches_reduced_trace() {
        let alphabet = Alphabet::binary();
        let s = make_superposition([(bin("0|1"), one()), (bin("0|11"), Complex64::new(0.3, 1.0))]).unwrap();
        let rho = pure_density(&s).unwrap();
        let region = Region::new([1]);
        let op = DMatrix::from_row_slice(
            2,
            2,
            &[one(), Complex64::new(0.0, 2.0), Complex64::new(0.0, -2.0), -one()],
        );
        let m = reduce(&rho, &region, &alphabet).unwrap();
        let via_reduction = (&op * m.matrix()).trace();
        assert!((expectation_local(&rho, &region, &op, &alphabet) - via_reduction).norm() < 1e-15);
    }
}
