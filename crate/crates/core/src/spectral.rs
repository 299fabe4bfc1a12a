//! Exact spectra of action matrices.
//!
//! The leaf action of an element is a partial injection of the leaves. Its
//! orbits are either cycles or chains that fall off the domain; a chain cannot
//! run into a cycle because the map is injective. A `k`-cycle contributes the
//! `k`-th roots of unity to the spectrum and every leaf on a chain contributes
//! a zero eigenvalue.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, Schur, SVD};
pub use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree_action::{action_matrix, leaf_map};
use crate::wreath::WreathElement;

/// Largest level accepted by [`eigenvalues_dense_oracle`].
pub const ORACLE_MAX_LEVEL: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// Sorted ascending.
    pub cycle_lengths: Vec<u64>,
    pub transient_count: u64,
}

impl CycleDecomposition {
    pub fn cycle_leaves(&self) -> u64 {
        self.cycle_lengths.iter().sum()
    }
}

/// Cycle structure of a partial injection given as 0-based images.
pub fn cycles_of_partial_injection(map: &[Option<u32>]) -> CycleDecomposition {
    let size = map.len();
    // Chain starts: points without a preimage. Walking forward from them
    // visits every non-cycle point exactly once.
    let mut has_preimage = vec![false; size];
    for j in map.iter().flatten() {
        has_preimage[*j as usize] = true;
    }
    let mut visited = vec![false; size];
    let mut transient_count = 0u64;
    for start in (0..size).filter(|&i| !has_preimage[i]) {
        let mut cur = Some(start as u32);
        while let Some(p) = cur {
            visited[p as usize] = true;
            transient_count += 1;
            cur = map[p as usize];
        }
    }
    let mut cycle_lengths = Vec::new();
    for start in 0..size {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start;
        while !visited[p] {
            visited[p] = true;
            len += 1;
            p = map[p].expect("unvisited points lie on cycles") as usize;
        }
        cycle_lengths.push(len);
    }
    cycle_lengths.sort_unstable();
    CycleDecomposition { cycle_lengths, transient_count }
}

pub fn cycle_decomposition(x: &WreathElement) -> CycleDecomposition {
    cycles_of_partial_injection(&leaf_map(x))
}

/// Leaves (1-based) lying in the domain of every power of the leaf action.
///
/// Follows the definition directly: the domain of `x^(m+1)` is computed from
/// that of `x^m` for `m` up to `2^n`, stopping early once two consecutive
/// domains agree (after that they never change). An orbit that dies visits
/// distinct leaves, so it dies within `2^n` steps.
pub fn surviving_set(x: &WreathElement) -> BTreeSet<u64> {
    let map = leaf_map(x);
    let size = map.len();
    // current[i] = x^m(i) for i in dom(x^m)
    let mut current: Vec<Option<u32>> = map.clone();
    let mut alive = current.iter().flatten().count();
    for _ in 1..size {
        let next: Vec<Option<u32>> = current.iter().map(|c| c.and_then(|j| map[j as usize])).collect();
        let next_alive = next.iter().flatten().count();
        current = next;
        if next_alive == alive {
            break;
        }
        alive = next_alive;
    }
    current
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_some())
        .map(|(i, _)| i as u64 + 1)
        .collect()
}

/// Number of leaves on cycles of the leaf action.
pub fn ultimate_rank(x: &WreathElement) -> u64 {
    cycle_decomposition(x).cycle_leaves()
}

/// The eigenvalue multiset of an action matrix: `zeros` copies of `0` and, for
/// each cycle of length `k`, the `k`-th roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralMeasure {
    pub n: u32,
    pub zeros: u64,
    /// Sorted ascending.
    pub cycles: Vec<u64>,
}

pub fn spectral_measure(x: &WreathElement) -> SpectralMeasure {
    SpectralMeasure::from_cycles(x.level(), &cycle_decomposition(x))
}

impl SpectralMeasure {
    pub fn from_cycles(n: u32, cycles: &CycleDecomposition) -> Self {
        SpectralMeasure { n, zeros: cycles.transient_count, cycles: cycles.cycle_lengths.clone() }
    }

    pub fn dimension(&self) -> u64 {
        1u64 << self.n
    }

    pub fn ultimate_rank(&self) -> u64 {
        self.cycles.iter().sum()
    }

    /// `trace(A^k)`: the number of leaves on cycles whose length divides `k`.
    pub fn power_trace(&self, k: u64) -> u64 {
        self.cycles.iter().filter(|&&len| k.is_multiple_of(len)).sum()
    }

    /// `∫ z^k dΞ = trace(A^k) / 2^n`.
    pub fn moment(&self, k: u64) -> Ratio<u64> {
        assert!(k >= 1, "moments are defined for k >= 1");
        Ratio::new(self.power_trace(k), self.dimension())
    }

    /// Explicit eigenvalues, zeros first, then each cycle's roots of unity.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.zeros as usize];
        for &k in &self.cycles {
            out.extend((0..k).map(|j| root_of_unity(j, k)));
        }
        out
    }

    pub fn integrate(&self, f: &TestFunction) -> Complex64 {
        let dim = self.dimension() as f64;
        match f {
            TestFunction::One => Complex64::new(1.0, 0.0),
            TestFunction::AbsSquared => Complex64::new(self.ultimate_rank() as f64 / dim, 0.0),
            TestFunction::RePow(m) if *m >= 1 => Complex64::new(self.power_trace(u64::from(*m)) as f64 / dim, 0.0),
            TestFunction::RePow(_) => Complex64::new(1.0, 0.0),
            TestFunction::Custom { f, .. } => self.integrate_fn(|z| f(z)),
        }
    }

    /// Numeric integral of an arbitrary function by evaluation at the atoms.
    pub fn integrate_fn(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let mut sum = f(Complex64::new(0.0, 0.0)) * self.zeros as f64;
        for &k in &self.cycles {
            for j in 0..k {
                sum += f(root_of_unity(j, k));
            }
        }
        sum / self.dimension() as f64
    }
}

impl fmt::Display for SpectralMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

fn root_of_unity(j: u64, k: u64) -> Complex64 {
    if j == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)
}

/// Continuous test functions on the closed unit disc.
///
/// The first three variants are integrated exactly from the cycle structure;
/// `Custom` is evaluated numerically at every atom.
#[derive(Clone)]
pub enum TestFunction {
    One,
    AbsSquared,
    /// `Re z^m`.
    RePow(u32),
    Custom {
        name: String,
        /// An upper bound for `|f|` on the disc.
        sup_norm: f64,
        f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    },
}

impl TestFunction {
    pub fn name(&self) -> String {
        match self {
            TestFunction::One => "one".into(),
            TestFunction::AbsSquared => "abs_z2".into(),
            TestFunction::RePow(1) => "re_z".into(),
            TestFunction::RePow(m) => format!("re_z{m}"),
            TestFunction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn at_zero(&self) -> Complex64 {
        match self {
            TestFunction::One | TestFunction::RePow(0) => Complex64::new(1.0, 0.0),
            TestFunction::AbsSquared | TestFunction::RePow(_) => Complex64::new(0.0, 0.0),
            TestFunction::Custom { f, .. } => f(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        match self {
            TestFunction::Custom { sup_norm, .. } => *sup_norm,
            _ => 1.0,
        }
    }
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Eigenvalues of the dense 0/1 action matrix computed numerically. Used only
/// to cross-check the cycle computation.
///
/// A plain Schur decomposition of the whole matrix is unreliable here: a
/// nilpotent chain of length `k` turns rounding errors of size `ε` into
/// eigenvalues of size `ε^(1/k)`. So the matrix is first split numerically.
/// `P = A^(2^n)` is formed by repeated squaring, an SVD gives an orthonormal
/// basis `U` of its range, and the nonzero eigenvalues are those of the
/// compression `Uᵀ A U`, found by a Schur decomposition. The remaining
/// `2^n - rank P` eigenvalues are zero.
pub fn eigenvalues_dense_oracle(x: &WreathElement) -> Result<Vec<Complex64>> {
    if x.level() > ORACLE_MAX_LEVEL {
        return Err(Error::OracleTooLarge { n: x.level(), max: ORACLE_MAX_LEVEL });
    }
    let no_convergence = Error::OracleNoConvergence { n: x.level() };
    let a = action_matrix(x);
    let size = a.size();
    let dense = DMatrix::<f64>::from_fn(size, size, |i, j| if a.rows()[i] == Some(j as u32) { 1.0 } else { 0.0 });

    let mut power = dense.clone();
    let mut exponent = 1;
    while exponent < size {
        power = &power * &power;
        exponent *= 2;
    }
    let svd = SVD::try_new(power, true, false, f64::EPSILON, MAX_ITERATIONS).ok_or_else(|| no_convergence.clone())?;
    let u = svd.u.as_ref().ok_or_else(|| no_convergence.clone())?;
    let kept: Vec<usize> = (0..size).filter(|&i| svd.singular_values[i] > 0.5).collect();
    let basis = u.select_columns(&kept);
    let compressed = basis.transpose() * &dense * &basis;
    let rank = kept.len();

    let mut eigenvalues = vec![Complex64::new(0.0, 0.0); size - rank];
    if rank > 0 {
        // The compression is orthogonal; a shift keeps QR from stalling on it.
        let schur = [0.0, 0.5, -0.5].into_iter().find_map(|shift| {
            let shifted = &compressed + DMatrix::<f64>::identity(rank, rank) * shift;
            Schur::try_new(shifted, f64::EPSILON, MAX_ITERATIONS).map(|s| (s, shift))
        });
        let (schur, shift) = schur.ok_or(no_convergence)?;
        eigenvalues.extend(schur.complex_eigenvalues().iter().map(|z| z - shift));
    }
    Ok(eigenvalues)
}

const MAX_ITERATIONS: usize = 10_000;

/// Number of numeric eigenvalues with modulus above one half.
pub fn count_unit_modulus(eigenvalues: &[Complex64]) -> usize {
    eigenvalues.iter().filter(|z| z.norm() > 0.5).count()
}

/// Pairs two eigenvalue lists after sorting both by (modulus, argument) and
/// returns the largest pairwise distance.
pub fn match_spectra(exact: &[Complex64], numeric: &[Complex64]) -> Option<f64> {
    if exact.len() != numeric.len() {
        return None;
    }
    let key = |z: &Complex64| {
        let modulus = z.norm();
        let mut arg = if modulus < 1e-6 { 0.0 } else { z.arg().rem_euclid(2.0 * PI) };
        if arg > 2.0 * PI - 1e-6 {
            arg = 0.0;
        }
        ((modulus * 1e6).round() as i64, arg)
    };
    let sorted = |v: &[Complex64]| {
        let mut v: Vec<_> = v.to_vec();
        v.sort_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        });
        v
    };
    let (a, b) = (sorted(exact), sorted(numeric));
    Some(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
}
