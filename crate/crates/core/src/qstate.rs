//! Dense statevector simulation over mixed-radix registers.
//!
//! Wires may have different dimensions, so an oracle answering mod m lives on
//! an m-dimensional wire instead of being padded into qubits. Indexing is
//! big-endian: the first wire is the most significant digit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub const TOL_ASSERT: f64 = 1e-10;
pub const TOL_TIGHT: f64 = 1e-12;

/// Ordered wire dimensions of a register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    wire_dims: Vec<usize>,
}

impl RegisterLayout {
    pub fn new(wire_dims: Vec<usize>) -> Result<Self> {
        if wire_dims.is_empty() {
            return Err(Error::domain("layout must have at least one wire"));
        }
        if wire_dims.iter().any(|&d| d == 0) {
            return Err(Error::domain("wire dimension must be positive"));
        }
        Ok(RegisterLayout { wire_dims })
    }

    pub fn wire_dims(&self) -> &[usize] {
        &self.wire_dims
    }

    pub fn num_wires(&self) -> usize {
        self.wire_dims.len()
    }

    pub fn wire_dim(&self, wire: usize) -> usize {
        self.wire_dims[wire]
    }

    pub fn total_dim(&self) -> usize {
        self.wire_dims.iter().product()
    }

    /// Mixed-radix digits -> linear index.
    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.wire_dims.len() {
            return Err(Error::domain(format!(
                "expected {} digits, got {}",
                self.wire_dims.len(),
                digits.len()
            )));
        }
        let mut idx = 0;
        for (&d, &dim) in digits.iter().zip(&self.wire_dims) {
            if d >= dim {
                return Err(Error::domain(format!("digit {d} out of range for wire of dimension {dim}")));
            }
            idx = idx * dim + d;
        }
        Ok(idx)
    }

    /// Linear index -> mixed-radix digits.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.wire_dims.len()];
        for (slot, &dim) in digits.iter_mut().zip(&self.wire_dims).rev() {
            *slot = index % dim;
            index /= dim;
        }
        digits
    }
}

/// Dense complex amplitude vector over a layout.
#[derive(Debug, Clone)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amps(layout: RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::domain("amplitude vector length does not match layout"));
        }
        Ok(StateVector { layout, amps })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest |a_i - b_i| between two states on the same layout.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Dense unitary acting on a subset of wires; checked on construction.
#[derive(Debug, Clone)]
pub struct UnitaryOp {
    target_wires: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl UnitaryOp {
    pub fn new(target_wires: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::domain("unitary matrix must be square"));
        }
        let mut seen = target_wires.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != target_wires.len() {
            return Err(Error::domain("target wires must be distinct"));
        }
        let dev = unitarity_deviation(&matrix);
        if dev > TOL_ASSERT {
            return Err(Error::domain(format!(
                "matrix is not unitary (max |U†U - I| = {dev:.3e})"
            )));
        }
        Ok(UnitaryOp { target_wires, matrix })
    }

    pub fn single(wire: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        UnitaryOp::new(vec![wire], matrix)
    }

    pub fn identity(wire: usize, dim: usize) -> UnitaryOp {
        UnitaryOp {
            target_wires: vec![wire],
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn target_wires(&self) -> &[usize] {
        &self.target_wires
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> UnitaryOp {
        UnitaryOp {
            target_wires: self.target_wires.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    fn check_layout(&self, layout: &RegisterLayout) -> Result<usize> {
        let mut dim = 1usize;
        for &w in &self.target_wires {
            if w >= layout.num_wires() {
                return Err(Error::domain(format!("target wire {w} out of range")));
            }
            dim *= layout.wire_dim(w);
        }
        if dim != self.matrix.nrows() {
            return Err(Error::domain(format!(
                "matrix dimension {} does not match target wires dimension {dim}",
                self.matrix.nrows()
            )));
        }
        Ok(dim)
    }
}

pub fn unitarity_deviation(matrix: &DMatrix<Complex64>) -> f64 {
    let gram = matrix.adjoint() * matrix;
    let n = matrix.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            dev = dev.max((gram[(i, j)] - expect).norm());
        }
    }
    dev
}

/// |digits> on the given layout.
pub fn basis_state(layout: &RegisterLayout, digits: &[usize]) -> Result<StateVector> {
    let idx = layout.index_of(digits)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
    amps[idx] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        layout: layout.clone(),
        amps,
    })
}

/// Plan for applying a wire-subset operator: global indices grouped into
/// blocks that the dense matrix acts on. Shared with the symbolic simulator.
pub(crate) struct BlockPlan {
    /// blocks[outer][inner] = global index.
    pub blocks: Vec<Vec<usize>>,
}

pub(crate) fn block_plan(layout: &RegisterLayout, targets: &[usize]) -> BlockPlan {
    let target_dims: Vec<usize> = targets.iter().map(|&w| layout.wire_dim(w)).collect();
    let block_dim: usize = target_dims.iter().product();
    let others: Vec<usize> = (0..layout.num_wires()).filter(|w| !targets.contains(w)).collect();
    let other_dims: Vec<usize> = others.iter().map(|&w| layout.wire_dim(w)).collect();
    let outer_count: usize = other_dims.iter().product();

    let mut blocks = Vec::with_capacity(outer_count);
    let mut digits = vec![0usize; layout.num_wires()];
    for outer in 0..outer_count {
        // spread outer digits over the non-target wires
        let mut rem = outer;
        for (&w, &dim) in others.iter().zip(&other_dims).rev() {
            digits[w] = rem % dim;
            rem /= dim;
        }
        let mut block = Vec::with_capacity(block_dim);
        for inner in 0..block_dim {
            let mut rem = inner;
            for (&w, &dim) in targets.iter().zip(&target_dims).rev() {
                digits[w] = rem % dim;
                rem /= dim;
            }
            block.push(layout.index_of(&digits).expect("digits in range"));
        }
        blocks.push(block);
    }
    BlockPlan { blocks }
}

/// Apply `u` to `state`, acting as identity on non-target wires.
pub fn apply_unitary(state: &StateVector, u: &UnitaryOp) -> Result<StateVector> {
    u.check_layout(&state.layout)?;
    let plan = block_plan(&state.layout, &u.target_wires);
    let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
    for block in &plan.blocks {
        for (row, &gi) in block.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, &gj) in block.iter().enumerate() {
                acc += u.matrix[(row, col)] * state.amps[gj];
            }
            out[gi] = acc;
        }
    }
    Ok(StateVector {
        layout: state.layout.clone(),
        amps: out,
    })
}

/// (digit tuple, probability) for every basis index, in index order.
pub fn probability_table(state: &StateVector) -> Vec<(Vec<usize>, f64)> {
    state
        .amps
        .iter()
        .enumerate()
        .map(|(i, a)| (state.layout.digits_of(i), a.norm_sqr()))
        .collect()
}

/// Haar-ish random unitary: QR-orthonormalization of a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let raw = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    orthonormalize(&raw)
}

/// Project a raw complex matrix to the nearest-ish unitary via QR.
pub fn orthonormalize(raw: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let qr = raw.clone().qr();
    qr.q()
}

/// Random normalized state on a layout.
pub fn random_state(layout: &RegisterLayout, rng: &mut impl Rng) -> StateVector {
    let mut amps: Vec<Complex64> = (0..layout.total_dim())
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector {
        layout: layout.clone(),
        amps,
    }
}
