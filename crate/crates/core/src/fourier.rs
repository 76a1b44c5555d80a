//! Superposition oracle gadgets: addition and phase queries, Fourier
//! transforms of arbitrary modulus, the two conversion circuits between the
//! query types, and the root-of-unity zero-sum primitive.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::qstate::{apply_unitary, RegisterLayout, StateVector, UnitaryOp};

/// Explicit table for f: [n] -> [m].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFunction {
    n: usize,
    m: usize,
    table: Vec<usize>,
}

impl OracleFunction {
    pub fn new(n: usize, m: usize, table: Vec<usize>) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain("codomain size must be at least 2"));
        }
        if table.len() != n {
            return Err(Error::domain("table length must equal domain size"));
        }
        if table.iter().any(|&v| v >= m) {
            return Err(Error::domain("table entry out of codomain range"));
        }
        Ok(OracleFunction { n, m, table })
    }

    pub fn constant(n: usize, m: usize, value: usize) -> Result<Self> {
        OracleFunction::new(n, m, vec![value; n])
    }

    /// The `index`-th function in the enumeration of all m^n tables.
    /// table[x] is the x-th base-m digit of `index`.
    pub fn from_index(n: usize, m: usize, mut index: usize) -> Result<Self> {
        let mut table = vec![0; n];
        for slot in table.iter_mut() {
            *slot = index % m;
            index /= m;
        }
        OracleFunction::new(n, m, table)
    }

    /// Number of functions [n] -> [m], or None on overflow.
    pub fn family_size(n: usize, m: usize) -> Option<usize> {
        m.checked_pow(u32::try_from(n).ok()?)
    }

    pub fn random(n: usize, m: usize, rng: &mut impl Rng) -> Result<Self> {
        let table = (0..n).map(|_| rng.gen_range(0..m)).collect();
        OracleFunction::new(n, m, table)
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    pub fn codomain_size(&self) -> usize {
        self.m
    }

    pub fn eval(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Pointwise sum mod m (the shifted oracle of the randomizing reduction).
    pub fn pointwise_add(&self, other: &OracleFunction) -> Result<OracleFunction> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::domain("oracle dimensions do not match"));
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| (a + b) % self.m)
            .collect();
        OracleFunction::new(self.n, self.m, table)
    }
}

/// omega_m^e = exp(2*pi*i*e/m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    pub modulus: usize,
    pub exponent: i64,
}

impl RootOfUnity {
    pub fn new(modulus: usize, exponent: i64) -> Self {
        let m = modulus as i64;
        RootOfUnity {
            modulus,
            exponent: exponent.rem_euclid(m),
        }
    }

    pub fn value(self) -> Complex64 {
        omega_pow(self.modulus, self.exponent)
    }
}

/// exp(2*pi*i*e/m) without reducing e first (reduction is implied by the angle).
pub fn omega_pow(m: usize, e: i64) -> Complex64 {
    let angle = TAU * (e as f64) / (m as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// The m-dimensional Fourier matrix with entries omega^{jk} / sqrt(m).
pub fn fourier_matrix(m: usize) -> Result<DMatrix<Complex64>> {
    if m < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    let scale = 1.0 / (m as f64).sqrt();
    Ok(DMatrix::from_fn(m, m, |j, k| {
        omega_pow(m, (j * k) as i64) * scale
    }))
}

/// Entries omega^{-jk} / sqrt(m).
pub fn inverse_fourier_matrix(m: usize) -> Result<DMatrix<Complex64>> {
    if m < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    let scale = 1.0 / (m as f64).sqrt();
    Ok(DMatrix::from_fn(m, m, |j, k| {
        omega_pow(m, -((j * k) as i64)) * scale
    }))
}

/// Fourier transform as a unitary on a single wire of dimension m.
pub fn fourier(wire: usize, m: usize) -> Result<UnitaryOp> {
    UnitaryOp::single(wire, fourier_matrix(m)?)
}

pub fn inverse_fourier(wire: usize, m: usize) -> Result<UnitaryOp> {
    UnitaryOp::single(wire, inverse_fourier_matrix(m)?)
}

fn check_query_wires(
    layout: &RegisterLayout,
    f: &OracleFunction,
    x_wire: usize,
    b_wire: usize,
) -> Result<()> {
    if x_wire >= layout.num_wires() || b_wire >= layout.num_wires() || x_wire == b_wire {
        return Err(Error::domain("query wires out of range or equal"));
    }
    if layout.wire_dim(x_wire) != f.domain_size() {
        return Err(Error::domain(format!(
            "x wire dimension {} != oracle domain {}",
            layout.wire_dim(x_wire),
            f.domain_size()
        )));
    }
    if layout.wire_dim(b_wire) != f.codomain_size() {
        return Err(Error::domain(format!(
            "b wire dimension {} != oracle codomain {}",
            layout.wire_dim(b_wire),
            f.codomain_size()
        )));
    }
    Ok(())
}

/// Addition query |x,b,w> -> |x, b+f(x) mod m, w>.
pub fn addition_query(
    state: &StateVector,
    f: &OracleFunction,
    x_wire: usize,
    b_wire: usize,
) -> Result<StateVector> {
    let layout = state.layout().clone();
    check_query_wires(&layout, f, x_wire, b_wire)?;
    let m = f.codomain_size();
    let mut out = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
    for (idx, &amp) in state.amps().iter().enumerate() {
        let mut digits = layout.digits_of(idx);
        digits[b_wire] = (digits[b_wire] + f.eval(digits[x_wire])) % m;
        out[layout.index_of(&digits)?] = amp;
    }
    StateVector::from_amps(layout, out)
}

/// Phase query |x,b,w> -> omega^{b*f(x)} |x,b,w>.
pub fn phase_query(
    state: &StateVector,
    f: &OracleFunction,
    x_wire: usize,
    b_wire: usize,
) -> Result<StateVector> {
    let layout = state.layout().clone();
    check_query_wires(&layout, f, x_wire, b_wire)?;
    let m = f.codomain_size();
    let out = state
        .amps()
        .iter()
        .enumerate()
        .map(|(idx, &amp)| {
            let digits = layout.digits_of(idx);
            amp * omega_pow(m, (digits[b_wire] * f.eval(digits[x_wire])) as i64)
        })
        .collect();
    StateVector::from_amps(layout, out)
}

/// Phase query built from an addition query: F^{-1} on b, add, F on b.
pub fn phase_via_addition(
    state: &StateVector,
    f: &OracleFunction,
    x_wire: usize,
    b_wire: usize,
) -> Result<StateVector> {
    let m = f.codomain_size();
    let s = apply_unitary(state, &inverse_fourier(b_wire, m)?)?;
    let s = addition_query(&s, f, x_wire, b_wire)?;
    apply_unitary(&s, &fourier(b_wire, m)?)
}

/// Addition query built from a phase query: F on b, phase, F^{-1} on b.
pub fn addition_via_phase(
    state: &StateVector,
    f: &OracleFunction,
    x_wire: usize,
    b_wire: usize,
) -> Result<StateVector> {
    let m = f.codomain_size();
    let s = apply_unitary(state, &fourier(b_wire, m)?)?;
    let s = phase_query(&s, f, x_wire, b_wire)?;
    apply_unitary(&s, &inverse_fourier(b_wire, m)?)
}

/// Direct summation of sum_{j=0}^{m-1} omega_m^{jc}; zero when m does not
/// divide c, m when it does. Kept as a plain sum so it can cross-check the
/// geometric-series identity.
pub fn root_of_unity_sum(m: usize, c: i64) -> Complex64 {
    (0..m as i64).map(|j| omega_pow(m, j * c)).sum()
}
