//! Symbolic amplitude tracking: every basis-state amplitude is kept as
//!
//!   sum over (S, b) of  beta_{S,b} * prod_{x in S} omega_m^{f(x) * b(x)}
//!
//! with S a subset of the oracle domain and b: S -> {1,..,m-1}. Phase queries
//! rekey terms, unitaries take linear combinations, and the lemma-level
//! identities (Parseval-style expectation, Cauchy-Schwarz mass bound, the
//! restricted normalized polynomial) are built on this representation.

use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fourier::{omega_pow, OracleFunction};
use crate::par;
use crate::qstate::{block_plan, RegisterLayout, StateVector, UnitaryOp};

/// Coefficients below this modulus are dropped after each evolution step.
const PRUNE_TOL: f64 = 1e-13;

pub const DEFAULT_ENUM_CAP: usize = 1 << 20;

/// Canonical (S, b) key: map from domain point to its nonzero exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TermKey {
    entries: BTreeMap<usize, usize>,
}

impl TermKey {
    pub fn empty() -> Self {
        TermKey::default()
    }

    pub fn new(entries: BTreeMap<usize, usize>) -> Self {
        TermKey { entries }
    }

    pub fn entries(&self) -> &BTreeMap<usize, usize> {
        &self.entries
    }

    /// |S|, the term's degree.
    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    /// Multiply this term by omega^{f(x0) * b0}, following the three cases of
    /// the induction step: join x0, rekey its exponent, or cancel it out.
    fn absorb(&self, x0: usize, b0: usize, m: usize) -> TermKey {
        let mut entries = self.entries.clone();
        match entries.get(&x0).copied() {
            None => {
                entries.insert(x0, b0);
            }
            Some(prev) => {
                let s = (prev + b0) % m;
                if s == 0 {
                    entries.remove(&x0);
                } else {
                    entries.insert(x0, s);
                }
            }
        }
        TermKey { entries }
    }

    /// omega-product value of this term under an explicit assignment.
    pub fn eval(&self, m: usize, value_of: &impl Fn(usize) -> usize) -> Complex64 {
        self.entries
            .iter()
            .map(|(&x, &b)| omega_pow(m, (value_of(x) * b) as i64))
            .product()
    }
}

/// A single amplitude as a polynomial over functions on `domain`.
#[derive(Debug, Clone)]
pub struct AmplitudePolynomial {
    m: usize,
    domain: Vec<usize>,
    degree_budget: usize,
    terms: BTreeMap<TermKey, Complex64>,
}

impl AmplitudePolynomial {
    pub fn zero(m: usize, domain: Vec<usize>, degree_budget: usize) -> Self {
        AmplitudePolynomial {
            m,
            domain,
            degree_budget,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, domain: Vec<usize>, degree_budget: usize, c: Complex64) -> Self {
        let mut p = AmplitudePolynomial::zero(m, domain, degree_budget);
        if c.norm() > 0.0 {
            p.terms.insert(TermKey::empty(), c);
        }
        p
    }

    pub fn from_terms(
        m: usize,
        domain: Vec<usize>,
        degree_budget: usize,
        terms: BTreeMap<TermKey, Complex64>,
    ) -> Result<Self> {
        for key in terms.keys() {
            if key.degree() > degree_budget {
                return Err(Error::domain("term degree exceeds budget"));
            }
            for (&x, &b) in key.entries() {
                if !domain.contains(&x) {
                    return Err(Error::domain(format!("term point {x} outside domain")));
                }
                if b == 0 || b >= m {
                    return Err(Error::domain("exponent must be in 1..m"));
                }
            }
        }
        Ok(AmplitudePolynomial {
            m,
            domain,
            degree_budget,
            terms,
        })
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn degree_budget(&self) -> usize {
        self.degree_budget
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, Complex64> {
        &self.terms
    }

    /// Largest |S| over stored terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(TermKey::degree).max().unwrap_or(0)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn eval_oracle(&self, f: &OracleFunction) -> Complex64 {
        self.eval_with(&|x| f.eval(x))
    }

    pub fn eval_with(&self, value_of: &impl Fn(usize) -> usize) -> Complex64 {
        self.terms
            .iter()
            .map(|(key, &beta)| beta * key.eval(self.m, value_of))
            .sum()
    }

    /// sum |beta_{S,b}|^2.
    pub fn coefficient_mass(&self) -> f64 {
        par::kahan_sum(self.terms.values().map(|c| c.norm_sqr()))
    }

    /// E_g[|alpha(g)|^2] by full enumeration of the m^|domain| functions g.
    pub fn expectation_sq(&self, cap: usize) -> Result<f64> {
        let count = self
            .m
            .checked_pow(u32::try_from(self.domain.len()).map_err(|_| Error::resource("domain too large"))?)
            .filter(|&c| c <= cap)
            .ok_or_else(|| {
                Error::resource(format!(
                    "enumeration of {}^{} functions exceeds cap {cap}; use Monte-Carlo mode",
                    self.m,
                    self.domain.len()
                ))
            })?;
        let m = self.m;
        let domain = self.domain.clone();
        let values = par::map_indexed(count, |idx| {
            // idx enumerates assignments domain[i] -> base-m digit i of idx
            let mut assign = BTreeMap::new();
            let mut rem = idx;
            for &x in &domain {
                assign.insert(x, rem % m);
                rem /= m;
            }
            self.eval_with(&|x| assign[&x]).norm_sqr()
        });
        Ok(par::kahan_sum(values) / count as f64)
    }

    /// Random polynomial over the full term space, for identity stress tests.
    pub fn random(n: usize, m: usize, q: usize, rng: &mut impl Rng) -> Self {
        let domain: Vec<usize> = (0..n).collect();
        let keys = enumerate_term_keys(&domain, m, q);
        let mut terms = BTreeMap::new();
        for key in keys {
            if rng.gen_bool(0.7) {
                let c = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                if c.norm() >= PRUNE_TOL {
                    terms.insert(key, c);
                }
            }
        }
        AmplitudePolynomial {
            m,
            domain,
            degree_budget: q,
            terms,
        }
    }
}

/// sum_{i=0}^{q} C(n,i) (m-1)^i, the number of distinct (S, b) pairs.
pub fn term_space_size(q: usize, n: usize, m: usize) -> u128 {
    let mut total: u128 = 0;
    for i in 0..=q.min(n) {
        total += binomial(n, i) * (m as u128 - 1).pow(i as u32);
    }
    total
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All term keys (S, b) with S a subset of `domain`, |S| <= q, b values in 1..m.
pub fn enumerate_term_keys(domain: &[usize], m: usize, q: usize) -> Vec<TermKey> {
    let mut out = vec![TermKey::empty()];
    // grow subsets point by point, tracking exponent choices
    fn extend(
        domain: &[usize],
        m: usize,
        q: usize,
        start: usize,
        current: &BTreeMap<usize, usize>,
        out: &mut Vec<TermKey>,
    ) {
        if current.len() == q {
            return;
        }
        for i in start..domain.len() {
            for b in 1..m {
                let mut next = current.clone();
                next.insert(domain[i], b);
                out.push(TermKey::new(next.clone()));
                extend(domain, m, q, i + 1, &next, out);
            }
        }
    }
    extend(domain, m, q, 0, &BTreeMap::new(), &mut out);
    out.sort();
    out
}

/// One amplitude polynomial per basis index of a layout.
#[derive(Debug, Clone)]
pub struct SymbolicState {
    layout: RegisterLayout,
    /// (oracle domain size, modulus); fixed by the first query.
    oracle_dims: Option<(usize, usize)>,
    queries: usize,
    polys: Vec<AmplitudePolynomial>,
}

impl SymbolicState {
    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn polys(&self) -> &[AmplitudePolynomial] {
        &self.polys
    }

    pub fn max_degree(&self) -> usize {
        self.polys.iter().map(AmplitudePolynomial::max_degree).max().unwrap_or(0)
    }
}

/// Start in a basis state: a single constant term at its index.
pub fn symbolic_init(layout: &RegisterLayout, start_digits: &[usize]) -> Result<SymbolicState> {
    let start = layout.index_of(start_digits)?;
    let polys = (0..layout.total_dim())
        .map(|i| {
            if i == start {
                AmplitudePolynomial::constant(2, Vec::new(), 0, Complex64::new(1.0, 0.0))
            } else {
                AmplitudePolynomial::zero(2, Vec::new(), 0)
            }
        })
        .collect();
    Ok(SymbolicState {
        layout: layout.clone(),
        oracle_dims: None,
        queries: 0,
        polys,
    })
}

/// One symbolic phase query on (x_wire, b_wire).
pub fn symbolic_query(state: &SymbolicState, x_wire: usize, b_wire: usize) -> Result<SymbolicState> {
    let layout = &state.layout;
    if x_wire >= layout.num_wires() || b_wire >= layout.num_wires() || x_wire == b_wire {
        return Err(Error::domain("query wires out of range or equal"));
    }
    let n = layout.wire_dim(x_wire);
    let m = layout.wire_dim(b_wire);
    if let Some((pn, pm)) = state.oracle_dims {
        if (pn, pm) != (n, m) {
            return Err(Error::domain("query wire dimensions differ from earlier queries"));
        }
    }
    let domain: Vec<usize> = (0..n).collect();
    let budget = state.queries + 1;
    let polys = state
        .polys
        .iter()
        .enumerate()
        .map(|(idx, poly)| {
            let digits = layout.digits_of(idx);
            let (x0, b0) = (digits[x_wire], digits[b_wire]);
            let mut terms: BTreeMap<TermKey, Complex64> = BTreeMap::new();
            for (key, &beta) in poly.terms() {
                let new_key = if b0 == 0 { key.clone() } else { key.absorb(x0, b0, m) };
                *terms.entry(new_key).or_insert(Complex64::new(0.0, 0.0)) += beta;
            }
            let mut p = AmplitudePolynomial {
                m,
                domain: domain.clone(),
                degree_budget: budget,
                terms,
            };
            p.prune();
            p
        })
        .collect();
    Ok(SymbolicState {
        layout: layout.clone(),
        oracle_dims: Some((n, m)),
        queries: budget,
        polys,
    })
}

/// Linear combination of the polynomials per the unitary's matrix.
pub fn symbolic_unitary(state: &SymbolicState, u: &UnitaryOp) -> Result<SymbolicState> {
    let layout = &state.layout;
    let dim: usize = u.target_wires().iter().map(|&w| {
        if w < layout.num_wires() { layout.wire_dim(w) } else { 0 }
    }).product();
    if dim == 0 || dim != u.matrix().nrows() {
        return Err(Error::domain("unitary does not fit the layout"));
    }
    let plan = block_plan(layout, u.target_wires());
    let (m, domain, budget) = match state.oracle_dims {
        Some((n, m)) => (m, (0..n).collect::<Vec<_>>(), state.queries),
        None => (2, Vec::new(), 0),
    };
    let mut polys: Vec<AmplitudePolynomial> = (0..state.polys.len())
        .map(|_| AmplitudePolynomial::zero(m, domain.clone(), budget))
        .collect();
    for block in &plan.blocks {
        for (row, &gi) in block.iter().enumerate() {
            let mut terms: BTreeMap<TermKey, Complex64> = BTreeMap::new();
            for (col, &gj) in block.iter().enumerate() {
                let coeff = u.matrix()[(row, col)];
                if coeff.norm() == 0.0 {
                    continue;
                }
                for (key, &beta) in state.polys[gj].terms() {
                    *terms.entry(key.clone()).or_insert(Complex64::new(0.0, 0.0)) += coeff * beta;
                }
            }
            polys[gi].terms = terms;
            polys[gi].prune();
        }
    }
    Ok(SymbolicState {
        layout: layout.clone(),
        oracle_dims: state.oracle_dims,
        queries: state.queries,
        polys,
    })
}

/// Plug a concrete oracle into every polynomial.
pub fn evaluate(state: &SymbolicState, f: &OracleFunction) -> Result<StateVector> {
    if let Some((n, m)) = state.oracle_dims {
        if f.domain_size() != n || f.codomain_size() != m {
            return Err(Error::domain("oracle dimensions do not match symbolic state"));
        }
    }
    let amps = state.polys.iter().map(|p| p.eval_oracle(f)).collect();
    StateVector::from_amps(state.layout.clone(), amps)
}

/// Report from the Cauchy-Schwarz coefficient-mass check.
#[derive(Debug, Clone)]
pub struct MassCheck {
    pub mass: f64,
    pub lower_bound: f64,
    pub holds: bool,
}

/// If |alpha(f)| = 1 for some f, the coefficient mass is at least one over
/// the number of possible terms.
pub fn cauchy_mass_check(poly: &AmplitudePolynomial, f: &OracleFunction) -> Result<MassCheck> {
    let value = poly.eval_oracle(f).norm();
    if (value - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!(
            "|alpha(f)| = {value} != 1; mass bound not applicable"
        )));
    }
    let mass = poly.coefficient_mass();
    let lower_bound =
        1.0 / term_space_size(poly.degree_budget, poly.domain.len(), poly.m) as f64;
    Ok(MassCheck {
        mass,
        lower_bound,
        holds: mass >= lower_bound - 1e-9,
    })
}

/// The normalized restriction alpha' of a final-state amplitude: fix the
/// basis index to (x_seq, f(x_seq), w), divide by alpha(f), fold the oracle
/// values outside x_seq into the coefficients, and merge terms over the
/// intersection with x_seq. Evaluating the result at f restricted to x_seq
/// gives 1.
pub fn restricted_normalized_poly(
    state: &SymbolicState,
    x_wires: &[usize],
    y_wires: &[usize],
    x_seq: &[usize],
    w_digits: &[usize],
    f: &OracleFunction,
) -> Result<AmplitudePolynomial> {
    let layout = &state.layout;
    if x_wires.len() != x_seq.len() || y_wires.len() != x_seq.len() {
        return Err(Error::domain("x_seq length must match output wires"));
    }
    let mut digits = vec![usize::MAX; layout.num_wires()];
    for (i, (&xw, &yw)) in x_wires.iter().zip(y_wires).enumerate() {
        digits[xw] = x_seq[i];
        digits[yw] = f.eval(x_seq[i]);
    }
    let mut w_iter = w_digits.iter();
    for (w, d) in digits.iter_mut().enumerate() {
        if *d == usize::MAX {
            *d = *w_iter
                .next()
                .ok_or_else(|| Error::domain(format!("missing workspace digit for wire {w}")))?;
        }
    }
    let idx = layout.index_of(&digits)?;
    let poly = &state.polys[idx];
    let denom = poly.eval_oracle(f);
    if denom.norm() <= 1e-12 {
        return Err(Error::degenerate(format!(
            "amplitude at the target basis state is {:.3e}",
            denom.norm()
        )));
    }
    let m = poly.m;
    let mut terms: BTreeMap<TermKey, Complex64> = BTreeMap::new();
    for (key, &beta) in poly.terms() {
        let mut inside = BTreeMap::new();
        let mut constant = Complex64::new(1.0, 0.0);
        for (&x, &b) in key.entries() {
            if x_seq.contains(&x) {
                inside.insert(x, b);
            } else {
                constant *= omega_pow(m, (f.eval(x) * b) as i64);
            }
        }
        let contrib = beta * constant / denom;
        *terms.entry(TermKey::new(inside)).or_insert(Complex64::new(0.0, 0.0)) += contrib;
    }
    let mut domain = x_seq.to_vec();
    domain.sort_unstable();
    let mut out = AmplitudePolynomial {
        m,
        domain,
        degree_budget: poly.degree_budget,
        terms,
    };
    out.prune();
    Ok(out)
}

/// Serialize a polynomial in the dump format used by `verify poly --dump`:
/// one line per term, `S=<x,...>; b=<x:val,...>; re=<float>; im=<float>`.
pub fn dump_polynomial(poly: &AmplitudePolynomial) -> String {
    let mut out = String::new();
    for (key, beta) in poly.terms() {
        let s: Vec<String> = key.entries().keys().map(|x| x.to_string()).collect();
        let b: Vec<String> = key
            .entries()
            .iter()
            .map(|(x, v)| format!("{x}:{v}"))
            .collect();
        out.push_str(&format!(
            "S={}; b={}; re={}; im={}\n",
            s.join(","),
            b.join(","),
            beta.re,
            beta.im
        ));
    }
    out
}
