//! Executable security games: the quantum MAC-forgery game with exact
//! success probability, the theorem bound, the oracle-randomizing reduction,
//! and the IND-qCPA / IND-sCPA harnesses over toy schemes.

mod bounds;
mod enc;
mod forge;

pub use bounds::{simplified_bound, theorem_bound};
pub use enc::{
    encryption_query, ind_qcpa_game, ind_scpa_game, ConstantGuess, ProjectionAdversary,
    QcpaAdversary, ScpaAdversary, TrialDecrypt,
};
pub use forge::{
    corollary_sweep, euf_qcma_verdict, forgery_success_exact, forgery_success_keyed,
    forgery_success_montecarlo, forgery_success_randomized_exact,
    forgery_success_randomized_montecarlo, per_oracle_success, run_circuit, symbolic_final_state,
    CorollaryOutcome,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{RegisterLayout, UnitaryOp};

/// Which oracle realization a query step uses; the two are provably
/// interchangeable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Addition,
    Phase,
}

/// One step of an adversary circuit.
#[derive(Debug, Clone)]
pub enum Step {
    Unitary(UnitaryOp),
    Query {
        kind: QueryKind,
        x_wire: usize,
        b_wire: usize,
    },
}

/// The game player: unitaries alternating with oracle queries, plus the
/// designation of which wires carry the k output pairs.
#[derive(Debug, Clone)]
pub struct AdversaryCircuit {
    pub layout: RegisterLayout,
    pub steps: Vec<Step>,
    /// k wires holding the claimed x values, each of dimension n.
    pub x_out: Vec<usize>,
    /// k wires holding the claimed tags, each of dimension m.
    pub y_out: Vec<usize>,
}

impl AdversaryCircuit {
    pub fn query_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Query { .. }))
            .count()
    }

    pub fn output_pairs(&self) -> usize {
        self.x_out.len()
    }

    /// Check wiring against the declared oracle dimensions.
    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        if self.x_out.len() != self.y_out.len() || self.x_out.is_empty() {
            return Err(Error::domain("need equally many x and y output wires"));
        }
        let mut seen = std::collections::HashSet::new();
        for &w in self.x_out.iter().chain(&self.y_out) {
            if w >= self.layout.num_wires() {
                return Err(Error::domain(format!("output wire {w} out of range")));
            }
            if !seen.insert(w) {
                return Err(Error::domain(format!("output wire {w} repeated")));
            }
        }
        for &w in &self.x_out {
            if self.layout.wire_dim(w) != n {
                return Err(Error::domain("x output wire dimension must equal n"));
            }
        }
        for &w in &self.y_out {
            if self.layout.wire_dim(w) != m {
                return Err(Error::domain("y output wire dimension must equal m"));
            }
        }
        for step in &self.steps {
            if let Step::Query { x_wire, b_wire, .. } = step {
                if self.layout.wire_dim(*x_wire) != n || self.layout.wire_dim(*b_wire) != m {
                    return Err(Error::domain("query wires must have dimensions (n, m)"));
                }
            }
        }
        Ok(())
    }
}

/// Exact enumeration or seeded sampling over oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameMode {
    Exact,
    MonteCarlo { trials: usize },
}

#[derive(Debug, Clone)]
pub struct GameConfig {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub k: usize,
    pub mode: GameMode,
    pub seed: u64,
    pub enumeration_cap: usize,
}

impl GameConfig {
    pub fn exact(n: usize, m: usize, q: usize, k: usize) -> Self {
        GameConfig {
            n,
            m,
            q,
            k,
            mode: GameMode::Exact,
            seed: 0,
            enumeration_cap: crate::amppoly::DEFAULT_ENUM_CAP,
        }
    }

    pub fn monte_carlo(n: usize, m: usize, q: usize, k: usize, trials: usize, seed: u64) -> Self {
        GameConfig {
            n,
            m,
            q,
            k,
            mode: GameMode::MonteCarlo { trials },
            seed,
            enumeration_cap: crate::amppoly::DEFAULT_ENUM_CAP,
        }
    }
}

/// Result of one game run. `ratio` is p / bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameReport {
    pub p: f64,
    pub bound: f64,
    pub ratio: f64,
    pub q: usize,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub mode: String,
    pub trials: usize,
    pub seed: u64,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

impl GameReport {
    pub(crate) fn new(p: f64, bound: f64, cfg: &GameConfig) -> Self {
        let (mode, trials) = match cfg.mode {
            GameMode::Exact => ("exact".to_string(), 0),
            GameMode::MonteCarlo { trials } => ("mc".to_string(), trials),
        };
        GameReport {
            p,
            bound,
            ratio: if bound > 0.0 { p / bound } else { f64::NAN },
            q: cfg.q,
            k: cfg.k,
            n: cfg.n,
            m: cfg.m,
            mode,
            trials,
            seed: cfg.seed,
            skipped: 0,
            std_error: None,
        }
    }
}
