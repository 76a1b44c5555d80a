//! Bundled adversary strategies for the forgery game, plus a derivative-free
//! local search that perturbs parameterized circuits to probe how tight the
//! bound is on small grids.
//!
//! All builders use the same register convention: k x-wires of dimension n
//! (wires 0..k) followed by k y-wires of dimension m (wires k..2k).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier};
use crate::games::{
    forgery_success_exact, AdversaryCircuit, GameConfig, GameMode, QueryKind, Step,
};
use crate::par;
use crate::qstate::{orthonormalize, RegisterLayout, UnitaryOp};

/// Cyclic shift |v> -> |v + s mod dim> on one wire.
fn shift_op(wire: usize, dim: usize, s: usize) -> Result<UnitaryOp> {
    let mut mat = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for v in 0..dim {
        mat[((v + s) % dim, v)] = Complex64::new(1.0, 0.0);
    }
    UnitaryOp::single(wire, mat)
}

fn output_layout(n: usize, m: usize, k: usize) -> Result<RegisterLayout> {
    let mut dims = vec![n; k];
    dims.extend(std::iter::repeat(m).take(k));
    RegisterLayout::new(dims)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if k > n {
        return Err(Error::domain(format!(
            "cannot output {k} distinct values from a domain of size {n}"
        )));
    }
    Ok(())
}

/// Zero queries; outputs the fixed distinct messages 0..k-1, each with the
/// guessed tag 0. Succeeds with probability exactly 1/m^k.
pub fn build_guessing_adversary(n: usize, m: usize, k: usize) -> Result<AdversaryCircuit> {
    check_k(n, k)?;
    let layout = output_layout(n, m, k)?;
    let mut steps = Vec::new();
    for i in 1..k {
        steps.push(Step::Unitary(shift_op(i, n, i)?));
    }
    Ok(AdversaryCircuit {
        layout,
        steps,
        x_out: (0..k).collect(),
        y_out: (k..2 * k).collect(),
    })
}

/// Queries the basis messages 0..q-1 with addition queries landing directly
/// on the tag output wires, then guesses tag 0 for the remaining k-q
/// messages. Succeeds with probability exactly (1/m)^{k-q}.
pub fn build_classical_adversary(n: usize, m: usize, q: usize, k: usize) -> Result<AdversaryCircuit> {
    check_k(n, k)?;
    if q >= k {
        return Err(Error::domain("need q < k"));
    }
    let mut adv = build_guessing_adversary(n, m, k)?;
    for i in 0..q {
        adv.steps.push(Step::Query {
            kind: QueryKind::Addition,
            x_wire: i,
            b_wire: k + i,
        });
    }
    Ok(adv)
}

/// Binary Fourier-sampling probe (m = 2 only): for each query, the tag wire
/// is flipped to 1 so a phase query kicks (-1)^{f(x)} onto the message wire,
/// which is Fourier-transformed before and after. The remaining pairs are
/// guesses. The circuit is well-defined regardless of how well it scores; at
/// q = 0 it degenerates to the guessing adversary.
pub fn build_fourier_adversary(n: usize, q: usize, k: usize) -> Result<AdversaryCircuit> {
    let m = 2;
    check_k(n, k)?;
    if q >= k {
        return Err(Error::domain("need q < k"));
    }
    let mut adv = build_guessing_adversary(n, m, k)?;
    for i in 0..q {
        adv.steps.push(Step::Unitary(shift_op(k + i, m, 1)?));
        adv.steps.push(Step::Unitary(fourier(i, n)?));
        adv.steps.push(Step::Query {
            kind: QueryKind::Phase,
            x_wire: i,
            b_wire: k + i,
        });
        adv.steps.push(Step::Unitary(inverse_fourier(i, n)?));
        adv.steps.push(Step::Unitary(shift_op(k + i, m, 1)?));
    }
    Ok(adv)
}

/// Random circuit for stress testing: the classical skeleton with a Haar-ish
/// random unitary on each (x_i, y_i) wire pair before and after its query,
/// and a final random unitary on the guessed pairs.
pub fn build_random_adversary(
    n: usize,
    m: usize,
    q: usize,
    k: usize,
    seed: u64,
) -> Result<AdversaryCircuit> {
    check_k(n, k)?;
    if q >= k {
        return Err(Error::domain("need q < k"));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut adv = build_guessing_adversary(n, m, k)?;
    for i in 0..q {
        let pre = crate::qstate::random_unitary(n * m, &mut rng);
        adv.steps.push(Step::Unitary(UnitaryOp::new(vec![i, k + i], pre)?));
        let kind = if seed % 2 == 0 {
            QueryKind::Addition
        } else {
            QueryKind::Phase
        };
        adv.steps.push(Step::Query {
            kind,
            x_wire: i,
            b_wire: k + i,
        });
        let post = crate::qstate::random_unitary(n * m, &mut rng);
        adv.steps.push(Step::Unitary(UnitaryOp::new(vec![i, k + i], post)?));
    }
    let last = crate::qstate::random_unitary(n * m, &mut rng);
    adv.steps
        .push(Step::Unitary(UnitaryOp::new(vec![k - 1, 2 * k - 1], last)?));
    Ok(adv)
}

/// A parameterized strategy: the classical skeleton with q+1 free unitaries,
/// one around each query on its (x, y) wire pair and one final unitary on
/// the last pair. Parameters are raw complex matrices; the built circuit
/// orthonormalizes them, so any parameter vector yields a valid circuit.
#[derive(Debug, Clone)]
pub struct StrategySpec {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub k: usize,
}

impl StrategySpec {
    pub fn num_slots(&self) -> usize {
        self.q + 1
    }

    pub fn slot_dim(&self) -> usize {
        self.n * self.m
    }

    /// Wire pair acted on by parameter slot j.
    fn slot_targets(&self, j: usize) -> Vec<usize> {
        let i = j.min(self.k - 1);
        vec![i, self.k + i]
    }

    pub fn build(&self, raw: &[DMatrix<Complex64>]) -> Result<AdversaryCircuit> {
        check_k(self.n, self.k)?;
        if self.q >= self.k {
            return Err(Error::domain("need q < k"));
        }
        if raw.len() != self.num_slots() {
            return Err(Error::domain("wrong number of parameter matrices"));
        }
        let mut adv = build_guessing_adversary(self.n, self.m, self.k)?;
        for (j, mat) in raw.iter().enumerate() {
            adv.steps.push(Step::Unitary(UnitaryOp::new(
                self.slot_targets(j),
                orthonormalize(mat),
            )?));
            if j < self.q {
                adv.steps.push(Step::Query {
                    kind: QueryKind::Addition,
                    x_wire: j,
                    b_wire: self.k + j,
                });
            }
        }
        Ok(adv)
    }

    fn identity_params(&self) -> Vec<DMatrix<Complex64>> {
        vec![DMatrix::identity(self.slot_dim(), self.slot_dim()); self.num_slots()]
    }
}

/// Best parameters found by one search run.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub params: Vec<DMatrix<Complex64>>,
    pub score: f64,
    pub iterations: usize,
    pub seed: u64,
    pub restart: usize,
}

fn score_params(spec: &StrategySpec, raw: &[DMatrix<Complex64>], cfg: &GameConfig) -> Result<f64> {
    let adv = spec.build(raw)?;
    Ok(forgery_success_exact(&adv, cfg)?.p)
}

fn perturbed(
    raw: &[DMatrix<Complex64>],
    scale: f64,
    normal: &Normal<f64>,
    rng: &mut ChaCha12Rng,
) -> Vec<DMatrix<Complex64>> {
    raw.iter()
        .map(|mat| {
            mat.map(|z| {
                z + Complex64::new(scale * normal.sample(rng), scale * normal.sample(rng))
            })
        })
        .collect()
}

fn run_restart(
    spec: &StrategySpec,
    cfg: &GameConfig,
    iters: usize,
    restart: usize,
) -> Result<SearchState> {
    let seed = cfg.seed.wrapping_add((restart as u64).wrapping_mul(0x9e3779b97f4a7c15));
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    // restart 0 starts from the classical skeleton so its score never drops
    // below the classical baseline; other restarts start random
    let mut current = if restart == 0 {
        spec.identity_params()
    } else {
        let d = spec.slot_dim();
        (0..spec.num_slots())
            .map(|_| {
                DMatrix::from_fn(d, d, |_, _| {
                    Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))
                })
            })
            .collect()
    };
    let mut score = score_params(spec, &current, cfg)?;
    let mut scale = 0.5;
    let mut stale = 0usize;
    for _ in 0..iters {
        let candidate = perturbed(&current, scale, &normal, &mut rng);
        let cand_score = score_params(spec, &candidate, cfg)?;
        if cand_score > score {
            current = candidate;
            score = cand_score;
            stale = 0;
        } else {
            stale += 1;
            if stale >= 50 {
                scale = (scale * 0.95).max(1e-3);
                stale = 0;
            }
        }
    }
    Ok(SearchState {
        params: current,
        score,
        iterations: iters,
        seed: cfg.seed,
        restart,
    })
}

/// Accept-on-strict-improvement local search with seeded parallel restarts.
/// Deterministic for a fixed config seed; the best restart is selected by
/// (score, restart index), independent of execution order.
pub fn hill_climb(
    spec: &StrategySpec,
    cfg: &GameConfig,
    iters: usize,
    restarts: usize,
) -> Result<SearchState> {
    if cfg.mode != GameMode::Exact {
        return Err(Error::resource("hill climbing needs noise-free exact scores"));
    }
    if restarts == 0 {
        return Err(Error::domain("need at least one restart"));
    }
    let results = par::map_indexed(restarts, |r| run_restart(spec, cfg, iters, r));
    let mut best: Option<SearchState> = None;
    for state in results {
        let state = state?;
        let replace = match &best {
            None => true,
            Some(b) => state.score > b.score || (state.score == b.score && state.restart < b.restart),
        };
        if replace {
            best = Some(state);
        }
    }
    Ok(best.expect("restarts >= 1"))
}
