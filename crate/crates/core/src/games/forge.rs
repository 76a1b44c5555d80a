//! The quantum MAC-forgery game. Success mass is read directly off the final
//! statevector (no measurement sampling); the expectation over oracles is
//! either a full enumeration or a seeded Monte-Carlo average of per-oracle
//! masses that are themselves exact.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::{AdversaryCircuit, GameConfig, GameMode, GameReport, QueryKind, Step};
use crate::amppoly::{
    restricted_normalized_poly, symbolic_init, symbolic_query, symbolic_unitary, term_space_size,
    SymbolicState,
};
use crate::crypto::KeyedFunction;
use crate::error::{Error, Result};
use crate::fourier::{addition_query, fourier, inverse_fourier, phase_query, OracleFunction};
use crate::games::bounds::theorem_bound;
use crate::par;
use crate::qstate::{apply_unitary, basis_state, StateVector};

/// Run the circuit on the all-zeros start state against a concrete oracle.
pub fn run_circuit(adv: &AdversaryCircuit, f: &OracleFunction) -> Result<StateVector> {
    let mut state = basis_state(&adv.layout, &vec![0; adv.layout.num_wires()])?;
    for step in &adv.steps {
        state = match step {
            Step::Unitary(u) => apply_unitary(&state, u)?,
            Step::Query { kind, x_wire, b_wire } => match kind {
                QueryKind::Addition => addition_query(&state, f, *x_wire, *b_wire)?,
                QueryKind::Phase => phase_query(&state, f, *x_wire, *b_wire)?,
            },
        };
    }
    Ok(state)
}

/// Probability mass of basis states whose k x-outputs are pairwise distinct
/// and whose y-outputs equal f at those points. `y_shift` subtracts an
/// offset before comparing, for the randomizing reduction.
fn success_mass_shifted(
    adv: &AdversaryCircuit,
    f: &OracleFunction,
    state: &StateVector,
    shift: Option<&OracleFunction>,
) -> f64 {
    let layout = &adv.layout;
    let m = f.codomain_size();
    let mass = state.amps().iter().enumerate().filter_map(|(idx, amp)| {
        let digits = layout.digits_of(idx);
        let xs: Vec<usize> = adv.x_out.iter().map(|&w| digits[w]).collect();
        for i in 0..xs.len() {
            for j in (i + 1)..xs.len() {
                if xs[i] == xs[j] {
                    return None;
                }
            }
        }
        let ok = adv.y_out.iter().zip(&xs).all(|(&yw, &x)| {
            let expected = match shift {
                Some(o) => (f.eval(x) + o.eval(x)) % m,
                None => f.eval(x),
            };
            digits[yw] == expected
        });
        ok.then(|| amp.norm_sqr())
    });
    par::kahan_sum(mass)
}

/// Exact per-oracle success mass (the quantity the games average).
pub fn per_oracle_success(adv: &AdversaryCircuit, f: &OracleFunction) -> Result<f64> {
    let state = run_circuit(adv, f)?;
    Ok(success_mass_shifted(adv, f, &state, None))
}

fn check_cfg(adv: &AdversaryCircuit, cfg: &GameConfig) -> Result<()> {
    adv.validate(cfg.n, cfg.m)?;
    if adv.query_count() != cfg.q {
        return Err(Error::domain(format!(
            "circuit makes {} queries but config says q = {}",
            adv.query_count(),
            cfg.q
        )));
    }
    if adv.output_pairs() != cfg.k {
        return Err(Error::domain(format!(
            "circuit outputs {} pairs but config says k = {}",
            adv.output_pairs(),
            cfg.k
        )));
    }
    Ok(())
}

fn family_size_capped(n: usize, m: usize, cap: usize) -> Result<usize> {
    OracleFunction::family_size(n, m)
        .filter(|&c| c <= cap)
        .ok_or_else(|| {
            Error::resource(format!(
                "enumerating {m}^{n} oracles exceeds cap {cap}; use Monte-Carlo mode"
            ))
        })
}

/// Average success mass over every oracle f in Y^X.
pub fn forgery_success_exact(adv: &AdversaryCircuit, cfg: &GameConfig) -> Result<GameReport> {
    check_cfg(adv, cfg)?;
    if cfg.mode != GameMode::Exact {
        return Err(Error::domain("forgery_success_exact requires Exact mode"));
    }
    let count = family_size_capped(cfg.n, cfg.m, cfg.enumeration_cap)?;
    let masses = par::map_indexed(count, |fi| {
        let f = OracleFunction::from_index(cfg.n, cfg.m, fi).expect("index in range");
        per_oracle_success(adv, &f).expect("validated circuit")
    });
    let p = par::kahan_sum(masses) / count as f64;
    Ok(GameReport::new(p, theorem_bound(cfg.q, cfg.k, cfg.m), cfg))
}

/// Seeded sampling estimator of the same expectation. The per-oracle mass is
/// still exact; only the oracle choice is sampled.
pub fn forgery_success_montecarlo(adv: &AdversaryCircuit, cfg: &GameConfig) -> Result<GameReport> {
    check_cfg(adv, cfg)?;
    let trials = match cfg.mode {
        GameMode::MonteCarlo { trials } if trials >= 1 => trials,
        _ => return Err(Error::domain("Monte-Carlo mode with trials >= 1 required")),
    };
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let samples: Vec<OracleFunction> = (0..trials)
        .map(|_| OracleFunction::random(cfg.n, cfg.m, &mut rng))
        .collect::<Result<_>>()?;
    let masses = par::map_indexed(trials, |i| {
        per_oracle_success(adv, &samples[i]).expect("validated circuit")
    });
    let p = par::kahan_sum(masses.iter().copied()) / trials as f64;
    let var = par::kahan_sum(masses.iter().map(|x| (x - p) * (x - p)))
        / (trials.saturating_sub(1).max(1)) as f64;
    let mut report = GameReport::new(p, theorem_bound(cfg.q, cfg.k, cfg.m), cfg);
    report.std_error = Some((var / trials as f64).sqrt());
    Ok(report)
}

/// Forgery game against a keyed family: the oracle is the key's table and
/// the expectation runs over keys. With the full table family this equals
/// the uniform-oracle game exactly.
pub fn forgery_success_keyed(
    adv: &AdversaryCircuit,
    prf: &KeyedFunction,
    cfg: &GameConfig,
) -> Result<GameReport> {
    check_cfg(adv, cfg)?;
    if prf.domain_size() != cfg.n || prf.codomain_size() != cfg.m {
        return Err(Error::domain("keyed family dimensions do not match config"));
    }
    let keys = prf.key_space();
    if keys > cfg.enumeration_cap {
        return Err(Error::resource("key space exceeds enumeration cap"));
    }
    let masses = par::map_indexed(keys, |key| {
        let f = prf.oracle_for_key(key);
        per_oracle_success(adv, &f).expect("validated circuit")
    });
    let p = par::kahan_sum(masses) / keys as f64;
    Ok(GameReport::new(p, theorem_bound(cfg.q, cfg.k, cfg.m), cfg))
}

/// The randomizing reduction, exact: run the adversary against f+O for every
/// pair (f, O) and score its untranslated outputs against f+O (equivalently,
/// translated outputs against f). The average must equal the direct game.
pub fn forgery_success_randomized_exact(
    adv: &AdversaryCircuit,
    cfg: &GameConfig,
) -> Result<GameReport> {
    check_cfg(adv, cfg)?;
    let count = family_size_capped(cfg.n, cfg.m, cfg.enumeration_cap)?;
    let pairs = count
        .checked_mul(count)
        .filter(|&c| c <= cfg.enumeration_cap)
        .ok_or_else(|| Error::resource("(f, O) pair enumeration exceeds cap"))?;
    let masses = par::map_indexed(pairs, |pair| {
        let f = OracleFunction::from_index(cfg.n, cfg.m, pair / count).expect("in range");
        let shift = OracleFunction::from_index(cfg.n, cfg.m, pair % count).expect("in range");
        let shifted = f.pointwise_add(&shift).expect("same dims");
        let state = run_circuit(adv, &shifted).expect("validated circuit");
        // success means the translated pairs (x, y - O(x)) match f
        success_mass_shifted(adv, &f, &state, Some(&shift))
    });
    let p = par::kahan_sum(masses) / pairs as f64;
    Ok(GameReport::new(p, theorem_bound(cfg.q, cfg.k, cfg.m), cfg))
}

/// Sampling version of the randomizing reduction over (f, O) pairs.
pub fn forgery_success_randomized_montecarlo(
    adv: &AdversaryCircuit,
    cfg: &GameConfig,
) -> Result<GameReport> {
    check_cfg(adv, cfg)?;
    let trials = match cfg.mode {
        GameMode::MonteCarlo { trials } if trials >= 1 => trials,
        _ => return Err(Error::domain("Monte-Carlo mode with trials >= 1 required")),
    };
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let samples: Vec<(OracleFunction, OracleFunction)> = (0..trials)
        .map(|_| {
            Ok((
                OracleFunction::random(cfg.n, cfg.m, &mut rng)?,
                OracleFunction::random(cfg.n, cfg.m, &mut rng)?,
            ))
        })
        .collect::<Result<_>>()?;
    let masses = par::map_indexed(trials, |i| {
        let (f, shift) = &samples[i];
        let shifted = f.pointwise_add(shift).expect("same dims");
        let state = run_circuit(adv, &shifted).expect("validated circuit");
        success_mass_shifted(adv, f, &state, Some(shift))
    });
    let p = par::kahan_sum(masses.iter().copied()) / trials as f64;
    let var = par::kahan_sum(masses.iter().map(|x| (x - p) * (x - p)))
        / (trials.saturating_sub(1).max(1)) as f64;
    let mut report = GameReport::new(p, theorem_bound(cfg.q, cfg.k, cfg.m), cfg);
    report.std_error = Some((var / trials as f64).sqrt());
    Ok(report)
}

/// EUF-qCMA pass/fail: requires k = q+1 and compares p to the threshold.
pub fn euf_qcma_verdict(report: &GameReport, threshold: f64) -> Result<bool> {
    if report.k != report.q + 1 {
        return Err(Error::domain(format!(
            "EUF-qCMA verdict needs k = q+1, got q = {}, k = {}",
            report.q, report.k
        )));
    }
    Ok(report.p <= threshold + 1e-9)
}

/// Evolve the adversary circuit symbolically (phase-query picture; addition
/// queries are wrapped in Fourier transforms on the answer wire first).
pub fn symbolic_final_state(adv: &AdversaryCircuit) -> Result<SymbolicState> {
    let mut state = symbolic_init(&adv.layout, &vec![0; adv.layout.num_wires()])?;
    for step in &adv.steps {
        state = match step {
            Step::Unitary(u) => symbolic_unitary(&state, u)?,
            Step::Query { kind, x_wire, b_wire } => {
                let m = adv.layout.wire_dim(*b_wire);
                match kind {
                    QueryKind::Phase => symbolic_query(&state, *x_wire, *b_wire)?,
                    QueryKind::Addition => {
                        let s = symbolic_unitary(&state, &fourier(*b_wire, m)?)?;
                        let s = symbolic_query(&s, *x_wire, *b_wire)?;
                        symbolic_unitary(&s, &inverse_fourier(*b_wire, m)?)?
                    }
                }
            }
        };
    }
    Ok(state)
}

/// Summary of a Corollary sweep over (x_seq, w, f) triples.
#[derive(Debug, Clone)]
pub struct CorollaryOutcome {
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    /// Smallest (lhs - rhs) margin seen among checked triples.
    pub min_margin: f64,
}

/// Check E_{g0}[|alpha'|^2] >= 1 / sum_{i<=q} C(k,i)(m-1)^i on every
/// (x_seq, workspace, f) with nonzero denominator amplitude.
pub fn corollary_sweep(adv: &AdversaryCircuit, cfg: &GameConfig) -> Result<CorollaryOutcome> {
    check_cfg(adv, cfg)?;
    let sym = symbolic_final_state(adv)?;
    let count = family_size_capped(cfg.n, cfg.m, cfg.enumeration_cap)?;
    let rhs = 1.0 / term_space_size(cfg.q, cfg.k, cfg.m) as f64;

    // workspace wires are everything outside the outputs
    let layout = &adv.layout;
    let w_wires: Vec<usize> = (0..layout.num_wires())
        .filter(|w| !adv.x_out.contains(w) && !adv.y_out.contains(w))
        .collect();
    let w_count: usize = w_wires.iter().map(|&w| layout.wire_dim(w)).product();

    let mut outcome = CorollaryOutcome {
        checked: 0,
        skipped: 0,
        violations: 0,
        min_margin: f64::INFINITY,
    };
    let x_seqs = distinct_sequences(cfg.n, cfg.k);
    for xs in &x_seqs {
        for fi in 0..count {
            let f = OracleFunction::from_index(cfg.n, cfg.m, fi)?;
            for wi in 0..w_count {
                let mut w_digits = Vec::with_capacity(w_wires.len());
                let mut rem = wi;
                for &w in w_wires.iter().rev() {
                    w_digits.push(rem % layout.wire_dim(w));
                    rem /= layout.wire_dim(w);
                }
                w_digits.reverse();
                match restricted_normalized_poly(&sym, &adv.x_out, &adv.y_out, xs, &w_digits, &f) {
                    Ok(poly) => {
                        let lhs = poly.expectation_sq(cfg.enumeration_cap)?;
                        outcome.checked += 1;
                        let margin = lhs - rhs;
                        outcome.min_margin = outcome.min_margin.min(margin);
                        if margin < -1e-9 {
                            outcome.violations += 1;
                        }
                    }
                    Err(Error::Degenerate(_)) => outcome.skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(outcome)
}

/// All ordered sequences of k distinct values from [n].
fn distinct_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for seq in &out {
            for v in 0..n {
                if !seq.contains(&v) {
                    let mut s = seq.clone();
                    s.push(v);
                    next.push(s);
                }
            }
        }
        out = next;
    }
    out
}
