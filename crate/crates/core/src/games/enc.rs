//! IND-qCPA and IND-sCPA harnesses over the toy schemes. Encryption queries
//! act on superpositions; challenge randomness is fresh per instance; win
//! probabilities are read off the state exactly and averaged over the
//! challenger's choices (enumerated when trials = 0, sampled otherwise).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use super::{GameConfig, GameMode, GameReport};
use crate::crypto::EncScheme;
use crate::error::{Error, Result};
use crate::par;
use crate::qstate::{RegisterLayout, StateVector};

/// Superposition encryption query |m, c> -> |m, c + Enc_k(m; r)> with the
/// ciphertext group operation taken mod the ciphertext space.
pub fn encryption_query(
    state: &StateVector,
    scheme: &dyn EncScheme,
    key: usize,
    r: usize,
    m_wire: usize,
    c_wire: usize,
) -> Result<StateVector> {
    let layout = state.layout().clone();
    if m_wire >= layout.num_wires() || c_wire >= layout.num_wires() || m_wire == c_wire {
        return Err(Error::domain("query wires out of range or equal"));
    }
    if layout.wire_dim(m_wire) != scheme.message_space()
        || layout.wire_dim(c_wire) != scheme.ciphertext_space()
    {
        return Err(Error::domain("wire dimensions do not match scheme spaces"));
    }
    let ct_space = scheme.ciphertext_space();
    let mut out = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
    for (idx, &amp) in state.amps().iter().enumerate() {
        let mut digits = layout.digits_of(idx);
        let ct = scheme.enc(key, digits[m_wire], r);
        digits[c_wire] = (digits[c_wire] + ct) % ct_space;
        out[layout.index_of(&digits)?] = amp;
    }
    StateVector::from_amps(layout, out)
}

/// Map a message-register state through Enc_k(.; r) as a basis relabeling
/// into the ciphertext register. Requires Enc_k(.; r) injective so the map
/// is an isometry.
pub fn challenge_encrypt(
    scheme: &dyn EncScheme,
    key: usize,
    r: usize,
    msg_state: &StateVector,
) -> Result<StateVector> {
    let msgs = scheme.message_space();
    if msg_state.layout().total_dim() != msgs {
        return Err(Error::domain("message state dimension must equal message space"));
    }
    let mut targets = Vec::with_capacity(msgs);
    for m in 0..msgs {
        let c = scheme.enc(key, m, r);
        if targets.contains(&c) {
            return Err(Error::domain(format!(
                "Enc is not injective for key {key}, r {r}: ciphertext {c} repeats"
            )));
        }
        targets.push(c);
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); scheme.ciphertext_space()];
    for (m, &amp) in msg_state.amps().iter().enumerate() {
        amps[targets[m]] = amp;
    }
    StateVector::from_amps(RegisterLayout::new(vec![scheme.ciphertext_space()])?, amps)
}

/// Adversary for the IND-qCPA game: classical challenge pair, optional
/// superposition encryption query, classical output bit.
pub trait QcpaAdversary {
    fn challenge_pair(&self, scheme: &dyn EncScheme) -> (usize, usize);
    /// Whether to hand the adversary one superposition encryption query
    /// (applied to the uniform message superposition with a zeroed
    /// ciphertext register).
    fn wants_query(&self) -> bool {
        false
    }
    fn guess(&self, scheme: &dyn EncScheme, challenge: usize, query_view: Option<&StateVector>) -> bool;
}

/// Ignores everything and outputs a fixed bit.
pub struct ConstantGuess {
    pub bit: bool,
}

impl QcpaAdversary for ConstantGuess {
    fn challenge_pair(&self, scheme: &dyn EncScheme) -> (usize, usize) {
        (0, 1 % scheme.message_space())
    }
    fn guess(&self, _: &dyn EncScheme, _: usize, _: Option<&StateVector>) -> bool {
        self.bit
    }
}

/// Decrypts the challenge with key 0 and claims b = 1 on a match with m1.
/// Wins outright against the identity scheme; blind against a keyed pad.
pub struct TrialDecrypt;

impl QcpaAdversary for TrialDecrypt {
    fn challenge_pair(&self, scheme: &dyn EncScheme) -> (usize, usize) {
        (0, 1 % scheme.message_space())
    }
    fn wants_query(&self) -> bool {
        true
    }
    fn guess(&self, scheme: &dyn EncScheme, challenge: usize, _: Option<&StateVector>) -> bool {
        let (_, m1) = self.challenge_pair(scheme);
        scheme.dec(0, challenge) == Some(m1)
    }
}

fn report_for_enc(p: f64, cfg: &GameConfig) -> GameReport {
    // for distinguishing games the reference value is the blind 1/2
    GameReport::new(p, 0.5, cfg)
}

/// Pr[adversary outputs b] in the IND-qCPA game. With trials = 0 the
/// average enumerates every (key, b, challenge r, query r) combination;
/// otherwise the challenger's choices are sampled with the config seed.
pub fn ind_qcpa_game(
    scheme: &dyn EncScheme,
    adv: &dyn QcpaAdversary,
    cfg: &GameConfig,
) -> Result<GameReport> {
    let (m0, m1) = adv.challenge_pair(scheme);
    if m0 >= scheme.message_space() || m1 >= scheme.message_space() {
        return Err(Error::domain("challenge messages outside message space"));
    }
    let run_instance = |key: usize, b: bool, r_star: usize, r_query: usize| -> Result<bool> {
        let challenge = scheme.enc(key, if b { m1 } else { m0 }, r_star);
        let view = if adv.wants_query() {
            let layout =
                RegisterLayout::new(vec![scheme.message_space(), scheme.ciphertext_space()])?;
            let msgs = scheme.message_space();
            let amp = Complex64::new(1.0 / (msgs as f64).sqrt(), 0.0);
            let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
            for m in 0..msgs {
                amps[layout.index_of(&[m, 0])?] = amp;
            }
            let state = StateVector::from_amps(layout, amps)?;
            Some(encryption_query(&state, scheme, key, r_query, 0, 1)?)
        } else {
            None
        };
        Ok(adv.guess(scheme, challenge, view.as_ref()) == b)
    };

    let p = match cfg.mode {
        GameMode::Exact => {
            let keys = scheme.key_space();
            let rs = scheme.randomness_space();
            let total = keys * 2 * rs * rs;
            if total > cfg.enumeration_cap {
                return Err(Error::resource("exact IND-qCPA enumeration exceeds cap"));
            }
            let mut correct = 0usize;
            for key in 0..keys {
                for b in [false, true] {
                    for r_star in 0..rs {
                        for r_query in 0..rs {
                            if run_instance(key, b, r_star, r_query)? {
                                correct += 1;
                            }
                        }
                    }
                }
            }
            correct as f64 / total as f64
        }
        GameMode::MonteCarlo { trials } => {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            let mut correct = 0usize;
            for _ in 0..trials {
                let key = rng.gen_range(0..scheme.key_space());
                let b = rng.gen_bool(0.5);
                let r_star = rng.gen_range(0..scheme.randomness_space());
                let r_query = rng.gen_range(0..scheme.randomness_space());
                if run_instance(key, b, r_star, r_query)? {
                    correct += 1;
                }
            }
            correct as f64 / trials.max(1) as f64
        }
    };
    Ok(report_for_enc(p, cfg))
}

/// Adversary for the IND-sCPA game: supplies two separately held message
/// superpositions (non-entanglement by construction) and a measurement
/// yielding Pr[output 1] on the received ciphertext state.
pub trait ScpaAdversary {
    fn message_pair(&self, message_space: usize) -> Result<(StateVector, StateVector)>;
    fn prob_output_one(&self, scheme: &dyn EncScheme, ct_state: &StateVector) -> f64;
}

/// Projects the received state onto a fixed reference ciphertext state
/// (Enc with key 0, r 0 applied to its m1 choice). Perfect against the
/// keyless identity scheme on orthogonal pairs; no better than blind when
/// the key is hidden.
pub struct ProjectionAdversary {
    pub m0_state: StateVector,
    pub m1_state: StateVector,
}

impl ProjectionAdversary {
    /// Classical basis-state pair.
    pub fn basis_pair(message_space: usize, m0: usize, m1: usize) -> Result<Self> {
        let layout = RegisterLayout::new(vec![message_space])?;
        Ok(ProjectionAdversary {
            m0_state: crate::qstate::basis_state(&layout, &[m0])?,
            m1_state: crate::qstate::basis_state(&layout, &[m1])?,
        })
    }
}

impl ScpaAdversary for ProjectionAdversary {
    fn message_pair(&self, message_space: usize) -> Result<(StateVector, StateVector)> {
        for s in [&self.m0_state, &self.m1_state] {
            if s.layout().total_dim() != message_space {
                return Err(Error::domain("message state dimension mismatch"));
            }
            if (s.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::domain("message states must be normalized"));
            }
        }
        Ok((self.m0_state.clone(), self.m1_state.clone()))
    }

    fn prob_output_one(&self, scheme: &dyn EncScheme, ct_state: &StateVector) -> f64 {
        match challenge_encrypt(scheme, 0, 0, &self.m1_state) {
            Ok(reference) => reference.inner(ct_state).norm_sqr(),
            Err(_) => 0.5,
        }
    }
}

/// Pr[output = b] in the IND-sCPA game; the challenge map must be an
/// isometry (injective Enc per key and randomness).
pub fn ind_scpa_game(
    scheme: &dyn EncScheme,
    adv: &dyn ScpaAdversary,
    cfg: &GameConfig,
) -> Result<GameReport> {
    let (s0, s1) = adv.message_pair(scheme.message_space())?;
    let instance = |key: usize, r_star: usize| -> Result<f64> {
        let ct0 = challenge_encrypt(scheme, key, r_star, &s0)?;
        let ct1 = challenge_encrypt(scheme, key, r_star, &s1)?;
        let p1_given_b1 = adv.prob_output_one(scheme, &ct1).clamp(0.0, 1.0);
        let p1_given_b0 = adv.prob_output_one(scheme, &ct0).clamp(0.0, 1.0);
        Ok(0.5 * (p1_given_b1 + (1.0 - p1_given_b0)))
    };
    let p = match cfg.mode {
        GameMode::Exact => {
            let keys = scheme.key_space();
            let rs = scheme.randomness_space();
            if keys * rs > cfg.enumeration_cap {
                return Err(Error::resource("exact IND-sCPA enumeration exceeds cap"));
            }
            let values: Result<Vec<f64>> = (0..keys * rs)
                .map(|i| instance(i / rs, i % rs))
                .collect();
            par::kahan_sum(values?) / (keys * rs) as f64
        }
        GameMode::MonteCarlo { trials } => {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            let values: Result<Vec<f64>> = (0..trials.max(1))
                .map(|_| {
                    let key = rng.gen_range(0..scheme.key_space());
                    let r_star = rng.gen_range(0..scheme.randomness_space());
                    instance(key, r_star)
                })
                .collect();
            par::kahan_sum(values?) / trials.max(1) as f64
        }
    };
    Ok(report_for_enc(p, cfg))
}
