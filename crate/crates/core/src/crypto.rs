//! Classical-side constructions at desk scale: table-based keyed function
//! families (the PRF stand-ins), the PRF-based MAC, toy encryption schemes,
//! and the classical forgery / distinguishing games, all exact by
//! enumeration over the declared finite spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fourier::OracleFunction;

const TABLE_CAP: usize = 1 << 24;

/// A keyed function family materialized as one table per key.
#[derive(Debug, Clone)]
pub struct KeyedFunction {
    domain: usize,
    codomain: usize,
    tables: Vec<Vec<usize>>,
}

impl KeyedFunction {
    /// Seeded pseudorandom family: each key indexes an independent table.
    pub fn table_prf(seed: u64, key_space: usize, domain: usize, codomain: usize) -> Result<Self> {
        let cells = key_space
            .checked_mul(domain)
            .ok_or_else(|| Error::resource("table size overflow"))?;
        if cells > TABLE_CAP {
            return Err(Error::resource(format!(
                "family of {key_space} keys over domain {domain} exceeds {TABLE_CAP} cells"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = (0..key_space)
            .map(|_| (0..domain).map(|_| rng.gen_range(0..codomain)).collect())
            .collect();
        Ok(KeyedFunction {
            domain,
            codomain,
            tables,
        })
    }

    /// The family of ALL functions domain -> codomain; keyed by function
    /// index, it is exactly the uniform distribution over oracles.
    pub fn full_table_family(domain: usize, codomain: usize) -> Result<Self> {
        let count = OracleFunction::family_size(domain, codomain)
            .ok_or_else(|| Error::resource("function family too large"))?;
        if count.saturating_mul(domain) > TABLE_CAP {
            return Err(Error::resource("function family too large"));
        }
        let tables = (0..count)
            .map(|idx| {
                OracleFunction::from_index(domain, codomain, idx)
                    .expect("index in range")
                    .table()
                    .to_vec()
            })
            .collect();
        Ok(KeyedFunction {
            domain,
            codomain,
            tables,
        })
    }

    /// Degenerate family mapping everything to 0, whatever the key.
    pub fn constant_zero(key_space: usize, domain: usize, codomain: usize) -> Self {
        KeyedFunction {
            domain,
            codomain,
            tables: vec![vec![0; domain]; key_space],
        }
    }

    pub fn key_space(&self) -> usize {
        self.tables.len()
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn eval(&self, key: usize, x: usize) -> usize {
        self.tables[key][x]
    }

    /// The key's table as an oracle function.
    pub fn oracle_for_key(&self, key: usize) -> OracleFunction {
        OracleFunction::new(self.domain, self.codomain, self.tables[key].clone())
            .expect("tables are valid by construction")
    }
}

/// Deterministic MAC from a keyed function: the tag is f_k(message).
#[derive(Debug, Clone)]
pub struct MacScheme {
    prf: KeyedFunction,
}

pub fn mac_from_prf(prf: KeyedFunction) -> MacScheme {
    MacScheme { prf }
}

impl MacScheme {
    pub fn gen(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.gen_range(0..self.prf.key_space())
    }

    pub fn mac(&self, key: usize, message: usize) -> usize {
        self.prf.eval(key, message)
    }

    pub fn vrfy(&self, key: usize, message: usize, tag: usize) -> bool {
        self.mac(key, message) == tag
    }

    pub fn prf(&self) -> &KeyedFunction {
        &self.prf
    }
}

/// A classical forging strategy with classical oracle access.
pub trait ForgeAdversary {
    /// Query the oracle as needed, then output one candidate (message, tag).
    fn forge(&self, oracle: &mut dyn FnMut(usize) -> usize) -> (usize, usize);
}

/// Replays a queried pair verbatim (never a valid win).
pub struct ReplayForger {
    pub message: usize,
}

impl ForgeAdversary for ReplayForger {
    fn forge(&self, oracle: &mut dyn FnMut(usize) -> usize) -> (usize, usize) {
        let tag = oracle(self.message);
        (self.message, tag)
    }
}

/// Outputs a fixed guess without querying.
pub struct GuessForger {
    pub message: usize,
    pub tag: usize,
}

impl ForgeAdversary for GuessForger {
    fn forge(&self, _oracle: &mut dyn FnMut(usize) -> usize) -> (usize, usize) {
        (self.message, self.tag)
    }
}

/// Queries every message except one, then guesses the remaining tag.
pub struct AllButOneForger {
    pub domain: usize,
    pub leave_out: usize,
    pub tag: usize,
}

impl ForgeAdversary for AllButOneForger {
    fn forge(&self, oracle: &mut dyn FnMut(usize) -> usize) -> (usize, usize) {
        for m in (0..self.domain).filter(|&m| m != self.leave_out) {
            let _ = oracle(m);
        }
        (self.leave_out, self.tag)
    }
}

/// Win probability of the classical MAC-forge game, exact over all keys.
/// A replayed message never counts as a win.
pub fn classical_mac_forge_game(scheme: &MacScheme, adversary: &dyn ForgeAdversary) -> Result<f64> {
    let keys = scheme.prf.key_space();
    if keys > 1 << 16 {
        return Err(Error::resource("key space too large for exact enumeration"));
    }
    let mut wins = 0usize;
    for key in 0..keys {
        let mut queried: HashSet<usize> = HashSet::new();
        let (message, tag) = {
            let mut oracle = |m: usize| {
                queried.insert(m);
                scheme.mac(key, m)
            };
            adversary.forge(&mut oracle)
        };
        if !queried.contains(&message) && scheme.vrfy(key, message, tag) {
            wins += 1;
        }
    }
    Ok(wins as f64 / keys as f64)
}

/// A classical distinguisher making classical queries, outputting one bit.
pub trait Distinguisher {
    fn distinguish(&self, oracle: &mut dyn FnMut(usize) -> usize) -> bool;
}

/// Outputs 1 iff the answer to a fixed query is 0.
pub struct FirstAnswerZero {
    pub query: usize,
}

impl Distinguisher for FirstAnswerZero {
    fn distinguish(&self, oracle: &mut dyn FnMut(usize) -> usize) -> bool {
        oracle(self.query) == 0
    }
}

/// Ignores the oracle entirely.
pub struct ConstantOutput {
    pub output: bool,
}

impl Distinguisher for ConstantOutput {
    fn distinguish(&self, _oracle: &mut dyn FnMut(usize) -> usize) -> bool {
        self.output
    }
}

/// |Pr[D^{f_k} = 1] - Pr[D^g = 1]| with both sides enumerated exactly.
pub fn prf_distinguish_game(prf: &KeyedFunction, d: &dyn Distinguisher) -> Result<f64> {
    let n = prf.domain_size();
    let m = prf.codomain_size();
    let uniform = OracleFunction::family_size(n, m)
        .filter(|&c| c <= 1 << 16)
        .ok_or_else(|| Error::resource("uniform family too large for exact enumeration"))?;
    if prf.key_space() > 1 << 16 {
        return Err(Error::resource("key space too large for exact enumeration"));
    }
    let mut keyed_ones = 0usize;
    for key in 0..prf.key_space() {
        let mut oracle = |x: usize| prf.eval(key, x);
        if d.distinguish(&mut oracle) {
            keyed_ones += 1;
        }
    }
    let mut uniform_ones = 0usize;
    for gi in 0..uniform {
        let g = OracleFunction::from_index(n, m, gi)?;
        let mut oracle = |x: usize| g.eval(x);
        if d.distinguish(&mut oracle) {
            uniform_ones += 1;
        }
    }
    let p_keyed = keyed_ones as f64 / prf.key_space() as f64;
    let p_uniform = uniform_ones as f64 / uniform as f64;
    Ok((p_keyed - p_uniform).abs())
}

/// Toy private-key encryption with explicit randomness.
pub trait EncScheme {
    fn key_space(&self) -> usize;
    fn randomness_space(&self) -> usize;
    fn message_space(&self) -> usize;
    fn ciphertext_space(&self) -> usize;
    fn enc(&self, key: usize, message: usize, r: usize) -> usize;
    fn dec(&self, key: usize, ciphertext: usize) -> Option<usize>;
}

/// Enc(m) = m. The insecure baseline every distinguishing game must win.
#[derive(Debug, Clone)]
pub struct IdentityScheme {
    pub message_space: usize,
}

impl EncScheme for IdentityScheme {
    fn key_space(&self) -> usize {
        1
    }
    fn randomness_space(&self) -> usize {
        1
    }
    fn message_space(&self) -> usize {
        self.message_space
    }
    fn ciphertext_space(&self) -> usize {
        self.message_space
    }
    fn enc(&self, _key: usize, message: usize, _r: usize) -> usize {
        message
    }
    fn dec(&self, _key: usize, ciphertext: usize) -> Option<usize> {
        Some(ciphertext)
    }
}

/// Enc_k(m; r) = (r, m + f_k(r) mod m_size): the PRF pad.
#[derive(Debug, Clone)]
pub struct PadScheme {
    prf: KeyedFunction,
}

pub fn pad_scheme(prf: KeyedFunction) -> PadScheme {
    PadScheme { prf }
}

impl PadScheme {
    pub fn prf(&self) -> &KeyedFunction {
        &self.prf
    }
}

impl EncScheme for PadScheme {
    fn key_space(&self) -> usize {
        self.prf.key_space()
    }
    fn randomness_space(&self) -> usize {
        self.prf.domain_size()
    }
    fn message_space(&self) -> usize {
        self.prf.codomain_size()
    }
    fn ciphertext_space(&self) -> usize {
        self.prf.domain_size() * self.prf.codomain_size()
    }
    fn enc(&self, key: usize, message: usize, r: usize) -> usize {
        let m = self.prf.codomain_size();
        r * m + (message + self.prf.eval(key, r)) % m
    }
    fn dec(&self, key: usize, ciphertext: usize) -> Option<usize> {
        let m = self.prf.codomain_size();
        let r = ciphertext / m;
        let c = ciphertext % m;
        if r >= self.prf.domain_size() {
            return None;
        }
        Some((c + m - self.prf.eval(key, r)) % m)
    }
}
