//! The forgery bound and its k = q+1 simplification.

use crate::amppoly::binomial;

/// (1/m^k) * sum_{i=0}^{q} C(k,i) (m-1)^i.
pub fn theorem_bound(q: usize, k: usize, m: usize) -> f64 {
    let mut num: u128 = 0;
    for i in 0..=q.min(k) {
        num += binomial(k, i) * (m as u128 - 1).pow(i as u32);
    }
    num as f64 / (m as f64).powi(k as i32)
}

/// 1 - (1 - 1/m)^{q+1}, the k = q+1 special case.
pub fn simplified_bound(q: usize, m: usize) -> f64 {
    1.0 - (1.0 - 1.0 / m as f64).powi(q as i32 + 1)
}
