//! Cyclotomic polynomials and the reduction tables used to keep
//! [`CycloNumber`](super::CycloNumber) in normal form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::euler_phi;

/// Integer polynomial, coefficient of `x^i` at index `i`.
pub type IntPoly = Vec<i64>;

/// Reduction data for `Q(zeta_L)`: `Phi_L` and the normal forms of
/// `x^e mod Phi_L` for every `0 <= e < L`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloTables {
    pub level: usize,
    pub degree: usize,
    pub phi: IntPoly,
    /// Sparse rows `(basis index, coefficient)`.
    pub powers: Vec<Vec<(usize, i64)>>,
}

impl CycloTables {
    /// Computes the tables without touching the shared cache.
    pub fn compute(level: usize) -> Self {
        assert!(level >= 1, "cyclotomic level must be positive");
        let phi = cyclotomic_polynomial_uncached(level);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree, euler_phi(level));

        let mut powers: Vec<Vec<(usize, i64)>> = Vec::with_capacity(level);
        let mut current = vec![0i64; degree];
        for e in 0..level {
            if e < degree {
                current.iter_mut().for_each(|c| *c = 0);
                current[e] = 1;
            } else {
                // x * previous, then eliminate x^degree using the monic Phi_L.
                let top = current[degree - 1];
                for i in (1..degree).rev() {
                    current[i] = current[i - 1];
                }
                current[0] = 0;
                if top != 0 {
                    for i in 0..degree {
                        current[i] = current[i]
                            .checked_sub(top.checked_mul(phi[i]).expect("overflow in power table"))
                            .expect("overflow in power table");
                    }
                }
            }
            powers.push(
                current
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
        }
        CycloTables {
            level,
            degree,
            phi,
            powers,
        }
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<CycloTables>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycloTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached reduction tables for level `L`.
pub fn tables(level: usize) -> Arc<CycloTables> {
    if let Some(t) = cache().lock().expect("cyclotomic cache poisoned").get(&level) {
        return Arc::clone(t);
    }
    // Computed outside the lock; a racing thread computes the same value.
    let computed = Arc::new(CycloTables::compute(level));
    let mut guard = cache().lock().expect("cyclotomic cache poisoned");
    Arc::clone(guard.entry(level).or_insert(computed))
}

/// `Phi_n` through the shared cache.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    tables(n).phi.clone()
}

/// `Phi_n` by exact division of `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial_uncached(n: usize) -> IntPoly {
    assert!(n >= 1);
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_exact(&num, &cyclotomic_polynomial_uncached(d));
    }
    num
}

/// Quotient of `a` by a monic `b`; panics if the division leaves a remainder.
pub fn div_exact(a: &[i64], b: &[i64]) -> IntPoly {
    let db = b.len() - 1;
    assert_eq!(b[db], 1, "divisor must be monic");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        assert!(rem.iter().all(|&c| c == 0));
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] -= c * bj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

pub fn mul_poly(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
