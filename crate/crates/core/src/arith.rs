//! Small modular-arithmetic helpers shared by the field and counting code.
//!
//! Residues modulo 1 are represented by `0`, so `units(1) == [0]` and the
//! unit group of `Z/1Z` is the trivial group.

use num_integer::Integer;

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order of the prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Returns `(p, e)` with `q = p^e` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn euler_phi(n: usize) -> usize {
    factorize(n as u64)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p as usize * (p as usize - 1))
}

/// The residues in `U(Z/nZ)`, ascending.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&s| gcd(s, n) == 1).collect()
}

pub fn mul_mod(a: usize, b: usize, n: usize) -> usize {
    ((a as u128 * b as u128) % n as u128) as usize
}

pub fn pow_mod(base: usize, mut exp: u64, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let mut result = 1 % n;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    result
}

/// Multiplicative order `o_n(r)`; `None` when `gcd(r, n) != 1`.
pub fn multiplicative_order(r: usize, n: usize) -> Option<usize> {
    if n == 1 {
        return Some(1);
    }
    let r = r % n;
    if gcd(r, n) != 1 {
        return None;
    }
    let mut x = r;
    let mut ord = 1;
    while x != 1 {
        x = mul_mod(x, r, n);
        ord += 1;
    }
    Some(ord)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inverse_mod(a: usize, n: usize) -> Option<usize> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd(a as i128 % n as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as usize)
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The subgroup of `U(Z/nZ)` generated by `gens`, sorted ascending.
pub fn unit_subgroup<I: IntoIterator<Item = usize>>(gens: I, n: usize) -> Vec<usize> {
    let one = 1 % n;
    let gens: Vec<usize> = gens.into_iter().map(|g| g % n).collect();
    let mut seen = vec![false; n.max(1)];
    let mut out = vec![one];
    seen[one] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in &gens {
            let y = mul_mod(x, g, n);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Orbits of the multiplicative action of `group` (a subgroup of `U(Z/nZ)`)
/// on `U(Z/nZ)`. Orbits are sorted, and listed by their least member.
pub fn unit_orbits(group: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n.max(1)];
    let mut orbits = Vec::new();
    for u in units(n) {
        if seen[u] {
            continue;
        }
        let mut orbit: Vec<usize> = group.iter().map(|&t| mul_mod(u, t, n)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_matches_unit_count() {
        for n in 1..200 {
            assert_eq!(euler_phi(n), units(n).len(), "n = {n}");
        }
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(4, 3), Some(1));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(inverse_mod(2, 3), Some(2));
        assert_eq!(inverse_mod(7, 12), Some(7));
        assert_eq!(inverse_mod(2, 4), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(1_000_000_007), Some((1_000_000_007, 1)));
        assert_eq!(prime_power(1 << 40), Some((2, 40)));
    }

    #[test]
    fn unit_subgroups_and_orbits() {
        assert_eq!(unit_subgroup([7], 12), vec![1, 7]);
        assert_eq!(unit_subgroup([], 5), vec![1]);
        assert_eq!(unit_subgroup([2], 5), vec![1, 2, 3, 4]);
        assert_eq!(unit_orbits(&[1, 7], 12), vec![vec![1, 7], vec![5, 11]]);
        assert_eq!(unit_orbits(&[0], 1), vec![vec![0]]);
    }
}
