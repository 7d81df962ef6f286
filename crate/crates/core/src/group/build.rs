use std::collections::{HashMap, VecDeque};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError};
use crate::arith::{inverse_mod, multiplicative_order, pow_mod};

/// Parameters of `<a, b | a^m = 1, b^n = a^t, a^b = a^r>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetacyclicParams {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub r: usize,
}

impl MetacyclicParams {
    pub fn validate(&self) -> Result<(), GroupError> {
        let MetacyclicParams { m, n, t, r } = *self;
        if m == 0 || n == 0 {
            return Err(GroupError::InvalidParameters("m and n must be positive".into()));
        }
        if pow_mod(r, n as u64, m) != 1 % m {
            return Err(GroupError::InvalidParameters(format!("r^n = {r}^{n} is not 1 mod {m}")));
        }
        let r_minus_one = (r % m + m - 1 % m) % m;
        if (t % m) * r_minus_one % m != 0 {
            return Err(GroupError::InvalidParameters(format!(
                "{m} does not divide t(r-1) = {t}*({r}-1)"
            )));
        }
        Ok(())
    }

    /// `o_m(r) = n / k`.
    pub fn order_of_r(&self) -> usize {
        multiplicative_order(self.r, self.m).expect("validated parameters have gcd(r, m) = 1")
    }

    /// The `k` in `<a>_m ⋊_k <b>_n`, i.e. `n / o_m(r)`.
    pub fn k(&self) -> usize {
        self.n / self.order_of_r()
    }
}

/// Serialized group input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Permutations { gens: Vec<Vec<usize>> },
    Table { mult: Vec<Vec<usize>> },
    Metacyclic { m: usize, n: usize, t: usize, r: usize },
    Abelian { invariants: Vec<usize> },
}

impl GroupSpec {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Permutations { gens } => FiniteGroup::from_permutations(gens, max_order),
            GroupSpec::Table { mult } => FiniteGroup::from_table(mult, max_order),
            GroupSpec::Metacyclic { m, n, t, r } => FiniteGroup::metacyclic(*m, *n, *t, *r, max_order),
            GroupSpec::Abelian { invariants } => FiniteGroup::abelian(invariants, max_order),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s).map_err(|e| GroupError::InvalidSpec(e.to_string()))
    }
}

impl FiniteGroup {
    /// Closure of permutation generators, elements in BFS order over words
    /// (generators tried in the given order). `x * y` applies `x` first.
    pub fn from_permutations(gens: &[Vec<usize>], max_order: usize) -> Result<Self, GroupError> {
        let degree = gens.iter().map(Vec::len).max().unwrap_or(0);
        let mut padded = Vec::with_capacity(gens.len());
        for p in gens {
            let mut seen = vec![false; p.len()];
            for &x in p {
                if x >= p.len() || seen[x] {
                    return Err(GroupError::NotAPermutation(format!("{p:?}")));
                }
                seen[x] = true;
            }
            let mut q = p.clone();
            q.extend(p.len()..degree);
            padded.push(q);
        }

        let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &padded {
                let y = compose(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() == max_order {
                        return Err(GroupError::OrderBoundExceeded { bound: max_order });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut mult = vec![0; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mult[i * n + j] = index[&compose(x, y)];
            }
        }
        let generators = padded.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(|p| format!("{p:?}")).collect();
        Ok(FiniteGroup::from_trusted_table(n, mult, Some(generators), Some(labels)))
    }

    /// A group from an explicit table; the table is checked to be a Latin
    /// square with identity `0` and to be associative on every triple.
    pub fn from_table(rows: &[Vec<usize>], max_order: usize) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > max_order {
            return Err(GroupError::OrderBoundExceeded { bound: max_order });
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[0] != i || rows[0][i] != i {
                return Err(GroupError::InvalidTable("index 0 is not the identity".into()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::InvalidTable(format!("row {i} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in rows {
                if seen[row[j]] {
                    return Err(GroupError::InvalidTable(format!("column {j} is not a permutation")));
                }
                seen[row[j]] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mult = rows.iter().flatten().copied().collect();
        Ok(FiniteGroup::from_trusted_table(n, mult, None, None))
    }

    /// `<a, b | a^m = 1, b^n = a^t, a^b = a^r>`; element `a^i b^j` has index
    /// `i + m j`.
    pub fn metacyclic(m: usize, n: usize, t: usize, r: usize, max_order: usize) -> Result<Self, GroupError> {
        let params = MetacyclicParams { m, n, t, r };
        params.validate()?;
        let order = m * n;
        if order > max_order {
            return Err(GroupError::OrderBoundExceeded { bound: max_order });
        }
        // b^j a^k = a^(k s^j) b^j with s = r^-1 mod m.
        let s = inverse_mod(r % m, m).expect("r is a unit mod m");
        let s_pows: Vec<usize> = (0..n).map(|j| pow_mod(s, j as u64, m)).collect();
        let t = t % m;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            let (i, j) = (x % m, x / m);
            for y in 0..order {
                let (k, l) = (y % m, y / m);
                let mut ai = i + k * s_pows[j];
                let mut bj = j + l;
                if bj >= n {
                    bj -= n;
                    ai += t;
                }
                mult[x * order + y] = ai % m + m * bj;
            }
        }
        let labels = (0..order)
            .map(|x| match (x % m, x / m) {
                (0, 0) => "1".to_string(),
                (i, 0) => format!("a^{i}"),
                (0, j) => format!("b^{j}"),
                (i, j) => format!("a^{i}b^{j}"),
            })
            .collect();
        let gens = vec![1 % m, m % order];
        Ok(FiniteGroup::from_trusted_table(order, mult, Some(gens), Some(labels)))
    }

    /// `C_{n1} x C_{n2} x ...`, mixed radix with the first factor varying fastest.
    pub fn abelian(invariants: &[usize], max_order: usize) -> Result<Self, GroupError> {
        if invariants.contains(&0) {
            return Err(GroupError::InvalidParameters("invariants must be positive".into()));
        }
        let order = invariants
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&o| o <= max_order))
            .ok_or(GroupError::OrderBoundExceeded { bound: max_order })?;
        let digits = |mut x: usize| -> Vec<usize> {
            invariants
                .iter()
                .map(|&d| {
                    let v = x % d;
                    x /= d;
                    v
                })
                .collect()
        };
        let encode = |v: &[usize]| -> usize { v.iter().zip(invariants).rev().fold(0, |acc, (&e, &d)| acc * d + e) };
        let all_digits: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut mult = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let sum: Vec<usize> = all_digits[x]
                    .iter()
                    .zip(&all_digits[y])
                    .zip(invariants)
                    .map(|((a, b), d)| (a + b) % d)
                    .collect();
                mult[x * order + y] = encode(&sum);
            }
        }
        let mut stride = 1;
        let mut gens = Vec::new();
        for &d in invariants {
            if d > 1 {
                gens.push(stride);
            }
            stride *= d;
        }
        let labels = all_digits
            .iter()
            .map(|v| format!("({})", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Ok(FiniteGroup::from_trusted_table(order, mult, Some(gens), Some(labels)))
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Self::abelian(&[n], usize::MAX)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        Self::metacyclic(n, 2, 0, n - 1, usize::MAX)
    }

    /// Generalized quaternion group of order `4n`.
    pub fn dicyclic(n: usize) -> Result<Self, GroupError> {
        Self::metacyclic(2 * n, 2, n, 2 * n - 1, usize::MAX)
    }

    /// `A x B`; the pair `(x, y)` has index `x + |A| y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, max_order: usize) -> Result<Self, GroupError> {
        let (na, nb) = (a.order(), b.order());
        let order = na
            .checked_mul(nb)
            .filter(|&o| o <= max_order)
            .ok_or(GroupError::OrderBoundExceeded { bound: max_order })?;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                mult[x * order + y] = a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
            }
        }
        let mut gens: Vec<usize> = a.generators().to_vec();
        gens.extend(b.generators().iter().map(|&y| na * y));
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x % na), b.label(x / na)))
            .collect();
        Ok(FiniteGroup::from_trusted_table(order, mult, Some(gens), Some(labels)))
    }

    /// Exhaustive associativity, inverse and identity check.
    #[cfg(test)]
    pub(crate) fn check_axioms(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        }) && (0..n).all(|x| self.mul(x, self.inv(x)) == 0 && self.mul(x, 0) == x)
    }
}
