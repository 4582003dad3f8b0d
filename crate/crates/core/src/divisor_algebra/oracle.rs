//! Explicit-basis verification oracle.
//!
//! The minimal resolution of a degree `d` surface has Picard lattice
//! `I_{1,n}` with `n = 9 - d`, basis `H, e_1, ..., e_n`, `H^2 = 1`,
//! `e_i^2 = -1`, and `K = -3H + e_1 + ... + e_n`. This module searches for
//! explicit vectors realising every generator of a [`GramTable`] (roots for
//! the (-2)-curves, an exceptional vector for `E`) and recomputes pairings
//! from coordinates. It shares nothing with the symbolic path except the
//! generator names.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{DivisorClass, Generator, GramTable};
use crate::ade_lattice::{DynkinType, SurfaceSpec};
use crate::rational::{int, Rational};

/// Upper bound on candidate checks before the search gives up.
pub const SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle unavailable: no embedding of {0} exists in the degree {1} lattice")]
    NoEmbedding(String, u32),
    #[error("oracle unavailable: search budget exhausted for {0} in degree {1}")]
    BudgetExhausted(String, u32),
    #[error("oracle has no coordinates for {0}")]
    MissingGenerator(Generator),
}

/// `u . v` in `I_{1,n}`.
pub fn lattice_pairing(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[0] - u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum::<i64>()
}

/// Coordinates of `K = -3H + sum e_i` for `n = 9 - degree`.
pub fn canonical_vector(degree: u32) -> Vec<i64> {
    let n = 9 - degree as usize;
    let mut k = vec![1; n + 1];
    k[0] = -3;
    k
}

/// All `v` with `v^2 = norm` and `K . v = k_degree`, in a fixed order.
fn vectors_with(degree: u32, norm: i64, k_degree: i64) -> Vec<Vec<i64>> {
    fn fill(
        rest: usize,
        norm_left: i64,
        prefix: &mut Vec<i64>,
        target_sum: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let sum: i64 = prefix[1..].iter().sum();
        if rest == 0 {
            if norm_left == 0 && sum == target_sum {
                out.push(prefix.clone());
            }
            return;
        }
        let bound = (norm_left as f64).sqrt() as i64;
        for x in (-bound..=bound).rev() {
            if x * x <= norm_left {
                prefix.push(x);
                fill(rest - 1, norm_left - x * x, prefix, target_sum, out);
                prefix.pop();
            }
        }
    }

    let n = 9 - degree as usize;
    let mut out = Vec::new();
    // v = aH + sum x_i e_i: v^2 = a^2 - sum x_i^2, K.v = -3a - sum x_i.
    for a in -12i64..=12 {
        let sq = a * a - norm;
        if sq < 0 {
            continue;
        }
        let target_sum = -3 * a - k_degree;
        if target_sum * target_sum > n as i64 * sq {
            continue;
        }
        let mut prefix = vec![a];
        fill(n, sq, &mut prefix, target_sum, &mut out);
    }
    out.sort_by_key(|v| (v[0].abs(), v[0] < 0));
    out
}

/// Roots of the `K`-orthogonal lattice: `r^2 = -2`, `K . r = 0`.
pub fn roots(degree: u32) -> Vec<Vec<i64>> {
    vectors_with(degree, -2, 0)
}

/// Classes with `v^2 = -1` and `K . v = -1`.
pub fn exceptional_vectors(degree: u32) -> Vec<Vec<i64>> {
    let mut v = vectors_with(degree, -1, -1);
    // prefer e_n so that the remaining roots live on e_1..e_{n-1}
    v.sort_by_key(|v| (v[0].abs(), v.iter().rev().position(|&x| x != 0)));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    degree: u32,
    coords: BTreeMap<Generator, Vec<i64>>,
}

impl Embedding {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coordinates(&self, g: Generator) -> Option<&[i64]> {
        self.coords.get(&g).map(Vec::as_slice)
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.coords.keys().copied()
    }

    pub fn pairing(&self, g: Generator, h: Generator) -> Result<i64, OracleError> {
        let u = self.coordinates(g).ok_or(OracleError::MissingGenerator(g))?;
        let v = self.coordinates(h).ok_or(OracleError::MissingGenerator(h))?;
        Ok(lattice_pairing(u, v))
    }

    /// Coordinates of an arbitrary class; residual generators are unfolded
    /// through their defining relation `F = m(-K) - configuration`.
    pub fn expand(&self, class: &DivisorClass, table: &GramTable) -> Result<Vec<Rational>, OracleError> {
        let len = 10 - self.degree as usize;
        let mut out = vec![Rational::zero(); len];
        for (g, c) in class.terms() {
            let v = match table.residual(g) {
                Some(r) => self.expand(&r.relation.residual_expression(), table)?,
                None => self
                    .coordinates(g)
                    .ok_or(OracleError::MissingGenerator(g))?
                    .iter()
                    .map(|&x| int(x))
                    .collect(),
            };
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    pub fn intersect(
        &self,
        a: &DivisorClass,
        b: &DivisorClass,
        table: &GramTable,
    ) -> Result<Rational, OracleError> {
        let u = self.expand(a, table)?;
        let v = self.expand(b, table)?;
        let mut total = &u[0] * &v[0];
        for (x, y) in u[1..].iter().zip(&v[1..]) {
            total -= x * y;
        }
        Ok(total)
    }
}

/// Whether the roots of the degree `d` lattice form one irreducible system
/// (`E8, E7, E6, D5, A4, A1`); for `d = 6` they split as `A2 + A1`.
fn irreducible_roots(degree: u32) -> bool {
    matches!(degree, 1..=5 | 7)
}

/// Embeds every generator of the surface's table (plus `E` when asked).
pub fn oracle_embed(spec: &SurfaceSpec, minus_one_curve: bool) -> Result<Embedding, OracleError> {
    oracle_embed_points(spec.degree(), spec.singularities(), minus_one_curve)
}

/// Depth-first search in a fixed candidate order, so the result is
/// reproducible. `E` is placed first, then each point's nodes in label
/// order; every candidate must match the required pairing with all
/// previously placed generators.
pub fn oracle_embed_points(
    degree: u32,
    points: &[DynkinType],
    minus_one_curve: bool,
) -> Result<Embedding, OracleError> {
    let table = GramTable::new(degree, points, minus_one_curve);
    let mut order = Vec::new();
    if minus_one_curve {
        order.push(Generator::MinusOneCurve);
    }
    order.extend(table.base_generators().into_iter().filter(|g| matches!(g, Generator::Exceptional { .. })));

    let root_pool = roots(degree);
    let exc_pool = if minus_one_curve { exceptional_vectors(degree) } else { Vec::new() };
    let required: Vec<Vec<i64>> = order
        .iter()
        .map(|&g| {
            order
                .iter()
                .map(|&h| crate::rational::to_i64(&table.pairing(g, h).expect("base pairing")).expect("integral"))
                .collect()
        })
        .collect();

    struct Search<'a> {
        order: &'a [Generator],
        required: &'a [Vec<i64>],
        root_pool: &'a [Vec<i64>],
        exc_pool: &'a [Vec<i64>],
        placed: Vec<usize>,
        steps: u64,
        pin_first: bool,
    }

    impl Search<'_> {
        fn pool(&self, depth: usize) -> &[Vec<i64>] {
            if self.order[depth] == Generator::MinusOneCurve {
                self.exc_pool
            } else {
                self.root_pool
            }
        }

        fn candidate_at(&self, depth: usize) -> &[i64] {
            &self.pool(depth)[self.placed[depth]]
        }

        /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
        fn run(&mut self, depth: usize) -> Option<bool> {
            if depth == self.order.len() {
                return Some(true);
            }
            // The Weyl group of an irreducible root system is transitive on
            // its roots, so the first node can be pinned to one of them.
            let width = if depth == 0 && self.pin_first { 1 } else { self.pool(depth).len() };
            for idx in 0..width {
                self.steps += 1;
                if self.steps > SEARCH_BUDGET {
                    return None;
                }
                let cand = &self.pool(depth)[idx];
                let fits = (0..depth)
                    .all(|j| lattice_pairing(cand, self.candidate_at(j)) == self.required[depth][j]);
                if !fits {
                    continue;
                }
                self.placed.push(idx);
                match self.run(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {
                        self.placed.pop();
                    }
                }
            }
            Some(false)
        }
    }

    let mut search = Search {
        order: &order,
        required: &required,
        root_pool: &root_pool,
        exc_pool: &exc_pool,
        placed: Vec::new(),
        steps: 0,
        pin_first: !minus_one_curve && irreducible_roots(degree),
    };
    let label = || {
        let mut s: Vec<String> = points.iter().map(ToString::to_string).collect();
        if minus_one_curve {
            s.push("E".into());
        }
        if s.is_empty() {
            "the empty configuration".into()
        } else {
            s.join("+")
        }
    };
    match search.run(0) {
        Some(true) => {}
        Some(false) => return Err(OracleError::NoEmbedding(label(), degree)),
        None => return Err(OracleError::BudgetExhausted(label(), degree)),
    }
    let mut coords = BTreeMap::new();
    coords.insert(Generator::Canonical, canonical_vector(degree));
    for (depth, g) in order.iter().enumerate() {
        coords.insert(*g, search.candidate_at(depth).to_vec());
    }
    Ok(Embedding { degree, coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; n + 1];
        v[i] = 1;
        v
    }

    #[test]
    fn root_counts_match_del_pezzo_root_systems() {
        // K-orthogonal root systems: E8, E7, E6, D5, A4, A2+A1, A1, none
        let expected = [(1, 240), (2, 126), (3, 72), (4, 40), (5, 20), (6, 8), (7, 2), (8, 0), (9, 0)];
        for (degree, count) in expected {
            assert_eq!(roots(degree).len(), count, "degree {degree}");
        }
    }

    #[test]
    fn exceptional_vector_counts() {
        // number of (-1)-curves on a smooth del Pezzo of degree d
        let expected = [(1, 240), (2, 56), (3, 27), (4, 16), (5, 10), (6, 6), (7, 3)];
        for (degree, count) in expected {
            assert_eq!(exceptional_vectors(degree).len(), count, "degree {degree}");
        }
    }

    #[test]
    fn chain_of_adjacent_differences() {
        // D_i = e_i - e_{i+1} realises A_k with K.D_i = 0
        let degree = 3;
        let n = 6;
        let k = canonical_vector(degree);
        let chain: Vec<Vec<i64>> = (1..=4)
            .map(|i| e(n, i).iter().zip(e(n, i + 1)).map(|(a, b)| a - b).collect())
            .collect();
        let gram = DynkinType::a(4).gram_table();
        for i in 0..4 {
            assert_eq!(lattice_pairing(&chain[i], &k), 0);
            for j in 0..4 {
                assert_eq!(int(lattice_pairing(&chain[i], &chain[j])), gram[i][j]);
            }
        }
        assert_eq!(lattice_pairing(&k, &k), degree as i64);
    }

    #[test]
    fn last_basis_vector_is_a_minus_one_curve_off_the_chain() {
        let emb = oracle_embed_points(4, &[DynkinType::a(3)], true).unwrap();
        assert_eq!(emb.coordinates(Generator::MinusOneCurve).unwrap(), e(5, 5).as_slice());
        assert_eq!(emb.pairing(Generator::MinusOneCurve, Generator::Canonical).unwrap(), -1);
        for n in 1..=3 {
            assert_eq!(emb.pairing(Generator::MinusOneCurve, Generator::node(0, n)).unwrap(), 0);
        }
    }

    #[test]
    fn d4_is_found_in_degree_two() {
        let emb = oracle_embed_points(2, &[DynkinType::d(4)], false).unwrap();
        let gram = DynkinType::d(4).gram_table();
        for i in 1..=4 {
            for j in 1..=4 {
                let p = emb.pairing(Generator::node(0, i), Generator::node(0, j)).unwrap();
                assert_eq!(int(p), gram[i - 1][j - 1]);
            }
        }
    }

    #[test]
    fn impossible_configurations_report_unavailable() {
        // D4 does not sit inside the A4 root system of degree 5
        assert!(matches!(
            oracle_embed_points(5, &[DynkinType::d(4)], false),
            Err(OracleError::NoEmbedding(_, 5))
        ));
    }
}
