//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cusptower::lattice::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Random integer matrices with dims in 1..=4 and entries in [-9, 9].
pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// `count` matrices drawn from a fixed seed.
pub fn deterministic_matrices(count: usize) -> Vec<Vec<Vec<i64>>> {
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let strategy = small_matrix();
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det_cofactor(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors: `D_k` = gcd of all `k x k` minors, `k = 1..=min(r, c)`.
pub fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (a.len(), a[0].len());
    (1..=r.min(c))
        .map(|k| {
            let mut g = 0i64;
            for rows in subsets(r, k) {
                for cols in subsets(c, k) {
                    let minor: Vec<Vec<i64>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                        .collect();
                    g = g.gcd(&det_cofactor(&minor));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors `d_k = D_k / D_{k-1}`, zeros where the rank runs out.
pub fn invariant_factors_from_minors(a: &[Vec<i64>]) -> Vec<i64> {
    let dd = determinantal_divisors(a);
    let mut prev = 1i64;
    dd.iter()
        .map(|&d| {
            if d == 0 {
                0
            } else {
                let f = d / prev;
                prev = d;
                f
            }
        })
        .collect()
}

pub fn to_matrix(a: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(a)
}

/// Checks the full Smith decomposition contract against the minors oracle.
pub fn check_snf(a: &[Vec<i64>]) -> Result<(), String> {
    let m = to_matrix(a);
    let s = smith_normal_form(&m);
    let uad =
        s.u.checked_mul(&m)
            .and_then(|x| x.checked_mul(&s.v))
            .map_err(|e| e.to_string())?;
    if uad != s.d {
        return Err(format!("U*A*V != D for {a:?}"));
    }
    for (name, x) in [("U", &s.u), ("V", &s.v)] {
        let det = x.determinant().map_err(|e| e.to_string())?;
        if det.abs() != BigInt::from(1) {
            return Err(format!("{name} has determinant {det} for {a:?}"));
        }
    }
    let (r, c) = s.d.shape();
    for i in 0..r {
        for j in 0..c {
            if i != j && !s.d[(i, j)].is_zero() {
                return Err(format!("D is not diagonal for {a:?}"));
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok || w[0].is_negative() {
            return Err(format!(
                "diagonal {diag:?} is not a divisor chain for {a:?}"
            ));
        }
    }
    let expected: Vec<BigInt> = invariant_factors_from_minors(a)
        .into_iter()
        .map(BigInt::from)
        .collect();
    if diag != expected {
        return Err(format!(
            "diagonal {diag:?} but minors give {expected:?} for {a:?}"
        ));
    }
    Ok(())
}

/// Subgroup of `Z/d_1 x ... x Z/d_k` generated by `gens`, by closure.
pub fn generated_subgroup(orders: &[u64], gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let zero = vec![0u64; orders.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u64> = x
                .iter()
                .zip(g)
                .zip(orders)
                .map(|((a, b), d)| (a + b) % d)
                .collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn all_elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in orders {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// For each `k` in `1..=max_k`, the number of elements `y` of `G/H` with `k y = 0`.
/// This profile determines a finite abelian group up to isomorphism.
pub fn torsion_profile(orders: &[u64], subgroup: &BTreeSet<Vec<u64>>, max_k: u64) -> Vec<u64> {
    let elements = all_elements(orders);
    let h = subgroup.len() as u64;
    (1..=max_k)
        .map(|k| {
            let count = elements
                .iter()
                .filter(|x| {
                    let kx: Vec<u64> = x.iter().zip(orders).map(|(a, d)| (a * k) % d).collect();
                    subgroup.contains(&kx)
                })
                .count() as u64;
            count / h
        })
        .collect()
}

/// The same profile computed from invariant factors: `prod gcd(k, d_i)`.
pub fn torsion_profile_of(factors: &[BigInt], max_k: u64) -> Vec<u64> {
    (1..=max_k)
        .map(|k| {
            factors
                .iter()
                .map(|d| BigInt::from(k).gcd(d).try_into().unwrap_or(0u64))
                .product()
        })
        .collect()
}
