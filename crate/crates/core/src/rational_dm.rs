//! Deligne–Mostow weight tuples.
//!
//! A tuple `mu = (mu_1, ..., mu_{n+3})` of rationals in `(0, 1)` summing to 2
//! satisfies INT when `1 / (1 - mu_i - mu_j)` is an integer for every pair
//! with `mu_i + mu_j < 1`. The half-integral relaxation additionally accepts
//! a half-integer at a pair of equal weights. Everything here is exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Upper bound on the number of sorted candidates `enumerate_tuples` will scan.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Validated weight tuple, kept in the order it was given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTuple {
    weights: Vec<BigRational>,
}

impl WeightTuple {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() < 4 {
            return Err(Error::TupleTooShort(weights.len()));
        }
        let one = BigRational::one();
        for (index, w) in weights.iter().enumerate() {
            if !w.is_positive() || *w >= one {
                return Err(Error::WeightOutOfRange {
                    index,
                    value: w.clone(),
                });
            }
        }
        let sum: BigRational = weights.iter().sum();
        if sum != BigRational::from_integer(2.into()) {
            return Err(Error::WeightSum(sum));
        }
        Ok(WeightTuple { weights })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Ambient ball dimension `n` for a tuple of length `n + 3`.
    pub fn dimension(&self) -> usize {
        self.weights.len() - 3
    }

    /// Ascending order, the canonical representative up to relabeling.
    pub fn canonical(&self) -> WeightTuple {
        let mut weights = self.weights.clone();
        weights.sort();
        WeightTuple { weights }
    }
}

impl FromStr for WeightTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        WeightTuple::new(weights)
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for WeightTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.weights
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<String> = Vec::deserialize(d)?;
        let weights = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        WeightTuple::new(weights).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "INT")]
    Int,
    #[serde(rename = "HALF_INT")]
    HalfInt,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Int => "INT",
            Verdict::HalfInt => "HALF_INT",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    HalfIntegral,
    Fail,
}

/// A pair `{i, j}` (0-based positions) whose value `1 / (1 - mu_i - mu_j)`
/// is not an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntWitness {
    pub i: usize,
    pub j: usize,
    pub value: BigRational,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntStatus {
    pub verdict: Verdict,
    pub witnesses: Vec<IntWitness>,
}

impl IntStatus {
    pub fn half_integral_witnesses(&self) -> impl Iterator<Item = &IntWitness> {
        self.witnesses
            .iter()
            .filter(|w| w.kind == WitnessKind::HalfIntegral)
    }

    pub fn fail_witnesses(&self) -> impl Iterator<Item = &IntWitness> {
        self.witnesses
            .iter()
            .filter(|w| w.kind == WitnessKind::Fail)
    }
}

/// Classifies `mu` as INT, HALF_INT or FAIL.
pub fn check_int(mu: &WeightTuple) -> IntStatus {
    let w = mu.weights();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut witnesses = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let s = &w[i] + &w[j];
            if s >= one {
                continue;
            }
            let value = (&one - s).recip();
            if value.is_integer() {
                continue;
            }
            let kind = if w[i] == w[j] && (&value * &two).is_integer() {
                WitnessKind::HalfIntegral
            } else {
                WitnessKind::Fail
            };
            witnesses.push(IntWitness { i, j, value, kind });
        }
    }
    let verdict = if witnesses.iter().any(|x| x.kind == WitnessKind::Fail) {
        Verdict::Fail
    } else if witnesses.is_empty() {
        Verdict::Int
    } else {
        Verdict::HalfInt
    };
    IntStatus { verdict, witnesses }
}

/// A partition of the positions of a source tuple; each block becomes one
/// weight of the contracted tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionPartition {
    blocks: Vec<Vec<usize>>,
    block_sums: Vec<BigRational>,
}

impl ContractionPartition {
    /// Validates `blocks` (0-based positions) against `mu`. Blocks are stored
    /// canonically: each sorted, ordered by least element.
    pub fn new(mu: &WeightTuple, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = mu.len();
        let mut seen = vec![false; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "position {} is outside a tuple of length {n}",
                        i + 1
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!(
                        "position {} appears twice",
                        i + 1
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "position {} is not covered",
                missing + 1
            )));
        }
        blocks.sort();
        let one = BigRational::one();
        let mut block_sums = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let sum: BigRational = b.iter().map(|&i| &mu.weights()[i]).sum();
            if b.len() >= 2 && sum >= one {
                return Err(Error::ContractionInadmissible {
                    block: b.iter().map(|i| i + 1).collect(),
                    sum,
                });
            }
            block_sums.push(sum);
        }
        Ok(ContractionPartition { blocks, block_sums })
    }

    pub fn identity(mu: &WeightTuple) -> Self {
        Self::new(mu, (0..mu.len()).map(|i| vec![i]).collect())
            .expect("singleton blocks are always admissible")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sums(&self) -> &[BigRational] {
        &self.block_sums
    }

    /// Number of blocks with more than one position.
    pub fn merged_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() > 1).count()
    }

    fn source_len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// Replaces each block of `mu` by its sum; the result is sorted ascending.
pub fn contract(mu: &WeightTuple, partition: &ContractionPartition) -> Result<WeightTuple> {
    if partition.source_len() != mu.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} positions, tuple has {}",
            partition.source_len(),
            mu.len()
        )));
    }
    // revalidate in case the partition was built for another tuple
    let checked = ContractionPartition::new(mu, partition.blocks.clone())?;
    let mut weights = checked.block_sums;
    weights.sort();
    WeightTuple::new(weights)
}

/// All partitions of `mu`'s positions into `|nu|` blocks whose sums match
/// `nu` as multisets, in lexicographic order of their canonical blocks.
pub fn contractions(mu: &WeightTuple, nu: &WeightTuple) -> Vec<ContractionPartition> {
    if nu.len() > mu.len() {
        return Vec::new();
    }
    let target = nu.canonical().weights;
    let mut search = PartitionSearch {
        weights: mu.weights(),
        max_target: target.last().cloned().unwrap_or_else(BigRational::zero),
        target,
        blocks: Vec::new(),
        sums: Vec::new(),
        found: Vec::new(),
    };
    search.extend(0);
    let mut found: Vec<Vec<Vec<usize>>> = search.found;
    found.sort();
    found
        .into_iter()
        .map(|blocks| {
            ContractionPartition::new(mu, blocks).expect("search only emits admissible blocks")
        })
        .collect()
}

/// Lexicographically least contraction of `mu` onto `nu`, if any.
pub fn find_contraction(mu: &WeightTuple, nu: &WeightTuple) -> Option<ContractionPartition> {
    contractions(mu, nu).into_iter().next()
}

struct PartitionSearch<'a> {
    weights: &'a [BigRational],
    target: Vec<BigRational>,
    max_target: BigRational,
    blocks: Vec<Vec<usize>>,
    sums: Vec<BigRational>,
    found: Vec<Vec<Vec<usize>>>,
}

impl PartitionSearch<'_> {
    // restricted-growth enumeration: position k joins an open block or opens one
    fn extend(&mut self, k: usize) {
        let n = self.weights.len();
        if k == n {
            if self.blocks.len() == self.target.len() {
                let mut sums = self.sums.clone();
                sums.sort();
                if sums == self.target {
                    self.found.push(self.blocks.clone());
                }
            }
            return;
        }
        // not enough positions left to open the remaining blocks
        if self.blocks.len() + (n - k) < self.target.len() {
            return;
        }
        let w = &self.weights[k];
        for b in 0..self.blocks.len() {
            let s = &self.sums[b] + w;
            if s > self.max_target {
                continue;
            }
            let old = std::mem::replace(&mut self.sums[b], s);
            self.blocks[b].push(k);
            self.extend(k + 1);
            self.blocks[b].pop();
            self.sums[b] = old;
        }
        if self.blocks.len() < self.target.len() && *w <= self.max_target {
            self.blocks.push(vec![k]);
            self.sums.push(w.clone());
            self.extend(k + 1);
            self.blocks.pop();
            self.sums.pop();
        }
    }
}

/// Every sorted tuple of the given length with all denominators dividing
/// `max_denominator` whose verdict is INT or HALF_INT.
///
/// Refuses when the number of sorted candidates exceeds `cap`.
pub fn enumerate_tuples(length: usize, max_denominator: u64, cap: u64) -> Result<Vec<WeightTuple>> {
    if length < 4 {
        return Err(Error::TupleTooShort(length));
    }
    if max_denominator < 2 {
        return Err(Error::Malformed(format!(
            "max denominator must be at least 2, got {max_denominator}"
        )));
    }
    let d = max_denominator;
    // multisets of size `length` drawn from the d-1 numerators 1..d-1
    let space: BigInt = binomial(BigInt::from(d - 2 + length as u64), BigInt::from(length));
    if space > BigInt::from(cap) {
        return Err(Error::SearchSpaceTooLarge {
            size: space,
            cap: cap.into(),
        });
    }
    let total = 2 * d;
    let denom = BigInt::from(d);
    let out: Vec<Vec<WeightTuple>> = (1..d)
        .into_par_iter()
        .map(|first| {
            let mut acc = Vec::new();
            let mut numerators = vec![first];
            sorted_numerators(&mut numerators, length, d, total - first, &mut |ks| {
                let weights = ks
                    .iter()
                    .map(|&k| BigRational::new(k.into(), denom.clone()))
                    .collect();
                let mu = WeightTuple::new(weights).expect("enumeration respects invariants");
                if check_int(&mu).verdict != Verdict::Fail {
                    acc.push(mu);
                }
            });
            acc
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn sorted_numerators(
    prefix: &mut Vec<u64>,
    length: usize,
    d: u64,
    remaining: u64,
    emit: &mut dyn FnMut(&[u64]),
) {
    let left = length - prefix.len();
    if left == 0 {
        if remaining == 0 {
            emit(prefix);
        }
        return;
    }
    let lo = *prefix.last().expect("prefix starts non-empty");
    // every remaining entry lies in [lo, d-1]
    if remaining < lo * left as u64 || remaining > (d - 1) * left as u64 {
        return;
    }
    for k in lo..d {
        if k > remaining {
            break;
        }
        prefix.push(k);
        sorted_numerators(prefix, length, d, remaining - k, emit);
        prefix.pop();
    }
}

/// A pair of tuples with a holomorphic retraction `O_source -> O_target`
/// whose target also embeds as a totally geodesic suborbifold.
#[derive(Clone, Debug)]
pub struct RetractionPair {
    pub label: &'static str,
    pub source: WeightTuple,
    pub target: WeightTuple,
}

/// The retraction pairs used to build the C and D towers, plus the compact
/// triple where `mu_3` retracts onto `mu_1` and restricts to `mu_2`.
pub fn known_retractions() -> Vec<RetractionPair> {
    let t = |pairs: &[(i64, i64)]| WeightTuple::from_fractions(pairs).expect("valid literal");
    let nu = t(&[(1, 6), (3, 6), (4, 6), (4, 6)]);
    let mu1 = t(&[(3, 8), (3, 8), (3, 8), (7, 8)]);
    vec![
        RetractionPair {
            label: "cusped-n2",
            source: t(&[(2, 6), (2, 6), (3, 6), (4, 6), (1, 6)]),
            target: nu.clone(),
        },
        RetractionPair {
            label: "cusped-n3",
            source: t(&[(2, 6), (2, 6), (3, 6), (3, 6), (1, 6), (1, 6)]),
            target: nu,
        },
        RetractionPair {
            label: "compact-n2",
            source: t(&[(3, 8), (3, 8), (3, 8), (3, 8), (4, 8)]),
            target: mu1.clone(),
        },
        RetractionPair {
            label: "compact-n3",
            source: t(&[(1, 8), (3, 8), (3, 8), (3, 8), (3, 8), (3, 8)]),
            target: mu1,
        },
    ]
}

impl PartialOrd for WeightTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weights.cmp(&other.weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(s: &str) -> WeightTuple {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn rejects_invariant_violations() {
        assert!(matches!(
            "1/2,1/2,1".parse::<WeightTuple>(),
            Err(Error::TupleTooShort(3))
        ));
        assert!(matches!(
            "0,2/3,2/3,2/3".parse::<WeightTuple>(),
            Err(Error::WeightOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            "1,1/3,1/3,1/3".parse::<WeightTuple>(),
            Err(Error::WeightOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            "1/4,1/4,1/4,1/4".parse::<WeightTuple>(),
            Err(Error::WeightSum(_))
        ));
        assert!(matches!(
            "1/2,x,1/2,1/2".parse::<WeightTuple>(),
            Err(Error::ParseRational(_))
        ));
        assert!("1/0,1/2,1/2,1/2".parse::<WeightTuple>().is_err());
    }

    #[test]
    fn int_cusped_five_tuple() {
        // all 8 qualifying pairs give integers (2, 3, 6, 3, 2, 3, 2, 6)
        let s = check_int(&tuple("2/6,2/6,3/6,4/6,1/6"));
        assert_eq!(s.verdict, Verdict::Int);
        assert!(s.witnesses.is_empty());
    }

    #[test]
    fn half_int_six_tuple() {
        let s = check_int(&tuple("2/6,2/6,3/6,3/6,1/6,1/6"));
        assert_eq!(s.verdict, Verdict::HalfInt);
        assert_eq!(s.witnesses.len(), 1);
        let w = &s.witnesses[0];
        assert_eq!((w.i, w.j), (4, 5));
        assert_eq!(w.value, q(3, 2));
        assert_eq!(w.kind, WitnessKind::HalfIntegral);
    }

    #[test]
    fn int_four_tuples() {
        assert_eq!(check_int(&tuple("1/6,3/6,4/6,4/6")).verdict, Verdict::Int);
        assert_eq!(check_int(&tuple("3/8,3/8,3/8,7/8")).verdict, Verdict::Int);
    }

    #[test]
    fn fail_with_witness() {
        // 1/5 + 1/5 gives 5/3; weights are equal but 5/3 is not a half-integer
        let s = check_int(&tuple("1/5,1/5,4/5,4/5"));
        assert_eq!(s.verdict, Verdict::Fail);
        let w: Vec<_> = s.fail_witnesses().collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].value, q(5, 3));
        // unequal weights with half-integral value still fail
        let s = check_int(&tuple("1/6,1/2,2/3,2/3"));
        assert_eq!(s.verdict, Verdict::Int);
        let s = check_int(&tuple("1/12,7/12,2/3,2/3"));
        // 1/12 + 7/12 = 2/3, value 3: fine; 1/12 + 2/3 = 3/4, value 4: fine
        assert_eq!(s.verdict, Verdict::Int);
        let s = check_int(&tuple("1/10,4/10,7/10,8/10"));
        // 1/10 + 4/10 = 1/2 -> 2; 1/10 + 7/10 -> 5; 1/10 + 8/10 -> 10
        assert_eq!(s.verdict, Verdict::Int);
        let s = check_int(&tuple("1/6,1/6,5/6,5/6"));
        // 1/6 + 1/6 -> 3/2 at equal weights
        assert_eq!(s.verdict, Verdict::HalfInt);
        let s = check_int(&tuple("1/8,2/8,6/8,7/8"));
        // 1/8 + 2/8 -> 8/5, unequal weights
        assert_eq!(s.verdict, Verdict::Fail);
    }

    #[test]
    fn contract_cusped_pair() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let p =
            ContractionPartition::new(&mu, vec![vec![4], vec![2], vec![3], vec![0, 1]]).unwrap();
        assert_eq!(contract(&mu, &p).unwrap(), tuple("1/6,3/6,4/6,4/6"));
    }

    #[test]
    fn contract_six_tuple_two_blocks() {
        let mu = tuple("2/6,2/6,3/6,3/6,1/6,1/6");
        let p =
            ContractionPartition::new(&mu, vec![vec![4], vec![2], vec![0, 1], vec![3, 5]]).unwrap();
        assert_eq!(contract(&mu, &p).unwrap(), tuple("1/6,3/6,4/6,4/6"));
    }

    #[test]
    fn contract_identity_sorts() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let p = ContractionPartition::identity(&mu);
        assert_eq!(contract(&mu, &p).unwrap(), mu.canonical());
    }

    #[test]
    fn contract_rejects_heavy_block() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let err =
            ContractionPartition::new(&mu, vec![vec![0, 1, 2], vec![3], vec![4]]).unwrap_err();
        match err {
            Error::ContractionInadmissible { block, sum } => {
                assert_eq!(block, vec![1, 2, 3]);
                assert_eq!(sum, q(7, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
        // a merged block summing to exactly 1 is also inadmissible
        let err =
            ContractionPartition::new(&mu, vec![vec![2, 4, 0], vec![1], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::ContractionInadmissible { .. }));
    }

    #[test]
    fn contract_rejects_malformed_partitions() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        assert!(ContractionPartition::new(&mu, vec![vec![0, 1], vec![1], vec![2, 3, 4]]).is_err());
        assert!(ContractionPartition::new(&mu, vec![vec![0, 1], vec![2]]).is_err());
        assert!(ContractionPartition::new(&mu, vec![vec![0, 9]]).is_err());
        // too few blocks leaves fewer than four weights
        let p = ContractionPartition::new(&mu, vec![vec![0, 4], vec![1, 2], vec![3]]).unwrap();
        assert!(matches!(contract(&mu, &p), Err(Error::TupleTooShort(3))));
        let other = tuple("1/6,3/6,4/6,4/6");
        assert!(contract(&other, &p).is_err());
    }

    #[test]
    fn find_cusped_contraction() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let nu = tuple("1/6,3/6,4/6,4/6");
        let p = find_contraction(&mu, &nu).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2], vec![3], vec![4]]);
        assert_eq!(contractions(&mu, &nu).len(), 1);
    }

    #[test]
    fn find_identity_contraction() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let p = find_contraction(&mu, &mu).unwrap();
        assert_eq!(p.merged_blocks(), 0);
    }

    #[test]
    fn find_contraction_none() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        assert!(find_contraction(&mu, &tuple("1/2,1/2,1/2,1/2")).is_none());
        let longer = tuple("2/6,2/6,3/6,3/6,1/6,1/6");
        assert!(find_contraction(&mu, &longer).is_none());
    }

    #[test]
    fn six_tuple_needs_two_merged_pairs() {
        let mu = tuple("2/6,2/6,3/6,3/6,1/6,1/6");
        let nu = tuple("1/6,3/6,4/6,4/6");
        let all = contractions(&mu, &nu);
        assert!(!all.is_empty());
        for p in &all {
            let mut sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
            sizes.sort();
            assert_eq!(sizes, vec![1, 1, 2, 2]);
        }
        let least = find_contraction(&mu, &nu).unwrap();
        assert_eq!(least.blocks(), &[vec![0, 1], vec![2], vec![3, 4], vec![5]]);
    }

    #[test]
    fn retraction_targets_are_contractions() {
        for pair in known_retractions() {
            assert_ne!(
                check_int(&pair.source).verdict,
                Verdict::Fail,
                "{}",
                pair.label
            );
            assert_eq!(
                check_int(&pair.target).verdict,
                Verdict::Int,
                "{}",
                pair.label
            );
            assert!(
                find_contraction(&pair.source, &pair.target).is_some(),
                "{}",
                pair.label
            );
        }
    }

    #[test]
    fn enumerate_contains_known_tuples() {
        let five = enumerate_tuples(5, 6, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(five.contains(&tuple("2/6,2/6,3/6,4/6,1/6").canonical()));
        let four = enumerate_tuples(4, 8, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(four.contains(&tuple("3/8,3/8,3/8,7/8")));
        let tiny = enumerate_tuples(4, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(tiny, vec![tuple("1/2,1/2,1/2,1/2")]);
    }

    #[test]
    fn enumerate_output_is_sorted_and_unique() {
        let out = enumerate_tuples(5, 12, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(out.windows(2).all(|w| w[0] < w[1]));
        for mu in &out {
            assert_eq!(mu, &mu.canonical());
            assert_ne!(check_int(mu).verdict, Verdict::Fail);
        }
    }

    #[test]
    fn enumerate_refuses_large_spaces() {
        let err = enumerate_tuples(12, 60, DEFAULT_ENUMERATION_CAP).unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
        assert!(enumerate_tuples(3, 6, DEFAULT_ENUMERATION_CAP).is_err());
        assert!(enumerate_tuples(4, 1, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn json_uses_fraction_strings() {
        let mu = tuple("2/6,2/6,3/6,4/6,1/6");
        let s = serde_json::to_string(&mu).unwrap();
        assert_eq!(s, r#"["1/3","1/3","1/2","2/3","1/6"]"#);
        let back: WeightTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, mu);
        assert!(serde_json::from_str::<WeightTuple>(r#"["1/2","1/2"]"#).is_err());
    }
}
