//! Orders of finite classical groups, by closed formula and by enumeration.
//!
//! Enumeration works column by column: a partial matrix is extended only by
//! columns compatible with the ones already chosen (isometry conditions for
//! unitary groups, linear independence for `SL`), so the search visits far
//! fewer than the raw `|F|^{m^2}` candidates. The raw size is still what the
//! resource cap is checked against.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::bigint_string;
use crate::primes::{is_prime, prime_divisors, prime_power};

/// Default cap on the raw brute-force search space, 2^28.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    #[serde(rename = "SL2_ZN")]
    Sl2Zn,
    #[serde(rename = "SL_m_Fq")]
    Sl,
    #[serde(rename = "U_m_Fq")]
    U,
    #[serde(rename = "SU_m_Fq")]
    Su,
    #[serde(rename = "UNITRIANGULAR_U_m_Fq")]
    UnitriangularU,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFamily::Sl2Zn => "SL2_ZN",
            GroupFamily::Sl => "SL_m_Fq",
            GroupFamily::U => "U_m_Fq",
            GroupFamily::Su => "SU_m_Fq",
            GroupFamily::UnitriangularU => "UNITRIANGULAR_U_m_Fq",
        })
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SL2" | "SL2_ZN" => Ok(GroupFamily::Sl2Zn),
            "SL" | "SL_M_FQ" => Ok(GroupFamily::Sl),
            "U" | "U_M_FQ" => Ok(GroupFamily::U),
            "SU" | "SU_M_FQ" => Ok(GroupFamily::Su),
            "UNITRIANGULAR" | "UNITRIANGULAR_U" | "UNITRIANGULAR_U_M_FQ" => {
                Ok(GroupFamily::UnitriangularU)
            }
            _ => Err(Error::GroupParameters(format!(
                "unknown group family {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Formula,
    BruteForce,
}

/// Exact order of a finite classical group. `modulus` is `N` for
/// `SL2(Z/N)` and the field size `q` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOrder {
    pub family: GroupFamily,
    pub m: u32,
    pub modulus: u64,
    #[serde(with = "bigint_string")]
    pub order: BigInt,
    pub method: Method,
}

fn formula(family: GroupFamily, m: u32, modulus: u64, order: BigInt) -> GroupOrder {
    GroupOrder {
        family,
        m,
        modulus,
        order,
        method: Method::Formula,
    }
}

fn check_field(m: u32, q: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::GroupParameters(format!(
            "matrix size must be at least 2, got {m}"
        )));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

/// `|SL_2(Z/N)| = N^3 prod_{p | N} (1 - p^-2)`.
pub fn sl2_order(n: u64) -> Result<GroupOrder> {
    if n < 2 {
        return Err(Error::GroupParameters(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let mut order = BigInt::from(n).pow(3u32);
    for p in prime_divisors(n) {
        let p2 = BigInt::from(p * p);
        order = order / &p2 * (p2 - 1);
    }
    Ok(formula(GroupFamily::Sl2Zn, 2, n, order))
}

/// `|PSL_2(Z/N)|`: `SL_2` modulo `{+1, -1}`, which has one element when `N <= 2`.
pub fn psl2_order(n: u64) -> Result<BigInt> {
    let sl = sl2_order(n)?.order;
    Ok(if n <= 2 { sl } else { sl / 2 })
}

/// `|SL_m(F_q)| = q^{m(m-1)/2} prod_{i=2..m} (q^i - 1)`.
pub fn sl_order(m: u32, q: u64) -> Result<GroupOrder> {
    check_field(m, q)?;
    let qb = BigInt::from(q);
    let mut order = qb.clone().pow(m * (m - 1) / 2);
    for i in 2..=m {
        order *= qb.clone().pow(i) - 1;
    }
    Ok(formula(GroupFamily::Sl, m, q, order))
}

/// `|U_m(F_q)| = q^{m(m-1)/2} prod_{i=1..m} (q^i - (-1)^i)`.
pub fn u_order(m: u32, q: u64) -> Result<GroupOrder> {
    check_field(m, q)?;
    let qb = BigInt::from(q);
    let mut order = qb.clone().pow(m * (m - 1) / 2);
    for i in 1..=m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        order *= qb.clone().pow(i) - sign;
    }
    Ok(formula(GroupFamily::U, m, q, order))
}

/// `|SU_m(F_q)| = |U_m(F_q)| / (q + 1)`.
pub fn su_order(m: u32, q: u64) -> Result<GroupOrder> {
    let u = u_order(m, q)?;
    Ok(formula(GroupFamily::Su, m, q, u.order / (q + 1)))
}

/// Upper unitriangular elements of `U_m(F_q)` for the antidiagonal form:
/// a Sylow `p`-subgroup, of order `q^{m(m-1)/2}` (the Heisenberg group for `m = 3`).
pub fn unitriangular_u_order(m: u32, q: u64) -> Result<GroupOrder> {
    check_field(m, q)?;
    let order = BigInt::from(q).pow(m * (m - 1) / 2);
    Ok(formula(GroupFamily::UnitriangularU, m, q, order))
}

pub fn formula_order(family: GroupFamily, m: u32, modulus: u64) -> Result<GroupOrder> {
    match family {
        GroupFamily::Sl2Zn => {
            if m != 2 {
                return Err(Error::GroupParameters("SL2(Z/N) has m = 2".into()));
            }
            sl2_order(modulus)
        }
        GroupFamily::Sl => sl_order(m, modulus),
        GroupFamily::U => u_order(m, modulus),
        GroupFamily::Su => su_order(m, modulus),
        GroupFamily::UnitriangularU => unitriangular_u_order(m, modulus),
    }
}

/// Size of the unpruned candidate space `(q^2 or q or N)^{m^2}`.
pub fn raw_search_space(family: GroupFamily, m: u32, modulus: u64) -> BigInt {
    let base = match family {
        GroupFamily::U | GroupFamily::Su | GroupFamily::UnitriangularU => modulus * modulus,
        GroupFamily::Sl | GroupFamily::Sl2Zn => modulus,
    };
    BigInt::from(base).pow(m * m)
}

/// Counts group elements by enumeration. Refuses when the raw space
/// exceeds `cap`.
pub fn brute_force_order(
    family: GroupFamily,
    m: u32,
    modulus: u64,
    cap: u64,
) -> Result<GroupOrder> {
    match family {
        GroupFamily::Sl2Zn => {
            if m != 2 || modulus < 2 {
                return Err(Error::GroupParameters(
                    "SL2(Z/N) needs m = 2 and N >= 2".into(),
                ));
            }
        }
        _ => check_field(m, modulus)?,
    }
    let size = raw_search_space(family, m, modulus);
    if size > BigInt::from(cap) {
        return Err(Error::SearchSpaceTooLarge {
            size,
            cap: cap.into(),
        });
    }
    let count = match family {
        GroupFamily::Sl2Zn => count_sl2_mod(modulus),
        GroupFamily::Sl => {
            let field = FiniteField::new(modulus);
            count_columnwise(&field, m as usize, &SpecialLinear { field: &field })
        }
        GroupFamily::U | GroupFamily::Su | GroupFamily::UnitriangularU => {
            let field = FiniteField::new(modulus * modulus);
            let search = Unitary::new(&field, modulus, m as usize, family);
            count_columnwise(&field, m as usize, &search)
        }
    };
    Ok(GroupOrder {
        family,
        m,
        modulus,
        order: BigInt::from(count),
        method: Method::BruteForce,
    })
}

/// Reduction of `SL_2(Z)` mod `N` is onto, so its image is counted directly
/// as the solutions of `ad - bc = 1` in `Z/N`.
fn count_sl2_mod(n: u64) -> u64 {
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut count = 0;
            for b in 0..n {
                for c in 0..n {
                    let bc = (b * c) % n;
                    for d in 0..n {
                        if (a * d + n - bc) % n == 1 % n {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum()
}

/// `GF(p^e)` with elements encoded as integers whose base-`p` digits are the
/// coefficients of a polynomial reduced modulo a fixed irreducible `f`.
/// `f` is the least monic irreducible of degree `e` when its non-leading
/// coefficients are read as a base-`p` number.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    /// Builds `GF(q)`. Panics unless `q` is a prime power.
    pub fn new(q: u64) -> Self {
        let (p, e) = prime_power(q).expect("field size must be a prime power");
        let modulus = least_irreducible(p, e as usize);
        let size = q as usize;
        let decode = |x: usize| -> Vec<u64> {
            let mut v = Vec::with_capacity(e as usize);
            let mut r = x as u64;
            for _ in 0..e {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) as u32 };
        let polys: Vec<Vec<u64>> = (0..size).map(decode).collect();
        let mut add = vec![0u32; size * size];
        let mut mul = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                let s: Vec<u64> = polys[a]
                    .iter()
                    .zip(&polys[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * size + b] = encode(&s);
                mul[a * size + b] = encode(&poly_mul_mod(&polys[a], &polys[b], &modulus, p));
            }
        }
        let mut inv = vec![0u32; size];
        for a in 1..size {
            inv[a] = (1..size)
                .find(|&b| mul[a * size + b] == 1)
                .expect("nonzero elements are invertible") as u32;
        }
        FiniteField {
            p,
            size,
            add,
            mul,
            inv,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        // p-1 copies of a
        let mut r = 0;
        for _ in 1..self.p {
            r = self.add(r, a);
        }
        r
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Determinant of a square matrix given as columns.
    pub fn determinant(&self, columns: &[Vec<u32>]) -> u32 {
        let n = columns.len();
        // work on rows of the transpose; det is unchanged
        let mut a: Vec<Vec<u32>> = columns.to_vec();
        let mut det = 1;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            if piv != k {
                a.swap(piv, k);
                det = self.neg(det);
            }
            det = self.mul(det, a[k][k]);
            let inv = self.inv(a[k][k]).expect("pivot is nonzero");
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot = &top[k];
            for row in rest {
                let factor = self.mul(row[k], inv);
                if factor == 0 {
                    continue;
                }
                for (x, &p) in row[k..].iter_mut().zip(&pivot[k..]) {
                    *x = self.sub(*x, self.mul(factor, p));
                }
            }
        }
        det
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let e = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

/// Reduces `a` modulo the monic polynomial `f` in place.
fn poly_rem(a: &mut [u64], f: &[u64], p: u64) {
    let e = f.len() - 1;
    for top in (e..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, fi) in f.iter().enumerate() {
            let idx = top - e + i;
            a[idx] = (a[idx] + p - (c * fi) % p) % p;
        }
    }
}

/// Coefficients (constant first) of the least monic irreducible of degree `e`.
fn least_irreducible(p: u64, e: usize) -> Vec<u64> {
    let count = p.pow(e as u32);
    (0..count)
        .map(|code| monic_from_code(p, e, code))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn monic_from_code(p: u64, deg: usize, mut code: u64) -> Vec<u64> {
    let mut f = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        f.push(code % p);
        code /= p;
    }
    f.push(1);
    f
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        for code in 0..p.pow(d as u32) {
            let g = monic_from_code(p, d, code);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

trait ColumnSearch: Sync {
    /// Whether `col` may follow the already chosen `prefix` columns.
    fn accept(&self, prefix: &[Vec<u32>], col: &[u32]) -> bool;
    fn complete(&self, columns: &[Vec<u32>]) -> bool;
}

fn all_vectors(field: &FiniteField, m: usize) -> Vec<Vec<u32>> {
    let q = field.size();
    (0..q.pow(m as u32))
        .map(|mut code| {
            let mut v = Vec::with_capacity(m);
            for _ in 0..m {
                v.push((code % q) as u32);
                code /= q;
            }
            v
        })
        .collect()
}

fn count_columnwise(field: &FiniteField, m: usize, search: &dyn ColumnSearch) -> u64 {
    let candidates = all_vectors(field, m);
    candidates
        .par_iter()
        .filter(|c| search.accept(&[], c))
        .map(|first| {
            let mut prefix = vec![first.clone()];
            extend_columns(&candidates, m, search, &mut prefix)
        })
        .sum()
}

fn extend_columns(
    candidates: &[Vec<u32>],
    m: usize,
    search: &dyn ColumnSearch,
    prefix: &mut Vec<Vec<u32>>,
) -> u64 {
    if prefix.len() == m {
        return u64::from(search.complete(prefix));
    }
    let mut total = 0;
    for c in candidates {
        if search.accept(prefix, c) {
            prefix.push(c.clone());
            total += extend_columns(candidates, m, search, prefix);
            prefix.pop();
        }
    }
    total
}

struct SpecialLinear<'a> {
    field: &'a FiniteField,
}

impl ColumnSearch for SpecialLinear<'_> {
    fn accept(&self, prefix: &[Vec<u32>], col: &[u32]) -> bool {
        // rank must grow, otherwise the determinant is already zero
        let mut cols = prefix.to_vec();
        cols.push(col.to_vec());
        rank(self.field, &cols) == cols.len()
    }

    fn complete(&self, columns: &[Vec<u32>]) -> bool {
        self.field.determinant(columns) == 1
    }
}

fn rank(field: &FiniteField, vectors: &[Vec<u32>]) -> usize {
    let mut rows: Vec<Vec<u32>> = vectors.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = field.mul(row[c], inv);
                for (x, &p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Isometries of the antidiagonal hermitian form `h(x, y) = sum conj(x_i) y_{m-1-i}`
/// on `F_{q^2}^m`, where `conj(x) = x^q`.
struct Unitary<'a> {
    field: &'a FiniteField,
    q: u64,
    m: usize,
    family: GroupFamily,
    conj: Vec<u32>,
}

impl<'a> Unitary<'a> {
    fn new(field: &'a FiniteField, q: u64, m: usize, family: GroupFamily) -> Self {
        let conj = (0..field.size() as u32).map(|x| field.pow(x, q)).collect();
        Unitary {
            field,
            q,
            m,
            family,
            conj,
        }
    }

    fn form(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = self.field;
        (0..self.m).fold(0, |acc, i| {
            f.add(acc, f.mul(self.conj[x[i] as usize], y[self.m - 1 - i]))
        })
    }

    fn gram(&self, a: usize, b: usize) -> u32 {
        u32::from(a + b == self.m - 1)
    }
}

impl ColumnSearch for Unitary<'_> {
    fn accept(&self, prefix: &[Vec<u32>], col: &[u32]) -> bool {
        let b = prefix.len();
        if self.family == GroupFamily::UnitriangularU {
            // 1 on the diagonal, zeros below it
            if col[b] != 1 || col[b + 1..].iter().any(|&x| x != 0) {
                return false;
            }
        }
        self.form(col, col) == self.gram(b, b)
            && prefix
                .iter()
                .enumerate()
                .all(|(a, prev)| self.form(prev, col) == self.gram(a, b))
    }

    fn complete(&self, columns: &[Vec<u32>]) -> bool {
        match self.family {
            GroupFamily::Su => self.field.determinant(columns) == 1,
            _ => true,
        }
    }
}

impl fmt::Debug for Unitary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Unitary(m = {}, q = {}, {})",
            self.m, self.q, self.family
        )
    }
}

/// Cusp-count proxy at prime level `q`: `|SU_{n+1}(F_q)| / q^{2n-1}`, the
/// index of a full Heisenberg-type parabolic image.
pub fn cusp_index_proxy(n: u32, q: u64) -> Result<BigInt> {
    if !(2..=3).contains(&n) {
        return Err(Error::GroupParameters(format!(
            "ball dimension must be 2 or 3, got {n}"
        )));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let vol = su_order(n + 1, q)?.order;
    let parabolic = BigInt::from(q).pow(2 * n - 1);
    let (quot, rem) = vol.div_rem(&parabolic);
    if rem != BigInt::from(0) {
        return Err(Error::NotDivisible {
            numer: vol,
            denom: parabolic,
        });
    }
    Ok(quot)
}

/// Proxies at prime level `q` for a congruence tower over a ball quotient
/// retracting onto a genus-`g` curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DTowerDatum {
    pub q: u64,
    /// `|SU_{n+1}(F_q)|`, proportional to the covering degree.
    #[serde(with = "bigint_string")]
    pub vol: BigInt,
    /// `b_1` of the level-`q` congruence cover of the retract, a lower bound
    /// for `b_1` of the cover.
    #[serde(with = "bigint_string")]
    pub b1: BigInt,
    /// One modeled cusp: `vol / q^{2n-1}`.
    #[serde(with = "bigint_string")]
    pub cusps: BigInt,
}

pub fn d_tower_series(n: u32, genus: u64, primes: &[u64]) -> Result<Vec<DTowerDatum>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::GroupParameters("primes must be distinct".into()));
    }
    primes
        .iter()
        .map(|&q| {
            let cusps = cusp_index_proxy(n, q)?;
            let vol = su_order(n + 1, q)?.order;
            let b1 = BigInt::from(2) + BigInt::from(2 * genus - 2) * psl2_order(q)?;
            Ok(DTowerDatum { q, vol, b1, cusps })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sl2_small_moduli() {
        assert_eq!(sl2_order(2).unwrap().order, n(6));
        assert_eq!(sl2_order(3).unwrap().order, n(24));
        assert_eq!(sl2_order(4).unwrap().order, n(48));
        assert_eq!(sl2_order(6).unwrap().order, n(144));
        assert!(sl2_order(1).is_err());
        assert_eq!(psl2_order(2).unwrap(), n(6));
        assert_eq!(psl2_order(5).unwrap(), n(60));
    }

    #[test]
    fn classical_formulas() {
        assert_eq!(u_order(2, 2).unwrap().order, n(18));
        assert_eq!(u_order(3, 2).unwrap().order, n(648));
        assert_eq!(su_order(3, 2).unwrap().order, n(216));
        assert_eq!(sl_order(2, 3).unwrap().order, n(24));
        assert_eq!(sl_order(3, 2).unwrap().order, n(168));
        assert_eq!(unitriangular_u_order(3, 2).unwrap().order, n(8));
        for q in [2u64, 3, 5, 7, 11] {
            assert_eq!(sl_order(2, q).unwrap().order, sl2_order(q).unwrap().order);
        }
        assert!(matches!(u_order(2, 6), Err(Error::NotPrimePower(6))));
        assert!(u_order(1, 2).is_err());
    }

    #[test]
    fn field_tables() {
        let f4 = FiniteField::new(4);
        assert_eq!(f4.characteristic(), 2);
        // x^2 + x + 1 is the least irreducible quadratic over F_2
        // so x * x = x + 1, encoded 2 * 2 = 3
        assert_eq!(f4.mul(2, 2), 3);
        for a in 1..4 {
            assert_eq!(f4.mul(a, f4.inv(a).unwrap()), 1);
        }
        let f9 = FiniteField::new(9);
        // multiplicative group is cyclic of order 8
        let orders: Vec<u64> = (1..9u32)
            .map(|a| (1..=8).find(|&k| f9.pow(a, k) == 1).unwrap())
            .collect();
        assert!(orders.contains(&8));
        // Frobenius fixes exactly the prime field
        assert_eq!((0..9u32).filter(|&a| f9.pow(a, 3) == a).count(), 3);
        let f7 = FiniteField::new(7);
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.neg(3), 4);
    }

    #[test]
    fn field_determinant() {
        let f5 = FiniteField::new(5);
        // columns (1,2), (3,4): det = 4 - 6 = -2 = 3
        assert_eq!(f5.determinant(&[vec![1, 2], vec![3, 4]]), 3);
        assert_eq!(f5.determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn brute_force_examples() {
        let cap = DEFAULT_BRUTE_FORCE_CAP;
        assert_eq!(
            brute_force_order(GroupFamily::U, 2, 2, cap).unwrap().order,
            n(18)
        );
        assert_eq!(
            brute_force_order(GroupFamily::Sl, 2, 3, cap).unwrap().order,
            n(24)
        );
        let heis = brute_force_order(GroupFamily::UnitriangularU, 3, 2, cap).unwrap();
        assert_eq!(heis.order, n(8));
        assert_eq!(heis.method, Method::BruteForce);
        assert_eq!(
            brute_force_order(GroupFamily::Sl2Zn, 2, 4, cap)
                .unwrap()
                .order,
            n(48)
        );
    }

    #[test]
    fn brute_force_refuses_over_cap() {
        let err = brute_force_order(GroupFamily::Su, 3, 3, DEFAULT_BRUTE_FORCE_CAP).unwrap_err();
        match err {
            Error::SearchSpaceTooLarge { size, .. } => assert_eq!(size, n(9).pow(9u32)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(brute_force_order(GroupFamily::Sl2Zn, 3, 5, 1 << 20).is_err());
    }

    #[test]
    fn special_linear_search_counts() {
        let cap = DEFAULT_BRUTE_FORCE_CAP;
        assert_eq!(
            brute_force_order(GroupFamily::Sl, 3, 2, cap).unwrap().order,
            n(168)
        );
        assert_eq!(
            brute_force_order(GroupFamily::Sl, 2, 4, cap).unwrap().order,
            n(60)
        );
    }

    #[test]
    fn cusp_proxy_values() {
        assert_eq!(cusp_index_proxy(2, 2).unwrap(), n(27));
        assert_eq!(cusp_index_proxy(2, 3).unwrap(), n(224));
        assert!(cusp_index_proxy(4, 3).is_err());
        assert!(cusp_index_proxy(2, 4).is_err());
        for q in [5u64, 7, 11] {
            let c = cusp_index_proxy(2, q).unwrap();
            assert_eq!(c * BigInt::from(q).pow(3u32), su_order(3, q).unwrap().order);
        }
    }

    #[test]
    fn d_tower_rows() {
        let rows = d_tower_series(2, 2, &[5, 7]).unwrap();
        assert_eq!(rows[0].vol, su_order(3, 5).unwrap().order);
        // b1 = 2 + 2 * |PSL2(F_5)| = 2 + 2 * 60
        assert_eq!(rows[0].b1, n(122));
        assert_eq!(rows[0].cusps, n(24 * 126));
        assert!(d_tower_series(2, 2, &[5, 5]).is_err());
        assert!(d_tower_series(2, 1, &[5]).is_err());
    }

    #[test]
    fn family_names() {
        assert_eq!("su".parse::<GroupFamily>().unwrap(), GroupFamily::Su);
        assert_eq!("SL2".parse::<GroupFamily>().unwrap(), GroupFamily::Sl2Zn);
        assert!("GL".parse::<GroupFamily>().is_err());
    }
}
