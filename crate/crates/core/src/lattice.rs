//! Exact integer-matrix algebra: Smith normal form, finite abelian groups
//! given by invariant factors, and indices of subgroup images under
//! homomorphisms `Z^k -> G`.
//!
//! This is the engine behind every cusp count in [`crate::towers`]: the
//! number of cusps lying over a boundary curve is the index in the deck
//! group of the image of that curve's fundamental group, and for an abelian
//! deck group that index is the order of a cokernel.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-sized dimensions are allowed so that an empty generating set
/// (`k x 0`) or a homomorphism into the trivial group (`0 x k`) can be
/// represented without special cases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(m)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Sets the column count of a matrix with no rows. Deserialized `[]`
    /// carries no column information, so callers restore it from context.
    pub(crate) fn with_empty_cols(self, cols: usize) -> Self {
        if self.rows == 0 {
            IntMatrix {
                rows: 0,
                cols,
                data: Vec::new(),
            }
        } else {
            self
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes do not match")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

/// JSON integer entry: decimal string (canonical) or a plain number.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Text(String),
    Number(i64),
}

impl JsonInt {
    fn into_bigint<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonInt::Number(n) => Ok(BigInt::from(n)),
            JsonInt::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<JsonInt>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            for x in r {
                data.push(x.into_bigint()?);
            }
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

pub(crate) mod bigint_string_vec {
    use super::JsonInt;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(JsonInt::into_bigint)
            .collect()
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal in divisor-chain form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal `d_1 | d_2 | ... | d_r`, zeros trailing.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by repeated minimal-pivot elimination.
///
/// The pivot is the nonzero entry of least absolute value in the active
/// submatrix, ties broken by lowest (row, col). Output is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = min_pivot(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = d[(t, t)].clone();
            let mut remainder = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                remainder |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                remainder |= !d[(t, j)].is_zero();
            }
            if remainder {
                // a strictly smaller entry now exists; pick it as the new pivot
                continue;
            }

            // row and column t are clear; the pivot must divide the rest
            let bad_row =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => {
                    if pivot.is_negative() {
                        d.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// A finite abelian group `Z/d_1 x ... x Z/d_s` with `d_i >= 2` and `d_i | d_{i+1}`.
/// The trivial group has no invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    #[serde(with = "bigint_string_vec")]
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        let chain = invariant_factors.iter().all(|d| *d >= two)
            && invariant_factors
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]));
        if !chain {
            return Err(Error::InvariantFactors(invariant_factors));
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n.is_one() {
            return Ok(Self::trivial());
        }
        Self::new(vec![n])
    }

    /// Canonical form of `Z/n_1 x ... x Z/n_t` for arbitrary positive `n_i`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        if orders.iter().any(|n| !n.is_positive()) {
            return Err(Error::InfiniteQuotient);
        }
        Self::from_diagonal(&smith_normal_form(&IntMatrix::diagonal(orders)).diagonal())
    }

    /// Drops unit factors; a zero factor means the quotient is infinite.
    fn from_diagonal(diagonal: &[BigInt]) -> Result<Self> {
        if diagonal.iter().any(Zero::is_zero) {
            return Err(Error::InfiniteQuotient);
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Number of cyclic factors in the invariant-factor decomposition.
    pub fn num_factors(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Quotient of `target` by the subgroup generated by the columns of `generators`.
pub fn cokernel(target: &FiniteAbelianGroup, generators: &IntMatrix) -> Result<FiniteAbelianGroup> {
    let s = target.num_factors();
    if generators.rows() != s {
        return Err(Error::Shape(format!(
            "generators have {} rows but the target has {s} invariant factors",
            generators.rows()
        )));
    }
    if s == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let relations = IntMatrix::diagonal(target.invariant_factors()).hcat(generators)?;
    FiniteAbelianGroup::from_diagonal(&smith_normal_form(&relations).diagonal())
}

/// A homomorphism `Z^k -> G`, stored as the images of the standard generators.
///
/// Row `i` of `images` holds the `i`-th coordinate (mod `d_i`) of each image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianHom {
    target: FiniteAbelianGroup,
    images: IntMatrix,
}

impl AbelianHom {
    pub fn new(target: FiniteAbelianGroup, images: IntMatrix) -> Result<Self> {
        if images.rows() != target.num_factors() {
            return Err(Error::Shape(format!(
                "images have {} rows but the target has {} invariant factors",
                images.rows(),
                target.num_factors()
            )));
        }
        let mut images = images;
        for (i, d) in target.invariant_factors().iter().enumerate() {
            for j in 0..images.cols() {
                let r = images[(i, j)].mod_floor(d);
                images[(i, j)] = r;
            }
        }
        Ok(AbelianHom { target, images })
    }

    /// The map `Z^k -> Z/n` sending `e_j` to `images[j]`.
    pub fn to_cyclic(n: impl Into<BigInt>, images: &[i64]) -> Result<Self> {
        let target = FiniteAbelianGroup::cyclic(n)?;
        let rows: Vec<&[i64]> = if target.is_trivial() {
            Vec::new()
        } else {
            vec![images]
        };
        let m = IntMatrix::from_rows(&rows).with_empty_cols(images.len());
        Self::new(target, m)
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &IntMatrix {
        &self.images
    }

    /// Rank `k` of the free source group.
    pub fn source_rank(&self) -> usize {
        self.images.cols()
    }

    fn image_of(&self, sublattice: &IntMatrix) -> Result<IntMatrix> {
        if sublattice.rows() != self.source_rank() {
            return Err(Error::Shape(format!(
                "sublattice has {} rows, homomorphism source has rank {}",
                sublattice.rows(),
                self.source_rank()
            )));
        }
        self.images.checked_mul(sublattice)
    }

    /// Whether `self` followed by coordinatewise reduction equals `lower`.
    ///
    /// Holds when each invariant factor of `lower` divides the matching
    /// factor of `self` and the images agree modulo the smaller factors.
    pub fn reduces_to(&self, lower: &AbelianHom) -> bool {
        let (hi, lo) = (
            self.target.invariant_factors(),
            lower.target.invariant_factors(),
        );
        if self.source_rank() != lower.source_rank() {
            return false;
        }
        // lower may have fewer factors when the leading ones collapsed to 1
        if lo.len() > hi.len() {
            return false;
        }
        let offset = hi.len() - lo.len();
        lo.iter().enumerate().all(|(i, dl)| {
            let dh = &hi[offset + i];
            dh.is_multiple_of(dl)
                && (0..self.source_rank())
                    .all(|j| self.images[(offset + i, j)].mod_floor(dl) == lower.images[(i, j)])
        })
    }
}

/// `[G : rho(L)]` for the sublattice `L` spanned by the columns of `sublattice`.
pub fn image_index(rho: &AbelianHom, sublattice: &IntMatrix) -> Result<BigInt> {
    let image = rho.image_of(sublattice)?;
    Ok(cokernel(rho.target(), &image)?.order())
}

pub fn is_surjective(rho: &AbelianHom) -> bool {
    let basis = IntMatrix::identity(rho.source_rank());
    image_index(rho, &basis).is_ok_and(|idx| idx.is_one())
}

/// True iff every generator column of `sublattice` maps to the identity.
pub fn kernel_contains(rho: &AbelianHom, sublattice: &IntMatrix) -> Result<bool> {
    let image = rho.image_of(sublattice)?;
    let factors = rho.target().invariant_factors();
    Ok((0..image.rows())
        .all(|i| (0..image.cols()).all(|j| image[(i, j)].is_multiple_of(&factors[i]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_decomposition(a: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.d);
        assert!(snf.u.determinant().unwrap().abs().is_one());
        assert!(snf.v.determinant().unwrap().abs().is_one());
        snf
    }

    #[test]
    fn snf_identity() {
        let snf = check_decomposition(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal(), big(&[1, 1, 1]));
    }

    #[test]
    fn snf_already_chained() {
        let snf = check_decomposition(&IntMatrix::from_rows(&[[2, 0], [0, 6]]));
        assert_eq!(snf.diagonal(), big(&[2, 6]));
    }

    #[test]
    fn snf_two_by_two() {
        let snf = check_decomposition(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(snf.diagonal(), big(&[2, 4]));
    }

    #[test]
    fn snf_fixes_non_chain_diagonal() {
        let snf = check_decomposition(&IntMatrix::from_rows(&[[4, 0], [0, 6]]));
        assert_eq!(snf.diagonal(), big(&[2, 12]));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let snf = check_decomposition(&IntMatrix::from_rows(&[[0, 0, 0], [0, 0, 0]]));
        assert_eq!(snf.rank(), 0);
        let snf = check_decomposition(&IntMatrix::from_rows(&[[3, 6, 9]]));
        assert_eq!(snf.diagonal(), big(&[3]));
        let snf = check_decomposition(&IntMatrix::from_rows(&[[1, 2], [2, 4], [3, 6]]));
        assert_eq!(snf.diagonal(), big(&[1, 0]));
    }

    #[test]
    fn snf_is_deterministic() {
        let a = IntMatrix::from_rows(&[[5, -3, 2], [7, 1, -4], [2, 2, 2]]);
        let x = smith_normal_form(&a);
        let y = smith_normal_form(&a);
        assert_eq!(x.u, y.u);
        assert_eq!(x.v, y.v);
    }

    #[test]
    fn snf_handles_large_entries() {
        let big_entry = BigInt::from(10).pow(40u32);
        let a = IntMatrix::new(
            2,
            2,
            vec![
                big_entry.clone(),
                BigInt::from(3),
                BigInt::from(7),
                big_entry,
            ],
        )
        .unwrap();
        let snf = check_decomposition(&a);
        assert_eq!(snf.diagonal()[0], BigInt::one());
    }

    #[test]
    fn group_canonical_form() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&big(&[2, 3, 1, 4])).unwrap();
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
        assert_eq!(g.order(), BigInt::from(24));
        assert!(FiniteAbelianGroup::new(big(&[4, 6])).is_err());
        assert!(FiniteAbelianGroup::new(big(&[1])).is_err());
        assert!(FiniteAbelianGroup::from_cyclic_orders(&big(&[0])).is_err());
        assert_eq!(FiniteAbelianGroup::trivial().order(), BigInt::one());
    }

    #[test]
    fn cokernel_examples() {
        let z8 = FiniteAbelianGroup::cyclic(8).unwrap();
        let q = cokernel(&z8, &IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(q.is_trivial());
        let q = cokernel(&z8, &IntMatrix::zeros(1, 0)).unwrap();
        assert_eq!(q, z8);
        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        let q = cokernel(&z9, &IntMatrix::from_rows(&[[3]])).unwrap();
        assert_eq!(q, FiniteAbelianGroup::cyclic(3).unwrap());
        assert!(cokernel(&z9, &IntMatrix::from_rows(&[[3], [1]])).is_err());
    }

    fn a_tower_rho(p: i64, j: u32) -> AbelianHom {
        AbelianHom::to_cyclic(p.pow(j), &[1, 0, 0, 0]).unwrap()
    }

    #[test]
    fn image_index_a_tower() {
        let rho = a_tower_rho(3, 2);
        let c_inf = IntMatrix::from_columns(4, &[[0, 0, 1, 0], [0, 0, 0, 1]]);
        let c_0 = IntMatrix::from_columns(4, &[[1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(image_index(&rho, &c_inf).unwrap(), BigInt::from(9));
        assert_eq!(image_index(&rho, &c_0).unwrap(), BigInt::one());
        assert!(kernel_contains(&rho, &c_inf).unwrap());
        let e1 = IntMatrix::from_columns(4, &[[1, 0, 0, 0]]);
        assert!(!kernel_contains(&rho, &e1).unwrap());
        assert!(image_index(&rho, &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn image_index_b_tower_even_prime() {
        let rho = AbelianHom::to_cyclic(2, &[1, 1, 1, 1]).unwrap();
        let c_1 = IntMatrix::from_columns(4, &[[1, 0, 1, 0], [0, 1, 0, 1]]);
        assert_eq!(image_index(&rho, &c_1).unwrap(), BigInt::from(2));
    }

    #[test]
    fn b_tower_kernel_contains_sum_fibration() {
        let rho = AbelianHom::to_cyclic(27, &[1, 1, 1, 1]).unwrap();
        let sum_kernel = IntMatrix::from_columns(4, &[[1, 0, -1, 0], [0, 1, 0, -1]]);
        assert!(kernel_contains(&rho, &sum_kernel).unwrap());
    }

    #[test]
    fn surjectivity() {
        assert!(is_surjective(&a_tower_rho(5, 3)));
        assert!(!is_surjective(
            &AbelianHom::to_cyclic(4, &[2, 2, 0, 0]).unwrap()
        ));
        let target = FiniteAbelianGroup::new(big(&[2, 4])).unwrap();
        let images = IntMatrix::from_rows(&[[1, 0, 0], [0, 1, 0]]);
        assert!(is_surjective(
            &AbelianHom::new(target.clone(), images).unwrap()
        ));
        let images = IntMatrix::from_rows(&[[1, 0, 0], [0, 2, 0]]);
        assert!(!is_surjective(&AbelianHom::new(target, images).unwrap()));
    }

    #[test]
    fn hom_reduces_images() {
        let rho = AbelianHom::to_cyclic(5, &[7, -1, 10, 3]).unwrap();
        assert_eq!(rho.images(), &IntMatrix::from_rows(&[[2, 4, 0, 3]]));
    }

    #[test]
    fn trivial_target() {
        let rho = AbelianHom::to_cyclic(1, &[1, 1, 1, 1]).unwrap();
        assert_eq!(rho.source_rank(), 4);
        assert!(is_surjective(&rho));
        assert_eq!(
            image_index(&rho, &IntMatrix::identity(4)).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn reduction_between_levels() {
        let hi = AbelianHom::to_cyclic(9, &[1, 0, 0, 0]).unwrap();
        let lo = AbelianHom::to_cyclic(3, &[1, 0, 0, 0]).unwrap();
        assert!(hi.reduces_to(&lo));
        let wrong = AbelianHom::to_cyclic(3, &[2, 0, 0, 0]).unwrap();
        assert!(!hi.reduces_to(&wrong));
        let not_divisor = AbelianHom::to_cyclic(4, &[1, 0, 0, 0]).unwrap();
        assert!(!hi.reduces_to(&not_divisor));
    }

    #[test]
    fn matrix_json_uses_decimal_strings() {
        let m = IntMatrix::from_rows(&[[1, -2], [3, 4]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","-2"],["3","4"]]"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let mixed: IntMatrix = serde_json::from_str(r#"[[1, "-2"], ["3", 4]]"#).unwrap();
        assert_eq!(mixed, m);
        assert!(serde_json::from_str::<IntMatrix>(r#"[[1], [2, 3]]"#).is_err());
    }
}
