//! Abelian covering towers of a cusped ball quotient.
//!
//! The base is described homologically: a free abelian group `Z^k` (the
//! fundamental group of the compactification), the sublattices carried by
//! each boundary curve, and the kernels of fibrations onto curves. A level
//! of a tower is a homomorphism `rho: Z^k -> G` onto a finite abelian deck
//! group. For such a cover
//!
//! * the degree is `|G|`,
//! * the cusps over a boundary curve `C` number `[G : rho(pi_1(C))]`,
//! * if a fibration's kernel lies in `ker(rho)`, the first betti number of
//!   the cover is bounded by (generators of the fiber group) + (rank of the
//!   fibration target), uniformly along the tower.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{
    bigint_string, bigint_string_vec, image_index, is_surjective, kernel_contains,
    smith_normal_form, AbelianHom, FiniteAbelianGroup, IntMatrix,
};
use crate::primes::is_prime;

/// A boundary curve and the sublattice of `Z^k` its fundamental group spans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspData {
    pub name: String,
    pub sublattice: IntMatrix,
}

impl CuspData {
    pub fn new(name: impl Into<String>, sublattice: IntMatrix) -> Result<Self> {
        let name = name.into();
        if smith_normal_form(&sublattice).rank() != sublattice.cols() {
            return Err(Error::DependentGenerators(name));
        }
        Ok(CuspData { name, sublattice })
    }
}

/// A fibration of the base onto a curve, recorded by the kernel it induces
/// on `Z^k` and the topology of its general fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationData {
    pub name: String,
    pub kernel_sublattice: IntMatrix,
    pub target_rank: u64,
    pub fiber_genus: u64,
    pub fiber_punctures: u64,
}

impl FibrationData {
    pub fn new(
        name: impl Into<String>,
        kernel_sublattice: IntMatrix,
        target_rank: u64,
        fiber_genus: u64,
        fiber_punctures: u64,
    ) -> Result<Self> {
        let fib = FibrationData {
            name: name.into(),
            kernel_sublattice,
            target_rank,
            fiber_genus,
            fiber_punctures,
        };
        fib.validate()?;
        Ok(fib)
    }

    fn validate(&self) -> Result<()> {
        let reason = if self.target_rank < 1 {
            Some("target rank must be at least 1")
        } else if 2 * self.fiber_genus + self.fiber_punctures < 2 {
            Some("fiber must be hyperbolic or parabolic (2g + b - 1 >= 1)")
        } else {
            None
        };
        match reason {
            Some(r) => Err(Error::Fibration {
                name: self.name.clone(),
                reason: r.into(),
            }),
            None => Ok(()),
        }
    }

    /// Size of a generating set for the fiber's fundamental group.
    pub fn fiber_generators(&self) -> u64 {
        let (g, b) = (self.fiber_genus, self.fiber_punctures);
        if b == 0 {
            2 * g
        } else {
            2 * g + b - 1
        }
    }
}

/// Betti number bound for any finite cover whose group contains the
/// fibration kernel: fiber generators plus the rank of the target.
pub fn b1_bound_for(fib: &FibrationData) -> u64 {
    fib.fiber_generators() + fib.target_rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSpace {
    pub name: String,
    pub ambient_rank: usize,
    pub cusps: Vec<CuspData>,
    pub fibrations: Vec<FibrationData>,
}

impl BaseSpace {
    pub fn new(
        name: impl Into<String>,
        ambient_rank: usize,
        cusps: Vec<CuspData>,
        fibrations: Vec<FibrationData>,
    ) -> Result<Self> {
        let name = name.into();
        for c in &cusps {
            if c.sublattice.rows() != ambient_rank {
                return Err(Error::Shape(format!(
                    "cusp {} has {} rows, ambient rank is {ambient_rank}",
                    c.name,
                    c.sublattice.rows()
                )));
            }
        }
        for f in &fibrations {
            if f.kernel_sublattice.rows() != ambient_rank {
                return Err(Error::Shape(format!(
                    "fibration {} has {} rows, ambient rank is {ambient_rank}",
                    f.name,
                    f.kernel_sublattice.rows()
                )));
            }
        }
        Ok(BaseSpace {
            name,
            ambient_rank,
            cusps,
            fibrations,
        })
    }

    /// Hirzebruch's ball quotient: `E x E` (`E` the elliptic curve with
    /// `j = 0`) blown up at the origin, minus the proper transforms of
    /// `C_0, C_inf, C_1, C_zeta`. `pi_1 = Z^4 = <v1, v2, v3, v4>`.
    pub fn hirzebruch() -> Self {
        let span = |cols: &[[i64; 4]]| IntMatrix::from_columns(4, cols);
        let cusps = vec![
            ("C0", span(&[[1, 0, 0, 0], [0, 1, 0, 0]])),
            ("Cinf", span(&[[0, 0, 1, 0], [0, 0, 0, 1]])),
            ("C1", span(&[[1, 0, 1, 0], [0, 1, 0, 1]])),
            ("Czeta", span(&[[1, 0, 0, 1], [0, 1, -1, 1]])),
        ]
        .into_iter()
        .map(|(n, m)| CuspData::new(n, m).expect("independent generators"))
        .collect();
        let fibrations = vec![
            // projection to the first factor; fiber is E minus 3 points
            FibrationData::new("PSI", span(&[[0, 0, 1, 0], [0, 0, 0, 1]]), 2, 1, 3),
            // the sum map [z, w] -> z + w; fiber meets all four curves
            FibrationData::new("SUM", span(&[[1, 0, -1, 0], [0, 1, 0, -1]]), 2, 1, 4),
        ]
        .into_iter()
        .map(|f| f.expect("valid fibration"))
        .collect();
        BaseSpace::new("hirzebruch", 4, cusps, fibrations).expect("consistent ranks")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub base: BaseSpace,
    pub levels: Vec<AbelianHom>,
}

impl TowerSpec {
    pub fn new(base: BaseSpace, levels: Vec<AbelianHom>) -> Result<Self> {
        for (i, rho) in levels.iter().enumerate() {
            if rho.source_rank() != base.ambient_rank {
                return Err(Error::Shape(format!(
                    "level {} has {} generator images, base has rank {}",
                    i + 1,
                    rho.source_rank(),
                    base.ambient_rank
                )));
            }
        }
        Ok(TowerSpec { base, levels })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TowerSpecJson = serde_json::from_str(text)?;
        raw.into_spec()
    }

    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(serde_json::to_string_pretty(&value)?)
    }

    /// True when each level is the reduction of the next one.
    pub fn is_compatible(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].reduces_to(&w[0]))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn cyclic_tower(p: u64, depth: u32, images: [i64; 4]) -> Result<TowerSpec> {
    let levels = (1..=depth)
        .map(|j| {
            let order = BigInt::from(p).pow(j);
            let target = FiniteAbelianGroup::cyclic(order)?;
            AbelianHom::new(target, IntMatrix::from_rows(&[images]))
        })
        .collect::<Result<Vec<_>>>()?;
    TowerSpec::new(BaseSpace::hirzebruch(), levels)
}

/// Levels `Z^4 -> Z/p^j`, `v1 -> 1`, other generators trivial.
pub fn build_a_tower(p: u64, depth: u32) -> Result<TowerSpec> {
    check_prime(p)?;
    cyclic_tower(p, depth, [1, 0, 0, 0])
}

/// Levels `Z^4 -> Z/p^j`, every generator sent to 1. Needs `p` odd.
pub fn build_b_tower(p: u64, depth: u32) -> Result<TowerSpec> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrimeForB(p));
    }
    cyclic_tower(p, depth, [1, 1, 1, 1])
}

/// Same homomorphisms as [`build_b_tower`] without the parity check, for
/// exhibiting what goes wrong at `p = 2`.
pub fn build_b_tower_unchecked(p: u64, depth: u32) -> Result<TowerSpec> {
    check_prime(p)?;
    cyclic_tower(p, depth, [1, 1, 1, 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B1Bound {
    Bounded(u64),
    UnboundedByMethod,
}

impl fmt::Display for B1Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            B1Bound::Bounded(b) => write!(f, "{b}"),
            B1Bound::UnboundedByMethod => f.write_str("UNBOUNDED_BY_METHOD"),
        }
    }
}

impl Serialize for B1Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            B1Bound::Bounded(b) => s.serialize_u64(*b),
            B1Bound::UnboundedByMethod => s.serialize_str("UNBOUNDED_BY_METHOD"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspCount {
    pub name: String,
    pub count: BigInt,
}

fn serialize_cusp_counts<S: Serializer>(
    counts: &[CuspCount],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(counts.len()))?;
    for c in counts {
        map.serialize_entry(&c.name, &c.count.to_string())?;
    }
    map.end()
}

fn serialize_opt_bigint<S: Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Analysis of one level. `total_cusps` is `None` for a disconnected cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub deck_group: FiniteAbelianGroup,
    #[serde(with = "bigint_string")]
    pub degree: BigInt,
    pub connected: bool,
    #[serde(serialize_with = "serialize_cusp_counts")]
    pub cusp_multiplicities: Vec<CuspCount>,
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub total_cusps: Option<BigInt>,
    pub b1_bound: B1Bound,
    pub factoring_fibration: Option<String>,
}

impl LevelReport {
    pub fn multiplicity(&self, cusp: &str) -> Option<&BigInt> {
        self.cusp_multiplicities
            .iter()
            .find(|c| c.name == cusp)
            .map(|c| &c.count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub base: String,
    pub levels: Vec<LevelReport>,
}

/// Degree, connectivity, cusp counts and betti bound of the cover `rho`.
pub fn analyze_level(base: &BaseSpace, rho: &AbelianHom) -> Result<LevelReport> {
    if rho.source_rank() != base.ambient_rank {
        return Err(Error::Shape(format!(
            "homomorphism has {} generator images, base has rank {}",
            rho.source_rank(),
            base.ambient_rank
        )));
    }
    let connected = is_surjective(rho);
    let cusp_multiplicities = base
        .cusps
        .iter()
        .map(|c| {
            Ok(CuspCount {
                name: c.name.clone(),
                count: image_index(rho, &c.sublattice)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total_cusps = connected.then(|| cusp_multiplicities.iter().map(|c| &c.count).sum());

    let mut best: Option<(u64, &FibrationData)> = None;
    for fib in &base.fibrations {
        if kernel_contains(rho, &fib.kernel_sublattice)? {
            let bound = b1_bound_for(fib);
            if best.is_none_or(|(b, _)| bound < b) {
                best = Some((bound, fib));
            }
        }
    }
    let (b1_bound, factoring_fibration) = match best {
        Some((b, fib)) => (B1Bound::Bounded(b), Some(fib.name.clone())),
        None => (B1Bound::UnboundedByMethod, None),
    };

    Ok(LevelReport {
        level: 0,
        deck_group: rho.target().clone(),
        degree: rho.target().order(),
        connected,
        cusp_multiplicities,
        total_cusps,
        b1_bound,
        factoring_fibration,
    })
}

pub fn analyze_tower(spec: &TowerSpec) -> Result<TowerReport> {
    let levels = spec
        .levels
        .par_iter()
        .enumerate()
        .map(|(i, rho)| {
            let mut r = analyze_level(&spec.base, rho)?;
            r.level = i + 1;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerReport {
        base: spec.base.name.clone(),
        levels,
    })
}

/// One level of a cyclic tower of covers of a surface-fibred base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CTowerLevel {
    pub level: u64,
    #[serde(with = "bigint_string")]
    pub degree: BigInt,
    #[serde(with = "bigint_string")]
    pub b1_surface: BigInt,
    #[serde(with = "bigint_string")]
    pub total_cusps: BigInt,
}

/// Levels `j = 1..=depth` of the `Z/j` covers pulled back from a genus-`g`
/// surface. Each cusp is described by the divisor `d` with parabolic image
/// `d Z` in `Z`; it splits into `gcd(d, j)` cusps (`j` when `d = 0`).
pub fn c_tower_report(genus: u64, cusp_divisors: &[u64], depth: u64) -> Result<Vec<CTowerLevel>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let euler = BigInt::from(2 * genus - 2);
    Ok((1..=depth)
        .map(|j| {
            let jj = BigInt::from(j);
            let total_cusps = cusp_divisors
                .iter()
                .map(|&d| BigInt::from(if d == 0 { j } else { d.gcd(&j) }))
                .sum();
            CTowerLevel {
                level: j,
                degree: jj.clone(),
                b1_surface: BigInt::from(2) + &jj * &euler,
                total_cusps,
            }
        })
        .collect())
}

// JSON shape of a tower spec

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BaseJson {
    Named(String),
    Custom(CustomBaseJson),
}

#[derive(Serialize, Deserialize)]
struct CustomBaseJson {
    #[serde(default = "default_base_name")]
    name: String,
    rank: usize,
    cusps: Vec<CuspData>,
    #[serde(default)]
    fibrations: Vec<FibrationData>,
}

fn default_base_name() -> String {
    "custom".into()
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    #[serde(with = "bigint_string_vec")]
    invariant_factors: Vec<BigInt>,
    images: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct TowerSpecJson {
    base: BaseJson,
    levels: Vec<LevelJson>,
}

impl TowerSpecJson {
    fn into_spec(self) -> Result<TowerSpec> {
        let base = match self.base {
            BaseJson::Named(n) if n.eq_ignore_ascii_case("hirzebruch") => BaseSpace::hirzebruch(),
            BaseJson::Named(n) => return Err(Error::Malformed(format!("unknown base {n:?}"))),
            BaseJson::Custom(c) => {
                let cusps = c
                    .cusps
                    .into_iter()
                    .map(|cd| CuspData::new(cd.name, cd.sublattice))
                    .collect::<Result<Vec<_>>>()?;
                for f in &c.fibrations {
                    f.validate()?;
                }
                BaseSpace::new(c.name, c.rank, cusps, c.fibrations)?
            }
        };
        let k = base.ambient_rank;
        let levels = self
            .levels
            .into_iter()
            .map(|l| {
                let target = FiniteAbelianGroup::new(l.invariant_factors)?;
                AbelianHom::new(target, l.images.with_empty_cols(k))
            })
            .collect::<Result<Vec<_>>>()?;
        TowerSpec::new(base, levels)
    }
}

impl Serialize for TowerSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let base = if self.base == BaseSpace::hirzebruch() {
            BaseJson::Named(self.base.name.clone())
        } else {
            BaseJson::Custom(CustomBaseJson {
                name: self.base.name.clone(),
                rank: self.base.ambient_rank,
                cusps: self.base.cusps.clone(),
                fibrations: self.base.fibrations.clone(),
            })
        };
        let levels = self
            .levels
            .iter()
            .map(|rho| LevelJson {
                invariant_factors: rho.target().invariant_factors().to_vec(),
                images: rho.images().clone(),
            })
            .collect();
        TowerSpecJson { base, levels }.serialize(s)
    }
}

/// Cusp total summed over the base's boundary curves for the trivial cover.
pub fn base_cusp_count(base: &BaseSpace) -> BigInt {
    let trivial = AbelianHom::new(
        FiniteAbelianGroup::trivial(),
        IntMatrix::zeros(0, base.ambient_rank),
    )
    .expect("trivial hom");
    analyze_level(base, &trivial)
        .ok()
        .and_then(|r| r.total_cusps)
        .unwrap_or_else(BigInt::zero)
}

/// Map from cusp name to multiplicity, for callers that want lookups.
pub fn multiplicity_map(report: &LevelReport) -> BTreeMap<String, BigInt> {
    report
        .cusp_multiplicities
        .iter()
        .map(|c| (c.name.clone(), c.count.clone()))
        .collect()
}
