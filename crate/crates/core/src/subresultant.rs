//! Subresultants of several univariate polynomials.
//!
//! For a system `F = (F0, ..., Fn)` and an index `δ = (δ1, ..., δn)` with
//! `|δ| <= d0`, the δ-subresultant is the determinant polynomial of the
//! coefficient matrix of the shifted blocks
//!
//! ```text
//! x^(δ0-1) F0, ..., x^0 F0,  x^(δ1-1) F1, ..., x^0 F1,  ...,  x^(δn-1) Fn, ..., x^0 Fn
//! ```
//!
//! where `δ0 = c(δ) - d0` if `c(δ) >= d0` and `1` otherwise, `c(δ)` being the
//! column count of the coefficient matrix of the blocks for `F1..Fn`. Blocks
//! with `δi = 0` are empty; for `δ = 0` we take `c(δ) = 0`, so `R_0 = F0`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::detpoly::{build_cm, dp_linear_combination, dp_matrix};
use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};

/// A multi-index `(δ1, ..., δn)` of naturals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DeltaIndex(Vec<usize>);

impl DeltaIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        DeltaIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DeltaIndex(vec![0; n])
    }

    /// `(k, ..., k)` of length `n`.
    pub fn constant(n: usize, k: usize) -> Self {
        DeltaIndex(vec![k; n])
    }

    /// The unit vector `e_j` of length `n`, with `e_0` the zero vector.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        if j > 0 {
            v[j - 1] = 1;
        }
        DeltaIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `|δ| = δ1 + ... + δn`.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &DeltaIndex) -> DeltaIndex {
        assert_eq!(self.len(), other.len(), "index length mismatch");
        DeltaIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + e_j`; `j = 0` returns a copy.
    pub fn plus_unit(&self, j: usize) -> DeltaIndex {
        let mut v = self.0.clone();
        if j > 0 {
            v[j - 1] += 1;
        }
        DeltaIndex(v)
    }

    /// `self - e_j`, or `None` when the `j`-th entry is already zero.
    pub fn minus_unit(&self, j: usize) -> Option<DeltaIndex> {
        let mut v = self.0.clone();
        if j > 0 {
            v[j - 1] = v[j - 1].checked_sub(1)?;
        }
        Some(DeltaIndex(v))
    }

    /// `self - other`, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &DeltaIndex) -> Option<DeltaIndex> {
        assert_eq!(self.len(), other.len(), "index length mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DeltaIndex)
    }

    pub fn min_entry(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }
}

impl fmt::Display for DeltaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for DeltaIndex {
    type Err = std::num::ParseIntError;

    /// Parses `3,2`, `(3,2)` or `3 2`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DeltaIndex)
    }
}

impl From<Vec<usize>> for DeltaIndex {
    fn from(v: Vec<usize>) -> Self {
        DeltaIndex(v)
    }
}

/// `F = (F0, ..., Fn)` with exact degrees, `d0` minimal and `F0` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    polys: Vec<Poly>,
    degrees: Vec<usize>,
}

impl PolySystem {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::InvalidSystem(format!(
                "need at least two polynomials, got {}",
                polys.len()
            )));
        }
        let degrees = polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.degree()
                    .map_err(|_| Error::InvalidSystem(format!("F{i} is zero")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = (1..degrees.len()).find(|&i| degrees[i] < degrees[0]) {
            return Err(Error::InvalidSystem(format!(
                "deg F{i} = {} is below deg F0 = {}",
                degrees[i], degrees[0]
            )));
        }
        if !polys[0].is_monic() {
            return Err(Error::InvalidSystem("F0 must be monic".into()));
        }
        Ok(PolySystem { polys, degrees })
    }

    /// Like [`PolySystem::new`], additionally checking the stated degrees.
    pub fn with_degrees(polys: Vec<Poly>, degrees: &[usize]) -> Result<Self> {
        let system = PolySystem::new(polys)?;
        if system.degrees != degrees {
            return Err(Error::InvalidSystem(format!(
                "stated degrees {:?} disagree with actual degrees {:?}",
                degrees, system.degrees
            )));
        }
        Ok(system)
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn d0(&self) -> usize {
        self.degrees[0]
    }

    /// Number of polynomials after `F0`.
    pub fn n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn check_delta(&self, delta: &DeltaIndex) -> Result<()> {
        check_delta(self.n(), self.d0(), delta)
    }
}

fn check_delta(n: usize, d0: usize, delta: &DeltaIndex) -> Result<()> {
    if delta.len() != n {
        return Err(Error::DeltaLength {
            delta: delta.clone(),
            expected: n,
            got: delta.len(),
        });
    }
    if delta.weight() > d0 {
        return Err(Error::DeltaOutOfRange {
            delta: delta.clone(),
            weight: delta.weight(),
            d0,
        });
    }
    Ok(())
}

/// All `δ ∈ ℕ^n` with `|δ| <= d0`, by weight descending, then lexicographically descending.
pub fn enumerate_index_set(d0: usize, n: usize) -> Vec<DeltaIndex> {
    assert!(n >= 1, "index set needs n >= 1");
    fn compositions(
        total: usize,
        parts: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<DeltaIndex>,
    ) {
        if parts == 1 {
            prefix.push(total);
            out.push(DeltaIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for w in (0..=d0).rev() {
        compositions(w, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `c(δ)`: columns of the coefficient matrix of the nonempty blocks for `F1..Fn`.
fn block_columns(degrees: &[usize], delta: &DeltaIndex) -> usize {
    degrees[1..]
        .iter()
        .zip(delta.entries())
        .filter(|(_, &k)| k > 0)
        .map(|(&d, &k)| d + k)
        .max()
        .unwrap_or(0)
}

fn delta0_rule(c: usize, d0: usize) -> usize {
    if c >= d0 {
        c - d0
    } else {
        1
    }
}

pub fn col_count(system: &PolySystem, delta: &DeltaIndex) -> Result<usize> {
    system.check_delta(delta)?;
    Ok(block_columns(system.degrees(), delta))
}

pub fn delta0(system: &PolySystem, delta: &DeltaIndex) -> Result<usize> {
    Ok(delta0_rule(col_count(system, delta)?, system.d0()))
}

/// `R_δ` together with its principal coefficient and the `δ0` used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubresultantValue {
    pub poly: Poly,
    /// Coefficient of `x^(d0 - |δ|)` in `poly`.
    pub principal: Coeff,
    pub delta0: usize,
}

/// One row of the shifted family: `x^shift * F_poly`.
#[derive(Clone, Copy, Debug)]
struct BlockRow {
    poly: usize,
    shift: usize,
}

fn block_rows(block_sizes: &[usize]) -> Vec<BlockRow> {
    block_sizes
        .iter()
        .enumerate()
        .flat_map(|(poly, &size)| (0..size).rev().map(move |shift| BlockRow { poly, shift }))
        .collect()
}

fn validate_polys(polys: &[Poly]) -> Result<Vec<usize>> {
    if polys.len() < 2 {
        return Err(Error::InvalidSystem(format!(
            "need at least two polynomials, got {}",
            polys.len()
        )));
    }
    polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.degree()
                .map_err(|_| Error::InvalidSystem(format!("F{i} is zero")))
        })
        .collect()
}

/// `R_δ` of an arbitrary list of nonzero polynomials `(G0, ..., Gn)`, with
/// `d0 = deg G0` and no ordering or monicity requirement on the degrees.
///
/// This is the form needed when the inputs are themselves subresultants, whose
/// first member typically has the largest degree.
pub fn subresultant_of(polys: &[Poly], delta: &DeltaIndex) -> Result<SubresultantValue> {
    let degrees = validate_polys(polys)?;
    let d0 = degrees[0];
    check_delta(polys.len() - 1, d0, delta)?;
    let d0_block = delta0_rule(block_columns(&degrees, delta), d0);

    let mut sizes = Vec::with_capacity(polys.len());
    sizes.push(d0_block);
    sizes.extend_from_slice(delta.entries());
    let family: Vec<Poly> = block_rows(&sizes)
        .into_iter()
        .map(|r| polys[r.poly].shift(r.shift))
        .collect();
    if family.is_empty() {
        // Only possible when δ0 = 0 and δ = 0, which the rule above excludes.
        return Err(Error::EmptyList);
    }
    let cm = build_cm(&family)?;
    // With |δ| <= d0 the δ0 rule keeps the matrix square or wide.
    debug_assert!(cm.rows() <= cm.cols(), "tall subresultant matrix");
    let poly = dp_matrix(&cm)?;
    let principal = poly.coeff_at(d0 - delta.weight());
    Ok(SubresultantValue {
        poly,
        principal,
        delta0: d0_block,
    })
}

pub fn subresultant(system: &PolySystem, delta: &DeltaIndex) -> Result<SubresultantValue> {
    system.check_delta(delta)?;
    subresultant_of(system.polys(), delta)
}

/// The k-subresultant of two polynomials, with `deg F0 <= deg F1` and `0 <= k <= deg F0`.
///
/// For `k > 0` this is `dp(x^(d1-(d0-k)-1) F0, ..., F0, x^(k-1) F1, ..., F1)`;
/// for `k = 0` (allowed only when `d0 != d1`) it is `lc(F0)^(d1-d0-1) F0`.
/// The returned `delta0` is the size of the `F0` block.
pub fn subres_two(f0: &Poly, f1: &Poly, k: usize) -> Result<SubresultantValue> {
    let d0 = f0
        .degree()
        .map_err(|_| Error::InvalidTwoPoly("F0 is zero".into()))?;
    let d1 = f1
        .degree()
        .map_err(|_| Error::InvalidTwoPoly("F1 is zero".into()))?;
    if d0 > d1 {
        return Err(Error::InvalidTwoPoly(format!(
            "need deg F0 <= deg F1, got {d0} > {d1}"
        )));
    }
    if k > d0 {
        return Err(Error::InvalidTwoPoly(format!(
            "k = {k} exceeds deg F0 = {d0}"
        )));
    }
    if k == 0 {
        if d0 == d1 {
            return Err(Error::InvalidTwoPoly(
                "k = 0 requires deg F0 != deg F1".into(),
            ));
        }
        let lc = f0.leading_coeff()?;
        let scale = num_traits::pow(lc.clone(), d1 - d0 - 1);
        let poly = f0.scale(&scale);
        let principal = poly.coeff_at(d0);
        return Ok(SubresultantValue {
            poly,
            principal,
            delta0: d1 - d0,
        });
    }
    let f0_block = d1 - (d0 - k);
    let rows = block_rows(&[f0_block, k]);
    let family: Vec<Poly> = rows
        .iter()
        .map(|r| if r.poly == 0 { f0 } else { f1 }.shift(r.shift))
        .collect();
    let poly = dp_matrix(&build_cm(&family)?)?;
    let principal = poly.coeff_at(d0 - k);
    Ok(SubresultantValue {
        poly,
        principal,
        delta0: f0_block,
    })
}

/// Cofactors expressing `R_δ` in the ideal generated by `F`:
/// `R_δ = Σ_i Σ_{j < δ_i} c_ij x^j F_i` (block sizes `δ0, δ1, ..., δn`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub delta: DeltaIndex,
    pub delta0: usize,
    /// `coeffs[i][j] = c_ij`; `coeffs[i]` has length equal to the block size of `F_i`.
    pub coeffs: Vec<Vec<Coeff>>,
}

impl IdealDecomposition {
    pub fn coeff(&self, i: usize, j: usize) -> Option<&Coeff> {
        self.coeffs.get(i)?.get(j)
    }

    /// `Σ c_ij x^j F_i`.
    pub fn reconstruct(&self, system: &PolySystem) -> Poly {
        let mut acc = Poly::zero();
        for (block, f) in self.coeffs.iter().zip(system.polys()) {
            for (j, c) in block.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &f.shift(j).scale(c);
                }
            }
        }
        acc
    }
}

pub fn ideal_membership_decompose(
    system: &PolySystem,
    delta: &DeltaIndex,
) -> Result<IdealDecomposition> {
    system.check_delta(delta)?;
    let d0_block = delta0(system, delta)?;
    let mut sizes = vec![d0_block];
    sizes.extend_from_slice(delta.entries());
    let rows = block_rows(&sizes);
    let family: Vec<Poly> = rows
        .iter()
        .map(|r| system.polys()[r.poly].shift(r.shift))
        .collect();
    let cs = dp_linear_combination(&family)?;
    let mut coeffs: Vec<Vec<Coeff>> = sizes.iter().map(|&s| vec![Coeff::zero(); s]).collect();
    for (row, c) in rows.iter().zip(cs) {
        coeffs[row.poly][row.shift] = c;
    }
    Ok(IdealDecomposition {
        delta: delta.clone(),
        delta0: d0_block,
        coeffs,
    })
}

/// `(-1)^(σ_i + 1) r_{δ - e_i}` with `σ_i = δ_i + ... + δ_n`: the predicted
/// value of the cofactor `c_{i, δ_i - 1}` for `i > 0` and `δ_i > 0`.
pub fn predicted_top_cofactor(system: &PolySystem, delta: &DeltaIndex, i: usize) -> Result<Coeff> {
    system.check_delta(delta)?;
    let lowered = match (i, delta.minus_unit(i)) {
        (1.., Some(lowered)) if i <= delta.len() => lowered,
        _ => {
            return Err(Error::InvalidSystem(format!(
                "cofactor prediction needs 1 <= i <= n and δ_i > 0 (i = {i}, δ = {delta})"
            )))
        }
    };
    let sigma: usize = delta.entries()[i - 1..].iter().sum();
    let r = subresultant(system, &lowered)?.principal;
    Ok(if (sigma + 1).is_multiple_of(2) { r } else { -r })
}

/// `r^e` for coefficients.
pub(crate) fn coeff_pow(base: &Coeff, exp: usize) -> Coeff {
    if exp == 0 {
        return Coeff::one();
    }
    num_traits::pow(base.clone(), exp)
}
