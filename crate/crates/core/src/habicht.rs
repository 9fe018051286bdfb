//! The generalized Habicht identity
//!
//! ```text
//! r_{w0}(F)^ε · R_u(F) = R_v(R_{w0}(F), R_{w0+e1}(F), ..., R_{w0+en}(F))
//! ```
//!
//! with `v = (k, ..., k) + e_i`, `u = w0 + v` and `ε = |v + e_i| + k - 2`,
//! for `k >= 1` and `0 <= i <= n`. Both sides are evaluated exactly at an
//! integer specialization of `F` and compared coefficient by coefficient.
//!
//! The outer subresultant is taken of the cluster as-is: its first member has
//! degree `d0 - |w0|` and the others `d0 - |w0| - 1`, so no ordering or
//! monicity is imposed on the outer system. When a cluster member's principal
//! coefficient vanishes at the specialization, the outer matrix changes shape
//! and the instance is reported as degenerate instead of being compared.

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};
use crate::subresultant::{
    coeff_pow, enumerate_index_set, subresultant, subresultant_of, DeltaIndex, PolySystem,
};

/// One instance of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HabichtParams {
    pub w0: DeltaIndex,
    pub k: usize,
    pub i: usize,
    /// `w_j = w0 + e_j` for `j = 1..=n`.
    pub w: Vec<DeltaIndex>,
    pub v: DeltaIndex,
    pub u: DeltaIndex,
    pub epsilon: usize,
}

impl HabichtParams {
    pub fn n(&self) -> usize {
        self.w0.len()
    }

    /// `(w0, w1, ..., wn)`.
    pub fn cluster(&self) -> Vec<DeltaIndex> {
        std::iter::once(self.w0.clone())
            .chain(self.w.iter().cloned())
            .collect()
    }
}

/// Derives `(w1..wn, v, u, ε)` from `(w0, k, i)` for degree vector `d`.
pub fn derive_params(
    degrees: &[usize],
    w0: &DeltaIndex,
    k: usize,
    i: usize,
) -> Result<HabichtParams> {
    let n = degrees
        .len()
        .checked_sub(1)
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            Error::ParamsInapplicable(format!("need at least two degrees, got {}", degrees.len()))
        })?;
    if w0.len() != n {
        return Err(Error::DeltaLength {
            delta: w0.clone(),
            expected: n,
            got: w0.len(),
        });
    }
    if k == 0 {
        return Err(Error::ParamsInapplicable("k must be at least 1".into()));
    }
    if i > n {
        return Err(Error::ParamsInapplicable(format!(
            "i = {i} exceeds n = {n}"
        )));
    }
    let w = (1..=n).map(|j| w0.plus_unit(j)).collect();
    let v = DeltaIndex::constant(n, k).plus_unit(i);
    let u = w0.plus(&v);
    let epsilon = v.plus_unit(i).weight() + k - 2;
    let d0 = degrees[0];
    if u.weight() > d0 {
        return Err(Error::ParamsInapplicable(format!(
            "u = {u} has weight {} > d0 = {d0}",
            u.weight()
        )));
    }
    Ok(HabichtParams {
        w0: w0.clone(),
        k,
        i,
        w,
        v,
        u,
        epsilon,
    })
}

/// All `(w0, k, i)` with `u ∈ P(d0, n)` and `k <= max_k`, ordered by `w0`
/// (weight then lexicographically ascending), then `k`, then `i`.
pub fn all_params(degrees: &[usize], max_k: usize) -> Vec<HabichtParams> {
    let n = degrees.len() - 1;
    let mut w0s = enumerate_index_set(degrees[0], n);
    w0s.reverse();
    let mut out = Vec::new();
    for w0 in &w0s {
        for k in 1..=max_k {
            for i in 0..=n {
                if let Ok(p) = derive_params(degrees, w0, k, i) {
                    out.push(p);
                }
            }
        }
    }
    out
}

pub fn lhs(system: &PolySystem, params: &HabichtParams) -> Result<Poly> {
    let r = subresultant(system, &params.w0)?.principal;
    let ru = subresultant(system, &params.u)?.poly;
    Ok(ru.scale(&coeff_pow(&r, params.epsilon)))
}

struct ClusterEval {
    polys: Vec<Poly>,
    drops: Vec<DeltaIndex>,
}

fn evaluate_cluster(system: &PolySystem, cluster: &[DeltaIndex]) -> Result<ClusterEval> {
    let mut polys = Vec::with_capacity(cluster.len());
    let mut drops = Vec::new();
    for delta in cluster {
        let value = subresultant(system, delta)?;
        if num_traits::Zero::is_zero(&value.principal) {
            drops.push(delta.clone());
        }
        polys.push(value.poly);
    }
    Ok(ClusterEval { polys, drops })
}

/// `R_v` of the cluster `(R_{w0}, R_{w0+e1}, ..., R_{w0+en})`.
///
/// Fails with [`Error::DegreeDrop`] when a cluster member falls below its
/// generic degree.
pub fn rhs(system: &PolySystem, params: &HabichtParams) -> Result<Poly> {
    let cluster = evaluate_cluster(system, &params.cluster())?;
    if !cluster.drops.is_empty() {
        return Err(Error::DegreeDrop(cluster.drops));
    }
    Ok(subresultant_of(&cluster.polys, &params.v)?.poly)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: HabichtParams,
    /// `r_{w0}`, the base of the scale factor.
    pub scale_base: Coeff,
    pub lhs: Poly,
    /// `None` when the instance is degenerate.
    pub rhs: Option<Poly>,
    /// `true` iff `rhs` is present and identical to `lhs`.
    pub equal: bool,
    /// Cluster members whose principal coefficient vanished.
    pub degree_drops: Vec<DeltaIndex>,
}

impl VerificationReport {
    pub fn is_degenerate(&self) -> bool {
        !self.degree_drops.is_empty()
    }
}

fn verify_parts(system: &PolySystem, params: &HabichtParams) -> Result<VerificationReport> {
    let scale_base = subresultant(system, &params.w0)?.principal;
    let ru = subresultant(system, &params.u)?.poly;
    let lhs = ru.scale(&coeff_pow(&scale_base, params.epsilon));
    let cluster = evaluate_cluster(system, &params.cluster())?;
    let rhs = if cluster.drops.is_empty() {
        Some(subresultant_of(&cluster.polys, &params.v)?.poly)
    } else {
        None
    };
    let equal = rhs.as_ref() == Some(&lhs);
    Ok(VerificationReport {
        params: params.clone(),
        scale_base,
        lhs,
        rhs,
        equal,
        degree_drops: cluster.drops,
    })
}

/// Evaluates both sides of the identity for `params` and compares them exactly.
///
/// The fields of `params` are used as given, so perturbed parameters (for
/// negative controls) are evaluated verbatim.
pub fn verify_identity(system: &PolySystem, params: &HabichtParams) -> Result<VerificationReport> {
    if params.n() != system.n() {
        return Err(Error::DeltaLength {
            delta: params.w0.clone(),
            expected: system.n(),
            got: params.n(),
        });
    }
    verify_parts(system, params)
}

/// Checks of the two equation families at cluster offset `j`:
///
/// ```text
/// r_{w0}^((n+1)j-2) R_{w0+j'}     = R_{j'}(cluster)
/// r_{w0}^((n+1)j)   R_{w0+j'+e_i} = R_{j'+e_i}(cluster)    for i = 1..n
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    pub w0: DeltaIndex,
    pub j: usize,
    pub first_exponent: usize,
    pub second_exponent: usize,
    pub first: VerificationReport,
    /// `(i, report)` for every `i > 0` with `w0 + j' + e_i` in range.
    pub second: Vec<(usize, VerificationReport)>,
}

impl InductionReport {
    pub fn all_equal(&self) -> bool {
        self.first.equal && self.second.iter().all(|(_, r)| r.equal)
    }

    pub fn any_degenerate(&self) -> bool {
        self.first.is_degenerate() || self.second.iter().any(|(_, r)| r.is_degenerate())
    }
}

pub fn verify_induction_equations(
    system: &PolySystem,
    w0: &DeltaIndex,
    j: usize,
) -> Result<InductionReport> {
    let n = system.n();
    system.check_delta(w0)?;
    if j == 0 {
        return Err(Error::ParamsInapplicable("j must be at least 1".into()));
    }
    let jp = DeltaIndex::constant(n, j);
    let target = w0.plus(&jp);
    if target.weight() > system.d0() {
        return Err(Error::ParamsInapplicable(format!(
            "w0 + j' = {target} has weight {} > d0 = {}",
            target.weight(),
            system.d0()
        )));
    }
    let first_exponent = (n + 1) * j - 2;
    let second_exponent = (n + 1) * j;
    let w: Vec<DeltaIndex> = (1..=n).map(|t| w0.plus_unit(t)).collect();
    let make = |i: usize, epsilon: usize| {
        let v = jp.plus_unit(i);
        HabichtParams {
            w0: w0.clone(),
            k: j,
            i,
            w: w.clone(),
            u: w0.plus(&v),
            v,
            epsilon,
        }
    };
    let first = verify_parts(system, &make(0, first_exponent))?;
    let mut second = Vec::new();
    for i in 1..=n {
        if target.weight() + 1 > system.d0() {
            break;
        }
        second.push((i, verify_parts(system, &make(i, second_exponent))?));
    }
    Ok(InductionReport {
        w0: w0.clone(),
        j,
        first_exponent,
        second_exponent,
        first,
        second,
    })
}
