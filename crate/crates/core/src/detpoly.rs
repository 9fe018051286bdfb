//! Coefficient matrices and determinant polynomials.
//!
//! For a `p x q` matrix `M` with `p <= q`, the determinant polynomial is
//! `dp(M) = Σ_{0<=j<=q-p} c_j x^j` where `c_j` is the determinant of the first
//! `p-1` columns of `M` followed by column `q-j` (1-based). Its principal
//! coefficient `pcdp(M)` is `c_{q-p}`, the determinant of the leading `p x p`
//! block.
//!
//! Two determinant kernels are provided: fraction-free (Bareiss) elimination,
//! used everywhere, and cofactor expansion, kept as an independent oracle.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};

/// Largest size accepted by [`det_cofactor`].
pub const DEFAULT_COFACTOR_CAP: usize = 10;

/// A dense `rows x cols` matrix of coefficients, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Coeff>,
}

impl CoeffMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Coeff>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must be rows * cols"
        );
        Ok(CoeffMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CoeffMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        CoeffMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(Coeff::from).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![Coeff::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Coeff::one();
        }
        CoeffMatrix::new(n, n, entries)
    }

    /// Rows are the coefficient vectors of `polys`, right-aligned so that the
    /// last column holds constant terms. Zero polynomials give zero rows.
    pub(crate) fn from_polys_with_width(polys: &[Poly], width: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(polys.len() * width);
        for p in polys {
            debug_assert!(p.coeffs().len() <= width);
            for j in 0..width {
                entries.push(p.coeff_at(width - 1 - j));
            }
        }
        CoeffMatrix::new(polys.len(), width, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The submatrix made of the given columns (0-based, in the given order).
    pub fn select_columns(&self, columns: &[usize]) -> CoeffMatrix {
        let mut entries = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                entries.push(self.get(r, c).clone());
            }
        }
        CoeffMatrix {
            rows: self.rows,
            cols: columns.len(),
            entries,
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn to_rows(&self) -> Vec<Vec<Coeff>> {
        self.entries
            .chunks(self.cols)
            .map(<[Coeff]>::to_vec)
            .collect()
    }
}

/// Determinant by fraction-free Gaussian elimination.
///
/// After step `k` every entry of the trailing block is a `(k+1) x (k+1)`
/// minor of the input, so each division by the previous pivot is exact.
pub fn det_bareiss(m: &CoeffMatrix) -> Result<Coeff> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev_pivot = Coeff::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Coeff::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev_pivot);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev_pivot = a[k][k].clone();
    }
    let det = a
        .pop()
        .and_then(|mut row| row.pop())
        .unwrap_or_else(Coeff::one);
    Ok(if negate { -det } else { det })
}

/// Determinant by recursive cofactor expansion, capped at [`DEFAULT_COFACTOR_CAP`].
pub fn det_cofactor(m: &CoeffMatrix) -> Result<Coeff> {
    det_cofactor_capped(m, DEFAULT_COFACTOR_CAP)
}

pub fn det_cofactor_capped(m: &CoeffMatrix, cap: usize) -> Result<Coeff> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows > cap {
        return Err(Error::CofactorCap { size: m.rows, cap });
    }
    let mut cols: Vec<usize> = (0..m.cols).collect();
    Ok(expand(m, 0, &mut cols))
}

// Laplace expansion of rows `row..` over the remaining `cols`.
fn expand(m: &CoeffMatrix, row: usize, cols: &mut Vec<usize>) -> Coeff {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = Coeff::zero();
    for pos in 0..cols.len() {
        let entry = m.get(row, cols[pos]).clone();
        if entry.is_zero() {
            continue;
        }
        let col = cols.remove(pos);
        let minor = expand(m, row + 1, cols);
        cols.insert(pos, col);
        if pos % 2 == 0 {
            acc += entry * minor;
        } else {
            acc -= entry * minor;
        }
    }
    acc
}

fn require_wide(m: &CoeffMatrix) -> Result<()> {
    if m.rows > m.cols {
        return Err(Error::TallMatrix {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

/// The determinant polynomial of a square or wide matrix.
///
/// Each coefficient is computed as an independent minor.
pub fn dp_matrix(m: &CoeffMatrix) -> Result<Poly> {
    require_wide(m)?;
    let (p, q) = (m.rows, m.cols);
    let mut columns: Vec<usize> = (0..p).collect();
    let coeffs = (0..=q - p)
        .map(|j| {
            columns[p - 1] = q - 1 - j;
            det_bareiss(&m.select_columns(&columns))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

/// Principal coefficient of `dp(m)`: the determinant of the leading square block.
pub fn pcdp_matrix(m: &CoeffMatrix) -> Result<Coeff> {
    require_wide(m)?;
    let columns: Vec<usize> = (0..m.rows).collect();
    det_bareiss(&m.select_columns(&columns))
}

fn max_degree(polys: &[Poly]) -> Result<usize> {
    if polys.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut m = 0;
    for (index, p) in polys.iter().enumerate() {
        m = m.max(p.degree().map_err(|_| Error::ZeroInList { index })?);
    }
    Ok(m)
}

/// The coefficient matrix of a list of nonzero polynomials: `t x (m+1)` with
/// `m` the maximal degree, entry `(i, j)` the coefficient of `x^(m+1-j)`
/// (1-based `j`) in the `i`-th polynomial.
pub fn build_cm(polys: &[Poly]) -> Result<CoeffMatrix> {
    let m = max_degree(polys)?;
    CoeffMatrix::from_polys_with_width(polys, m + 1)
}

pub fn dp_list(polys: &[Poly]) -> Result<Poly> {
    dp_matrix(&build_cm(polys)?)
}

pub fn pcdp_list(polys: &[Poly]) -> Result<Coeff> {
    pcdp_matrix(&build_cm(polys)?)
}

/// Coefficients `c_i` with `dp(P) = Σ c_i P_i`.
///
/// `c_i` is `1` for a single polynomial, `0` when `P_i` strictly dominates all
/// other degrees, and otherwise `(-1)^(t+i) pcdp(P without P_i)` (1-based `i`).
pub fn dp_linear_combination(polys: &[Poly]) -> Result<Vec<Coeff>> {
    let m = max_degree(polys)?;
    let t = polys.len();
    if t > m + 1 {
        return Err(Error::TallMatrix {
            rows: t,
            cols: m + 1,
        });
    }
    if t == 1 {
        return Ok(vec![Coeff::one()]);
    }
    let degrees: Vec<usize> = polys.iter().map(|p| p.coeffs().len() - 1).collect();
    (0..t)
        .map(|i| {
            let dominant = (0..t).filter(|&j| j != i).all(|j| degrees[j] < degrees[i]);
            if dominant {
                return Ok(Coeff::zero());
            }
            let rest: Vec<Poly> = polys
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let pc = pcdp_list(&rest)?;
            // 1-based exponent t + (i + 1)
            Ok(if (t + i + 1).is_multiple_of(2) {
                pc
            } else {
                -pc
            })
        })
        .collect()
}

/// Which reduction of `dp(P, Q)` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockLemmaCase {
    /// `m2 = m1 - t1 + 1`: `dp(P, Q) = dp(dp(P), Q)`.
    NestedDp,
    /// `m2 = m1 - t1`, or `m2 < m1 - t1` with a single `Q`: `dp(P, Q) = pcdp(P) dp(Q)`.
    PrincipalTimesDp,
    /// Every other admissible shape: `dp(P, Q) = 0`.
    Vanishing,
}

impl BlockLemmaCase {
    pub fn number(self) -> u8 {
        match self {
            BlockLemmaCase::NestedDp => 1,
            BlockLemmaCase::PrincipalTimesDp => 2,
            BlockLemmaCase::Vanishing => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLemmaReport {
    pub case: BlockLemmaCase,
    /// `dp(P, Q)` computed directly on the concatenated list.
    pub lhs: Poly,
    /// The reduced form prescribed by `case`.
    pub rhs: Poly,
    pub equal: bool,
}

/// Classifies `(P, Q)` and evaluates both sides of the block reduction of
/// `dp(P, Q)`.
///
/// Requires `m1 >= m2`, `t1 + t2 <= m1 + 1` and `m2 <= m1 - t1 + 1`, where
/// `m` is the maximal degree and `t` the length of each list.
pub fn check_block_lemma(p: &[Poly], q: &[Poly]) -> Result<BlockLemmaReport> {
    let m1 = max_degree(p)?;
    let m2 = max_degree(q)?;
    let (t1, t2) = (p.len(), q.len());
    if m1 < m2 {
        return Err(Error::LemmaPrecondition(format!(
            "max degree of P ({m1}) is below max degree of Q ({m2})"
        )));
    }
    if t1 + t2 > m1 + 1 {
        return Err(Error::LemmaPrecondition(format!(
            "t1 + t2 = {} exceeds m1 + 1 = {}",
            t1 + t2,
            m1 + 1
        )));
    }
    // t1 <= m1 here, so m1 - t1 cannot underflow.
    let edge = m1 - t1;
    if m2 > edge + 1 {
        return Err(Error::LemmaPrecondition(format!(
            "m2 = {m2} exceeds m1 - t1 + 1 = {}",
            edge + 1
        )));
    }

    let concatenated: Vec<Poly> = p.iter().chain(q).cloned().collect();
    let lhs = dp_list(&concatenated)?;

    let (case, rhs) = if m2 == edge + 1 {
        // dp(P) may have a lower degree (or vanish); keep the full width m2 + 1.
        let mut rows = vec![dp_list(p)?];
        rows.extend(q.iter().cloned());
        let m = CoeffMatrix::from_polys_with_width(&rows, m2 + 1)?;
        (BlockLemmaCase::NestedDp, dp_matrix(&m)?)
    } else if m2 == edge || t2 == 1 {
        let scale = pcdp_list(p)?;
        (BlockLemmaCase::PrincipalTimesDp, dp_list(q)?.scale(&scale))
    } else {
        (BlockLemmaCase::Vanishing, Poly::zero())
    };

    let equal = lhs == rhs;
    Ok(BlockLemmaReport {
        case,
        lhs,
        rhs,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::InstanceRng;
    use proptest::prelude::*;

    fn mat(rows: &[Vec<i64>]) -> CoeffMatrix {
        CoeffMatrix::from_i64_rows(rows).unwrap()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn c(v: i64) -> Coeff {
        Coeff::from(v)
    }

    #[test]
    fn small_determinants() {
        let m = mat(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(det_bareiss(&m).unwrap(), c(5));
        assert_eq!(det_cofactor(&m).unwrap(), c(5));
        let id = CoeffMatrix::identity(4).unwrap();
        assert_eq!(det_bareiss(&id).unwrap(), c(1));
        assert_eq!(det_cofactor(&mat(&[vec![-7]])).unwrap(), c(-7));
        let singular = mat(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]);
        assert_eq!(det_cofactor(&singular).unwrap(), c(0));
        assert_eq!(det_bareiss(&singular).unwrap(), c(0));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = mat(&[vec![0, 1, 2], vec![3, 0, 1], vec![4, 5, 0]]);
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        assert_eq!(det_bareiss(&m).unwrap(), c(4 + 2 * 15));
    }

    #[test]
    fn random_6x6_kernels_agree() {
        let mut rng = InstanceRng::new(6);
        let m = rng.matrix(6, 6, 9);
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn kernel_errors() {
        let wide = mat(&[vec![1, 2, 3]]);
        assert_eq!(
            det_bareiss(&wide),
            Err(Error::NonSquare { rows: 1, cols: 3 })
        );
        assert!(matches!(det_cofactor(&wide), Err(Error::NonSquare { .. })));
        let big = CoeffMatrix::identity(11).unwrap();
        assert_eq!(
            det_cofactor(&big),
            Err(Error::CofactorCap { size: 11, cap: 10 })
        );
        assert_eq!(det_cofactor_capped(&big, 11).unwrap(), c(1));
        assert_eq!(CoeffMatrix::new(0, 3, vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn dp_of_square_is_constant_det() {
        let m = mat(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(dp_matrix(&m).unwrap(), p(&[5]));
        assert_eq!(pcdp_matrix(&m).unwrap(), c(5));
    }

    #[test]
    fn dp_of_single_row_rebuilds_polynomial() {
        let m = mat(&[vec![4, -2, 7]]);
        assert_eq!(dp_matrix(&m).unwrap(), p(&[7, -2, 4]));
        assert_eq!(pcdp_matrix(&m).unwrap(), c(4));
    }

    #[test]
    fn dp_rejects_tall() {
        let m = mat(&[vec![1], vec![2]]);
        assert_eq!(dp_matrix(&m), Err(Error::TallMatrix { rows: 2, cols: 1 }));
        assert_eq!(pcdp_matrix(&m), Err(Error::TallMatrix { rows: 2, cols: 1 }));
    }

    // The 3x5 layout: c_j = det[M1 M2 M_{5-j}].
    fn three_by_five_check(entry: impl Fn(i64, i64) -> i64) {
        let rows: Vec<Vec<i64>> = (1..=3)
            .map(|r| (1..=5).map(|col| entry(r, col)).collect())
            .collect();
        let m = mat(&rows);
        let minor = |last: usize| {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|row| vec![row[0], row[1], row[last - 1]])
                .collect();
            det_cofactor(&mat(&sub)).unwrap()
        };
        let expected = Poly::from_coeffs(vec![minor(5), minor(4), minor(3)]);
        assert_eq!(dp_matrix(&m).unwrap(), expected);
        assert_eq!(pcdp_matrix(&m).unwrap(), minor(3));
    }

    #[test]
    fn three_by_five_minors() {
        // m_rc = r + c has rank 2, so every 3x3 minor vanishes.
        three_by_five_check(|r, c| r + c);
        three_by_five_check(|r, c| r * r * c + c * c * c - 2 * r);
        three_by_five_check(|r, c| (r * 7 + c * 13) % 11 - 5);
    }

    #[test]
    fn build_cm_aligns_on_max_degree() {
        // P1, P2 of degree 3 and P3 of degree 2 with b_ij = 10 i + j.
        let b = |i: i64, deg: i64| -> Poly {
            Poly::from_coeffs((0..=deg).map(|j| c(10 * i + j)).collect())
        };
        let list = [b(0, 3), b(1, 3), b(2, 2)];
        let m = build_cm(&list).unwrap();
        assert_eq!(
            m,
            mat(&[vec![3, 2, 1, 0], vec![13, 12, 11, 10], vec![0, 22, 21, 20],])
        );
        // b22 sits in column 2 (1-based).
        assert_eq!(m.get(2, 1), &c(22));
        // dp = c1 x + c0 with the displayed minors.
        let c1 = det_cofactor(&mat(&[vec![3, 2, 1], vec![13, 12, 11], vec![0, 22, 21]])).unwrap();
        let c0 = det_cofactor(&mat(&[vec![3, 2, 0], vec![13, 12, 10], vec![0, 22, 20]])).unwrap();
        assert_eq!(
            dp_list(&list).unwrap(),
            Poly::from_coeffs(vec![c0, c1.clone()])
        );
        assert_eq!(pcdp_list(&list).unwrap(), c1);
    }

    #[test]
    fn build_cm_small_cases() {
        assert_eq!(build_cm(&[p(&[1, 0, 1])]).unwrap(), mat(&[vec![1, 0, 1]]));
        assert_eq!(
            build_cm(&[p(&[0, 1]), p(&[1])]).unwrap(),
            mat(&[vec![1, 0], vec![0, 1]])
        );
        assert_eq!(build_cm(&[]), Err(Error::EmptyList));
        assert_eq!(
            build_cm(&[p(&[1]), Poly::zero()]),
            Err(Error::ZeroInList { index: 1 })
        );
    }

    #[test]
    fn dp_list_single_is_identity() {
        let f = p(&[3, -1, 0, 8]);
        assert_eq!(dp_list(std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn dp_list_square_family() {
        let fam = [p(&[0, -1, 0, 1]), p(&[-1, 0, 1]), p(&[1, 1]), p(&[5])];
        let m = build_cm(&fam).unwrap();
        assert!(m.is_square());
        assert_eq!(
            dp_list(&fam).unwrap(),
            Poly::constant(det_cofactor(&m).unwrap())
        );
        assert_eq!(
            dp_list(&[p(&[1]), p(&[2])]),
            Err(Error::TallMatrix { rows: 2, cols: 1 })
        );
    }

    #[test]
    fn two_poly_family_matches_displayed_minors() {
        // F0 = a03 x^3 + .. + a00, F1 = a14 x^4 + .. + a10, family
        // (x^2 F0, x F0, F0, x F1, F1) laid out as a 5x6 matrix.
        let a0 = [5i64, -3, 2, 1];
        let a1 = [-4i64, 7, 0, 3, 2];
        let f0 = p(&a0);
        let f1 = p(&a1);
        let fam = [
            f0.shift(2),
            f0.shift(1),
            f0.clone(),
            f1.shift(1),
            f1.clone(),
        ];
        let x_coeff = mat(&[
            vec![a0[3], a0[2], a0[1], a0[0], 0],
            vec![0, a0[3], a0[2], a0[1], a0[0]],
            vec![0, 0, a0[3], a0[2], a0[1]],
            vec![a1[4], a1[3], a1[2], a1[1], a1[0]],
            vec![0, a1[4], a1[3], a1[2], a1[1]],
        ]);
        let const_coeff = mat(&[
            vec![a0[3], a0[2], a0[1], a0[0], 0],
            vec![0, a0[3], a0[2], a0[1], 0],
            vec![0, 0, a0[3], a0[2], a0[0]],
            vec![a1[4], a1[3], a1[2], a1[1], 0],
            vec![0, a1[4], a1[3], a1[2], a1[0]],
        ]);
        let expected = Poly::from_coeffs(vec![
            det_cofactor(&const_coeff).unwrap(),
            det_cofactor(&x_coeff).unwrap(),
        ]);
        assert_eq!(dp_list(&fam).unwrap(), expected);
    }

    #[test]
    fn linear_combination_cases() {
        assert_eq!(dp_linear_combination(&[p(&[1, 2, 3])]).unwrap(), vec![c(1)]);
        // P1 strictly dominates: its coefficient is 0.
        let fam = [p(&[1, 2, 3, 4]), p(&[5, 6]), p(&[7, 8, 9])];
        let cs = dp_linear_combination(&fam).unwrap();
        assert_eq!(cs[0], c(0));
        let combo = fam
            .iter()
            .zip(&cs)
            .fold(Poly::zero(), |acc, (f, ci)| &acc + &f.scale(ci));
        assert_eq!(combo, dp_list(&fam).unwrap());
    }

    #[test]
    fn linear_combination_degrees_4_4_3() {
        let mut rng = InstanceRng::new(443);
        for _ in 0..10 {
            let fam: Vec<Poly> = [4, 4, 3].iter().map(|&d| rng.poly(d, 20)).collect();
            let cs = dp_linear_combination(&fam).unwrap();
            let combo = fam
                .iter()
                .zip(&cs)
                .fold(Poly::zero(), |acc, (f, ci)| &acc + &f.scale(ci));
            assert_eq!(combo, dp_list(&fam).unwrap());
        }
    }

    #[test]
    fn block_lemma_examples() {
        let x3 = p(&[0, 0, 0, 1]);
        let x2 = p(&[0, 0, 1]);
        // m1 = 3, t1 = 2: m2 = 2 is the nested case, m2 = 1 = m1 - t1 is not.
        let r = check_block_lemma(&[x3.clone(), x2.clone()], &[p(&[1, 0, 1])]).unwrap();
        assert_eq!(r.case, BlockLemmaCase::NestedDp);
        assert!(r.equal);
        let r = check_block_lemma(&[x3.clone(), x2.clone()], &[p(&[1, 1])]).unwrap();
        assert_eq!(r.case, BlockLemmaCase::PrincipalTimesDp);
        assert!(r.equal);

        let r = check_block_lemma(&[x3.clone(), x2.clone()], &[p(&[7])]).unwrap();
        assert_eq!(r.case, BlockLemmaCase::PrincipalTimesDp);
        assert!(r.equal);

        let x5 = p(&[0, 0, 0, 0, 0, 1]);
        let x4 = p(&[0, 0, 0, 0, 1]);
        let r = check_block_lemma(&[x5, x4, x3], &[p(&[0, 1]), p(&[1])]).unwrap();
        assert_eq!(r.case, BlockLemmaCase::Vanishing);
        assert!(r.lhs.is_zero());
        assert!(r.equal);
    }

    #[test]
    fn block_lemma_rejects_out_of_range() {
        // m2 = 3 > m1 - t1 + 1 = 2
        let e = check_block_lemma(&[p(&[0, 0, 0, 1]), p(&[1, 1])], &[p(&[0, 0, 0, 1])]);
        assert!(matches!(e, Err(Error::LemmaPrecondition(_))));
        // t1 + t2 > m1 + 1
        let e = check_block_lemma(&[p(&[0, 1]), p(&[1])], &[p(&[1])]);
        assert!(matches!(e, Err(Error::LemmaPrecondition(_))));
        // m1 < m2
        let e = check_block_lemma(&[p(&[1])], &[p(&[0, 1])]);
        assert!(matches!(e, Err(Error::LemmaPrecondition(_))));
        assert_eq!(check_block_lemma(&[], &[p(&[1])]), Err(Error::EmptyList));
    }

    #[test]
    fn block_lemma_constructed_instances() {
        let mut rng = InstanceRng::new(2024);
        for case in [
            BlockLemmaCase::NestedDp,
            BlockLemmaCase::PrincipalTimesDp,
            BlockLemmaCase::Vanishing,
        ] {
            for _ in 0..25 {
                let (p, q) = rng.block_lemma_instance(case);
                let r = check_block_lemma(&p, &q).unwrap();
                assert_eq!(r.case, case);
                assert!(r.equal, "case {}: {} vs {}", case.number(), r.lhs, r.rhs);
            }
        }
    }

    fn arb_square() -> impl Strategy<Value = CoeffMatrix> {
        (1usize..=8).prop_flat_map(|n| {
            prop::collection::vec(-99i64..=99, n * n).prop_map(move |e| {
                CoeffMatrix::new(n, n, e.into_iter().map(Coeff::from).collect()).unwrap()
            })
        })
    }

    fn arb_wide() -> impl Strategy<Value = CoeffMatrix> {
        (1usize..=5, 0usize..=3).prop_flat_map(|(p, extra)| {
            let q = p + extra;
            prop::collection::vec(-20i64..=20, p * q).prop_map(move |e| {
                CoeffMatrix::new(p, q, e.into_iter().map(Coeff::from).collect()).unwrap()
            })
        })
    }

    fn arb_family() -> impl Strategy<Value = Vec<Poly>> {
        prop::collection::vec(
            (0usize..=6).prop_flat_map(|d| {
                (
                    prop::collection::vec(-20i64..=20, d),
                    1i64..=20,
                    any::<bool>(),
                )
                    .prop_map(|(mut c, lead, neg)| {
                        c.push(if neg { -lead } else { lead });
                        Poly::from_i64s(&c)
                    })
            }),
            1..=4,
        )
        .prop_filter("cm must be square or wide", |fam| {
            let m = fam.iter().map(|p| p.degree().unwrap()).max().unwrap();
            fam.len() <= m + 1
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn kernels_agree(m in arb_square()) {
            prop_assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        }

        #[test]
        fn dp_degree_and_principal(m in arb_wide()) {
            let dp = dp_matrix(&m).unwrap();
            let bound = m.cols() - m.rows();
            if let Ok(deg) = dp.degree() {
                prop_assert!(deg <= bound);
            }
            prop_assert_eq!(dp.coeff_at(bound), pcdp_matrix(&m).unwrap());
        }

        #[test]
        fn column_swap_negates(m in arb_wide(), a in 0usize..4, b in 0usize..4) {
            prop_assume!(m.rows() >= 3);
            let (a, b) = (a % (m.rows() - 1), b % (m.rows() - 1));
            prop_assume!(a != b);
            let mut swapped = m.clone();
            swapped.swap_columns(a, b);
            prop_assert_eq!(dp_matrix(&swapped).unwrap(), -dp_matrix(&m).unwrap());
        }

        #[test]
        fn linear_combination_reconstructs(fam in arb_family()) {
            let cs = dp_linear_combination(&fam).unwrap();
            let combo = fam.iter().zip(&cs).fold(Poly::zero(), |acc, (f, ci)| &acc + &f.scale(ci));
            prop_assert_eq!(combo, dp_list(&fam).unwrap());
        }

    }
}
