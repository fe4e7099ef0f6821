//! Arbitrary-precision integer matrices and Smith normal form.
//!
//! Every cohomology computation in this crate bottoms out in exact
//! unimodular reduction of integer matrices, so overflow is never
//! acceptable: all entries are [`BigInt`].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_concat(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Diagonal matrix of the given size with the listed leading entries.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            assert!(i < rows && i < cols);
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Kronecker product with an identity block: each scalar entry a_ij
    /// becomes a_ij * I_k. Used to extend a cell-level coboundary to
    /// coefficient tuples.
    pub fn kron_identity(&self, k: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows * k, self.cols * k);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v.is_zero() {
                    continue;
                }
                for t in 0..k {
                    m.set(r * k + t, c * k + t, v.clone());
                }
            }
        }
        m
    }

    /// Submatrix of the listed rows (in order), all columns.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Submatrix of the listed columns (in order), all rows.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix::from_columns(self.rows, cols.iter().map(|&c| self.column(c)).collect())
    }
}

trait ConcatRows {
    fn into_concat(self) -> Vec<BigInt>;
}

impl ConcatRows for Vec<Vec<BigInt>> {
    fn into_concat(self) -> Vec<BigInt> {
        self.into_iter().flatten().collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " ")?;
            for c in 0..self.cols {
                write!(f, " {}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Result of Smith normal form: U * M * V = S with U, V unimodular and
/// S diagonal with a divisibility chain d_1 | d_2 | ... , d_i >= 0.
///
/// Inverses of the transforms are tracked during the reduction so that
/// callers can change basis in both directions without re-solving.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct SnfState {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.s.cols() {
            let x = self.s.get(a, c).clone();
            let y = self.s.get(b, c).clone();
            self.s.set(a, c, y);
            self.s.set(b, c, x);
        }
        for c in 0..self.u.cols() {
            let x = self.u.get(a, c).clone();
            let y = self.u.get(b, c).clone();
            self.u.set(a, c, y);
            self.u.set(b, c, x);
        }
        // (swap of rows)^-1 = swap of columns of u_inv
        for r in 0..self.u_inv.rows() {
            let x = self.u_inv.get(r, a).clone();
            let y = self.u_inv.get(r, b).clone();
            self.u_inv.set(r, a, y);
            self.u_inv.set(r, b, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.s.rows() {
            let x = self.s.get(r, a).clone();
            let y = self.s.get(r, b).clone();
            self.s.set(r, a, y);
            self.s.set(r, b, x);
        }
        for r in 0..self.v.rows() {
            let x = self.v.get(r, a).clone();
            let y = self.v.get(r, b).clone();
            self.v.set(r, a, y);
            self.v.set(r, b, x);
        }
        for c in 0..self.v_inv.cols() {
            let x = self.v_inv.get(a, c).clone();
            let y = self.v_inv.get(b, c).clone();
            self.v_inv.set(a, c, y);
            self.v_inv.set(b, c, x);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.s.cols() {
            let v = self.s.get(dst, c) - q * self.s.get(src, c);
            self.s.set(dst, c, v);
        }
        for c in 0..self.u.cols() {
            let v = self.u.get(dst, c) - q * self.u.get(src, c);
            self.u.set(dst, c, v);
        }
        // inverse op: col[src] += q * col[dst] on u_inv
        for r in 0..self.u_inv.rows() {
            let v = self.u_inv.get(r, src) + q * self.u_inv.get(r, dst);
            self.u_inv.set(r, src, v);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.s.rows() {
            let v = self.s.get(r, dst) - q * self.s.get(r, src);
            self.s.set(r, dst, v);
        }
        for r in 0..self.v.rows() {
            let v = self.v.get(r, dst) - q * self.v.get(r, src);
            self.v.set(r, dst, v);
        }
        for c in 0..self.v_inv.cols() {
            let v = self.v_inv.get(src, c) + q * self.v_inv.get(dst, c);
            self.v_inv.set(src, c, v);
        }
    }

    /// col[dst] += col[src]
    fn col_add(&mut self, dst: usize, src: usize) {
        let minus_one = -BigInt::one();
        self.col_sub(dst, src, &minus_one);
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.s.cols() {
            let v = -self.s.get(r, c);
            self.s.set(r, c, v);
        }
        for c in 0..self.u.cols() {
            let v = -self.u.get(r, c);
            self.u.set(r, c, v);
        }
        for rr in 0..self.u_inv.rows() {
            let v = -self.u_inv.get(rr, r);
            self.u_inv.set(rr, r, v);
        }
    }

    /// Minimal-|entry| pivot in the trailing submatrix starting at t,
    /// ties broken by lowest (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for r in t..self.s.rows() {
            for c in t..self.s.cols() {
                let v = self.s.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, r, c)),
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }
}

/// Smith normal form of an arbitrary (possibly empty) integer matrix.
///
/// The products U*M*V = S and U*U^-1 = I are re-verified exactly before
/// returning; a failure here would indicate a bug, not bad input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut st = SnfState {
        s: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        let Some((pr, pc)) = st.find_pivot(t) else {
            break;
        };
        st.swap_rows(t, pr);
        st.swap_cols(t, pc);
        // Clear row t and column t; pivot may move as remainders shrink.
        loop {
            let mut dirty = false;
            for r in (t + 1)..st.s.rows() {
                if !st.s.get(r, t).is_zero() {
                    let q = st.s.get(r, t) / st.s.get(t, t);
                    st.row_sub(r, t, &q);
                    if !st.s.get(r, t).is_zero() {
                        // remainder is strictly smaller; promote it
                        st.swap_rows(t, r);
                        dirty = true;
                    }
                }
            }
            for c in (t + 1)..st.s.cols() {
                if !st.s.get(t, c).is_zero() {
                    let q = st.s.get(t, c) / st.s.get(t, t);
                    st.col_sub(c, t, &q);
                    if !st.s.get(t, c).is_zero() {
                        st.swap_cols(t, c);
                        dirty = true;
                    }
                }
            }
            let row_clear = ((t + 1)..st.s.rows()).all(|r| st.s.get(r, t).is_zero());
            let col_clear = ((t + 1)..st.s.cols()).all(|c| st.s.get(t, c).is_zero());
            if !dirty && row_clear && col_clear {
                break;
            }
        }
        // Enforce divisibility of the trailing block by the pivot.
        let pivot = st.s.get(t, t).clone();
        let mut offender = None;
        'scan: for r in (t + 1)..st.s.rows() {
            for c in (t + 1)..st.s.cols() {
                if !(st.s.get(r, c) % &pivot).is_zero() {
                    offender = Some(c);
                    break 'scan;
                }
            }
        }
        if let Some(c) = offender {
            st.col_add(t, c);
            continue; // redo position t with the new column mixed in
        }
        if st.s.get(t, t).is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..n).take_while(|&i| !st.s.get(i, i).is_zero()).count();
    debug_assert!(verify_snf(m, &st));
    assert!(
        st.u.mul(m).mul(&st.v) == st.s,
        "SNF internal check failed: U*M*V != S"
    );
    SmithDecomposition {
        u: st.u,
        s: st.s,
        v: st.v,
        u_inv: st.u_inv,
        v_inv: st.v_inv,
        rank,
    }
}

fn verify_snf(m: &IntMatrix, st: &SnfState) -> bool {
    if st.u.mul(&st.u_inv) != IntMatrix::identity(m.rows()) {
        return false;
    }
    if st.v.mul(&st.v_inv) != IntMatrix::identity(m.cols()) {
        return false;
    }
    let n = m.rows().min(m.cols());
    for i in 1..n {
        let prev = st.s.get(i - 1, i - 1);
        let cur = st.s.get(i, i);
        if prev.is_zero() {
            if !cur.is_zero() {
                return false;
            }
        } else if !(cur % prev).is_zero() {
            return false;
        }
    }
    true
}

/// Integer solutions x of M x = b, if any.
pub fn solve(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let n = snf.s.rows().min(snf.s.cols());
    let mut y = vec![BigInt::zero(); snf.s.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < n && !snf.s.get(i, i).is_zero() {
            let d = snf.s.get(i, i);
            if !(ubi % d).is_zero() {
                return None;
            }
            y[i] = ubi / d;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis of the integer kernel of M (columns of V past the rank).
pub fn kernel_basis(snf: &SmithDecomposition) -> Vec<Vec<BigInt>> {
    (snf.rank()..snf.s.cols())
        .map(|c| snf.v.column(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf_diag(m: &IntMatrix) -> Vec<BigInt> {
        smith_normal_form(m).diagonal()
    }

    #[test]
    fn snf_two_by_two() {
        // gcd of entries is 2 and d1*d2 = |det| = 8, so diag(2, 4)
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(snf_diag(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let d = smith_normal_form(&id);
        assert_eq!(d.s, id);
        let z = IntMatrix::zeros(2, 3);
        let d = smith_normal_form(&z);
        assert!(d.s.is_zero());
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn snf_empty() {
        let m = IntMatrix::zeros(0, 0);
        let d = smith_normal_form(&m);
        assert_eq!(d.rank(), 0);
        let m = IntMatrix::zeros(3, 0);
        let d = smith_normal_form(&m);
        assert_eq!(d.s.rows(), 3);
    }

    #[test]
    fn snf_oracle_small() {
        // oracle: d1 = gcd of all entries, product of d_i = gcd of k x k minors
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 10], &[2, 8, 6], &[0, 12, 4]]);
        let d = smith_normal_form(&m);
        let diag = d.diagonal();
        assert_eq!(diag[0], BigInt::from(2)); // gcd of entries
        for i in 1..diag.len() {
            assert!((&diag[i] % &diag[i - 1]).is_zero());
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let d = smith_normal_form(&m);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = solve(&d, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve(&d, &[BigInt::from(1), BigInt::zero()]).is_none());

        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3]]);
        let d = smith_normal_form(&m);
        let ker = kernel_basis(&d);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.mul_vec(k).iter().all(Zero::is_zero));
        }
    }

    proptest! {
        #[test]
        fn snf_invariants_random(rows in 0usize..5, cols in 0usize..5,
                                 seed in proptest::collection::vec(-20i64..20, 0..25)) {
            let mut m = IntMatrix::zeros(rows, cols);
            let mut it = seed.iter().cycle();
            for r in 0..rows {
                for c in 0..cols {
                    if let Some(&v) = it.next() {
                        m.set(r, c, BigInt::from(v));
                    }
                }
            }
            let d = smith_normal_form(&m);
            prop_assert_eq!(d.u.mul(&m).mul(&d.v), d.s.clone());
            prop_assert_eq!(d.u.mul(d.u_inv()), IntMatrix::identity(rows));
            prop_assert_eq!(d.v.mul(d.v_inv()), IntMatrix::identity(cols));
            let diag = d.diagonal();
            for i in 1..diag.len() {
                prop_assert!((&diag[i] % &diag[i-1]).is_zero());
            }
        }
    }
}
