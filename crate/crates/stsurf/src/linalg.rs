//! Exact integer and rational linear algebra for the homology computations:
//! Smith normal form with transforms, integer kernels, free quotients,
//! rational solving, and characteristic polynomials.
//!
//! Matrices here are small (at most a few dozen rows), so everything uses
//! `BigInt`/`BigRational` and favors clarity over speed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<BigInt>,
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*x));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.a[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn from_cols(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = IMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = x * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> IMat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = -x.clone();
        }
        out
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x += y;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).to_i64()?);
            }
            out.push(row);
        }
        Some(out)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_f64().unwrap()).collect())
            .collect()
    }

    pub fn trace(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, mut e: u64) -> IMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = IMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Smith normal form: returns `(d, u, v)` with `u * a * v = d`, `u`, `v`
/// unimodular and `d` diagonal with each diagonal entry dividing the next.
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub v: IMat,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let mut d = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    let mut t = 0;
    while t < n {
        // find nonzero pivot of minimal absolute value in d[t.., t..]
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d.get(i, j).is_zero() {
                    match &pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d.get(i, j).abs() < d.get(*pi, *pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        // clear row and column t
        let mut dirty = false;
        for i in (t + 1)..d.rows {
            if !d.get(i, t).is_zero() {
                let q = div_round(d.get(i, t), d.get(t, t));
                if !q.is_zero() {
                    row_sub(&mut d, &mut u, i, t, &q);
                }
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
        }
        for j in (t + 1)..d.cols {
            if !d.get(t, j).is_zero() {
                let q = div_round(d.get(t, j), d.get(t, t));
                if !q.is_zero() {
                    col_sub(&mut d, &mut v, j, t, &q);
                }
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // smaller remainders now exist; re-pivot
        }
        // divisibility: d[t][t] must divide every remaining entry
        let mut fixed = true;
        'outer: for i in (t + 1)..d.rows {
            for j in (t + 1)..d.cols {
                if !(d.get(i, j) % d.get(t, t)).is_zero() {
                    // fold row i into row t and restart this pivot
                    row_add(&mut d, &mut u, t, i);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d.get(t, t).is_negative() {
            negate_row(&mut d, &mut u, t);
        }
        t += 1;
    }
    let rank = (0..n).take_while(|&i| !d.get(i, i).is_zero()).count();
    Snf { d, u, v, rank }
}

fn swap_rows(d: &mut IMat, u: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let x = d.get(a, j).clone();
        let y = d.get(b, j).clone();
        d.set(a, j, y);
        d.set(b, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j).clone();
        let y = u.get(b, j).clone();
        u.set(a, j, y);
        u.set(b, j, x);
    }
}

fn swap_cols(d: &mut IMat, v: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let x = d.get(i, a).clone();
        let y = d.get(i, b).clone();
        d.set(i, a, y);
        d.set(i, b, x);
    }
    for i in 0..v.rows {
        let x = v.get(i, a).clone();
        let y = v.get(i, b).clone();
        v.set(i, a, y);
        v.set(i, b, x);
    }
}

/// row[i] -= q * row[t]
fn row_sub(d: &mut IMat, u: &mut IMat, i: usize, t: usize, q: &BigInt) {
    for j in 0..d.cols {
        let x = d.get(i, j) - q * d.get(t, j);
        d.set(i, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(i, j) - q * u.get(t, j);
        u.set(i, j, x);
    }
}

/// row[t] += row[i]
fn row_add(d: &mut IMat, u: &mut IMat, t: usize, i: usize) {
    for j in 0..d.cols {
        let x = d.get(t, j) + d.get(i, j);
        d.set(t, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(t, j) + u.get(i, j);
        u.set(t, j, x);
    }
}

/// col[j] -= q * col[t]
fn col_sub(d: &mut IMat, v: &mut IMat, j: usize, t: usize, q: &BigInt) {
    for i in 0..d.rows {
        let x = d.get(i, j) - q * d.get(i, t);
        d.set(i, j, x);
    }
    for i in 0..v.rows {
        let x = v.get(i, j) - q * v.get(i, t);
        v.set(i, j, x);
    }
}

fn negate_row(d: &mut IMat, u: &mut IMat, t: usize) {
    for j in 0..d.cols {
        let x = -d.get(t, j).clone();
        d.set(t, j, x);
    }
    for j in 0..u.cols {
        let x = -u.get(t, j).clone();
        u.set(t, j, x);
    }
}

/// Rounded integer division (nearest, ties toward zero keeps remainders small).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the integer kernel lattice of `a` (columns of the result).
/// The kernel of an integer matrix is saturated, so this is also a basis of
/// the rational kernel intersected with the integer lattice.
pub fn kernel_basis(a: &IMat) -> IMat {
    let snf = smith_normal_form(a);
    let cols: Vec<Vec<BigInt>> = (snf.rank..a.cols).map(|j| snf.v.col(j)).collect();
    IMat::from_cols(&cols, a.cols)
}

/// Given a sublattice `sub` (columns, in `Z^r`), return a basis of a free
/// complement representing `Z^r / im(sub)` together with the projection matrix
/// `p` (rows give quotient coordinates of a vector in `Z^r`).  Panics if the
/// quotient has torsion; callers here only ever quotient by saturated images.
pub fn free_quotient(r: usize, sub: &IMat) -> (IMat, IMat) {
    assert_eq!(sub.rows, r);
    let snf = smith_normal_form(sub);
    for i in 0..snf.rank {
        assert!(
            snf.d.get(i, i).abs().is_one(),
            "quotient has torsion; unexpected for these complexes"
        );
    }
    // u * sub * v = d  =>  basis adapted to the sublattice is u^{-1}.
    let uinv = inverse_unimodular(&snf.u);
    let cols: Vec<Vec<BigInt>> = (snf.rank..r).map(|j| uinv.col(j)).collect();
    let basis = IMat::from_cols(&cols, r);
    // projection: last rows of u
    let mut proj = IMat::zeros(r - snf.rank, r);
    for i in snf.rank..r {
        for j in 0..r {
            proj.set(i - snf.rank, j, snf.u.get(i, j).clone());
        }
    }
    (basis, proj)
}

/// Inverse of a unimodular integer matrix, still integral.
pub fn inverse_unimodular(m: &IMat) -> IMat {
    let inv = inverse_rational(m).expect("matrix not invertible");
    let mut out = IMat::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let q = &inv[i][j];
            assert!(q.denom().abs().is_one(), "matrix not unimodular");
            out.set(i, j, q.numer().clone());
        }
    }
    out
}

pub fn inverse_rational(m: &IMat) -> Option<Vec<Vec<Q>>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Q::from_integer(m.get(i, j).clone()))
                .chain((0..n).map(|j| {
                    if i == j {
                        Q::one()
                    } else {
                        Q::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..2 * n {
            a[col][j] = &a[col][j] / &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..2 * n {
                    let x = &a[i][j] - &f * &a[col][j];
                    a[i][j] = x;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve `a x = b` over the rationals; `None` if inconsistent.
/// When the solution is not unique any solution is returned.
pub fn solve_rational(a: &IMat, b: &[BigInt]) -> Option<Vec<Q>> {
    assert_eq!(a.rows, b.len());
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| Q::from_integer(a.get(i, j).clone()))
                .chain(std::iter::once(Q::from_integer(b[i].clone())))
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let piv = (row..rows).find(|&i| !m[i][col].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        m.swap(row, piv);
        let p = m[row][col].clone();
        for j in 0..=cols {
            m[row][j] = &m[row][j] / &p;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=cols {
                    let x = &m[i][j] - &f * &m[row][j];
                    m[i][j] = x;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    // inconsistency check
    for i in row..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Q::zero(); cols];
    for (r, c) in pivots {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Solve expecting an integral solution; panics give way to None.
pub fn solve_integral(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let x = solve_rational(a, b)?;
    let mut out = Vec::with_capacity(x.len());
    for q in x {
        if !q.denom().abs().is_one() {
            return None;
        }
        out.push(q.numer().clone());
    }
    Some(out)
}

/// Characteristic polynomial of a square integer matrix, leading coefficient
/// first (monic), constant term last.  Faddeev-LeVerrier over the rationals.
pub fn char_poly(m: &IMat) -> Vec<BigInt> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mq: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| Q::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut coeffs = vec![Q::one()];
    let mut mk = mq.clone();
    for k in 1..=n {
        let tr: Q = (0..n).map(|i| mk[i][i].clone()).sum();
        let ck = -tr / Q::from_integer(BigInt::from(k as i64));
        coeffs.push(ck.clone());
        if k == n {
            break;
        }
        // mk = m * (mk + ck * I)
        let mut tmp = mk.clone();
        for i in 0..n {
            tmp[i][i] = &tmp[i][i] + &ck;
        }
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if mq[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = &next[i][j] + &mq[i][l] * &tmp[l][j];
                    next[i][j] = x;
                }
            }
        }
        mk = next;
    }
    coeffs
        .into_iter()
        .map(|q| {
            assert!(q.denom().abs().is_one(), "char poly coefficient not integral");
            q.numer().clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity_relation_holds() {
        let a = IMat::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a);
        let lhs = snf.u.mul(&a).mul(&snf.v);
        assert_eq!(lhs, snf.d);
        // classic example: invariant factors 2, 2, 156 up to sign conventions
        let d: Vec<i64> = (0..3).map(|i| snf.d.get(i, i).try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 2, 156]);
    }

    #[test]
    fn kernel_of_simple_map() {
        let a = IMat::from_rows_i64(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 1);
        let v = k.col(0);
        assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        assert_eq!(v[0], v[1]);
        assert_eq!(v[1], v[2]);
    }

    #[test]
    fn char_poly_of_shear() {
        let m = IMat::from_rows_i64(&[vec![1, 1], vec![0, 1]]);
        let cp = char_poly(&m);
        let want: Vec<BigInt> = [1i64, -2, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(cp, want);
    }

    #[test]
    fn solve_and_inverse() {
        let a = IMat::from_rows_i64(&[vec![2, 1], vec![1, 1]]);
        let b = vec![BigInt::from(3), BigInt::from(2)];
        let x = solve_integral(&a, &b).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(1)]);
        let inv = inverse_unimodular(&a);
        assert_eq!(a.mul(&inv), IMat::identity(2));
    }
}
