//! Exact rational scalars and the sparse linear algebra (solve, kernel,
//! image, quotient) that every other module rests on.
//!
//! The scalar type [`Rat`] wraps an arbitrary-precision rational kept in
//! lowest terms with positive denominator.  Elimination uses plain rational
//! Gaussian elimination with deterministic smallest-index pivoting, so
//! kernel bases and quotient sections are reproducible across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number.  `gcd(|numerator|, denominator) = 1` and
/// `denominator > 0` hold after every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced.  Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse; panics on zero (pivots are checked first).
    pub fn recip(&self) -> Self {
        Rat(self.0.recip())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("malformed rational '{s}'"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(p, q)))
            }
        }
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

/// `dst += c * src`, entrywise.
pub fn vec_add_scaled(dst: &mut [Rat], src: &[Rat], c: &Rat) {
    debug_assert_eq!(dst.len(), src.len());
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += &(s * c);
        }
    }
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

/// A sparse matrix over the rationals.  No stored entry is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = zero_vec(self.rows);
        for ((r, c), a) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] += &(a * &v[*c]);
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        // group rhs by row for the sparse product
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Rat)>> = BTreeMap::new();
        for ((r, c), v) in &rhs.entries {
            rhs_rows.entry(*r).or_default().push((*c, v));
        }
        for ((r, k), a) in &self.entries {
            if let Some(row) = rhs_rows.get(k) {
                for (c, b) in row {
                    out.add_to(*r, *c, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Rows as sparse maps, for elimination.
    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Rat>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows
    }
}

/// Reduced row echelon form of a list of sparse rows.  Pivot search is by
/// smallest column index, then smallest row index.  Returns the reduced
/// rows (pivot entries normalised to 1) and the pivot column of each.
fn rref(mut rows: Vec<BTreeMap<usize, Rat>>, cols: usize) -> (Vec<BTreeMap<usize, Rat>>, Vec<usize>) {
    let mut pivots: Vec<usize> = Vec::new();
    let mut done: Vec<BTreeMap<usize, Rat>> = Vec::new();
    for col in 0..cols {
        let Some(idx) = rows.iter().position(|r| r.get(&col).is_some_and(|v| !v.is_zero())) else {
            continue;
        };
        let mut pivot_row = rows.swap_remove(idx);
        let inv = pivot_row[&col].recip();
        for v in pivot_row.values_mut() {
            *v = &*v * &inv;
        }
        pivot_row.retain(|_, v| !v.is_zero());
        for other in rows.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = other.get(&col).cloned() {
                if f.is_zero() {
                    continue;
                }
                for (c, v) in &pivot_row {
                    let delta = v * &f;
                    let slot = other.entry(*c).or_insert_with(Rat::zero);
                    *slot -= &delta;
                }
                other.retain(|_, v| !v.is_zero());
            }
        }
        done.push(pivot_row);
        pivots.push(col);
        if rows.is_empty() {
            break;
        }
    }
    (done, pivots)
}

/// A particular solution together with an echelon-normalised kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

/// Solves `m x = rhs` exactly.  Returns `None` when the system is
/// inconsistent.  The particular solution sets every free variable to zero;
/// the kernel basis has one vector per free column, with a 1 in that column.
pub fn solve_linear(m: &SparseMatrix, rhs: &[Rat]) -> Result<Option<LinearSolution>> {
    if rhs.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows, right-hand side has length {}",
            m.rows(),
            rhs.len()
        )));
    }
    let n = m.cols();
    // eliminate the augmented system; a pivot in the right-hand-side column
    // witnesses inconsistency
    let mut aug_rows = m.sparse_rows();
    for (row, b) in aug_rows.iter_mut().zip(rhs) {
        if !b.is_zero() {
            row.insert(n, b.clone());
        }
    }
    let (full_reduced, full_pivots) = rref(aug_rows, n + 1);
    if full_pivots.contains(&n) {
        return Ok(None);
    }
    let mut particular = zero_vec(n);
    for (row, col) in full_reduced.iter().zip(&full_pivots) {
        particular[*col] = row.get(&n).cloned().unwrap_or_else(Rat::zero);
    }
    let pivot_set: BTreeSet<usize> = full_pivots.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = zero_vec(n);
        v[free] = Rat::one();
        for (row, col) in full_reduced.iter().zip(&full_pivots) {
            if let Some(coef) = row.get(&free) {
                v[*col] = -coef;
            }
        }
        kernel.push(v);
    }
    Ok(Some(LinearSolution { particular, kernel }))
}

/// Echelon-normalised basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rat>> {
    let n = m.cols();
    let (reduced, pivots) = rref(m.sparse_rows(), n);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = zero_vec(n);
        v[free] = Rat::one();
        for (row, col) in reduced.iter().zip(&pivots) {
            if let Some(coef) = row.get(&free) {
                v[*col] = -coef;
            }
        }
        basis.push(v);
    }
    basis
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m.sparse_rows(), m.cols()).1.len()
}

/// Dimension of `ambient / span(gens)` together with a section: the ambient
/// basis indices whose classes form a basis of the quotient (the non-pivot
/// columns of the echelon form, smallest indices first).
pub fn quotient_dimension(ambient_dim: usize, gens: &[Vec<Rat>]) -> Result<(usize, Vec<usize>)> {
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        if g.len() != ambient_dim {
            return Err(Error::Dimension(format!(
                "generator has length {}, ambient dimension is {}",
                g.len(),
                ambient_dim
            )));
        }
        let row: BTreeMap<usize, Rat> =
            g.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        rows.push(row);
    }
    let (_, pivots) = rref(rows, ambient_dim);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let section: Vec<usize> = (0..ambient_dim).filter(|i| !pivot_set.contains(i)).collect();
    Ok((ambient_dim - pivots.len(), section))
}

/// An incrementally built reduced echelon subspace, used for membership
/// tests and for reducing vectors modulo the subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    // rows normalised with pivot 1, mutually reduced; sorted by pivot
    rows: Vec<(usize, BTreeMap<usize, Rat>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// The normalised rows as dense vectors, sorted by pivot column.
    pub fn dense_rows(&self) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|(_, row)| {
                let mut v = zero_vec(self.ncols);
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Residue of `v` modulo the subspace; zero at every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ncols);
        let mut out = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = out[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (c, rv) in row {
                out[*c] -= &(rv * &f);
            }
        }
        out
    }

    /// Inserts `v`; returns whether the subspace grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let reduced = self.reduce(v);
        let Some(pivot) = reduced.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = reduced[pivot].recip();
        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, x) in reduced.iter().enumerate() {
            if !x.is_zero() {
                row.insert(c, x * &inv);
            }
        }
        // keep existing rows reduced against the new one
        for (_, other) in self.rows.iter_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                for (c, rv) in &row {
                    let delta = rv * &f;
                    let slot = other.entry(*c).or_insert_with(Rat::zero);
                    *slot -= &delta;
                }
                other.retain(|_, v| !v.is_zero());
            }
        }
        self.rows.push((pivot, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        vec_is_zero(&self.reduce(v))
    }
}

// ---------------------------------------------------------------------------
// Small dense helpers for square systems (gauge elements, basis changes).
// ---------------------------------------------------------------------------

pub fn dense_identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub fn dense_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![zero_vec(m); n];
    for i in 0..n {
        for (p, apv) in a[i].iter().enumerate() {
            if apv.is_zero() {
                continue;
            }
            vec_add_scaled(&mut out[i], &b[p], apv);
        }
    }
    out
}

pub fn dense_mul_vec(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            let mut acc = Rat::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn dense_inverse(a: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return Err(Error::InvalidInput("matrix is singular".into()));
        };
        work.swap(col, p);
        let inv = work[col][col].recip();
        for v in work[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = work[r][col].clone();
            if f.is_zero() {
                continue;
            }
            let pivot_row = work[col].clone();
            vec_add_scaled(&mut work[r], &pivot_row, &-f);
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: usize, cols: usize, data: &[(usize, usize, Rat)]) -> SparseMatrix {
        let mut out = SparseMatrix::new(rows, cols);
        for (r, c, v) in data {
            out.set(*r, *c, v.clone());
        }
        out
    }

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(Rat::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rat::from_int(7).to_string(), "7");
        assert_eq!("4/6".parse::<Rat>().unwrap(), Rat::new(2, 3));
        assert_eq!("-5".parse::<Rat>().unwrap(), Rat::from_int(-5));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn rational_product_inverse_randomised() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = rng.gen_range(-40i64..40);
            let q = rng.gen_range(1i64..40);
            if p == 0 {
                continue;
            }
            let a = Rat::new(p, q);
            let b = Rat::new(q, p);
            assert!((a * b).is_one());
        }
    }

    #[test]
    fn solve_identity_case() {
        let a = m(1, 1, &[(0, 0, Rat::one())]);
        let sol = solve_linear(&a, &[Rat::zero()]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![Rat::zero()]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let a = m(1, 2, &[(0, 0, Rat::one()), (0, 1, Rat::one())]);
        let sol = solve_linear(&a, &[Rat::one()]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![Rat::one(), Rat::zero()]);
        assert_eq!(sol.kernel.len(), 1);
        // kernel vector proportional to (1, -1)
        let k = &sol.kernel[0];
        assert!((&k[0] + &k[1]).is_zero() && !k[0].is_zero());
    }

    #[test]
    fn solve_rational_division() {
        let a = m(1, 1, &[(0, 0, Rat::from_int(2))]);
        let sol = solve_linear(&a, &[Rat::one()]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![Rat::new(1, 2)]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(2, 1, &[(0, 0, Rat::one()), (1, 0, Rat::one())]);
        assert!(solve_linear(&a, &[Rat::zero(), Rat::one()]).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = m(2, 1, &[]);
        assert!(solve_linear(&a, &[Rat::zero()]).is_err());
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(kernel_basis(&SparseMatrix::new(2, 2)).len(), 2);
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(
            2,
            2,
            &[
                (0, 0, Rat::one()),
                (0, 1, Rat::from_int(2)),
                (1, 0, Rat::from_int(2)),
                (1, 1, Rat::from_int(4)),
            ],
        );
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1): 1*v0 + 2*v1 = 0
        assert!((&k[0][0] + &(&Rat::from_int(2) * &k[0][1])).is_zero());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_dimension(3, &[]).unwrap(), (3, vec![0, 1, 2]));
        let full = vec![unit_vec(2, 0), unit_vec(2, 1)];
        assert_eq!(quotient_dimension(2, &full).unwrap().0, 0);
        let gens = vec![
            vec![Rat::one(), Rat::one(), Rat::zero()],
            vec![Rat::from_int(2), Rat::from_int(2), Rat::zero()],
        ];
        let (dim, section) = quotient_dimension(3, &gens).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(section, vec![1, 2]);
    }

    #[test]
    fn quotient_plus_rank_is_ambient() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let ambient = rng.gen_range(1..6);
            let count = rng.gen_range(0..5);
            let gens: Vec<Vec<Rat>> = (0..count)
                .map(|_| (0..ambient).map(|_| Rat::from_int(rng.gen_range(-3i64..4))).collect())
                .collect();
            let mut mat = SparseMatrix::new(count.max(1), ambient);
            for (r, g) in gens.iter().enumerate() {
                for (c, v) in g.iter().enumerate() {
                    mat.set(r, c, v.clone());
                }
            }
            let (q, _) = quotient_dimension(ambient, &gens).unwrap();
            assert_eq!(q + rank(&mat), ambient);
        }
    }

    #[test]
    fn solve_replay_randomised() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let mut a = SparseMatrix::new(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.6) {
                        a.set(r, c, Rat::new(rng.gen_range(-4i64..5), rng.gen_range(1i64..4)));
                    }
                }
            }
            let x: Vec<Rat> = (0..cols).map(|_| Rat::from_int(rng.gen_range(-3i64..4))).collect();
            let rhs = a.mul_vec(&x).unwrap();
            let sol = solve_linear(&a, &rhs).unwrap().expect("constructed system is solvable");
            assert_eq!(a.mul_vec(&sol.particular).unwrap(), rhs);
            for k in &sol.kernel {
                assert!(vec_is_zero(&a.mul_vec(k).unwrap()));
            }
        }
    }

    #[test]
    fn echelon_reduction() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[Rat::one(), Rat::one(), Rat::zero()]));
        assert!(!e.insert(&[Rat::from_int(2), Rat::from_int(2), Rat::zero()]));
        assert!(e.insert(&[Rat::zero(), Rat::one(), Rat::one()]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[Rat::one(), Rat::zero(), -Rat::one()]));
        assert!(!e.contains(&[Rat::one(), Rat::zero(), Rat::zero()]));
    }

    #[test]
    fn dense_inverse_roundtrip() {
        let a = vec![
            vec![Rat::one(), Rat::from_int(2)],
            vec![Rat::zero(), Rat::new(1, 3)],
        ];
        let inv = dense_inverse(&a).unwrap();
        assert_eq!(dense_mul(&a, &inv), dense_identity(2));
        let singular = vec![vec![Rat::one(), Rat::one()], vec![Rat::one(), Rat::one()]];
        assert!(dense_inverse(&singular).is_err());
    }
}
