//! Data model for the algebra `A`, the Artin local base `(B, m)` and the
//! scalar extension `A ⊗ B`, with associativity and locality validation.
//!
//! `A` is a finite-dimensional associative algebra over the rationals given
//! by structure constants; no unit axiom is imposed.  The base `B` is a
//! commutative unital algebra whose basis vector 0 is the unit and whose
//! basis vectors 1..dim span the nilpotent maximal ideal `m`, so that
//! "coefficient at index 0 vanishes" is exactly the condition of lying in
//! `A ⊗ m`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{self, vec_add_scaled, vec_is_zero, zero_vec, Echelon, Rat};

/// Structure-constant presentation of a finite-dimensional associative
/// algebra: `e_i · e_j = Σ_l mul[i][j][l] e_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub mul: Vec<Vec<Vec<Rat>>>,
}

/// First violating triple of the associator scan, with the nonzero
/// associator vector `(e_i e_j) e_l - e_i (e_j e_l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssocWitness {
    pub triple: (usize, usize, usize),
    pub associator: Vec<Rat>,
}

impl FiniteAlgebra {
    pub fn new(basis_names: Vec<String>, mul: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        let dim = basis_names.len();
        let alg = FiniteAlgebra { dim, basis_names, mul };
        alg.check_shape()?;
        Ok(alg)
    }

    fn check_shape(&self) -> Result<()> {
        if self.mul.len() != self.dim
            || self.mul.iter().any(|r| r.len() != self.dim)
            || self.mul.iter().flatten().any(|v| v.len() != self.dim)
        {
            return Err(Error::InvalidAlgebra(format!(
                "structure constants must form a {0}x{0}x{0} array",
                self.dim
            )));
        }
        Ok(())
    }

    pub fn product(&self, i: usize, j: usize) -> &[Rat] {
        &self.mul[i][j]
    }

    /// Bilinear extension of the product to coefficient vectors.
    pub fn product_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_add_scaled(&mut out, &self.mul[i][j], &(xi * yj));
            }
        }
        out
    }

    /// Scans all basis triples; returns the first nonvanishing associator.
    pub fn check_associative(&self) -> Option<AssocWitness> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for l in 0..self.dim {
                    let left = self.product_vec(self.product(i, j), &unit(self.dim, l));
                    let right = self.product_vec(&unit(self.dim, i), self.product(j, l));
                    let assoc: Vec<Rat> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
                    if !vec_is_zero(&assoc) {
                        return Some(AssocWitness { triple: (i, j, l), associator: assoc });
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.check_associative().is_none()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    exact::unit_vec(n, i)
}

/// Which axiom of an Artin local base candidate fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseDefect {
    #[error("structure constants have the wrong shape")]
    BadShape,
    #[error("basis vector 0 is not a two-sided unit (fails at index {0})")]
    NotUnital(usize),
    #[error("product is not commutative at pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("product is not associative at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("indices >= 1 do not span an ideal: product ({0}, {1}) has a unit component")]
    IdealEscape(usize, usize),
    #[error("stored nilpotency index {stored} disagrees with computed index {actual}")]
    NilpotencyMismatch { stored: usize, actual: usize },
}

/// Structure-constant presentation of the base `(B, m)`.  Basis index 0 is
/// the unit; indices `1..dim` span the maximal ideal `m`; `nilpotency` is
/// the smallest `N` with `m^N = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinLocalAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub mul: Vec<Vec<Vec<Rat>>>,
    pub nilpotency: usize,
}

impl ArtinLocalAlgebra {
    /// Builds and fully validates the base.
    pub fn new(basis_names: Vec<String>, mul: Vec<Vec<Vec<Rat>>>, nilpotency: usize) -> Result<Self> {
        let base = ArtinLocalAlgebra { dim: basis_names.len(), basis_names, mul, nilpotency };
        base.validate().map_err(|d| Error::InvalidBase(d.to_string()))?;
        Ok(base)
    }

    /// Builds without validation, for candidate testing.
    pub fn from_parts(basis_names: Vec<String>, mul: Vec<Vec<Vec<Rat>>>, nilpotency: usize) -> Self {
        ArtinLocalAlgebra { dim: basis_names.len(), basis_names, mul, nilpotency }
    }

    /// Verifies commutativity, associativity, unitality, the ideal property
    /// of the span of indices >= 1, and that the stored nilpotency index
    /// matches the one computed by iterated products.
    pub fn validate(&self) -> std::result::Result<(), BaseDefect> {
        let n = self.dim;
        if n == 0
            || self.mul.len() != n
            || self.mul.iter().any(|r| r.len() != n)
            || self.mul.iter().flatten().any(|v| v.len() != n)
        {
            return Err(BaseDefect::BadShape);
        }
        for j in 0..n {
            if self.mul[0][j] != unit(n, j) || self.mul[j][0] != unit(n, j) {
                return Err(BaseDefect::NotUnital(j));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.mul[i][j] != self.mul[j][i] {
                    return Err(BaseDefect::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let left = self.mul_vec(&self.mul[i][j], &unit(n, l));
                    let right = self.mul_vec(&unit(n, i), &self.mul[j][l]);
                    if left != right {
                        return Err(BaseDefect::NotAssociative(i, j, l));
                    }
                }
            }
        }
        for i in 1..n {
            for j in 1..n {
                if !self.mul[i][j][0].is_zero() {
                    return Err(BaseDefect::IdealEscape(i, j));
                }
            }
        }
        let actual = self.computed_nilpotency();
        if actual != self.nilpotency {
            return Err(BaseDefect::NilpotencyMismatch { stored: self.nilpotency, actual });
        }
        Ok(())
    }

    /// Bilinear extension of the base product to coefficient vectors.
    pub fn mul_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_add_scaled(&mut out, &self.mul[i][j], &(xi * yj));
            }
        }
        out
    }

    pub fn is_in_m(&self, v: &[Rat]) -> bool {
        v[0].is_zero()
    }

    /// Echelon bases of the powers `m, m^2, ...` down to zero.
    pub fn ideal_filtration(&self) -> Vec<Vec<Vec<Rat>>> {
        let mut filtration = Vec::new();
        let mut current: Vec<Vec<Rat>> = (1..self.dim).map(|i| unit(self.dim, i)).collect();
        loop {
            let mut ech = Echelon::new(self.dim);
            for v in &current {
                ech.insert(v);
            }
            let normalised = ech.dense_rows();
            if normalised.is_empty() {
                break;
            }
            filtration.push(normalised.clone());
            // next power: products of the current basis with m-generators
            let mut next = Vec::new();
            for v in &normalised {
                for g in 1..self.dim {
                    let prod = self.mul_vec(v, &unit(self.dim, g));
                    if !vec_is_zero(&prod) {
                        next.push(prod);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            current = next;
        }
        filtration
    }

    /// Smallest `N` with `m^N = 0`, computed by iterated products.
    pub fn computed_nilpotency(&self) -> usize {
        self.ideal_filtration().len() + 1
    }

    /// A basis of `B` adapted to the powers of `m`: vector 0 is the unit,
    /// and the vectors of level `r` complete `m^{r+1}` to `m^r`.
    pub fn adapted_basis(&self) -> AdaptedBasis {
        let filtration = self.ideal_filtration();
        let depth = filtration.len();
        let mut vectors: Vec<Vec<Rat>> = vec![unit(self.dim, 0)];
        let mut levels: Vec<usize> = vec![0];
        for r in 0..depth {
            // complete the span of m^{r+2} (possibly empty) to m^{r+1}
            let mut ech = Echelon::new(self.dim);
            if r + 1 < depth {
                for v in &filtration[r + 1] {
                    ech.insert(v);
                }
            }
            for v in &filtration[r] {
                if ech.insert(v) {
                    vectors.push(v.clone());
                    levels.push(r + 1);
                }
            }
        }
        debug_assert_eq!(vectors.len(), self.dim);
        // from_adapted maps adapted coordinates to original coordinates
        let mut from_adapted = vec![zero_vec(self.dim); self.dim];
        for (k, v) in vectors.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                from_adapted[i][k] = c.clone();
            }
        }
        let to_adapted = exact::dense_inverse(&from_adapted)
            .expect("adapted vectors form a basis");
        AdaptedBasis { vectors, levels, from_adapted, to_adapted }
    }
}

/// Basis of `B` adapted to the `m`-adic filtration, with change-of-basis
/// matrices in both directions.  `levels[k]` is the `m`-adic level of
/// adapted vector `k` (0 for the unit).
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vec<Rat>>,
    pub levels: Vec<usize>,
    pub from_adapted: Vec<Vec<Rat>>,
    pub to_adapted: Vec<Vec<Rat>>,
}

/// An element of `A ⊗ B`, stored as a `dim(A) x dim(B)` coefficient array.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    pub coeffs: Vec<Vec<Rat>>,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem{:?}", self.coeffs)
    }
}

impl Elem {
    pub fn zero(dim_a: usize, dim_b: usize) -> Self {
        Elem { coeffs: vec![zero_vec(dim_b); dim_a] }
    }

    pub fn basis(dim_a: usize, dim_b: usize, i: usize, j: usize) -> Self {
        let mut e = Elem::zero(dim_a, dim_b);
        e.coeffs[i][j] = Rat::one();
        e
    }

    /// `a ⊗ 1` for a coefficient vector over the `A`-basis.
    pub fn from_a_vec(v: &[Rat], dim_b: usize) -> Self {
        Elem { coeffs: v.iter().map(|c| single(c, dim_b)).collect() }
    }

    pub fn dim_a(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dim_b(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| vec_is_zero(r))
    }

    /// Whether the element lies in `A ⊗ m`, i.e. the unit column vanishes.
    pub fn in_m(&self) -> bool {
        self.coeffs.iter().all(|r| r[0].is_zero())
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Elem) {
        for (r, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y;
            }
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        for (r, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, y) in r.iter_mut().zip(o) {
                *x -= y;
            }
        }
        out
    }

    pub fn neg(&self) -> Elem {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Elem {
        Elem {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Right multiplication by an element of `B` given by coordinates.
    pub fn mul_b(&self, b: &[Rat], base: &ArtinLocalAlgebra) -> Elem {
        Elem { coeffs: self.coeffs.iter().map(|r| base.mul_vec(r, b)).collect() }
    }

    /// Reduction modulo `m`: the unit-column coefficients, as an element of `A`.
    pub fn reduce_mod_m(&self) -> Vec<Rat> {
        self.coeffs.iter().map(|r| r[0].clone()).collect()
    }

    /// Flat coordinates with index `i * dim_b + j`.
    pub fn flat(&self) -> Vec<Rat> {
        self.coeffs.iter().flatten().cloned().collect()
    }

    pub fn from_flat(v: &[Rat], dim_a: usize, dim_b: usize) -> Self {
        assert_eq!(v.len(), dim_a * dim_b);
        Elem {
            coeffs: (0..dim_a).map(|i| v[i * dim_b..(i + 1) * dim_b].to_vec()).collect(),
        }
    }
}

fn single(c: &Rat, dim_b: usize) -> Vec<Rat> {
    let mut v = zero_vec(dim_b);
    v[0] = c.clone();
    v
}

/// The product of the scalar extension `A ⊗ B`:
/// `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`.
pub fn extended_mul(alg: &FiniteAlgebra, base: &ArtinLocalAlgebra, x: &Elem, y: &Elem) -> Elem {
    let mut out = Elem::zero(alg.dim, base.dim);
    for i in 0..alg.dim {
        if vec_is_zero(&x.coeffs[i]) {
            continue;
        }
        for j in 0..alg.dim {
            if vec_is_zero(&y.coeffs[j]) {
                continue;
            }
            let b_part = base.mul_vec(&x.coeffs[i], &y.coeffs[j]);
            for (l, c) in alg.mul[i][j].iter().enumerate() {
                if !c.is_zero() {
                    vec_add_scaled(&mut out.coeffs[l], &b_part, c);
                }
            }
        }
    }
    out
}

/// Multiplication table of `A ⊗ B` on the tensor basis, flat index
/// `i * dim(B) + p`.  Reducing the table modulo `m` recovers the table of `A`.
pub fn extend_scalars(alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Vec<Vec<Elem>> {
    let n = alg.dim * base.dim;
    let mut table = vec![vec![Elem::zero(alg.dim, base.dim); n]; n];
    for i in 0..alg.dim {
        for p in 0..base.dim {
            for j in 0..alg.dim {
                for q in 0..base.dim {
                    let x = Elem::basis(alg.dim, base.dim, i, p);
                    let y = Elem::basis(alg.dim, base.dim, j, q);
                    table[i * base.dim + p][j * base.dim + q] = extended_mul(alg, base, &x, &y);
                }
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_algebra_is_associative() {
        assert!(fixtures::zero_algebra(1).is_associative());
    }

    #[test]
    fn truncated_polynomial_is_associative() {
        // dim 2, x*x = y models t -> x, t^2 -> y in (t)/(t^3)
        let alg = fixtures::truncated_polynomial(2);
        assert!(alg.is_associative());
        assert!(fixtures::truncated_polynomial(4).is_associative());
        assert!(fixtures::strict_upper_triangular().is_associative());
    }

    #[test]
    fn random_table_witness_is_genuine() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut found = 0;
        while found < 5 {
            let dim = 2;
            let mul: Vec<Vec<Vec<Rat>>> = (0..dim)
                .map(|_| {
                    (0..dim)
                        .map(|_| (0..dim).map(|_| Rat::from_int(rng.gen_range(-2i64..3))).collect())
                        .collect()
                })
                .collect();
            let alg = FiniteAlgebra::new(vec!["a".into(), "b".into()], mul).unwrap();
            if let Some(w) = alg.check_associative() {
                // replay the associator at the reported triple
                let (i, j, l) = w.triple;
                let left = alg.product_vec(alg.product(i, j), &exact::unit_vec(dim, l));
                let right = alg.product_vec(&exact::unit_vec(dim, i), alg.product(j, l));
                let assoc: Vec<Rat> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
                assert_eq!(assoc, w.associator);
                assert!(!vec_is_zero(&assoc));
                found += 1;
            }
        }
    }

    #[test]
    fn dual_numbers_validate() {
        let b2 = fixtures::dual_numbers();
        assert!(b2.validate().is_ok());
        assert_eq!(b2.computed_nilpotency(), 2);
    }

    #[test]
    fn jet_base_validates() {
        let b3 = fixtures::jet_base(2);
        assert!(b3.validate().is_ok());
        assert_eq!(b3.computed_nilpotency(), 3);
        assert!(fixtures::square_zero_pair().validate().is_ok());
        assert_eq!(fixtures::square_zero_pair().computed_nilpotency(), 2);
    }

    #[test]
    fn unit_escape_is_rejected() {
        // dim 2 with eps * eps = 1: indices >= 1 do not span an ideal
        let mut mul = fixtures::dual_numbers().mul;
        mul[1][1] = exact::unit_vec(2, 0);
        let cand = ArtinLocalAlgebra::from_parts(vec!["1".into(), "e".into()], mul, 2);
        assert_eq!(cand.validate(), Err(BaseDefect::IdealEscape(1, 1)));
    }

    #[test]
    fn nilpotency_mismatch_is_rejected() {
        let mut b = fixtures::dual_numbers();
        b.nilpotency = 3;
        assert!(matches!(b.validate(), Err(BaseDefect::NilpotencyMismatch { stored: 3, actual: 2 })));
    }

    #[test]
    fn extended_product_examples() {
        // zero multiplication extends to zero
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let x1 = Elem::basis(1, 2, 0, 0);
        assert!(extended_mul(&e1, &b2, &x1, &x1).is_zero());

        // (x ⊗ eps)(x ⊗ 1) = y ⊗ eps
        let e2 = fixtures::truncated_polynomial(2);
        let xe = Elem::basis(2, 2, 0, 1);
        let x = Elem::basis(2, 2, 0, 0);
        assert_eq!(extended_mul(&e2, &b2, &xe, &x), Elem::basis(2, 2, 1, 1));
    }

    #[test]
    fn reduction_recovers_structure_constants() {
        let e2 = fixtures::truncated_polynomial(2);
        let b3 = fixtures::jet_base(2);
        let table = extend_scalars(&e2, &b3);
        for i in 0..e2.dim {
            for j in 0..e2.dim {
                let reduced = table[i * b3.dim][j * b3.dim].reduce_mod_m();
                assert_eq!(&reduced, &e2.mul[i][j]);
            }
        }
    }

    #[test]
    fn adapted_basis_of_jets() {
        let b3 = fixtures::jet_base(2);
        let ab = b3.adapted_basis();
        assert_eq!(ab.levels, vec![0, 1, 2]);
        assert_eq!(exact::dense_mul(&ab.from_adapted, &ab.to_adapted), exact::dense_identity(3));
    }

    #[test]
    fn adapted_basis_of_non_monomial_base() {
        // k[t]/(t^3) presented on the basis 1, u = t, w = t + t^2, so that
        // m^2 = span(w - u) is not spanned by a basis subset.
        let one = exact::unit_vec(3, 0);
        let u = exact::unit_vec(3, 1);
        let w = exact::unit_vec(3, 2);
        let t2: Vec<Rat> = vec![Rat::zero(), -Rat::one(), Rat::one()]; // t^2 = w - u
        let mut mul = vec![vec![exact::zero_vec(3); 3]; 3];
        mul[0] = vec![one, u.clone(), w.clone()];
        mul[1][0] = u;
        mul[2][0] = w;
        mul[1][1] = t2.clone(); // u*u = t^2
        mul[1][2] = t2.clone(); // u*w = t^2 + t^3 = t^2
        mul[2][1] = t2.clone();
        mul[2][2] = t2; // w*w = t^2 + 2t^3 + t^4 = t^2
        let base =
            ArtinLocalAlgebra::new(vec!["1".into(), "u".into(), "w".into()], mul, 3).unwrap();
        let ab = base.adapted_basis();
        assert_eq!(ab.levels, vec![0, 1, 2]);
        assert_eq!(exact::dense_mul(&ab.from_adapted, &ab.to_adapted), exact::dense_identity(3));
        // the level-2 vector spans m^2 = span(w - u)
        let v2 = &ab.vectors[2];
        assert!(v2[0].is_zero() && (&v2[1] + &v2[2]).is_zero() && !v2[1].is_zero());
    }
}
