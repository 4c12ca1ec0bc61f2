//! The nilpotent gauge groups acting on deformations: exponentials and
//! logarithms of generators, the conjugation actions on Maurer-Cartan
//! elements, and an order-by-order gauge-equivalence solver along the
//! `m`-adic filtration of the base.
//!
//! Two kinds of gauge data coexist.  Associative gauge elements are
//! `B`-linear automorphisms `1 + ψ` of `A ⊗ B` with `ψ` valued in `A ⊗ m`;
//! they act on a deformation `β` by `β' = φ(α+β)(φ^{-1} ⊗ φ^{-1}) - α`.
//! Relational gauge elements are algebra automorphisms of the deformed
//! resolution, given on generator blocks; they act by conjugating the
//! perturbed differential.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{AdaptedBasis, ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::barcobar::{cobar_differential, BarWord, CobarWord, FormalSum};
use crate::error::{Error, Result};
use crate::exact::{
    dense_identity, dense_inverse, dense_mul, dense_mul_vec, solve_linear, vec_is_zero, zero_vec,
    Rat, SparseMatrix,
};
use crate::hochschild::{Cochain, HochschildCtx};
use crate::relations::{mc_rel_check, Derivation};

/// A generator of the gauge group: an arity-1 cochain valued in `A ⊗ m`
/// (associative kind) or a degree-0 derivation valued in `R ⊗ m`
/// (relational kind).
#[derive(Clone, Debug)]
pub enum GaugeGenerator {
    Associative(Cochain),
    Relational(Derivation),
}

/// An invertible gauge element of either kind.
#[derive(Clone, Debug)]
pub enum GaugeElement {
    Associative(AssocGauge),
    Relational(RelGauge),
}

/// A `B`-linear automorphism of `A ⊗ B` stored on the flat coordinates
/// `i * dim(B) + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssocGauge {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: Vec<Vec<Rat>>,
}

impl AssocGauge {
    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        AssocGauge { dim_a, dim_b, matrix: dense_identity(dim_a * dim_b) }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        Elem::from_flat(&dense_mul_vec(&self.matrix, &x.flat()), self.dim_a, self.dim_b)
    }

    pub fn inverse(&self) -> Result<AssocGauge> {
        Ok(AssocGauge { dim_a: self.dim_a, dim_b: self.dim_b, matrix: dense_inverse(&self.matrix)? })
    }

    pub fn compose(&self, other: &AssocGauge) -> AssocGauge {
        AssocGauge {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: dense_mul(&self.matrix, &other.matrix),
        }
    }

    /// Checks the `1 + ψ` shape: `B`-linearity and `Im ψ ⊆ A ⊗ m`.
    pub fn validate(&self, base: &ArtinLocalAlgebra) -> Result<()> {
        let n = self.dim_a * self.dim_b;
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gauge matrix has the wrong shape".into()));
        }
        for i in 0..self.dim_a {
            let column = self.column_elem(i, 0);
            // unipotent: the unit-column part of φ(e_i ⊗ 1) - e_i ⊗ 1 vanishes
            let mut shifted = column.clone();
            shifted.coeffs[i][0] -= &Rat::one();
            if !shifted.in_m() {
                return Err(Error::InvalidInput(
                    "gauge element is not of the form identity + (A ⊗ m)-valued map".into(),
                ));
            }
            // B-linearity: φ(e_i ⊗ b_j) = φ(e_i ⊗ 1) b_j
            for j in 1..self.dim_b {
                let expected = column.mul_b(&crate::exact::unit_vec(self.dim_b, j), base);
                if self.column_elem(i, j) != expected {
                    return Err(Error::InvalidInput("gauge matrix is not B-linear".into()));
                }
            }
        }
        Ok(())
    }

    fn column_elem(&self, i: usize, j: usize) -> Elem {
        let col = i * self.dim_b + j;
        let flat: Vec<Rat> = self.matrix.iter().map(|row| row[col].clone()).collect();
        Elem::from_flat(&flat, self.dim_a, self.dim_b)
    }

    /// Builds the matrix of a `B`-linear map from its values on `e_i ⊗ 1`.
    pub fn from_columns(values: &[Elem], base: &ArtinLocalAlgebra) -> Self {
        let dim_a = values.len();
        let dim_b = base.dim;
        let n = dim_a * dim_b;
        let mut matrix = vec![zero_vec(n); n];
        for (i, v) in values.iter().enumerate() {
            for j in 0..dim_b {
                let image =
                    if j == 0 { v.clone() } else { v.mul_b(&crate::exact::unit_vec(dim_b, j), base) };
                for (r, c) in image.flat().into_iter().enumerate() {
                    matrix[r][i * dim_b + j] = c;
                }
            }
        }
        AssocGauge { dim_a, dim_b, matrix }
    }
}

/// Exponential of an associative generator: the finite sum
/// `1 + f + f^2/2! + ...` of operator powers of the `B`-linear extension.
pub fn exp_assoc(f: &Cochain, alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Result<AssocGauge> {
    if f.arity != 1 {
        return Err(Error::InvalidInput("gauge generators have arity 1".into()));
    }
    f.require_m_only()?;
    let values: Vec<Elem> = (0..alg.dim).map(|i| f.value(&[i])).collect();
    let op = AssocGauge::from_columns(&values, base).matrix;
    let n = alg.dim * base.dim;
    let mut total = dense_identity(n);
    let mut power = dense_identity(n);
    let mut k = 1u64;
    loop {
        power = dense_mul(&power, &op);
        if power.iter().all(|r| vec_is_zero(r)) {
            break;
        }
        let factorial_inv = Rat::one()
            / (1..=k).fold(Rat::one(), |acc, i| acc * Rat::from_int(i as i64));
        for (tr, pr) in total.iter_mut().zip(&power) {
            for (t, p) in tr.iter_mut().zip(pr) {
                *t += &(p * &factorial_inv);
            }
        }
        k += 1;
        if k > (base.nilpotency as u64) + 1 {
            return Err(Error::Internal("gauge generator is not nilpotent".into()));
        }
    }
    Ok(AssocGauge { dim_a: alg.dim, dim_b: base.dim, matrix: total })
}

/// Logarithm `ln(1 + ψ) = Σ (-1)^{k-1} ψ^k / k`, exact on the nilpotent
/// gauge group; errors when the element is not of the `1 + ψ` shape.
pub fn log_assoc(
    phi: &AssocGauge,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Cochain> {
    phi.validate(base)?;
    let n = alg.dim * base.dim;
    let mut psi = phi.matrix.clone();
    for (i, row) in psi.iter_mut().enumerate() {
        row[i] -= &Rat::one();
    }
    let mut total = vec![zero_vec(n); n];
    let mut power = dense_identity(n);
    let mut k = 1u64;
    loop {
        power = dense_mul(&power, &psi);
        if power.iter().all(|r| vec_is_zero(r)) {
            break;
        }
        let coeff = if k % 2 == 1 { Rat::one() } else { -Rat::one() } / Rat::from_int(k as i64);
        for (tr, pr) in total.iter_mut().zip(&power) {
            for (t, p) in tr.iter_mut().zip(pr) {
                *t += &(p * &coeff);
            }
        }
        k += 1;
        if k > (base.nilpotency as u64) + 1 {
            return Err(Error::Internal("gauge element is not unipotent".into()));
        }
    }
    // read the generator off the ⊗1 columns
    let mut out = Cochain::zero(1, alg.dim, base.dim);
    for i in 0..alg.dim {
        let flat: Vec<Rat> = total.iter().map(|row| row[i * base.dim].clone()).collect();
        out.set(vec![i], Elem::from_flat(&flat, alg.dim, base.dim));
    }
    out.require_m_only()?;
    Ok(out)
}

/// The action on deformations: `β' = φ (α+β) (φ^{-1} ⊗ φ^{-1}) - α`.
/// Only defined on Maurer-Cartan elements; the result is again one.
pub fn act_assoc(
    phi: &AssocGauge,
    beta: &Cochain,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Cochain> {
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(beta)?.passed {
        return Err(Error::NotMaurerCartan);
    }
    let inverse = phi.inverse()?;
    let mut out = Cochain::zero(2, alg.dim, base.dim);
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let u = inverse.apply(&Elem::basis(alg.dim, base.dim, i, 0));
            let v = inverse.apply(&Elem::basis(alg.dim, base.dim, j, 0));
            let product = phi.apply(&ctx.deformed_product(beta, &u, &v));
            let value = product.sub(&Elem::from_a_vec(alg.product(i, j), base.dim));
            out.set(vec![i, j], value);
        }
    }
    out.require_m_only()
        .map_err(|_| Error::Internal("gauge action left the maximal ideal".into()))?;
    Ok(out)
}

/// An algebra automorphism of the (truncated) resolution, stored by the
/// images of generator blocks and extended multiplicatively.
#[derive(Clone, Debug)]
pub struct RelGauge {
    pub dim_b: usize,
    pub bound: usize,
    values: BTreeMap<BarWord, FormalSum>,
}

impl RelGauge {
    pub fn identity(dim_b: usize, bound: usize) -> Self {
        RelGauge { dim_b, bound, values: BTreeMap::new() }
    }

    /// Image of a generator block (defaults to the block itself).
    pub fn value(&self, gen: &BarWord) -> FormalSum {
        self.values.get(gen).cloned().unwrap_or_else(|| {
            FormalSum::word(CobarWord::new(vec![gen.clone()]), self.dim_b)
        })
    }

    pub fn set(&mut self, gen: BarWord, sum: FormalSum) {
        self.values.insert(gen, sum);
    }

    pub fn values(&self) -> impl Iterator<Item = (&BarWord, &FormalSum)> {
        self.values.iter()
    }

    /// Multiplicative extension to a word: the concatenation product of the
    /// block images.
    pub fn apply_word(&self, word: &CobarWord, base: &ArtinLocalAlgebra) -> Result<FormalSum> {
        let mut acc: Option<FormalSum> = None;
        for block in &word.blocks {
            let image = self.value(block);
            acc = Some(match acc {
                None => image,
                Some(prev) => concat_product(&prev, &image, base, self.bound)?,
            });
        }
        Ok(acc.expect("words are nonempty"))
    }

    pub fn apply_sum(&self, sum: &FormalSum, base: &ArtinLocalAlgebra) -> Result<FormalSum> {
        let mut out = FormalSum::zero(self.dim_b);
        for (w, coeff) in sum.terms() {
            out.add(&self.apply_word(w, base)?.mul_b(coeff, base));
        }
        Ok(out)
    }

    /// `φ - 1` as an operator on a formal sum.
    fn shifted(&self, sum: &FormalSum, base: &ArtinLocalAlgebra) -> Result<FormalSum> {
        let mut out = self.apply_sum(sum, base)?;
        out.add(&sum.scale(&-Rat::one()));
        Ok(out)
    }

    /// Operator inverse via the geometric series of `-(φ - 1)`.
    pub fn apply_inverse(&self, sum: &FormalSum, base: &ArtinLocalAlgebra) -> Result<FormalSum> {
        let mut out = sum.clone();
        let mut term = sum.clone();
        for _ in 0..=base.nilpotency {
            term = self.shifted(&term, base)?.scale(&-Rat::one());
            if term.is_zero() {
                return Ok(out);
            }
            out.add(&term);
        }
        Err(Error::Internal("gauge element is not unipotent".into()))
    }
}

/// Concatenation product of two formal sums with polynomial-degree guard.
fn concat_product(
    a: &FormalSum,
    b: &FormalSum,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<FormalSum> {
    let mut out = FormalSum::zero(a.dim_b);
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let polydegree = wa.polydegree() + wb.polydegree();
            if polydegree > bound {
                return Err(Error::PolydegreeOverflow { polydegree, bound });
            }
            let mut blocks = wa.blocks.clone();
            blocks.extend_from_slice(&wb.blocks);
            out.add_term(CobarWord::new(blocks), base.mul_vec(ca, cb));
        }
    }
    Ok(out)
}

/// Exponential of a relational generator: a degree-0, `m`-valued,
/// polynomial-degree-non-raising derivation.
pub fn exp_rel(
    f: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<RelGauge> {
    if f.degree != 0 {
        return Err(Error::InvalidInput("relational gauge generators have degree 0".into()));
    }
    if !f.m_valued {
        return Err(Error::InvalidInput("relational gauge generators must be m-valued".into()));
    }
    for (gen, sum) in f.values() {
        if sum.max_polydegree() > gen.len() {
            return Err(Error::InvalidInput(
                "relational gauge generators must not raise the polynomial degree".into(),
            ));
        }
    }
    let mut out = RelGauge::identity(base.dim, bound);
    for n in 1..=bound {
        for letters in crate::hochschild::all_tuples(alg.dim, n) {
            let gen = BarWord(letters);
            let gen_word = CobarWord::new(vec![gen.clone()]);
            let mut image = FormalSum::word(gen_word.clone(), base.dim);
            let mut term = FormalSum::word(gen_word, base.dim);
            let mut k = 1u64;
            loop {
                term = f.apply_sum(&term, base, bound)?.scale(&(Rat::one() / Rat::from_int(k as i64)));
                if term.is_zero() {
                    break;
                }
                image.add(&term);
                k += 1;
                if k > base.nilpotency as u64 + 1 {
                    return Err(Error::Internal("relational generator is not nilpotent".into()));
                }
            }
            out.set(gen, image);
        }
    }
    Ok(out)
}

/// Logarithm of a relational gauge element, read off on generators.
pub fn log_rel(
    phi: &RelGauge,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<Derivation> {
    let mut values = BTreeMap::new();
    for n in 1..=bound {
        for letters in crate::hochschild::all_tuples(alg.dim, n) {
            let gen = BarWord(letters);
            let gen_word = CobarWord::new(vec![gen.clone()]);
            // the shifted part must be m-valued
            let shift = phi.shifted(&FormalSum::word(gen_word.clone(), base.dim), base)?;
            if !shift.in_m() {
                return Err(Error::InvalidInput(
                    "relational gauge element is not of the form identity + (R ⊗ m)-valued map"
                        .into(),
                ));
            }
            let mut total = FormalSum::zero(base.dim);
            let mut term = FormalSum::word(gen_word, base.dim);
            let mut k = 1u64;
            loop {
                term = phi.shifted(&term, base)?;
                if term.is_zero() {
                    break;
                }
                let coeff =
                    if k % 2 == 1 { Rat::one() } else { -Rat::one() } / Rat::from_int(k as i64);
                total.add(&term.scale(&coeff));
                k += 1;
                if k > base.nilpotency as u64 + 1 {
                    return Err(Error::Internal("gauge element is not unipotent".into()));
                }
            }
            if !total.is_zero() {
                values.insert(gen, total);
            }
        }
    }
    Derivation::new(0, base.dim, values)
}

/// The relational action `δ' = φ (s+δ) φ^{-1} - s`, read off on generators.
pub fn act_rel(
    phi: &RelGauge,
    delta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<Derivation> {
    if !mc_rel_check(delta, alg, base, bound)?.passed {
        return Err(Error::NotMaurerCartanRel);
    }
    let mut values = BTreeMap::new();
    for n in 1..=bound {
        for letters in crate::hochschild::all_tuples(alg.dim, n) {
            let gen = BarWord(letters);
            let gen_word = CobarWord::new(vec![gen.clone()]);
            let pulled = phi.apply_inverse(&FormalSum::word(gen_word.clone(), base.dim), base)?;
            // (s + δ) of the pulled-back sum
            let mut derived = FormalSum::zero(base.dim);
            for (w, coeff) in pulled.terms() {
                derived.add(&cobar_differential(w, alg, base, None).mul_b(coeff, base));
            }
            derived.add(&delta.apply_sum(&pulled, base, bound)?);
            let mut image = phi.apply_sum(&derived, base)?;
            image.add(&cobar_differential(&gen_word, alg, base, None).scale(&-Rat::one()));
            if !image.is_zero() {
                values.insert(gen, image);
            }
        }
    }
    Derivation::new(1, base.dim, values)
}

/// Dispatch over the two kinds.
pub fn exp_gauge(
    f: &GaugeGenerator,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<GaugeElement> {
    match f {
        GaugeGenerator::Associative(c) => Ok(GaugeElement::Associative(exp_assoc(c, alg, base)?)),
        GaugeGenerator::Relational(d) => Ok(GaugeElement::Relational(exp_rel(d, alg, base, bound)?)),
    }
}

pub fn log_gauge(
    phi: &GaugeElement,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<GaugeGenerator> {
    match phi {
        GaugeElement::Associative(p) => Ok(GaugeGenerator::Associative(log_assoc(p, alg, base)?)),
        GaugeElement::Relational(p) => Ok(GaugeGenerator::Relational(log_rel(p, alg, base, bound)?)),
    }
}

// ---------------------------------------------------------------------------
// Order-by-order gauge equivalence.
// ---------------------------------------------------------------------------

/// Verdict of the equivalence solver.  `Equivalent` carries a replayed
/// witness; `Inequivalent` is certified by the unsolvable first-order
/// cohomological obstruction; `Inconclusive` is returned whenever the
/// parameter dependence turned nonlinear and no searched specialisation
/// closed the system.
#[derive(Clone, Debug)]
pub enum GaugeVerdict {
    Equivalent(EquivWitness),
    Inequivalent,
    Inconclusive,
}

/// An equivalence certificate: the generator and its exponential, with
/// `act(element, β1) = β2` verified before returning.
#[derive(Clone, Debug)]
pub struct EquivWitness {
    pub generator: Cochain,
    pub element: AssocGauge,
}

/// Options for the solver's nonlinear fallback.
#[derive(Clone, Debug)]
pub struct EquivOptions {
    /// Search small integer specialisations of the free parameters when the
    /// order-by-order system turns nonlinear.
    pub grid_search: bool,
    pub grid_values: Vec<i64>,
    pub max_grid_vars: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions { grid_search: true, grid_values: vec![0, 1, -1, 2, -2], max_grid_vars: 4 }
    }
}

/// A polynomial of total degree at most 2 in the solver's parameters.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    fn var(v: u32) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(vec![v], Rat::one());
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    fn add_scaled(&mut self, other: &Poly, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *slot += &(x * c);
            if slot.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                assert!(m.len() <= 2, "parameter degree exceeds 2");
                let slot = out.terms.entry(m.clone()).or_insert_with(Rat::zero);
                *slot += &(ca * cb);
                if slot.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn constant_part(&self) -> Rat {
        self.terms.get(&Vec::new() as &Vec<u32>).cloned().unwrap_or_else(Rat::zero)
    }

    fn linear_coeff(&self, v: u32) -> Rat {
        self.terms.get(&vec![v]).cloned().unwrap_or_else(Rat::zero)
    }

    fn vars(&self) -> BTreeSet<u32> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Substitutes affine expressions for variables (used to reparametrise
    /// the affine solution space; inputs and outputs stay affine).
    fn substitute(&self, map: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            match m.len() {
                0 => out.add_assign(&Poly::constant(c.clone())),
                1 => {
                    let p = map.get(&m[0]).cloned().unwrap_or_else(|| Poly::var(m[0]));
                    out.add_scaled(&p, c);
                }
                _ => {
                    let p = map.get(&m[0]).cloned().unwrap_or_else(|| Poly::var(m[0]));
                    let q = map.get(&m[1]).cloned().unwrap_or_else(|| Poly::var(m[1]));
                    out.add_scaled(&p.mul(&q), c);
                }
            }
        }
        out
    }

    /// Evaluates some variables to rationals, leaving the rest symbolic.
    fn specialize(&self, assign: &BTreeMap<u32, Rat>) -> Poly {
        let map: BTreeMap<u32, Poly> =
            assign.iter().map(|(v, c)| (*v, Poly::constant(c.clone()))).collect();
        self.substitute(&map)
    }
}

/// Solver state: the symbolic gauge element in adapted base coordinates.
struct Solver<'a> {
    alg: &'a FiniteAlgebra,
    base: &'a ArtinLocalAlgebra,
    adapted: AdaptedBasis,
    /// triple product helper: mul_ad[p][q] = coordinates of `b̂_p b̂_q`
    mul_ad: Vec<Vec<Vec<Rat>>>,
    /// deformed products in adapted coordinates
    gamma1: Vec<Vec<Vec<Vec<Rat>>>>,
    gamma2: Vec<Vec<Vec<Vec<Rat>>>>,
    /// phi[i][l][q] = coordinate of φ(e_i ⊗ 1) at `e_l ⊗ b̂_q`
    phi: Vec<Vec<Vec<Poly>>>,
    live_vars: Vec<u32>,
    next_var: u32,
}

impl<'a> Solver<'a> {
    fn new(
        alg: &'a FiniteAlgebra,
        base: &'a ArtinLocalAlgebra,
        beta1: &Cochain,
        beta2: &Cochain,
    ) -> Self {
        let adapted = base.adapted_basis();
        let nb = base.dim;
        let to_ad = |v: &[Rat]| dense_mul_vec(&adapted.to_adapted, v);
        let mut mul_ad = vec![vec![zero_vec(nb); nb]; nb];
        for p in 0..nb {
            for q in 0..nb {
                mul_ad[p][q] = to_ad(&base.mul_vec(&adapted.vectors[p], &adapted.vectors[q]));
            }
        }
        let table = |beta: &Cochain| -> Vec<Vec<Vec<Vec<Rat>>>> {
            (0..alg.dim)
                .map(|i| {
                    (0..alg.dim)
                        .map(|j| {
                            let mut gamma = Elem::from_a_vec(alg.product(i, j), nb);
                            gamma.add_assign(&beta.value(&[i, j]));
                            gamma.coeffs.iter().map(|row| to_ad(row)).collect()
                        })
                        .collect()
                })
                .collect()
        };
        let gamma1 = table(beta1);
        let gamma2 = table(beta2);
        // φ starts as the identity
        let mut phi = vec![vec![vec![Poly::zero(); nb]; alg.dim]; alg.dim];
        for (i, phi_i) in phi.iter_mut().enumerate() {
            phi_i[i][0] = Poly::constant(Rat::one());
        }
        Solver { alg, base, adapted, mul_ad, gamma1, gamma2, phi, live_vars: Vec::new(), next_var: 0 }
    }

    fn fresh_var(&mut self) -> u32 {
        let v = self.next_var;
        self.next_var += 1;
        v
    }

    /// Residual coordinates `φ γ1(e_i, e_j) - γ2(φ e_i, φ e_j)` at all
    /// adapted coordinates of the given level.
    fn residual_at_level(&self, level: usize) -> Vec<Poly> {
        let na = self.alg.dim;
        let nb = self.base.dim;
        let mut equations = Vec::new();
        for i in 0..na {
            for j in 0..na {
                // residual[(l', q)] as polynomials
                let mut residual = vec![vec![Poly::zero(); nb]; na];
                // φ(γ1(e_i, e_j)): γ1 coordinate (l, m) times φ(e_l ⊗ b̂_m)
                for l in 0..na {
                    for m in 0..nb {
                        let g = &self.gamma1[i][j][l][m];
                        if g.is_zero() {
                            continue;
                        }
                        for lp in 0..na {
                            for p in 0..nb {
                                if self.phi[l][lp][p].is_zero() {
                                    continue;
                                }
                                for (q, c) in self.mul_ad[p][m].iter().enumerate() {
                                    if !c.is_zero() {
                                        residual[lp][q]
                                            .add_scaled(&self.phi[l][lp][p], &(g * c));
                                    }
                                }
                            }
                        }
                    }
                }
                // - γ2(φ e_i, φ e_j)
                for l1 in 0..na {
                    for p1 in 0..nb {
                        if self.phi[i][l1][p1].is_zero() {
                            continue;
                        }
                        for l2 in 0..na {
                            for p2 in 0..nb {
                                if self.phi[j][l2][p2].is_zero() {
                                    continue;
                                }
                                let pair = self.phi[i][l1][p1].mul(&self.phi[j][l2][p2]);
                                // b̂_{p1} b̂_{p2} b̂_{m'} coordinates
                                for lp in 0..na {
                                    for mp in 0..nb {
                                        let g = &self.gamma2[l1][l2][lp][mp];
                                        if g.is_zero() {
                                            continue;
                                        }
                                        let b12 = &self.mul_ad[p1][p2];
                                        for (s, bc) in b12.iter().enumerate() {
                                            if bc.is_zero() {
                                                continue;
                                            }
                                            for (q, c) in self.mul_ad[s][mp].iter().enumerate() {
                                                if !c.is_zero() {
                                                    residual[lp][q].add_scaled(
                                                        &pair,
                                                        &-(&(g * bc) * c),
                                                    );
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                for (lp, row) in residual.into_iter().enumerate() {
                    for (q, poly) in row.into_iter().enumerate() {
                        let _ = lp;
                        if self.adapted.levels[q] == level && !poly.is_zero() {
                            equations.push(poly);
                        }
                    }
                }
            }
        }
        equations
    }

    fn introduce_level_vars(&mut self, level: usize) -> Vec<u32> {
        let mut fresh = Vec::new();
        for i in 0..self.alg.dim {
            for l in 0..self.alg.dim {
                for q in 0..self.base.dim {
                    if self.adapted.levels[q] == level {
                        let v = self.fresh_var();
                        self.phi[i][l][q] = Poly::var(v);
                        fresh.push(v);
                    }
                }
            }
        }
        fresh
    }

    /// Solves an affine system over the given variables; reparametrises the
    /// state by the kernel on success.
    fn solve_affine(&mut self, equations: &[Poly], vars: &[u32]) -> Result<bool> {
        let col_of: BTreeMap<u32, usize> = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let mut mat = SparseMatrix::new(equations.len(), vars.len());
        let mut rhs = Vec::with_capacity(equations.len());
        for (r, eq) in equations.iter().enumerate() {
            if eq.degree() > 1 {
                return Err(Error::Internal("affine solve received a quadratic equation".into()));
            }
            for v in eq.vars() {
                mat.set(r, col_of[&v], eq.linear_coeff(v));
            }
            rhs.push(-eq.constant_part());
        }
        let Some(solution) = solve_linear(&mat, &rhs)? else {
            return Ok(false);
        };
        let mut map: BTreeMap<u32, Poly> = BTreeMap::new();
        let mut new_live = Vec::new();
        let kernel_vars: Vec<u32> = (0..solution.kernel.len()).map(|_| self.fresh_var()).collect();
        for (idx, v) in vars.iter().enumerate() {
            let mut p = Poly::constant(solution.particular[idx].clone());
            for (k, kv) in solution.kernel.iter().zip(&kernel_vars) {
                p.add_scaled(&Poly::var(*kv), &k[idx]);
            }
            map.insert(*v, p);
        }
        new_live.extend_from_slice(&kernel_vars);
        self.apply_substitution(&map);
        self.live_vars = new_live;
        Ok(true)
    }

    fn apply_substitution(&mut self, map: &BTreeMap<u32, Poly>) {
        for phi_i in self.phi.iter_mut() {
            for row in phi_i.iter_mut() {
                for p in row.iter_mut() {
                    if !p.is_zero() {
                        *p = p.substitute(map);
                    }
                }
            }
        }
    }

    fn specialize_live(&mut self, assign: &BTreeMap<u32, Rat>) {
        for phi_i in self.phi.iter_mut() {
            for row in phi_i.iter_mut() {
                for p in row.iter_mut() {
                    if !p.is_zero() {
                        *p = p.specialize(assign);
                    }
                }
            }
        }
    }

    /// The numeric gauge element after sending every remaining parameter to
    /// zero, converted back to the original base coordinates.
    fn into_element(mut self) -> AssocGauge {
        let assign: BTreeMap<u32, Rat> =
            self.live_vars.iter().map(|v| (*v, Rat::zero())).collect();
        self.specialize_live(&assign);
        let nb = self.base.dim;
        let values: Vec<Elem> = (0..self.alg.dim)
            .map(|i| {
                let mut e = Elem::zero(self.alg.dim, nb);
                for l in 0..self.alg.dim {
                    let ad_coords: Vec<Rat> = (0..nb)
                        .map(|q| {
                            debug_assert!(self.phi[i][l][q].degree() == 0);
                            self.phi[i][l][q].constant_part()
                        })
                        .collect();
                    e.coeffs[l] = dense_mul_vec(&self.adapted.from_adapted, &ad_coords);
                }
                e
            })
            .collect();
        AssocGauge::from_columns(&values, self.base)
    }
}

/// Decides gauge equivalence of two Maurer-Cartan elements order by order
/// along the powers of `m`, carrying the affine solution space forward
/// symbolically.  `Inequivalent` is certified only by the first-order
/// obstruction; nonlinear parameter dependence falls back to searched
/// specialisations and otherwise yields `Inconclusive`.
pub fn gauge_equivalent(
    beta1: &Cochain,
    beta2: &Cochain,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    opts: &EquivOptions,
) -> Result<GaugeVerdict> {
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(beta1)?.passed || !ctx.mc_check(beta2)?.passed {
        return Err(Error::NotMaurerCartan);
    }
    let mut solver = Solver::new(alg, base, beta1, beta2);
    let max_level = solver.adapted.levels.iter().copied().max().unwrap_or(0);
    for level in 1..=max_level {
        let fresh = solver.introduce_level_vars(level);
        let equations = solver.residual_at_level(level);
        let nonlinear = equations.iter().any(|e| e.degree() > 1);
        if !nonlinear {
            let mut vars: Vec<u32> = solver.live_vars.clone();
            vars.extend_from_slice(&fresh);
            vars.sort_unstable();
            vars.dedup();
            if solver.solve_affine(&equations, &vars)? {
                continue;
            }
            return if level == 1 {
                Ok(GaugeVerdict::Inequivalent)
            } else {
                Ok(GaugeVerdict::Inconclusive)
            };
        }
        // nonlinear in the carried parameters: search specialisations
        let live = solver.live_vars.clone();
        let candidates = parameter_grid(&live, opts);
        let mut solved = false;
        for assign in candidates {
            let mut attempt_equations = Vec::with_capacity(equations.len());
            for eq in &equations {
                attempt_equations.push(eq.specialize(&assign));
            }
            if attempt_equations.iter().any(|e| e.degree() > 1) {
                continue;
            }
            let mut trial = solver.clone_state();
            trial.specialize_live(&assign);
            trial.live_vars = Vec::new();
            let mut vars = fresh.clone();
            vars.sort_unstable();
            if trial.solve_affine(&attempt_equations, &vars)? {
                solver.replace_state(trial);
                solved = true;
                break;
            }
        }
        if !solved {
            return Ok(GaugeVerdict::Inconclusive);
        }
    }
    let element = solver.into_element();
    // replay the certificate before returning it
    let acted = act_assoc(&element, beta1, alg, base)?;
    if &acted != beta2 {
        return Err(Error::Internal("gauge solver produced an invalid witness".into()));
    }
    let generator = log_assoc(&element, alg, base)?;
    Ok(GaugeVerdict::Equivalent(EquivWitness { generator, element }))
}

impl<'a> Solver<'a> {
    fn clone_state(&self) -> Solver<'a> {
        Solver {
            alg: self.alg,
            base: self.base,
            adapted: self.adapted.clone(),
            mul_ad: self.mul_ad.clone(),
            gamma1: self.gamma1.clone(),
            gamma2: self.gamma2.clone(),
            phi: self.phi.clone(),
            live_vars: self.live_vars.clone(),
            next_var: self.next_var,
        }
    }

    fn replace_state(&mut self, other: Solver<'a>) {
        self.phi = other.phi;
        self.live_vars = other.live_vars;
        self.next_var = other.next_var;
    }
}

/// All assignments of the grid values to the live parameters, the all-zero
/// assignment first; empty parameter lists yield the single empty map.
fn parameter_grid(vars: &[u32], opts: &EquivOptions) -> Vec<BTreeMap<u32, Rat>> {
    let zero: BTreeMap<u32, Rat> = vars.iter().map(|v| (*v, Rat::zero())).collect();
    let mut out = vec![zero];
    if !opts.grid_search || vars.is_empty() || vars.len() > opts.max_grid_vars {
        return out;
    }
    let values: Vec<Rat> = opts.grid_values.iter().map(|v| Rat::from_int(*v)).collect();
    let mut stack: Vec<Vec<Rat>> = vec![Vec::new()];
    for _ in vars {
        let mut next = Vec::new();
        for partial in stack {
            for v in &values {
                let mut p = partial.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        stack = next;
    }
    for assignment in stack {
        if assignment.iter().all(Rat::is_zero) {
            continue; // already first
        }
        out.push(vars.iter().cloned().zip(assignment).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arity1(alg: &FiniteAlgebra, base: &ArtinLocalAlgebra, entries: &[(usize, usize, usize, i64)]) -> Cochain {
        let mut f = Cochain::zero(1, alg.dim, base.dim);
        for (input, out_a, out_b, c) in entries {
            let mut v = f.value(&[*input]);
            v.coeffs[*out_a][*out_b] += &Rat::from_int(*c);
            f.set(vec![*input], v);
        }
        f
    }

    fn random_generator(
        rng: &mut ChaCha8Rng,
        alg: &FiniteAlgebra,
        base: &ArtinLocalAlgebra,
    ) -> Cochain {
        let mut f = Cochain::zero(1, alg.dim, base.dim);
        for i in 0..alg.dim {
            let mut e = Elem::zero(alg.dim, base.dim);
            for row in e.coeffs.iter_mut() {
                for j in 1..base.dim {
                    if rng.gen_bool(0.6) {
                        row[j] = Rat::from_int(rng.gen_range(-2i64..3));
                    }
                }
            }
            f.set(vec![i], e);
        }
        f
    }

    #[test]
    fn exp_examples() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        // f = 0 exponentiates to the identity
        let id = exp_assoc(&Cochain::zero(1, 1, 2), &e1, &b2).unwrap();
        assert_eq!(id.matrix, dense_identity(2));
        // f(x) = x ⊗ e over the dual numbers: φ(x) = x ⊗ (1 + e)
        let f = arity1(&e1, &b2, &[(0, 0, 1, 1)]);
        let phi = exp_assoc(&f, &e1, &b2).unwrap();
        let image = phi.apply(&Elem::basis(1, 2, 0, 0));
        let mut expected = Elem::basis(1, 2, 0, 0);
        expected.add_assign(&Elem::basis(1, 2, 0, 1));
        assert_eq!(image, expected);

        // over k[e]/(e^3): φ(x) = x ⊗ (1 + e + e^2/2)
        let e2 = fixtures::truncated_polynomial(2);
        let b3 = fixtures::jet_base(2);
        let f = arity1(&e2, &b3, &[(0, 0, 1, 1)]);
        let phi = exp_assoc(&f, &e2, &b3).unwrap();
        let image = phi.apply(&Elem::basis(2, 3, 0, 0));
        let mut expected = Elem::basis(2, 3, 0, 0);
        expected.add_assign(&Elem::basis(2, 3, 0, 1));
        expected.add_assign(&Elem::basis(2, 3, 0, 2).scale(&Rat::new(1, 2)));
        assert_eq!(image, expected);
    }

    #[test]
    fn log_examples() {
        let e1 = fixtures::zero_algebra(1);
        let b3 = fixtures::jet_base(2);
        // identity logs to zero
        let id = AssocGauge::identity(1, 3);
        assert!(log_assoc(&id, &e1, &b3).unwrap().is_zero());
        // φ(x) = x ⊗ (1+e) over k[e]/(e^3): f(x) = x ⊗ (e - e^2/2)
        let mut values = Elem::basis(1, 3, 0, 0);
        values.add_assign(&Elem::basis(1, 3, 0, 1));
        let phi = AssocGauge::from_columns(&[values], &b3);
        let f = log_assoc(&phi, &e1, &b3).unwrap();
        let mut expected = Elem::basis(1, 3, 0, 1);
        expected.add_assign(&Elem::basis(1, 3, 0, 2).scale(&Rat::new(-1, 2)));
        assert_eq!(f.value(&[0]), expected);
    }

    #[test]
    fn log_rejects_non_unipotent() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let bad = AssocGauge {
            dim_a: 1,
            dim_b: 2,
            matrix: vec![
                vec![Rat::from_int(2), Rat::zero()],
                vec![Rat::zero(), Rat::from_int(2)],
            ],
        };
        assert!(log_assoc(&bad, &e1, &b2).is_err());
    }

    #[test]
    fn exp_log_roundtrip_randomised() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let algebras = [fixtures::truncated_polynomial(2), fixtures::zero_algebra(2)];
        let bases = [fixtures::dual_numbers(), fixtures::jet_base(2)];
        for alg in &algebras {
            for base in &bases {
                for _ in 0..15 {
                    let f = random_generator(&mut rng, alg, base);
                    let phi = exp_assoc(&f, alg, base).unwrap();
                    assert_eq!(log_assoc(&phi, alg, base).unwrap(), f);
                    let g = log_assoc(&phi, alg, base).unwrap();
                    assert_eq!(exp_assoc(&g, alg, base).unwrap(), phi);
                }
            }
        }
    }

    #[test]
    fn action_fixes_zero_product() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let f = arity1(&e1, &b2, &[(0, 0, 1, 1)]);
        let phi = exp_assoc(&f, &e1, &b2).unwrap();
        let acted = act_assoc(&phi, &Cochain::zero(2, 1, 2), &e1, &b2).unwrap();
        assert!(acted.is_zero());
    }

    #[test]
    fn action_worked_example() {
        // E2/B2, β = 0, f(x) = x ⊗ e, f(y) = 0: β'(x,x) = -2 y ⊗ e
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let f = arity1(&e2, &b2, &[(0, 0, 1, 1)]);
        let phi = exp_assoc(&f, &e2, &b2).unwrap();
        let acted = act_assoc(&phi, &Cochain::zero(2, 2, 2), &e2, &b2).unwrap();
        assert_eq!(acted.value(&[0, 0]), Elem::basis(2, 2, 1, 1).scale(&Rat::from_int(-2)));
        assert!(acted.value(&[0, 1]).is_zero());
        assert!(acted.value(&[1, 0]).is_zero());
        assert!(acted.value(&[1, 1]).is_zero());
        // identity acts trivially
        let id = AssocGauge::identity(2, 2);
        let beta = acted.clone();
        assert_eq!(act_assoc(&id, &beta, &e2, &b2).unwrap(), beta);
    }

    #[test]
    fn action_preserves_mc_and_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let e2 = fixtures::truncated_polynomial(2);
        let ctx_bases = [fixtures::dual_numbers(), fixtures::jet_base(2)];
        for base in &ctx_bases {
            let ctx = HochschildCtx::new(&e2, base);
            for _ in 0..10 {
                let f1 = random_generator(&mut rng, &e2, base);
                let f2 = random_generator(&mut rng, &e2, base);
                let phi1 = exp_assoc(&f1, &e2, base).unwrap();
                let phi2 = exp_assoc(&f2, &e2, base).unwrap();
                let beta = act_assoc(&phi2, &Cochain::zero(2, 2, base.dim), &e2, base).unwrap();
                assert!(ctx.mc_check(&beta).unwrap().passed);
                let lhs = act_assoc(&phi1.compose(&phi2), &Cochain::zero(2, 2, base.dim), &e2, base)
                    .unwrap();
                let rhs = act_assoc(&phi1, &beta, &e2, base).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn action_rejects_non_mc() {
        let alg = fixtures::strict_upper_triangular();
        let b2 = fixtures::dual_numbers();
        let mut beta = Cochain::zero(2, 3, 2);
        beta.set(vec![0, 0], Elem::basis(3, 2, 2, 1));
        let id = AssocGauge::identity(3, 2);
        assert!(matches!(act_assoc(&id, &beta, &alg, &b2), Err(Error::NotMaurerCartan)));
    }

    #[test]
    fn equivalence_trivial_and_derived() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let opts = EquivOptions::default();
        let zero = Cochain::zero(2, 2, 2);
        // same element: equivalent with some witness
        match gauge_equivalent(&zero, &zero, &e2, &b2, &opts).unwrap() {
            GaugeVerdict::Equivalent(w) => {
                assert_eq!(act_assoc(&w.element, &zero, &e2, &b2).unwrap(), zero);
            }
            other => panic!("expected equivalence, got {other:?}"),
        }
        // derived pair: 0 vs β'(x,x) = -2 y ⊗ e
        let mut beta2 = Cochain::zero(2, 2, 2);
        beta2.set(vec![0, 0], Elem::basis(2, 2, 1, 1).scale(&Rat::from_int(-2)));
        match gauge_equivalent(&zero, &beta2, &e2, &b2, &opts).unwrap() {
            GaugeVerdict::Equivalent(w) => {
                assert_eq!(act_assoc(&w.element, &zero, &e2, &b2).unwrap(), beta2);
            }
            other => panic!("expected equivalence, got {other:?}"),
        }
    }

    #[test]
    fn equivalence_obstruction_on_zero_algebra() {
        // over the zero product every Hochschild differential vanishes, so
        // 0 and β(x,x) = x ⊗ e cannot be gauge equivalent
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let mut beta = Cochain::zero(2, 1, 2);
        beta.set(vec![0, 0], Elem::basis(1, 2, 0, 1));
        let verdict =
            gauge_equivalent(&Cochain::zero(2, 1, 2), &beta, &e1, &b2, &EquivOptions::default())
                .unwrap();
        assert!(matches!(verdict, GaugeVerdict::Inequivalent));
    }

    #[test]
    fn equivalence_over_deeper_base() {
        // derived pairs over k[e]/(e^3) exercise the nonlinear fallback
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let e2 = fixtures::truncated_polynomial(2);
        let b3 = fixtures::jet_base(2);
        let opts = EquivOptions::default();
        let mut equivalences = 0;
        for _ in 0..8 {
            let f = random_generator(&mut rng, &e2, &b3);
            let phi = exp_assoc(&f, &e2, &b3).unwrap();
            let zero = Cochain::zero(2, 2, 3);
            let beta = act_assoc(&phi, &zero, &e2, &b3).unwrap();
            match gauge_equivalent(&zero, &beta, &e2, &b3, &opts).unwrap() {
                GaugeVerdict::Equivalent(w) => {
                    assert_eq!(act_assoc(&w.element, &zero, &e2, &b3).unwrap(), beta);
                    equivalences += 1;
                }
                GaugeVerdict::Inconclusive => {}
                GaugeVerdict::Inequivalent => panic!("derived pair declared inequivalent"),
            }
        }
        assert!(equivalences >= 4, "solver should close most derived pairs");
    }

    /// The derivation acting letterwise through a linear map sending the
    /// algebra basis letter `from` to `to ⊗ b_{coeff}`.
    fn letterwise_derivation(
        alg: &FiniteAlgebra,
        base: &ArtinLocalAlgebra,
        bound: usize,
        from: usize,
        to: usize,
        coeff: usize,
    ) -> Derivation {
        let mut values = BTreeMap::new();
        for n in 1..=bound {
            for letters in crate::hochschild::all_tuples(alg.dim, n) {
                let mut sum = FormalSum::zero(base.dim);
                for (pos, &letter) in letters.iter().enumerate() {
                    if letter == from {
                        let mut replaced = letters.clone();
                        replaced[pos] = to;
                        let mut c = zero_vec(base.dim);
                        c[coeff] = Rat::one();
                        sum.add_term(CobarWord::generator(replaced), c);
                    }
                }
                if !sum.is_zero() {
                    values.insert(BarWord(letters), sum);
                }
            }
        }
        Derivation::new(0, base.dim, values).unwrap()
    }

    #[test]
    fn relational_exp_log_roundtrip() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let b3 = fixtures::jet_base(2);
        let bound = 3;
        for base in [&b2, &b3] {
            for (from, to) in [(0, 0), (0, 1), (1, 0)] {
                let f = letterwise_derivation(&e2, base, bound, from, to, 1);
                let phi = exp_rel(&f, &e2, base, bound).unwrap();
                let g = log_rel(&phi, &e2, base, bound).unwrap();
                assert_eq!(g, f);
            }
        }
    }

    #[test]
    fn relational_action_preserves_mc() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let bound = 3;
        let mut beta = Cochain::zero(2, 2, 2);
        beta.set(vec![0, 0], Elem::basis(2, 2, 0, 1));
        let delta = crate::relations::delta_of_beta(&beta, &e2, &b2, bound).unwrap();
        let f = letterwise_derivation(&e2, &b2, bound, 0, 1, 1);
        let phi = exp_rel(&f, &e2, &b2, bound).unwrap();
        let acted = act_rel(&phi, &delta, &e2, &b2, bound).unwrap();
        assert!(mc_rel_check(&acted, &e2, &b2, bound).unwrap().passed);
    }
}
