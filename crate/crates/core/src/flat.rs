//! Flat deformations over Artin local bases: flatness certification by
//! basis lifting, the packaging of a deformed product as a flat algebra,
//! the constructive inverse recovering a deformation cochain from a flat
//! algebra, equivalence of flat deformations, and the commuting-triangle
//! verifier tying the three pictures together.
//!
//! Over an Artin local base flat is the same as free, so flatness is
//! certified by lifting a basis of the special fibre and counting
//! dimensions; the lift is chosen deterministically (echelon-least), and
//! different lifts differ by gauge, which the tests exploit.

use crate::algebra::{ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exact::{
    dense_inverse, dense_mul, dense_mul_vec, solve_linear, vec_is_zero, zero_vec, Echelon, Rat,
    SparseMatrix,
};
use crate::gauge::{gauge_equivalent, EquivOptions, GaugeVerdict};
use crate::hochschild::{Cochain, HochschildCtx};
use crate::relations::{delta_of_beta, h0_compute, mc_rel_check, H0};

/// A `B`-algebra together with its reduction onto `A`: the `B`-module
/// structure as one carrier endomorphism per base basis vector, the
/// product as structure constants over the ground field, and the
/// `B`-linear surjection realising the identification of the special fibre.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatDeformation {
    pub carrier_dim: usize,
    pub b_action: Vec<Vec<Vec<Rat>>>,
    pub mul: Vec<Vec<Vec<Rat>>>,
    pub reduction: Vec<Vec<Rat>>,
}

/// The lifted basis certifying freeness.
#[derive(Clone, Debug)]
pub struct FlatWitness {
    pub lifts: Vec<Vec<Rat>>,
}

impl FlatDeformation {
    fn action(&self, j: usize) -> &Vec<Vec<Rat>> {
        &self.b_action[j]
    }

    pub fn mul_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.carrier_dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                crate::exact::vec_add_scaled(&mut out, &self.mul[i][j], &(xi * yj));
            }
        }
        out
    }

    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        dense_mul_vec(&self.reduction, v)
    }

    /// Validates the structural invariants: a unital commutative module
    /// structure, a `B`-bilinear associative product, and a reduction that
    /// is `B`-linear (the maximal ideal acts as zero downstairs) and
    /// induces an algebra isomorphism of the special fibre.
    pub fn validate(&self, alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Result<()> {
        let n = self.carrier_dim;
        let bad = |msg: &str| Err(Error::InvalidInput(format!("flat deformation: {msg}")));
        if self.b_action.len() != base.dim
            || self.b_action.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n))
        {
            return bad("base action has the wrong shape");
        }
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("structure constants have the wrong shape");
        }
        if self.reduction.len() != alg.dim || self.reduction.iter().any(|r| r.len() != n) {
            return bad("reduction has the wrong shape");
        }
        if self.b_action[0] != crate::exact::dense_identity(n) {
            return bad("the unit of the base must act as the identity");
        }
        for p in 0..base.dim {
            for q in 0..base.dim {
                let lhs = dense_mul(self.action(p), self.action(q));
                let mut rhs = vec![zero_vec(n); n];
                for (r, c) in base.mul[p][q].iter().enumerate() {
                    if !c.is_zero() {
                        for (row_out, row_in) in rhs.iter_mut().zip(self.action(r)) {
                            crate::exact::vec_add_scaled(row_out, row_in, c);
                        }
                    }
                }
                if lhs != rhs {
                    return bad("base action is not an algebra homomorphism");
                }
            }
        }
        // B-bilinearity of the product on basis vectors
        for j in 1..base.dim {
            let act = self.action(j);
            for u in 0..n {
                for v in 0..n {
                    let through = dense_mul_vec(act, &self.mul[u][v]);
                    let left = self.mul_vec(&column(act, u), &unit(n, v));
                    let right = self.mul_vec(&unit(n, u), &column(act, v));
                    if through != left || through != right {
                        return bad("product is not B-bilinear");
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let left = self.mul_vec(&self.mul[i][j], &unit(n, l));
                    let right = self.mul_vec(&unit(n, i), &self.mul[j][l]);
                    if left != right {
                        return bad("product is not associative");
                    }
                }
            }
        }
        // the maximal ideal acts as zero through the reduction
        for j in 1..base.dim {
            let composed = mat_mul_rect(&self.reduction, self.action(j));
            if composed.iter().any(|r| !vec_is_zero(r)) {
                return bad("reduction is not B-linear (m must act as zero on the fibre)");
            }
        }
        // the reduction is an algebra map onto A
        for i in 0..n {
            for j in 0..n {
                let down = self.reduce(&self.mul[i][j]);
                let up = alg.product_vec(&self.reduce(&unit(n, i)), &self.reduce(&unit(n, j)));
                if down != up {
                    return bad("reduction is not an algebra map");
                }
            }
        }
        // m Ã must exhaust the kernel of the reduction
        let mut m_span = Echelon::new(n);
        for j in 1..base.dim {
            for v in 0..n {
                m_span.insert(&column(self.action(j), v));
            }
        }
        let red_rank = {
            let mut mat = SparseMatrix::new(alg.dim, n);
            for (r, row) in self.reduction.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(r, c, x.clone());
                    }
                }
            }
            crate::exact::rank(&mat)
        };
        if red_rank == alg.dim && m_span.rank() != n - alg.dim {
            return bad("kernel of the reduction is not m times the carrier");
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    crate::exact::unit_vec(n, i)
}

fn column(mat: &[Vec<Rat>], c: usize) -> Vec<Rat> {
    mat.iter().map(|r| r[c].clone()).collect()
}

fn mat_mul_rect(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    dense_mul(a, b)
}

/// Certifies freeness by lifting a basis of `A` through the reduction and
/// checking that the base orbit of the lifts is a basis of the carrier.
/// A non-surjective reduction is an invalid input, distinct from "not flat".
pub fn flatness_check(
    t: &FlatDeformation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<FlatWitness> {
    t.validate(alg, base)?;
    let n = t.carrier_dim;
    let mut red = SparseMatrix::new(alg.dim, n);
    for (r, row) in t.reduction.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                red.set(r, c, x.clone());
            }
        }
    }
    let mut lifts = Vec::with_capacity(alg.dim);
    for i in 0..alg.dim {
        let rhs = unit(alg.dim, i);
        let Some(sol) = solve_linear(&red, &rhs)? else {
            return Err(Error::InvalidInput("reduction is not surjective".into()));
        };
        lifts.push(sol.particular);
    }
    if n != alg.dim * base.dim {
        return Err(Error::NotFlat(format!(
            "carrier dimension {n} differs from dim A * dim B = {}",
            alg.dim * base.dim
        )));
    }
    let mut span = Echelon::new(n);
    for lift in &lifts {
        for j in 0..base.dim {
            span.insert(&dense_mul_vec(t.action(j), lift));
        }
    }
    if span.rank() != n {
        return Err(Error::NotFlat("base orbit of the lifted basis does not span".into()));
    }
    Ok(FlatWitness { lifts })
}

/// Packages a multiplication table on `A ⊗ B` (structure constants as
/// elements of `A ⊗ B` per basis pair of `A`) as a flat deformation on the
/// standard free carrier.
pub fn from_extended_table(
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    table: &[Vec<Elem>],
) -> Result<FlatDeformation> {
    let n = alg.dim * base.dim;
    let flat_index = |i: usize, p: usize| i * base.dim + p;
    let mut b_action = vec![vec![zero_vec(n); n]; base.dim];
    for (q, action) in b_action.iter_mut().enumerate() {
        for i in 0..alg.dim {
            for p in 0..base.dim {
                for (r, c) in base.mul[p][q].iter().enumerate() {
                    action[flat_index(i, r)][flat_index(i, p)] = c.clone();
                }
            }
        }
    }
    let mut mul = vec![vec![zero_vec(n); n]; n];
    for i in 0..alg.dim {
        for p in 0..base.dim {
            for j in 0..alg.dim {
                for q in 0..base.dim {
                    let b_part = base.mul_vec(&unit(base.dim, p), &unit(base.dim, q));
                    let product = table[i][j].mul_b(&b_part, base);
                    mul[flat_index(i, p)][flat_index(j, q)] = product.flat();
                }
            }
        }
    }
    let mut reduction = vec![zero_vec(n); alg.dim];
    for (i, row) in reduction.iter_mut().enumerate() {
        row[flat_index(i, 0)] = Rat::one();
    }
    let t = FlatDeformation { carrier_dim: n, b_action, mul, reduction };
    t.validate(alg, base)?;
    Ok(t)
}

/// The deformed product as a flat deformation: `(A ⊗ B, α + β)` with the
/// canonical module structure and reduction.
pub fn functor_f(
    beta: &Cochain,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<FlatDeformation> {
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(beta)?.passed {
        return Err(Error::NotMaurerCartan);
    }
    let table: Vec<Vec<Elem>> = (0..alg.dim)
        .map(|i| {
            (0..alg.dim)
                .map(|j| {
                    let mut e = Elem::from_a_vec(alg.product(i, j), base.dim);
                    e.add_assign(&beta.value(&[i, j]));
                    e
                })
                .collect()
        })
        .collect();
    from_extended_table(alg, base, &table)
}

/// Recovers a deformation of the product from a flat deformation: choose a
/// module identification with `A ⊗ B` by lifting a basis, transport the
/// product, and subtract the undeformed one.  Deterministic through the
/// echelon-least lift; other lifts differ by gauge.
pub fn flat_to_mc(
    t: &FlatDeformation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Cochain> {
    let witness = flatness_check(t, alg, base)?;
    let transport = transport_matrix(t, base, &witness);
    let inverse = dense_inverse(&transport)
        .map_err(|_| Error::Internal("transport of a flat deformation must be invertible".into()))?;
    let mut beta = Cochain::zero(2, alg.dim, base.dim);
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let product = t.mul_vec(&witness.lifts[i], &witness.lifts[j]);
            let pulled = Elem::from_flat(&dense_mul_vec(&inverse, &product), alg.dim, base.dim);
            let value = pulled.sub(&Elem::from_a_vec(alg.product(i, j), base.dim));
            beta.set(vec![i, j], value);
        }
    }
    beta.require_m_only()
        .map_err(|_| Error::Internal("transported deformation must be m-valued".into()))?;
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(&beta)?.passed {
        return Err(Error::Internal("transported deformation is not Maurer-Cartan".into()));
    }
    Ok(beta)
}

/// The module identification `A ⊗ B -> carrier` sending `e_i ⊗ b_j` to
/// `b_j * lift_i`.
fn transport_matrix(
    t: &FlatDeformation,
    base: &ArtinLocalAlgebra,
    witness: &FlatWitness,
) -> Vec<Vec<Rat>> {
    let n = t.carrier_dim;
    let mut mat = vec![zero_vec(n); n];
    for (i, lift) in witness.lifts.iter().enumerate() {
        for j in 0..base.dim {
            let image = dense_mul_vec(t.action(j), lift);
            for (r, x) in image.into_iter().enumerate() {
                mat[r][i * base.dim + j] = x;
            }
        }
    }
    mat
}

/// Verdict of flat equivalence; the witness is the `B`-algebra isomorphism
/// as a carrier matrix, verified against the commuting-reduction diagram
/// before being returned.
#[derive(Clone, Debug)]
pub enum FlatVerdict {
    Equivalent(Vec<Vec<Rat>>),
    Inequivalent,
    Inconclusive,
}

/// Reduces flat equivalence to gauge equivalence of the transported
/// deformations and re-assembles the isomorphism from the gauge witness
/// and the two transports.
pub fn flat_equivalent(
    t1: &FlatDeformation,
    t2: &FlatDeformation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    opts: &EquivOptions,
) -> Result<FlatVerdict> {
    let w1 = flatness_check(t1, alg, base)?;
    let w2 = flatness_check(t2, alg, base)?;
    let beta1 = flat_to_mc(t1, alg, base)?;
    let beta2 = flat_to_mc(t2, alg, base)?;
    match gauge_equivalent(&beta1, &beta2, alg, base, opts)? {
        GaugeVerdict::Inequivalent => Ok(FlatVerdict::Inequivalent),
        GaugeVerdict::Inconclusive => Ok(FlatVerdict::Inconclusive),
        GaugeVerdict::Equivalent(witness) => {
            let transport1 = transport_matrix(t1, base, &w1);
            let transport2 = transport_matrix(t2, base, &w2);
            let inner = dense_mul(&witness.element.matrix, &dense_inverse(&transport1)?);
            let phi = dense_mul(&transport2, &inner);
            verify_flat_isomorphism(&phi, t1, t2, base)?;
            Ok(FlatVerdict::Equivalent(phi))
        }
    }
}

/// Checks that `phi` is a `B`-algebra isomorphism commuting with the two
/// reductions.
pub fn verify_flat_isomorphism(
    phi: &[Vec<Rat>],
    t1: &FlatDeformation,
    t2: &FlatDeformation,
    base: &ArtinLocalAlgebra,
) -> Result<()> {
    let n = t1.carrier_dim;
    let fail = |msg: &str| Err(Error::Internal(format!("flat equivalence witness: {msg}")));
    if dense_inverse(phi).is_err() {
        return fail("not invertible");
    }
    for j in 0..base.dim {
        let lhs = dense_mul(phi, t1.action(j));
        let rhs = dense_mul(t2.action(j), phi);
        if lhs != rhs {
            return fail("not B-linear");
        }
    }
    for u in 0..n {
        for v in 0..n {
            let through = dense_mul_vec(phi, &t1.mul[u][v]);
            let outside = t2.mul_vec(&column(phi, u), &column(phi, v));
            if through != outside {
                return fail("not an algebra map");
            }
        }
    }
    let lhs = mat_mul_rect(&t2.reduction, phi);
    if lhs != t1.reduction {
        return fail("does not commute with the reductions");
    }
    Ok(())
}

/// Per-stage outcome of the commuting-triangle verification.
#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub passed: bool,
    pub failed_stage: Option<String>,
    pub h0_dim: Option<usize>,
    /// Structure constants of the homology match the deformed product.
    pub h0_matches_product: Option<bool>,
    /// The isomorphism between the two flat packages.
    pub isomorphism: Option<Vec<Vec<Rat>>>,
    /// Agreement of the homology computation at `bound` and `bound + 1`.
    pub stable: Option<bool>,
}

impl TriangleReport {
    fn failed(stage: &str) -> Self {
        TriangleReport {
            passed: false,
            failed_stage: Some(stage.to_string()),
            h0_dim: None,
            h0_matches_product: None,
            isomorphism: None,
            stable: None,
        }
    }
}

fn h0_for(beta: &Cochain, alg: &FiniteAlgebra, base: &ArtinLocalAlgebra, bound: usize) -> Result<H0> {
    let delta = delta_of_beta(beta, alg, base, bound)?;
    h0_compute(&delta, alg, base, bound)
}

/// Runs the whole comparison for one deformation: Maurer-Cartan check,
/// induced perturbation of the resolution differential, perturbed
/// differential check, degree-zero homology with its induced product, and
/// equivalence of the two flat packages.  With `check_stability` the
/// homology is recomputed at `bound + 1` and compared.
pub fn verify_triangle(
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    beta: &Cochain,
    bound: usize,
    check_stability: bool,
) -> Result<TriangleReport> {
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(beta)?.passed {
        return Ok(TriangleReport::failed("mc-check"));
    }
    let delta = delta_of_beta(beta, alg, base, bound)?;
    if !mc_rel_check(&delta, alg, base, bound)?.passed {
        return Ok(TriangleReport::failed("mc-rel-check"));
    }
    let h0 = match h0_compute(&delta, alg, base, bound) {
        Ok(h0) => h0,
        Err(_) => return Ok(TriangleReport::failed("h0")),
    };
    let mut report = TriangleReport {
        passed: false,
        failed_stage: None,
        h0_dim: Some(h0.dim_k),
        h0_matches_product: None,
        isomorphism: None,
        stable: None,
    };
    if h0.dim_k != alg.dim * base.dim {
        report.failed_stage = Some("h0-dimension".into());
        return Ok(report);
    }
    // the homology product must match α + β on the distinguished basis
    let mut matches = true;
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let mut expected = Elem::from_a_vec(alg.product(i, j), base.dim);
            expected.add_assign(&beta.value(&[i, j]));
            if h0.mul[i][j] != expected {
                matches = false;
            }
        }
    }
    report.h0_matches_product = Some(matches);
    if !matches {
        report.failed_stage = Some("h0-product".into());
        return Ok(report);
    }
    let deformed = functor_f(beta, alg, base)?;
    let homology = from_extended_table(alg, base, &h0.mul)?;
    match flat_equivalent(&deformed, &homology, alg, base, &EquivOptions::default())? {
        FlatVerdict::Equivalent(phi) => {
            report.isomorphism = Some(phi);
        }
        _ => {
            report.failed_stage = Some("flat-equivalence".into());
            return Ok(report);
        }
    }
    if check_stability {
        let wider = h0_for(beta, alg, base, bound + 1)?;
        let stable = wider.dim_k == h0.dim_k && wider.mul == h0.mul;
        report.stable = Some(stable);
        if !stable {
            report.failed_stage = Some("truncation-stability".into());
            return Ok(report);
        }
    }
    report.passed = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn beta_xx(alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Cochain {
        let mut b = Cochain::zero(2, alg.dim, base.dim);
        b.set(vec![0, 0], Elem::basis(alg.dim, base.dim, 0, 1));
        b
    }

    #[test]
    fn functor_f_is_flat() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let t = functor_f(&Cochain::zero(2, 1, 2), &e1, &b2).unwrap();
        assert!(flatness_check(&t, &e1, &b2).is_ok());
        let t = functor_f(&beta_xx(&e1, &b2), &e1, &b2).unwrap();
        let witness = flatness_check(&t, &e1, &b2).unwrap();
        assert_eq!(witness.lifts.len(), 1);
        // the packaged product realises x * x = e x on the free rank-one module
        assert_eq!(t.mul[0][0], vec![Rat::zero(), Rat::one()]);
    }

    #[test]
    fn non_flat_by_dimension_count() {
        // the carrier A with the base acting through B/m
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let t = FlatDeformation {
            carrier_dim: 1,
            b_action: vec![vec![vec![Rat::one()]], vec![vec![Rat::zero()]]],
            mul: vec![vec![vec![Rat::zero()]]],
            reduction: vec![vec![Rat::one()]],
        };
        assert!(matches!(flatness_check(&t, &e1, &b2), Err(Error::NotFlat(_))));
    }

    #[test]
    fn non_surjective_reduction_is_invalid_input() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let mut t = functor_f(&Cochain::zero(2, 1, 2), &e1, &b2).unwrap();
        t.reduction = vec![zero_vec(2)];
        assert!(matches!(flatness_check(&t, &e1, &b2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn flat_to_mc_recovers_standard_package() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let t = functor_f(&Cochain::zero(2, 1, 2), &e1, &b2).unwrap();
        assert!(flat_to_mc(&t, &e1, &b2).unwrap().is_zero());
        // explicit free rank-one module with x * x = e x
        let beta = beta_xx(&e1, &b2);
        let t = functor_f(&beta, &e1, &b2).unwrap();
        assert_eq!(flat_to_mc(&t, &e1, &b2).unwrap(), beta);
    }

    #[test]
    fn flat_to_mc_of_scrambled_carrier_is_gauge_equivalent() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let beta = beta_xx(&e2, &b2);
        let t = functor_f(&beta, &e2, &b2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..5 {
            // conjugate the whole structure by a random invertible matrix
            let n = t.carrier_dim;
            let s = loop {
                let cand: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..n).map(|_| Rat::from_int(rng.gen_range(-2i64..3))).collect())
                    .collect();
                if let Ok(inv) = dense_inverse(&cand) {
                    break (cand, inv);
                }
            };
            let (s_mat, s_inv) = s;
            let scrambled = FlatDeformation {
                carrier_dim: n,
                b_action: t
                    .b_action
                    .iter()
                    .map(|a| dense_mul(&dense_mul(&s_mat, a), &s_inv))
                    .collect(),
                mul: {
                    let mut mul = vec![vec![zero_vec(n); n]; n];
                    #[allow(clippy::needless_range_loop)]
                    for i in 0..n {
                        for j in 0..n {
                            let u = column(&s_inv, i);
                            let v = column(&s_inv, j);
                            mul[i][j] = dense_mul_vec(&s_mat, &t.mul_vec(&u, &v));
                        }
                    }
                    mul
                },
                reduction: mat_mul_rect(&t.reduction, &s_inv),
            };
            let recovered = flat_to_mc(&scrambled, &e2, &b2).unwrap();
            let verdict =
                gauge_equivalent(&beta, &recovered, &e2, &b2, &EquivOptions::default()).unwrap();
            assert!(matches!(verdict, GaugeVerdict::Equivalent(_)));
        }
    }

    #[test]
    fn flat_equivalence_examples() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let opts = EquivOptions::default();
        // a deformation is equivalent to itself with the identity
        let t = functor_f(&beta_xx(&e2, &b2), &e2, &b2).unwrap();
        match flat_equivalent(&t, &t, &e2, &b2, &opts).unwrap() {
            FlatVerdict::Equivalent(phi) => {
                verify_flat_isomorphism(&phi, &t, &t, &b2).unwrap();
            }
            other => panic!("expected equivalence, got {other:?}"),
        }
        // the derived gauge pair stays equivalent after packaging
        let mut beta2 = Cochain::zero(2, 2, 2);
        beta2.set(vec![0, 0], Elem::basis(2, 2, 1, 1).scale(&Rat::from_int(-2)));
        let t1 = functor_f(&Cochain::zero(2, 2, 2), &e2, &b2).unwrap();
        let t2 = functor_f(&beta2, &e2, &b2).unwrap();
        match flat_equivalent(&t1, &t2, &e2, &b2, &opts).unwrap() {
            FlatVerdict::Equivalent(phi) => {
                verify_flat_isomorphism(&phi, &t1, &t2, &b2).unwrap();
            }
            other => panic!("expected equivalence, got {other:?}"),
        }
        // the obstructed pair on the zero algebra is inequivalent
        let e1 = fixtures::zero_algebra(1);
        let u1 = functor_f(&Cochain::zero(2, 1, 2), &e1, &b2).unwrap();
        let u2 = functor_f(&beta_xx(&e1, &b2), &e1, &b2).unwrap();
        assert!(matches!(
            flat_equivalent(&u1, &u2, &e1, &b2, &opts).unwrap(),
            FlatVerdict::Inequivalent
        ));
    }

    #[test]
    fn triangle_worked_examples() {
        let b2 = fixtures::dual_numbers();
        for alg in [fixtures::zero_algebra(1), fixtures::truncated_polynomial(2)] {
            let beta = beta_xx(&alg, &b2);
            let report = verify_triangle(&alg, &b2, &beta, 3, true).unwrap();
            assert!(report.passed, "triangle failed at {:?}", report.failed_stage);
            assert_eq!(report.h0_dim, Some(alg.dim * 2));
            assert_eq!(report.h0_matches_product, Some(true));
            assert_eq!(report.stable, Some(true));
        }
    }

    #[test]
    fn triangle_undeformed() {
        let e2 = fixtures::truncated_polynomial(2);
        let b3 = fixtures::jet_base(2);
        let report = verify_triangle(&e2, &b3, &Cochain::zero(2, 2, 3), 3, false).unwrap();
        assert!(report.passed);
        assert_eq!(report.h0_dim, Some(6));
    }
}
