//! The DG Lie algebra of coderivations of the bar coalgebra: cochains, the
//! bar codifferential, the Gerstenhaber bracket, the Hochschild
//! differential and cohomology, and the Maurer-Cartan verifier.
//!
//! A cochain of arity `n` is a map `A^{⊗n} -> A ⊗ B`.  It determines a
//! coderivation component on the bar coalgebra of `A`; brackets are graded
//! commutators of the coderivation extensions, computed component-wise with
//! the Koszul sign `(-1)^{|q| j}` for inserting a component of degree
//! `|q| = arity(q) - 1` after `j` letters.
//!
//! Deformation-style convention: an arity-2 cochain `β` stores the bilinear
//! map that is *added to the product*, so the Maurer-Cartan residual is
//! computed on the induced codifferential perturbation `-β` (the same
//! dressing that turns the product `α` into the bar codifferential).  With
//! this calibration `mc_check(β)` holds exactly when `α + β` is associative
//! on `A ⊗ B`, which the tests enforce as the central oracle.

use std::collections::BTreeMap;

use crate::algebra::{extended_mul, ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Rat, SparseMatrix};

/// Default truncation bound on coderivation arities.
pub const DEFAULT_MAX_ARITY: usize = 5;

/// An element of `Hom(A^{⊗n}, A ⊗ B)`, stored sparsely on basis tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub arity: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    values: BTreeMap<Vec<usize>, Elem>,
    m_only: bool,
}

impl Cochain {
    pub fn zero(arity: usize, dim_a: usize, dim_b: usize) -> Self {
        Cochain { arity, dim_a, dim_b, values: BTreeMap::new(), m_only: true }
    }

    pub fn new(arity: usize, dim_a: usize, dim_b: usize, values: BTreeMap<Vec<usize>, Elem>) -> Result<Self> {
        assert!(arity >= 1, "cochain arity must be at least 1");
        let mut pruned = BTreeMap::new();
        for (tuple, v) in values {
            if tuple.len() != arity {
                return Err(Error::InvalidInput(format!(
                    "value tuple {tuple:?} does not have arity {arity}"
                )));
            }
            if tuple.iter().any(|&i| i >= dim_a) {
                return Err(Error::InvalidInput(format!("tuple {tuple:?} out of range")));
            }
            if v.dim_a() != dim_a || v.dim_b() != dim_b {
                return Err(Error::Dimension("cochain value has wrong shape".into()));
            }
            if !v.is_zero() {
                pruned.insert(tuple, v);
            }
        }
        let m_only = pruned.values().all(Elem::in_m);
        Ok(Cochain { arity, dim_a, dim_b, values: pruned, m_only })
    }

    pub fn set(&mut self, tuple: Vec<usize>, v: Elem) {
        assert_eq!(tuple.len(), self.arity);
        if v.is_zero() {
            self.values.remove(&tuple);
        } else {
            self.m_only &= v.in_m();
            self.values.insert(tuple, v);
        }
    }

    pub fn value(&self, tuple: &[usize]) -> Elem {
        self.values
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| Elem::zero(self.dim_a, self.dim_b))
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &Elem)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether every value lies in `A ⊗ m`.
    pub fn m_only(&self) -> bool {
        self.m_only
    }

    pub fn require_m_only(&self) -> Result<()> {
        if self.m_only {
            Ok(())
        } else {
            Err(Error::InvalidInput("cochain values must lie in A ⊗ m".into()))
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (t, v) in &other.values {
            let merged = out.value(t).add(v);
            out.set(t.clone(), merged);
        }
        out.recompute_m_only();
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.arity, self.dim_a, self.dim_b);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.values {
            out.set(t.clone(), v.scale(c));
        }
        out
    }

    fn recompute_m_only(&mut self) {
        self.m_only = self.values.values().all(Elem::in_m);
    }

    /// Multilinear evaluation with arbitrary `A ⊗ B` arguments, extending
    /// `B`-linearly in every slot.
    pub fn eval_elems(&self, args: &[&Elem], alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Elem {
        assert_eq!(args.len(), self.arity);
        let mut out = Elem::zero(alg.dim, base.dim);
        let mut tuple = vec![0usize; self.arity];
        self.eval_rec(args, 0, &mut tuple, &Rat::one(), &crate::exact::unit_vec(base.dim, 0), base, &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[&Elem],
        slot: usize,
        tuple: &mut Vec<usize>,
        coeff: &Rat,
        b_acc: &[Rat],
        base: &ArtinLocalAlgebra,
        out: &mut Elem,
    ) {
        if slot == self.arity {
            let v = match self.values.get(tuple.as_slice()) {
                Some(v) => v,
                None => return,
            };
            let scaled = v.mul_b(b_acc, base).scale(coeff);
            out.add_assign(&scaled);
            return;
        }
        let arg = args[slot];
        for (i, row) in arg.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                tuple[slot] = i;
                let coeff2 = coeff * c;
                let b_acc2 = base.mul_vec(b_acc, &crate::exact::unit_vec(base.dim, j));
                if crate::exact::vec_is_zero(&b_acc2) {
                    continue;
                }
                self.eval_rec(args, slot + 1, tuple, &coeff2, &b_acc2, base, out);
            }
        }
    }
}

/// A coderivation recorded by its components of distinct arities.
#[derive(Clone, Debug, PartialEq)]
pub struct Coderivation {
    pub components: BTreeMap<usize, Cochain>,
}

impl Coderivation {
    pub fn zero() -> Self {
        Coderivation { components: BTreeMap::new() }
    }

    pub fn from_cochain(c: Cochain) -> Self {
        let mut components = BTreeMap::new();
        if !c.is_zero() {
            components.insert(c.arity, c);
        }
        Coderivation { components }
    }

    pub fn component(&self, arity: usize) -> Option<&Cochain> {
        self.components.get(&arity)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Cochain::is_zero)
    }

    fn add_component(&mut self, c: Cochain) {
        if c.is_zero() {
            return;
        }
        match self.components.remove(&c.arity) {
            None => {
                self.components.insert(c.arity, c);
            }
            Some(existing) => {
                let sum = existing.add(&c);
                if !sum.is_zero() {
                    self.components.insert(c.arity, sum);
                }
            }
        }
    }
}

/// Evaluation context: the algebra, the base, and the arity truncation
/// bound for brackets.
pub struct HochschildCtx<'a> {
    pub alg: &'a FiniteAlgebra,
    pub base: &'a ArtinLocalAlgebra,
    pub max_arity: usize,
}

/// Result of the Maurer-Cartan verifier: the residual is kept on failure.
#[derive(Clone, Debug)]
pub struct McOutcome {
    pub passed: bool,
    pub residual: Option<Cochain>,
}

impl<'a> HochschildCtx<'a> {
    pub fn new(alg: &'a FiniteAlgebra, base: &'a ArtinLocalAlgebra) -> Self {
        HochschildCtx { alg, base, max_arity: DEFAULT_MAX_ARITY }
    }

    pub fn with_max_arity(alg: &'a FiniteAlgebra, base: &'a ArtinLocalAlgebra, max_arity: usize) -> Self {
        HochschildCtx { alg, base, max_arity }
    }

    /// The bar codifferential: the single arity-2 component
    /// `(e_i, e_j) -> -(e_i e_j) ⊗ 1`.
    pub fn bar_codifferential(&self) -> Coderivation {
        Coderivation::from_cochain(self.codifferential_component())
    }

    fn codifferential_component(&self) -> Cochain {
        let (na, nb) = (self.alg.dim, self.base.dim);
        let mut q = Cochain::zero(2, na, nb);
        for i in 0..na {
            for j in 0..na {
                let prod = self.alg.product(i, j);
                if !crate::exact::vec_is_zero(prod) {
                    let v: Vec<Rat> = prod.iter().map(|c| -c).collect();
                    q.set(vec![i, j], Elem::from_a_vec(&v, nb));
                }
            }
        }
        q
    }

    /// The insertion composite `p ∘ q`: sum over positions `j` of inserting
    /// `q` after `j` letters, with the Koszul sign `(-1)^{(arity(q)-1) j}`.
    pub fn compose_cochain(&self, p: &Cochain, q: &Cochain) -> Result<Cochain> {
        let arity = p.arity + q.arity - 1;
        if arity > self.max_arity {
            return Err(Error::Truncation { arity, max: self.max_arity });
        }
        let (na, nb) = (self.alg.dim, self.base.dim);
        let mut out = Cochain::zero(arity, na, nb);
        let q_deg_odd = (q.arity - 1) % 2 == 1;
        for tuple in all_tuples(na, arity) {
            for j in 0..p.arity {
                let sign_neg = q_deg_odd && j % 2 == 1;
                let inner = q.value(&tuple[j..j + q.arity]);
                if inner.is_zero() {
                    continue;
                }
                // p(prefix, inner, suffix), extended B-linearly in the slot
                let mut acc = Elem::zero(na, nb);
                for (l, row) in inner.coeffs.iter().enumerate() {
                    for (mcol, c) in row.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut full = Vec::with_capacity(p.arity);
                        full.extend_from_slice(&tuple[..j]);
                        full.push(l);
                        full.extend_from_slice(&tuple[j + q.arity..]);
                        let pv = p.value(&full);
                        if pv.is_zero() {
                            continue;
                        }
                        let term = pv
                            .mul_b(&crate::exact::unit_vec(nb, mcol), self.base)
                            .scale(c);
                        acc.add_assign(&term);
                    }
                }
                if !acc.is_zero() {
                    if sign_neg {
                        acc = acc.neg();
                    }
                    let merged = out.value(&tuple).add(&acc);
                    out.set(tuple.clone(), merged);
                }
            }
        }
        out.recompute_m_only();
        Ok(out)
    }

    /// Graded commutator of two components.
    pub fn bracket_cochain(&self, p: &Cochain, q: &Cochain) -> Result<Cochain> {
        let pq = self.compose_cochain(p, q)?;
        let qp = self.compose_cochain(q, p)?;
        let sign_neg = ((p.arity - 1) * (q.arity - 1)) % 2 == 0;
        // [p, q] = p∘q - (-1)^{|p||q|} q∘p
        Ok(if sign_neg { pq.sub(&qp) } else { pq.add(&qp) })
    }

    /// Graded commutator of coderivations, component by component.
    pub fn bracket(&self, p: &Coderivation, q: &Coderivation) -> Result<Coderivation> {
        let mut out = Coderivation::zero();
        for pc in p.components.values() {
            for qc in q.components.values() {
                out.add_component(self.bracket_cochain(pc, qc)?);
            }
        }
        Ok(out)
    }

    /// The Hochschild differential `c -> [Q, c]`.
    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        self.bracket_cochain(&self.codifferential_component(), c)
    }

    /// The codifferential perturbation induced by adding `beta` to the
    /// product; the arity-2 analogue of the dressing that produces the bar
    /// codifferential from the product itself.
    pub fn dress_deformation(&self, beta: &Cochain) -> Cochain {
        beta.neg()
    }

    /// The Maurer-Cartan residual `d(u) + [u, u]/2` of the dressed
    /// perturbation `u`; vanishes exactly when `α + β` is associative.
    pub fn mc_residual(&self, beta: &Cochain) -> Result<Cochain> {
        if beta.arity != 2 {
            return Err(Error::InvalidInput("Maurer-Cartan elements have arity 2".into()));
        }
        let u = self.dress_deformation(beta);
        let linear = self.differential(&u)?;
        let quadratic = self.bracket_cochain(&u, &u)?.scale(&Rat::new(1, 2));
        Ok(linear.add(&quadratic))
    }

    /// Checks `d(β) + [β, β]/2 = 0` on all arity-3 basis tuples, returning
    /// the residual on failure.
    pub fn mc_check(&self, beta: &Cochain) -> Result<McOutcome> {
        beta.require_m_only()?;
        let residual = self.mc_residual(beta)?;
        if residual.is_zero() {
            Ok(McOutcome { passed: true, residual: None })
        } else {
            Ok(McOutcome { passed: false, residual: Some(residual) })
        }
    }

    /// The deformed product `γ = α + β` on `A ⊗ B`.
    pub fn deformed_product(&self, beta: &Cochain, x: &Elem, y: &Elem) -> Elem {
        let mut out = extended_mul(self.alg, self.base, x, y);
        out.add_assign(&beta.eval_elems(&[x, y], self.alg, self.base));
        out
    }

    /// Brute-force associativity scan of `α + β` over the `A`-basis of
    /// `A ⊗ B` (sufficient by `B`-trilinearity of the associator).  Returns
    /// the first failing triple with its associator.
    pub fn deformed_associator_witness(&self, beta: &Cochain) -> Option<((usize, usize, usize), Elem)> {
        let (na, nb) = (self.alg.dim, self.base.dim);
        for i in 0..na {
            for j in 0..na {
                for l in 0..na {
                    let ei = Elem::basis(na, nb, i, 0);
                    let ej = Elem::basis(na, nb, j, 0);
                    let el = Elem::basis(na, nb, l, 0);
                    let left = self.deformed_product(beta, &self.deformed_product(beta, &ei, &ej), &el);
                    let right = self.deformed_product(beta, &ei, &self.deformed_product(beta, &ej, &el));
                    let assoc = left.sub(&right);
                    if !assoc.is_zero() {
                        return Some(((i, j, l), assoc));
                    }
                }
            }
        }
        None
    }
}

/// Dimension of the degree-`n` Hochschild cohomology of `A` with
/// coefficients in itself, on the non-unitary complex starting at arity 1:
/// `dim ker(d: C^n -> C^{n+1}) - dim im(d: C^{n-1} -> C^n)`.
pub fn hh_dimension(alg: &FiniteAlgebra, n: usize, max_arity: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidInput("Hochschild degree must be at least 1".into()));
    }
    if n + 1 > max_arity {
        return Err(Error::Truncation { arity: n + 1, max: max_arity });
    }
    let base = crate::fixtures::scalar_base();
    let ctx = HochschildCtx::with_max_arity(alg, &base, max_arity);
    let d_n = differential_matrix(&ctx, n);
    let kernel_dim = d_n.cols() - crate::exact::rank(&d_n);
    let image_dim = if n == 1 {
        0
    } else {
        crate::exact::rank(&differential_matrix(&ctx, n - 1))
    };
    Ok(kernel_dim - image_dim)
}

/// All index tuples of the given length over `0..dim`, in mixed-radix order.
pub(crate) fn all_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(dim.pow(len as u32));
    let mut tuple = vec![0usize; len];
    loop {
        out.push(tuple.clone());
        let mut k = len;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < dim {
                break;
            }
            tuple[k] = 0;
        }
    }
}

fn tuple_rank(dim: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Matrix of `[Q, -]: C^n -> C^{n+1}` over the ground field, on the basis
/// indexed by (input tuple, output index) in mixed-radix order.
fn differential_matrix(ctx: &HochschildCtx, n: usize) -> SparseMatrix {
    let dim = ctx.alg.dim;
    let dom = dim.pow(n as u32) * dim;
    let cod = dim.pow(n as u32 + 1) * dim;
    let mut mat = SparseMatrix::new(cod, dom);
    for tuple in all_tuples(dim, n) {
        for out_l in 0..dim {
            let mut c = Cochain::zero(n, dim, 1);
            c.set(tuple.clone(), Elem::basis(dim, 1, out_l, 0));
            let dc = ctx.differential(&c).expect("arity n+1 is within the bound");
            let col = tuple_rank(dim, &tuple) * dim + out_l;
            for (t, v) in dc.values() {
                for (l, row_coeffs) in v.coeffs.iter().enumerate() {
                    if !row_coeffs[0].is_zero() {
                        mat.set(tuple_rank(dim, t) * dim + l, col, row_coeffs[0].clone());
                    }
                }
            }
        }
    }
    mat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn beta_xx(alg: &FiniteAlgebra, base: &ArtinLocalAlgebra, out_a: usize, out_b: usize) -> Cochain {
        let mut b = Cochain::zero(2, alg.dim, base.dim);
        b.set(vec![0, 0], Elem::basis(alg.dim, base.dim, out_a, out_b));
        b
    }

    fn random_cochain(
        rng: &mut ChaCha8Rng,
        arity: usize,
        alg: &FiniteAlgebra,
        base: &ArtinLocalAlgebra,
        m_only: bool,
    ) -> Cochain {
        let mut c = Cochain::zero(arity, alg.dim, base.dim);
        let tuples = alg.dim.pow(arity as u32);
        for t in 0..tuples {
            let mut tuple = Vec::with_capacity(arity);
            let mut rest = t;
            for _ in 0..arity {
                tuple.push(rest % alg.dim);
                rest /= alg.dim;
            }
            let mut e = Elem::zero(alg.dim, base.dim);
            for row in e.coeffs.iter_mut() {
                for (j, x) in row.iter_mut().enumerate() {
                    if (j > 0 || !m_only) && rng.gen_bool(0.5) {
                        *x = Rat::from_int(rng.gen_range(-2i64..3));
                    }
                }
            }
            c.set(tuple, e);
        }
        c
    }

    #[test]
    fn bar_codifferential_examples() {
        let b2 = fixtures::dual_numbers();
        // zero multiplication gives the zero codifferential
        let e1 = fixtures::zero_algebra(1);
        let ctx = HochschildCtx::new(&e1, &b2);
        assert!(ctx.bar_codifferential().is_zero());

        // x*x = y gives Q(x, x) = -y
        let e2 = fixtures::truncated_polynomial(2);
        let ctx = HochschildCtx::new(&e2, &b2);
        let q = ctx.codifferential_component();
        assert_eq!(q.value(&[0, 0]), Elem::basis(2, 2, 1, 0).neg());
        assert!(q.value(&[0, 1]).is_zero());
        assert!(q.value(&[1, 0]).is_zero());
        assert!(q.value(&[1, 1]).is_zero());
    }

    #[test]
    fn codifferential_squares_iff_associative() {
        let base = fixtures::scalar_base();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let dim = rng.gen_range(1..3);
            let mul: Vec<Vec<Vec<Rat>>> = (0..dim)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            (0..dim)
                                .map(|_| {
                                    if rng.gen_bool(0.5) {
                                        Rat::from_int(rng.gen_range(-2i64..3))
                                    } else {
                                        Rat::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let names = (0..dim).map(|i| format!("a{i}")).collect();
            let alg = FiniteAlgebra::new(names, mul).unwrap();
            let ctx = HochschildCtx::new(&alg, &base);
            let q = ctx.codifferential_component();
            let qq = ctx.bracket_cochain(&q, &q).unwrap();
            assert_eq!(qq.is_zero(), alg.is_associative());
        }
    }

    #[test]
    fn bracket_of_beta_with_itself() {
        // over E1/B2 with beta(x,x) = x ⊗ e the square bracket vanishes
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let ctx = HochschildCtx::new(&e1, &b2);
        let beta = beta_xx(&e1, &b2, 0, 1);
        let bb = ctx.bracket_cochain(&beta, &beta).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let ctx = HochschildCtx::with_max_arity(&e2, &b2, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let pa = rng.gen_range(1..3);
            let qa = rng.gen_range(1..3);
            let ra = rng.gen_range(1..3);
            let p = random_cochain(&mut rng, pa, &e2, &b2, false);
            let q = random_cochain(&mut rng, qa, &e2, &b2, false);
            let r = random_cochain(&mut rng, ra, &e2, &b2, false);
            // graded antisymmetry
            let pq = ctx.bracket_cochain(&p, &q).unwrap();
            let qp = ctx.bracket_cochain(&q, &p).unwrap();
            let sign = ((pa - 1) * (qa - 1)) % 2 == 1;
            let expected = if sign { qp.clone() } else { qp.neg() };
            assert_eq!(pq, expected);
            // graded Jacobi: [p,[q,r]] = [[p,q],r] + (-1)^{|p||q|}[q,[p,r]]
            let lhs = ctx.bracket_cochain(&p, &ctx.bracket_cochain(&q, &r).unwrap()).unwrap();
            let rhs1 = ctx.bracket_cochain(&ctx.bracket_cochain(&p, &q).unwrap(), &r).unwrap();
            let rhs2 = ctx.bracket_cochain(&q, &ctx.bracket_cochain(&p, &r).unwrap()).unwrap();
            let rhs = if ((pa - 1) * (qa - 1)) % 2 == 1 {
                rhs1.sub(&rhs2)
            } else {
                rhs1.add(&rhs2)
            };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn differential_on_zero_algebra_vanishes() {
        let e1 = fixtures::zero_algebra(1);
        let b2 = fixtures::dual_numbers();
        let ctx = HochschildCtx::new(&e1, &b2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let c = random_cochain(&mut rng, 2, &e1, &b2, false);
            assert!(ctx.differential(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn differential_of_arity_one_example() {
        // f(x) = x ⊗ e, f(y) = 0 over E2/B2: (df)(x,x) = -2 y ⊗ e, matching
        // the first-order term of the gauge action of exp(f) on zero.
        let e2 = fixtures::truncated_polynomial(2);
        let b2 = fixtures::dual_numbers();
        let ctx = HochschildCtx::new(&e2, &b2);
        let mut f = Cochain::zero(1, 2, 2);
        f.set(vec![0], Elem::basis(2, 2, 0, 1));
        let df = ctx.differential(&f).unwrap();
        assert_eq!(df.value(&[0, 0]), Elem::basis(2, 2, 1, 1).scale(&Rat::from_int(-2)));
        assert!(df.value(&[0, 1]).is_zero());
        assert!(df.value(&[1, 0]).is_zero());
        assert!(df.value(&[1, 1]).is_zero());
    }

    #[test]
    fn differential_squares_to_zero_randomised() {
        let b2 = fixtures::dual_numbers();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for alg in [fixtures::truncated_polynomial(2), fixtures::truncated_polynomial(3), fixtures::strict_upper_triangular()] {
            let ctx = HochschildCtx::with_max_arity(&alg, &b2, 6);
            for _ in 0..20 {
                let c = random_cochain(&mut rng, 2, &alg, &b2, false);
                let ddc = ctx.differential(&ctx.differential(&c).unwrap()).unwrap();
                assert!(ddc.is_zero());
            }
        }
    }

    #[test]
    fn mc_examples() {
        let b2 = fixtures::dual_numbers();
        let e1 = fixtures::zero_algebra(1);
        let e2 = fixtures::truncated_polynomial(2);

        let ctx1 = HochschildCtx::new(&e1, &b2);
        assert!(ctx1.mc_check(&Cochain::zero(2, 1, 2)).unwrap().passed);
        let beta1 = beta_xx(&e1, &b2, 0, 1);
        assert!(ctx1.mc_check(&beta1).unwrap().passed);

        let ctx2 = HochschildCtx::new(&e2, &b2);
        let beta2 = beta_xx(&e2, &b2, 0, 1);
        assert!(ctx2.mc_check(&beta2).unwrap().passed);
    }

    #[test]
    fn mc_agrees_with_deformed_associativity() {
        // the central sign-calibration oracle
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let bases = [fixtures::dual_numbers(), fixtures::jet_base(2), fixtures::square_zero_pair()];
        let algebras = [
            fixtures::zero_algebra(1),
            fixtures::zero_algebra(2),
            fixtures::truncated_polynomial(2),
            fixtures::truncated_polynomial(3),
            fixtures::strict_upper_triangular(),
        ];
        let mut checked = 0;
        for alg in &algebras {
            for base in &bases {
                let ctx = HochschildCtx::new(alg, base);
                for _ in 0..8 {
                    let beta = random_cochain(&mut rng, 2, alg, base, true);
                    let mc = ctx.mc_check(&beta).unwrap();
                    let assoc = ctx.deformed_associator_witness(&beta).is_none();
                    assert_eq!(mc.passed, assoc);
                    checked += 1;
                }
            }
        }
        assert!(checked >= 100);
    }

    #[test]
    fn residual_failure_reports_arity_three() {
        // non-MC beta over the strictly upper triangular algebra
        let alg = fixtures::strict_upper_triangular();
        let b2 = fixtures::dual_numbers();
        let ctx = HochschildCtx::new(&alg, &b2);
        let mut beta = Cochain::zero(2, 3, 2);
        // beta(e12, e12) = e23 ⊗ e breaks associativity of α + β
        beta.set(vec![0, 0], Elem::basis(3, 2, 2, 1));
        let mc = ctx.mc_check(&beta).unwrap();
        assert!(!mc.passed);
        let residual = mc.residual.unwrap();
        assert_eq!(residual.arity, 3);
        assert!(!residual.is_zero());
        assert!(ctx.deformed_associator_witness(&beta).is_some());
    }

    #[test]
    fn brackets_preserve_m_only() {
        let e2 = fixtures::truncated_polynomial(2);
        let b3 = fixtures::jet_base(2);
        let ctx = HochschildCtx::with_max_arity(&e2, &b3, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let arity_a = rng.gen_range(1..3);
            let arity_b = rng.gen_range(1..3);
            let c = random_cochain(&mut rng, arity_a, &e2, &b3, true);
            let other = random_cochain(&mut rng, arity_b, &e2, &b3, false);
            assert!(ctx.differential(&c).unwrap().m_only());
            assert!(ctx.bracket_cochain(&c, &other).unwrap().m_only());
            assert!(ctx.bracket_cochain(&other, &c).unwrap().m_only());
        }
    }

    #[test]
    fn hh_of_zero_algebra_matches_cochain_spaces() {
        let e1 = fixtures::zero_algebra(1);
        for n in 1..=4 {
            assert_eq!(hh_dimension(&e1, n, DEFAULT_MAX_ARITY).unwrap(), 1);
        }
    }

    #[test]
    fn hh_truncation_is_a_hard_error() {
        let e1 = fixtures::zero_algebra(1);
        assert!(matches!(
            hh_dimension(&e1, 5, DEFAULT_MAX_ARITY),
            Err(Error::Truncation { arity: 6, max: 5 })
        ));
    }

    #[test]
    fn hh_of_truncated_polynomial() {
        // independently row-reduced by hand: HH^1 = HH^2 = 2 for (t)/(t^3)
        let e2 = fixtures::truncated_polynomial(2);
        assert_eq!(hh_dimension(&e2, 1, DEFAULT_MAX_ARITY).unwrap(), 2);
        assert_eq!(hh_dimension(&e2, 2, DEFAULT_MAX_ARITY).unwrap(), 2);
    }
}
