//! Deformations of the differential of the canonical resolution: the
//! south-west perturbation induced by a deformation of the product, the
//! verifier for perturbed differentials, the degree-zero homology of the
//! deformed complex with its induced product, and the comparison chain map
//! from derivations of the resolution to coderivations of the bar
//! coalgebra.

use std::collections::BTreeMap;

use crate::algebra::{ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::barcobar::{
    cobar_differential, projection_sum, BarWord, CobarWord, FormalSum, TruncatedComplex,
};
use crate::error::{Error, Result};
use crate::exact::{Echelon, Rat, SparseMatrix};
use crate::hochschild::{Cochain, Coderivation, HochschildCtx};

/// A derivation of the free algebra underlying the resolution, recorded by
/// its values on generator blocks and extended by the Leibniz rule with
/// Koszul signs.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub degree: i32,
    pub dim_b: usize,
    values: BTreeMap<BarWord, FormalSum>,
    pub m_valued: bool,
}

impl Derivation {
    pub fn zero(degree: i32, dim_b: usize) -> Self {
        Derivation { degree, dim_b, values: BTreeMap::new(), m_valued: true }
    }

    /// Validates the degree bookkeeping: a value on a generator of `n`
    /// letters consists of words of degree `(1 - n) + degree`.
    pub fn new(degree: i32, dim_b: usize, values: BTreeMap<BarWord, FormalSum>) -> Result<Self> {
        let mut pruned = BTreeMap::new();
        for (gen, sum) in values {
            if gen.is_empty() {
                return Err(Error::InvalidInput("generator blocks must be nonempty".into()));
            }
            if sum.dim_b != dim_b {
                return Err(Error::Dimension("derivation value has wrong base dimension".into()));
            }
            let expected = 1 - gen.len() as i32 + degree;
            for (w, _) in sum.terms() {
                if w.degree() != expected {
                    return Err(Error::InvalidInput(format!(
                        "value word {w:?} on generator {gen:?} has degree {}, expected {expected}",
                        w.degree()
                    )));
                }
            }
            if !sum.is_zero() {
                pruned.insert(gen, sum);
            }
        }
        let m_valued = pruned.values().all(FormalSum::in_m);
        Ok(Derivation { degree, dim_b, values: pruned, m_valued })
    }

    pub fn value(&self, gen: &BarWord) -> FormalSum {
        self.values.get(gen).cloned().unwrap_or_else(|| FormalSum::zero(self.dim_b))
    }

    pub fn values(&self) -> impl Iterator<Item = (&BarWord, &FormalSum)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn set(&mut self, gen: BarWord, sum: FormalSum) {
        if sum.is_zero() {
            self.values.remove(&gen);
        } else {
            self.m_valued &= sum.in_m();
            self.values.insert(gen, sum);
        }
    }

    /// Leibniz extension to a word, rejecting loudly when a produced word
    /// leaves the truncation.
    pub fn apply(&self, word: &CobarWord, bound: usize) -> Result<FormalSum> {
        let mut out = FormalSum::zero(self.dim_b);
        let degree_odd = self.degree.rem_euclid(2) == 1;
        let mut passed_parity = 0usize;
        for (t, block) in word.blocks.iter().enumerate() {
            let inner = self.value(block);
            if !inner.is_zero() {
                let negate = degree_odd && passed_parity % 2 == 1;
                for (w, coeff) in inner.terms() {
                    let mut blocks =
                        Vec::with_capacity(word.blocks.len() + w.blocks.len() - 1);
                    blocks.extend_from_slice(&word.blocks[..t]);
                    blocks.extend_from_slice(&w.blocks);
                    blocks.extend_from_slice(&word.blocks[t + 1..]);
                    let new_word = CobarWord::new(blocks);
                    if new_word.polydegree() > bound {
                        return Err(Error::PolydegreeOverflow {
                            polydegree: new_word.polydegree(),
                            bound,
                        });
                    }
                    let c = if negate { coeff.iter().map(|x| -x).collect() } else { coeff.clone() };
                    out.add_term(new_word, c);
                }
            }
            passed_parity += 1 + block.len();
        }
        Ok(out)
    }

    pub fn apply_sum(
        &self,
        sum: &FormalSum,
        base: &ArtinLocalAlgebra,
        bound: usize,
    ) -> Result<FormalSum> {
        let mut out = FormalSum::zero(self.dim_b);
        for (w, coeff) in sum.terms() {
            out.add(&self.apply(w, bound)?.mul_b(coeff, base));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (g, v) in &other.values {
            let mut merged = out.value(g);
            merged.add(v);
            out.set(g.clone(), merged);
        }
        out.m_valued = out.values.values().all(FormalSum::in_m);
        out
    }

    pub fn scale(&self, c: &Rat) -> Derivation {
        let mut out = Derivation::zero(self.degree, self.dim_b);
        for (g, v) in &self.values {
            out.set(g.clone(), v.scale(c));
        }
        out
    }
}

/// The south-west perturbation induced by a deformation `β` of the
/// product: on a generator block the merge formula with each adjacent
/// product taken through `β` alone.
pub fn delta_of_beta(
    beta: &Cochain,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<Derivation> {
    let ctx = HochschildCtx::new(alg, base);
    if !ctx.mc_check(beta)?.passed {
        return Err(Error::NotMaurerCartan);
    }
    let mut values = BTreeMap::new();
    for n in 2..=bound {
        for letters in crate::hochschild::all_tuples(alg.dim, n) {
            let gen = BarWord(letters);
            let mut sum = FormalSum::zero(base.dim);
            for j in 1..n {
                let prod = beta.value(&[gen.0[j - 1], gen.0[j]]);
                if prod.is_zero() {
                    continue;
                }
                let sign = if (j - 1) % 2 == 1 { -Rat::one() } else { Rat::one() };
                for (l, coeffs) in prod.coeffs.iter().enumerate() {
                    if crate::exact::vec_is_zero(coeffs) {
                        continue;
                    }
                    let mut merged = gen.0.clone();
                    merged[j - 1] = l;
                    merged.remove(j);
                    sum.add_term(
                        CobarWord::generator(merged),
                        coeffs.iter().map(|c| c * &sign).collect(),
                    );
                }
            }
            if !sum.is_zero() {
                values.insert(gen, sum);
            }
        }
    }
    Derivation::new(1, base.dim, values)
}

/// The tangent differential `θ -> [s, θ]`, returned by generator values.
pub fn d_rel(
    theta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<Derivation> {
    let mut values = BTreeMap::new();
    let theta_odd = theta.degree.rem_euclid(2) == 1;
    for n in 1..=bound {
        for letters in crate::hochschild::all_tuples(alg.dim, n) {
            let gen = BarWord(letters);
            let gen_word = CobarWord::new(vec![gen.clone()]);
            // s(θ(g)) - (-1)^{|θ|} θ(s(g))
            let mut sum = FormalSum::zero(base.dim);
            let theta_g = theta.value(&gen);
            for (w, coeff) in theta_g.terms() {
                sum.add(&cobar_differential(w, alg, base, None).mul_b(coeff, base));
            }
            let s_g = cobar_differential(&gen_word, alg, base, None);
            let second = theta.apply_sum(&s_g, base, bound)?;
            let second = if theta_odd { second } else { second.scale(&-Rat::one()) };
            sum.add(&second);
            if !sum.is_zero() {
                values.insert(gen, sum);
            }
        }
    }
    Derivation::new(theta.degree + 1, base.dim, values)
}

/// Outcome of the perturbed-differential verifier.
#[derive(Debug)]
pub struct McRelOutcome {
    pub passed: bool,
    /// Degree at which the first nonzero composite appears, with the matrix.
    pub residual: Option<(i32, SparseMatrix)>,
}

/// Assembles the truncated complex with differential `s + δ`.
pub fn deformed_complex(
    delta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<TruncatedComplex> {
    TruncatedComplex::build_with(alg, base, bound, |w| {
        let mut sum = cobar_differential(w, alg, base, None);
        sum.add(&delta.apply(w, bound)?);
        Ok(sum)
    })
}

/// Verifies `(s + δ)^2 = 0` as matrices on the truncation.
pub fn mc_rel_check(
    delta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<McRelOutcome> {
    if delta.degree != 1 {
        return Err(Error::InvalidInput("deformations of the differential have degree 1".into()));
    }
    if !delta.m_valued {
        return Err(Error::InvalidInput("deformation values must have coefficients in m".into()));
    }
    let complex = deformed_complex(delta, alg, base, bound)?;
    match complex.d_squared_residual() {
        None => Ok(McRelOutcome { passed: true, residual: None }),
        Some((d, mat)) => Ok(McRelOutcome { passed: false, residual: Some((d, mat)) }),
    }
}

/// Degree-zero homology of the deformed complex, as a `B`-algebra on the
/// classes of the single-letter words.
#[derive(Clone, Debug)]
pub struct H0 {
    /// Dimension over the ground field.
    pub dim_k: usize,
    /// The distinguished section: single-letter words crossed with the base
    /// basis, in order `(letter, base index)`.
    pub section: Vec<(usize, usize)>,
    /// Structure constants over the distinguished basis: `mul[i][j]` is the
    /// class of the product of the classes of letters `i` and `j`.
    pub mul: Vec<Vec<Elem>>,
}

/// Computes the cokernel of `s + δ` from degree -1 to degree 0 within the
/// truncation, checks that the single-letter classes form a basis, and
/// reads off the induced product by reducing products of representatives.
pub fn h0_compute(
    delta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    bound: usize,
) -> Result<H0> {
    if bound < 3 {
        return Err(Error::InvalidInput("the induced product needs a word bound of at least 3".into()));
    }
    let check = mc_rel_check(delta, alg, base, bound)?;
    if !check.passed {
        return Err(Error::NotMaurerCartanRel);
    }
    let complex = deformed_complex(delta, alg, base, bound)?;
    let ambient = complex.degree_dim(0);
    let boundary = &complex.mats[&-1];
    let mut image = Echelon::new(ambient);
    for c in 0..boundary.cols() {
        let col: Vec<Rat> = (0..boundary.rows()).map(|r| boundary.get(r, c)).collect();
        image.insert(&col);
    }
    let pivots: std::collections::BTreeSet<usize> = image.pivot_cols().into_iter().collect();
    let class_coords: Vec<usize> = (0..ambient).filter(|i| !pivots.contains(i)).collect();
    let dim_k = class_coords.len();

    let class_of = |v: &[Rat]| -> Vec<Rat> {
        let residue = image.reduce(v);
        class_coords.iter().map(|&i| residue[i].clone()).collect()
    };

    let deg0_index = &complex.index[&0];
    let coord_of = |letters: Vec<usize>, b: usize| -> usize {
        deg0_index[&CobarWord::generator(letters)] * base.dim + b
    };

    // classes of the distinguished single-letter vectors
    let expected = alg.dim * base.dim;
    let mut section = Vec::with_capacity(expected);
    let mut columns = Vec::with_capacity(expected);
    for i in 0..alg.dim {
        for j in 0..base.dim {
            section.push((i, j));
            let v = crate::exact::unit_vec(ambient, coord_of(vec![i], j));
            columns.push(class_of(&v));
        }
    }
    if dim_k != expected {
        return Err(Error::Internal(format!(
            "degree-zero homology has dimension {dim_k}, expected {expected}"
        )));
    }
    // matrix with the section classes as columns must be invertible
    let section_matrix: Vec<Vec<Rat>> =
        (0..dim_k).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let section_inverse = crate::exact::dense_inverse(&section_matrix)
        .map_err(|_| Error::Internal("single-letter classes do not span the homology".into()))?;

    // induced product: reduce the concatenation of two single letters
    let mut mul = vec![vec![Elem::zero(alg.dim, base.dim); alg.dim]; alg.dim];
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let concat = CobarWord::new(vec![BarWord(vec![i]), BarWord(vec![j])]);
            let coord = complex.index[&0][&concat] * base.dim;
            let v = crate::exact::unit_vec(ambient, coord);
            let class = class_of(&v);
            let in_section = crate::exact::dense_mul_vec(&section_inverse, &class);
            let mut e = Elem::zero(alg.dim, base.dim);
            for (k, (l, b)) in section.iter().enumerate() {
                e.coeffs[*l][*b] = in_section[k].clone();
            }
            mul[i][j] = e;
        }
    }
    Ok(H0 { dim_k, section, mul })
}

/// The comparison chain map to coderivations of the bar coalgebra: compose
/// generator values with the projection onto the algebra and reinterpret,
/// with the per-arity sign `(-1)^n` forced by the chain-map identity.
pub fn project_derivation(
    theta: &Derivation,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Coderivation> {
    let mut components: BTreeMap<usize, Cochain> = BTreeMap::new();
    for (gen, sum) in theta.values() {
        let arity = gen.len();
        let image = projection_sum(sum, alg, base);
        if image.is_zero() {
            continue;
        }
        let sign = if arity % 2 == 1 { -Rat::one() } else { Rat::one() };
        let component = components
            .entry(arity)
            .or_insert_with(|| Cochain::zero(arity, alg.dim, base.dim));
        let mut value = component.value(&gen.0);
        value.add_assign(&image.scale(&sign));
        component.set(gen.0.clone(), value);
    }
    components.retain(|_, c| !c.is_zero());
    Ok(Coderivation { components })
}
