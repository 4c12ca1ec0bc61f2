//! The canonical free resolution of the algebra: basis words of the cobar
//! construction on the bar coalgebra, the two differential components, the
//! projection onto the algebra, the splitting homotopy, and truncated
//! complex assembly.
//!
//! A basis word is a nonempty tensor product of blocks, each block a
//! nonempty tuple of algebra basis letters.  Three gradings:
//! `degree = arrows - polynomial degree`, where the polynomial degree is
//! the total letter count and the arrow count is the number of blocks.
//! The splitting component `d_s` splits a block (arrows + 1); the
//! south-west component `d_sw` merges two adjacent letters with the
//! product (polynomial degree - 1).  Truncation is by polynomial degree,
//! which both components respect.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exact::{vec_is_zero, zero_vec, Rat, SparseMatrix};
use crate::hochschild::Cochain;

/// A block: a nonempty tuple of `A`-basis letters (an element of `M^{⊗n}`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord(pub Vec<usize>);

impl BarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
    }
}

/// A basis word of the cobar construction: a nonempty list of blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CobarWord {
    pub blocks: Vec<BarWord>,
}

impl CobarWord {
    pub fn new(blocks: Vec<BarWord>) -> Self {
        debug_assert!(!blocks.is_empty() && blocks.iter().all(|b| !b.is_empty()));
        CobarWord { blocks }
    }

    pub fn generator(letters: Vec<usize>) -> Self {
        CobarWord::new(vec![BarWord(letters)])
    }

    /// Total letter count.
    pub fn polydegree(&self) -> usize {
        self.blocks.iter().map(BarWord::len).sum()
    }

    /// Block count.
    pub fn arrows(&self) -> usize {
        self.blocks.len()
    }

    pub fn degree(&self) -> i32 {
        self.arrows() as i32 - self.polydegree() as i32
    }

    fn composition(&self) -> Vec<usize> {
        self.blocks.iter().map(BarWord::len).collect()
    }

    fn letters(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.0.iter().copied()).collect()
    }
}

impl fmt::Debug for CobarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "^{b:?}")?;
        }
        Ok(())
    }
}

impl Ord for CobarWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.polydegree()
            .cmp(&other.polydegree())
            .then_with(|| self.composition().cmp(&other.composition()))
            .then_with(|| self.letters().cmp(&other.letters()))
    }
}

impl PartialOrd for CobarWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite formal sum of cobar words with coefficients in `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSum {
    pub dim_b: usize,
    terms: BTreeMap<CobarWord, Vec<Rat>>,
}

impl FormalSum {
    pub fn zero(dim_b: usize) -> Self {
        FormalSum { dim_b, terms: BTreeMap::new() }
    }

    pub fn term(word: CobarWord, coeff: Vec<Rat>) -> Self {
        let mut s = FormalSum::zero(coeff.len());
        s.add_term(word, coeff);
        s
    }

    /// A single word with unit coefficient.
    pub fn word(word: CobarWord, dim_b: usize) -> Self {
        FormalSum::term(word, crate::exact::unit_vec(dim_b, 0))
    }

    pub fn add_term(&mut self, word: CobarWord, coeff: Vec<Rat>) {
        assert_eq!(coeff.len(), self.dim_b);
        if vec_is_zero(&coeff) {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert_with(|| zero_vec(self.dim_b));
        for (a, b) in slot.iter_mut().zip(&coeff) {
            *a += b;
        }
        if vec_is_zero(slot) {
            self.terms.remove(&word);
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> FormalSum {
        let mut out = FormalSum::zero(self.dim_b);
        for (w, coeff) in &self.terms {
            out.add_term(w.clone(), coeff.iter().map(|x| x * c).collect());
        }
        out
    }

    /// Right multiplication of every coefficient by an element of `B`.
    pub fn mul_b(&self, b: &[Rat], base: &ArtinLocalAlgebra) -> FormalSum {
        let mut out = FormalSum::zero(self.dim_b);
        for (w, coeff) in &self.terms {
            out.add_term(w.clone(), base.mul_vec(coeff, b));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CobarWord, &Vec<Rat>)> {
        self.terms.iter()
    }

    pub fn max_polydegree(&self) -> usize {
        self.terms.keys().map(CobarWord::polydegree).max().unwrap_or(0)
    }

    /// Whether every coefficient lies in the maximal ideal.
    pub fn in_m(&self) -> bool {
        self.terms.values().all(|c| c[0].is_zero())
    }
}

/// All compositions of `n` into `k` positive parts, lexicographically.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=n + 1 - k {
        for mut rest in compositions(n - first, k - 1) {
            let mut c = Vec::with_capacity(k);
            c.push(first);
            c.append(&mut rest);
            out.push(c);
        }
    }
    out
}

/// All basis words with polynomial degree at most `bound` in the given
/// homological degree, ordered by (polynomial degree, composition, letters).
pub fn enumerate_words(alg: &FiniteAlgebra, bound: usize, degree: i32) -> Vec<CobarWord> {
    assert!(degree <= 0, "cobar words have nonpositive degree");
    let mut out = Vec::new();
    let n_min = std::cmp::max(1, 1 - degree as i64) as usize;
    for n in n_min..=bound {
        let k = (n as i64 + degree as i64) as usize;
        for comp in compositions(n, k) {
            for letters in crate::hochschild::all_tuples(alg.dim, n) {
                let mut blocks = Vec::with_capacity(k);
                let mut at = 0;
                for &size in &comp {
                    blocks.push(BarWord(letters[at..at + size].to_vec()));
                    at += size;
                }
                out.push(CobarWord::new(blocks));
            }
        }
    }
    out
}

/// The splitting component on a generator block: split after `j` letters
/// with sign `(-1)^j`, summed over `j = 1..len-1`.
fn d_s_generator(block: &BarWord, dim_b: usize) -> FormalSum {
    let n = block.len();
    let mut out = FormalSum::zero(dim_b);
    for j in 1..n {
        let left = BarWord(block.0[..j].to_vec());
        let right = BarWord(block.0[j..].to_vec());
        let sign = if j % 2 == 1 { -Rat::one() } else { Rat::one() };
        let mut coeff = zero_vec(dim_b);
        coeff[0] = sign;
        out.add_term(CobarWord::new(vec![left, right]), coeff);
    }
    out
}

/// The south-west component on a generator block: merge letters `j, j+1`
/// with the product (here `α + β` when a deformation cochain is supplied),
/// with sign `(-1)^{j-1}`.
fn d_sw_generator(
    block: &BarWord,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    beta: Option<&Cochain>,
) -> FormalSum {
    let n = block.len();
    let mut out = FormalSum::zero(base.dim);
    for j in 1..n {
        let (a, b) = (block.0[j - 1], block.0[j]);
        // product of the two letters as an element of A ⊗ B
        let mut prod = Elem::from_a_vec(alg.product(a, b), base.dim);
        if let Some(beta) = beta {
            prod.add_assign(&beta.value(&[a, b]));
        }
        if prod.is_zero() {
            continue;
        }
        let sign = if (j - 1) % 2 == 1 { -Rat::one() } else { Rat::one() };
        for (l, coeffs) in prod.coeffs.iter().enumerate() {
            if vec_is_zero(coeffs) {
                continue;
            }
            let mut letters = block.0.clone();
            letters[j - 1] = l;
            letters.remove(j);
            out.add_term(CobarWord::generator(letters), coeffs.iter().map(|c| c * &sign).collect());
        }
    }
    out
}

/// Extends generator values to a word by the Leibniz rule for an odd-degree
/// derivation: passing a block of degree `g` contributes `(-1)^g`.
pub fn leibniz_odd<F>(word: &CobarWord, dim_b: usize, gen_value: F) -> FormalSum
where
    F: Fn(&BarWord) -> FormalSum,
{
    let mut out = FormalSum::zero(dim_b);
    let mut sign_parity = 0usize; // parity of the total degree passed so far
    for (t, block) in word.blocks.iter().enumerate() {
        let inner = gen_value(block);
        if !inner.is_zero() {
            let signed = if sign_parity % 2 == 1 { inner.scale(&-Rat::one()) } else { inner };
            for (w, coeff) in signed.terms() {
                let mut blocks = Vec::with_capacity(word.blocks.len() + w.blocks.len() - 1);
                blocks.extend_from_slice(&word.blocks[..t]);
                blocks.extend_from_slice(&w.blocks);
                blocks.extend_from_slice(&word.blocks[t + 1..]);
                out.add_term(CobarWord::new(blocks), coeff.clone());
            }
        }
        // degree of a block of n letters is 1 - n
        sign_parity += 1 + block.len();
    }
    out
}

/// The full differential `d_s + d_sw` on a word, extended as a derivation;
/// with a deformation cochain supplied, the merged products are taken with
/// the deformed multiplication.
pub fn cobar_differential(
    word: &CobarWord,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
    beta: Option<&Cochain>,
) -> FormalSum {
    leibniz_odd(word, base.dim, |block| {
        let mut v = d_s_generator(block, base.dim);
        v.add(&d_sw_generator(block, alg, base, beta));
        v
    })
}

/// Only the splitting component, extended as a derivation.
pub fn d_s(word: &CobarWord, dim_b: usize) -> FormalSum {
    leibniz_odd(word, dim_b, |block| d_s_generator(block, dim_b))
}

/// The projection onto the algebra: a degree-zero word maps to the product
/// of its letters (left to right), anything else to zero.
pub fn projection_p(word: &CobarWord, alg: &FiniteAlgebra) -> Vec<Rat> {
    if word.degree() != 0 {
        return zero_vec(alg.dim);
    }
    let letters = word.letters();
    let mut acc = crate::exact::unit_vec(alg.dim, letters[0]);
    for &l in &letters[1..] {
        acc = alg.product_vec(&acc, &crate::exact::unit_vec(alg.dim, l));
    }
    acc
}

/// `B`-linear extension of the projection to formal sums, valued in `A ⊗ B`.
pub fn projection_sum(sum: &FormalSum, alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Elem {
    let mut out = Elem::zero(alg.dim, base.dim);
    for (w, coeff) in sum.terms() {
        let image = projection_p(w, alg);
        if vec_is_zero(&image) {
            continue;
        }
        for (l, c) in image.iter().enumerate() {
            if !c.is_zero() {
                crate::exact::vec_add_scaled(&mut out.coeffs[l], coeff, c);
            }
        }
    }
    out
}

/// The contraction of the fixed-polynomial-degree rows: merge the first two
/// blocks when the first block is a single letter, with sign -1 (the sign
/// is forced by the identity `h d_s + d_s h = id` on rows of polynomial
/// degree at least 2).  Everything else maps to zero.
pub fn splitting_homotopy(word: &CobarWord, dim_b: usize) -> FormalSum {
    if word.blocks.len() < 2 || word.blocks[0].len() != 1 {
        return FormalSum::zero(dim_b);
    }
    let mut merged = word.blocks[0].0.clone();
    merged.extend_from_slice(&word.blocks[1].0);
    let mut blocks = vec![BarWord(merged)];
    blocks.extend_from_slice(&word.blocks[2..]);
    let mut coeff = zero_vec(dim_b);
    coeff[0] = -Rat::one();
    FormalSum::term(CobarWord::new(blocks), coeff)
}

/// A finite slice of the resolution: all words of polynomial degree at most
/// `word_bound`, with the differential matrices per homological degree.
/// Coordinates of degree `d` are indexed `word_index * dim(B) + b_index`.
pub struct TruncatedComplex {
    pub word_bound: usize,
    pub dim_b: usize,
    pub bases: BTreeMap<i32, Vec<CobarWord>>,
    pub index: BTreeMap<i32, BTreeMap<CobarWord, usize>>,
    /// `mats[d]` is the matrix of the differential from degree `d` to `d+1`.
    pub mats: BTreeMap<i32, SparseMatrix>,
}

impl TruncatedComplex {
    /// Assembles the truncation, optionally with the deformed product.
    pub fn build(
        alg: &FiniteAlgebra,
        base: &ArtinLocalAlgebra,
        word_bound: usize,
        beta: Option<&Cochain>,
    ) -> Result<Self> {
        Self::build_with(alg, base, word_bound, |w| Ok(cobar_differential(w, alg, base, beta)))
    }

    /// Assembles matrices for an arbitrary degree-one operator given by its
    /// value on words; used for perturbations by general derivations.
    pub fn build_with<F>(
        alg: &FiniteAlgebra,
        base: &ArtinLocalAlgebra,
        word_bound: usize,
        op: F,
    ) -> Result<Self>
    where
        F: Fn(&CobarWord) -> Result<FormalSum>,
    {
        if word_bound < 1 {
            return Err(Error::InvalidInput("word bound must be at least 1".into()));
        }
        let mut bases = BTreeMap::new();
        let mut index = BTreeMap::new();
        let lowest = 1 - word_bound as i32;
        for d in lowest..=0 {
            let words = enumerate_words(alg, word_bound, d);
            let idx: BTreeMap<CobarWord, usize> =
                words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
            bases.insert(d, words);
            index.insert(d, idx);
        }
        let mut mats = BTreeMap::new();
        for d in lowest..=0 {
            let dom = &bases[&d];
            let cod_index = if d < 0 { Some(&index[&(d + 1)]) } else { None };
            let rows = if d < 0 { bases[&(d + 1)].len() * base.dim } else { 0 };
            let mut mat = SparseMatrix::new(rows, dom.len() * base.dim);
            for (wi, w) in dom.iter().enumerate() {
                let image = op(w)?;
                if image.is_zero() {
                    continue;
                }
                let Some(cod_index) = cod_index else {
                    return Err(Error::Internal(format!(
                        "degree-zero word {w:?} has nonzero differential"
                    )));
                };
                for bj in 0..base.dim {
                    let shifted = if bj == 0 {
                        image.clone()
                    } else {
                        image.mul_b(&crate::exact::unit_vec(base.dim, bj), base)
                    };
                    let col = wi * base.dim + bj;
                    for (w2, coeff) in shifted.terms() {
                        let Some(&ri) = cod_index.get(w2) else {
                            return Err(Error::PolydegreeOverflow {
                                polydegree: w2.polydegree(),
                                bound: word_bound,
                            });
                        };
                        for (bc, c) in coeff.iter().enumerate() {
                            if !c.is_zero() {
                                mat.add_to(ri * base.dim + bc, col, c);
                            }
                        }
                    }
                }
            }
            mats.insert(d, mat);
        }
        Ok(TruncatedComplex { word_bound, dim_b: base.dim, bases, index, mats })
    }

    /// Verifies `d^2 = 0` on every pair of consecutive degrees; returns the
    /// first nonzero composite on failure.
    pub fn d_squared_residual(&self) -> Option<(i32, SparseMatrix)> {
        for (d, mat) in &self.mats {
            if let Some(next) = self.mats.get(&(d + 1)) {
                let composite = next.matmul(mat).expect("shapes align by construction");
                if !composite.is_zero() {
                    return Some((*d, composite));
                }
            }
        }
        None
    }

    pub fn degree_dim(&self, d: i32) -> usize {
        self.bases.get(&d).map_or(0, |b| b.len() * self.dim_b)
    }
}
