//! Standard small algebras and bases used throughout the test suites and
//! handy as CLI inputs.

use crate::algebra::{ArtinLocalAlgebra, FiniteAlgebra};
use crate::exact::{unit_vec, zero_vec, Rat};

/// The non-unitary algebra of dimension `dim` with identically zero
/// multiplication.
pub fn zero_algebra(dim: usize) -> FiniteAlgebra {
    let names = (0..dim).map(|i| format!("x{i}")).collect();
    let mul = vec![vec![zero_vec(dim); dim]; dim];
    FiniteAlgebra::new(names, mul).expect("shape is valid")
}

/// The maximal ideal `(t)/(t^{dim+1})` of a truncated polynomial ring:
/// basis `t, t^2, ..., t^dim` with `t^i t^j = t^{i+j}` when it survives.
pub fn truncated_polynomial(dim: usize) -> FiniteAlgebra {
    let names = (1..=dim)
        .map(|i| if i == 1 { "t".to_string() } else { format!("t{i}") })
        .collect();
    let mut mul = vec![vec![zero_vec(dim); dim]; dim];
    for i in 1..=dim {
        for j in 1..=dim {
            if i + j <= dim {
                mul[i - 1][j - 1] = unit_vec(dim, i + j - 1);
            }
        }
    }
    FiniteAlgebra::new(names, mul).expect("shape is valid")
}

/// Strictly upper triangular 3x3 matrices: basis `e12, e13, e23` with the
/// single nonzero product `e12 * e23 = e13`.  Noncommutative and nilpotent.
pub fn strict_upper_triangular() -> FiniteAlgebra {
    let names = vec!["e12".into(), "e13".into(), "e23".into()];
    let mut mul = vec![vec![zero_vec(3); 3]; 3];
    mul[0][2] = unit_vec(3, 1);
    FiniteAlgebra::new(names, mul).expect("shape is valid")
}

/// The jet base `k[e]/(e^{order+1})`: basis `1, e, ..., e^order`, maximal
/// ideal `(e)`, nilpotency index `order + 1`.
pub fn jet_base(order: usize) -> ArtinLocalAlgebra {
    let dim = order + 1;
    let mut names = vec!["1".to_string()];
    for i in 1..dim {
        names.push(if i == 1 { "e".to_string() } else { format!("e{i}") });
    }
    let mut mul = vec![vec![zero_vec(dim); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if i + j < dim {
                mul[i][j] = unit_vec(dim, i + j);
            }
        }
    }
    ArtinLocalAlgebra::new(names, mul, dim).expect("jet base is valid")
}

/// The dual numbers `k[e]/(e^2)`.
pub fn dual_numbers() -> ArtinLocalAlgebra {
    jet_base(1)
}

/// `k[u, v]/(u, v)^2`: two square-zero parameters, nilpotency index 2.
pub fn square_zero_pair() -> ArtinLocalAlgebra {
    let names = vec!["1".into(), "u".into(), "v".into()];
    let mut mul = vec![vec![zero_vec(3); 3]; 3];
    for j in 0..3 {
        mul[0][j] = unit_vec(3, j);
        mul[j][0] = unit_vec(3, j);
    }
    ArtinLocalAlgebra::new(names, mul, 2).expect("square-zero base is valid")
}

/// The ground field itself as a base: `m = 0`, nilpotency index 1.
pub fn scalar_base() -> ArtinLocalAlgebra {
    ArtinLocalAlgebra::new(vec!["1".into()], vec![vec![vec![Rat::one()]]], 1)
        .expect("scalar base is valid")
}
