//! Rank identities for the perfect-matching incidence map of a complete graph.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::rank_int;
use crate::scheme::{enumerate_scheme, Subset};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub edges: usize,
    pub matchings: usize,
    pub rank_f: usize,
    pub expected_rank_f: usize,
    pub rank_g: usize,
    /// `f(g(e_i))` is the all-ones vector for every vertex `i`.
    pub composition_is_ones: bool,
    /// Every entry of `f(𝟙)`.
    pub f_of_ones: Option<usize>,
    /// `𝟙` lies in the image of `f`.
    pub ones_in_image: bool,
    /// `dim ker f̄ = rank g`, which with `f̄ ∘ g = 0` makes the sequence exact.
    pub exact: bool,
    pub passed: bool,
}

/// `(f, g, edges)` where `f` and `g` are 0/1 matrices.
pub type MatchingMaps = (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Subset>);

/// `f: R^{E_n} → R^{M_n}` as a matchings × edges 0/1 matrix, with `g: R^n → R^{E_n}`
/// as an edges × vertices 0/1 matrix.
pub fn matching_maps(n: usize) -> Result<MatchingMaps> {
    let scheme = enumerate_scheme(n, 2)?;
    let edges = scheme.subsets().to_vec();
    let f = (0..scheme.partitions().len())
        .map(|p| {
            let mut row = vec![BigInt::zero(); edges.len()];
            for &e in scheme.block_indices(p) {
                row[e] = BigInt::one();
            }
            row
        })
        .collect();
    let g = edges
        .iter()
        .map(|e| (1..=n as u8).map(|i| if e.contains(i) { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    Ok((f, g, edges))
}

fn apply(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| crate::exact::dot(row, v)).collect()
}

pub fn fiber_rank_check(n: usize) -> Result<FiberReport> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Unsupported { n, d: 2 });
    }
    let (f, g, edges) = matching_maps(n)?;
    let e = edges.len();
    let rank_f = rank_int(&f);
    let g_t: Vec<Vec<BigInt>> = (0..n).map(|i| g.iter().map(|row| row[i].clone()).collect()).collect();
    let rank_g = rank_int(&g_t);
    let ones_m = vec![BigInt::one(); f.len()];
    let composition_is_ones = g_t.iter().all(|col| apply(&f, col) == ones_m);
    let f1 = apply(&f, &vec![BigInt::one(); e]);
    let f_of_ones = f1.first().filter(|x| f1.iter().all(|y| y == *x)).map(|x| x.to_string().parse().expect("small"));
    let mut augmented = f.clone();
    for (row, one) in augmented.iter_mut().zip(&ones_m) {
        row.push(one.clone());
    }
    let f_t: Vec<Vec<BigInt>> = (0..augmented[0].len()).map(|j| augmented.iter().map(|r| r[j].clone()).collect()).collect();
    let ones_in_image = rank_int(&f_t) == rank_f;
    let rank_fbar = if ones_in_image { rank_f - 1 } else { rank_f };
    let exact = composition_is_ones && ones_in_image && e - rank_fbar == rank_g;
    let expected_rank_f = e - n + 1;
    let passed = rank_f == expected_rank_f && rank_g == n && exact && f_of_ones == Some(n / 2);
    Ok(FiberReport {
        n,
        edges: e,
        matchings: f.len(),
        rank_f,
        expected_rank_f,
        rank_g,
        composition_is_ones,
        f_of_ones,
        ones_in_image,
        exact,
        passed,
    })
}
