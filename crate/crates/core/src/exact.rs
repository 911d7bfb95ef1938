//! Exact scalars and dense linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"p/q"`, `"p"` or a JSON integer into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}; use a \"p/q\" string"))),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Clears denominators, giving an integer vector proportional to `v` by a positive factor.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Greatest common divisor of the absolute values (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divides by the content in place. The zero vector is left unchanged.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// The primitive integer vector on the ray spanned by `v` (positive scaling only).
pub fn primitive_ray(v: &[Rational]) -> Vec<BigInt> {
    let mut w = clear_denominators(v);
    make_primitive(&mut w);
    w
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rational(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * x)
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// Determinant of a square rational matrix given by rows.
///
/// Orders up to 2 use the closed form; larger matrices are scaled to integers row by row
/// and reduced with Bareiss elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det of a non-square matrix");
    match n {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut scale = BigInt::one();
            let rows: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| {
                    let l = denominator_lcm(r);
                    let row = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
                    scale *= l;
                    row
                })
                .collect();
            Rational::new(det_int(rows), scale)
        }
    }
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn det_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| clear_denominators(r)).collect();
    rank_int(&rows)
}

/// Rank of an integer matrix by fraction-free elimination; rows are reduced to
/// primitive form after every step so entries stay small.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                row[j] = &row[j] * &pivot_row[c] - &f * &pivot_row[j];
            }
            make_primitive(row);
        }
        r += 1;
    }
    r
}

/// A basis of the integer kernel `{x : rows · x = 0}`, each vector primitive.
pub fn kernel_basis(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // reduced row echelon form over the rationals
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..ncols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            primitive_ray(&v)
        })
        .collect()
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Normalizes a nonzero integer vector to primitive form with its last nonzero entry positive.
pub fn normalize_projective(v: &mut [BigInt]) {
    make_primitive(v);
    if let Some(last) = v.iter().rev().find(|x| !x.is_zero()) {
        if last.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Cross product in three dimensions.
pub fn cross3(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| ints(r)).collect()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&m(&[&[1, 0], &[0, 1]])), int(1));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), int(-1));
        // cofactor expansion along the first row: 1*(1-0) - 1*(0-1) + 0 = 2
        assert_eq!(det(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])), int(2));
    }

    #[test]
    fn det_with_fractions_and_pivoting() {
        let a = vec![
            vec![int(0), rat(1, 2), int(1)],
            vec![rat(1, 3), int(0), int(2)],
            vec![int(1), int(1), int(0)],
        ];
        // 0*(0-2) - 1/2*(0-2) + 1*(1/3-0) = 1 + 1/3
        assert_eq!(det(&a), rat(4, 3));
        let sing = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1], &[1, 0, 1, 0]]);
        assert_eq!(det(&sing), int(0));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])), 0);
        let id: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(rank(&id), 4);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn kernel_of_corank_one() {
        let rows = vec![big(&[1, 0, -1]), big(&[0, 2, -2])];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k, vec![big(&[1, 1, 1])]);
    }

    #[test]
    fn primitive_and_projective_normalization() {
        assert_eq!(primitive_ray(&[rat(1, 2), rat(3, 4), int(0)]), big(&[2, 3, 0]));
        let mut v = big(&[2, -4, 0]);
        normalize_projective(&mut v);
        assert_eq!(v, big(&[-1, 2, 0]));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("x").is_err());
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(rat(2, -4).to_string(), "-1/2");
    }
}
