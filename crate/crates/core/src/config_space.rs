//! Pure mixed volume configurations and the partition monomial map.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{det, primitive_ray, Rational};
use crate::mixed_volume::{mv_zonotopes, Zonotope};
use crate::scheme::PartitionScheme;
use crate::{Error, Result};

/// The vector `(V_I(K) : I ∈ ([n] choose d))`, indexed by `scheme.subsets()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureConfiguration<'s> {
    pub scheme: &'s PartitionScheme,
    pub values: Vec<Rational>,
}

/// The vector of partition monomials, indexed by `scheme.partitions()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPoint<'s> {
    pub scheme: &'s PartitionScheme,
    pub values: Vec<Rational>,
}

#[derive(Serialize)]
struct SchemeJson {
    n: usize,
    d: usize,
}

#[derive(Serialize)]
struct MonomialPointJson {
    scheme: SchemeJson,
    order: Vec<String>,
    values: Vec<String>,
}

impl MonomialPoint<'_> {
    /// The primitive integer vector on the ray through this point.
    pub fn primitive_ray(&self) -> Vec<BigInt> {
        primitive_ray(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MonomialPointJson {
            scheme: SchemeJson { n: self.scheme.n(), d: self.scheme.d() },
            order: self.scheme.order_labels(),
            values: self.values.iter().map(ToString::to_string).collect(),
        })
        .expect("plain struct serializes")
    }
}

fn check_bodies(bodies: &[Zonotope], scheme: &PartitionScheme) -> Result<()> {
    if bodies.len() != scheme.n() {
        return Err(Error::Arity { expected: scheme.n(), found: bodies.len() });
    }
    if let Some(b) = bodies.iter().find(|b| b.dim() != scheme.d()) {
        return Err(Error::DimensionMismatch { expected: scheme.d(), found: b.dim() });
    }
    Ok(())
}

/// `PV(K)`: the mixed volume of every `d`-subset of the bodies.
pub fn pure_config<'s>(bodies: &[Zonotope], scheme: &'s PartitionScheme) -> Result<PureConfiguration<'s>> {
    check_bodies(bodies, scheme)?;
    let values = scheme
        .subsets()
        .iter()
        .map(|s| {
            let picked: Vec<Zonotope> = s.members().iter().map(|&i| bodies[i as usize - 1].clone()).collect();
            mv_zonotopes(&picked)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PureConfiguration { scheme, values })
}

/// `φ(x)`: the product of `x` over the blocks of every partition.
pub fn phi_monomial<'s>(x: &PureConfiguration<'s>) -> MonomialPoint<'s> {
    let scheme = x.scheme;
    let values = (0..scheme.partitions().len())
        .map(|p| {
            scheme
                .block_indices(p)
                .iter()
                .fold(Rational::one(), |acc, &i| acc * &x.values[i])
        })
        .collect();
    MonomialPoint { scheme, values }
}

/// `Φ(K) = φ(PV(K))`.
pub fn big_phi<'s>(bodies: &[Zonotope], scheme: &'s PartitionScheme) -> Result<MonomialPoint<'s>> {
    Ok(phi_monomial(&pure_config(bodies, scheme)?))
}

/// `(|det(u_I)| : I)` without the `1/d!` factor.
pub fn abs_grassmann_point<'s>(vectors: &[Vec<Rational>], scheme: &'s PartitionScheme) -> Result<PureConfiguration<'s>> {
    if vectors.len() != scheme.n() {
        return Err(Error::Arity { expected: scheme.n(), found: vectors.len() });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != scheme.d()) {
        return Err(Error::DimensionMismatch { expected: scheme.d(), found: v.len() });
    }
    let values = scheme
        .subsets()
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Rational>> = s.members().iter().map(|&i| vectors[i as usize - 1].clone()).collect();
            det(&rows).abs()
        })
        .collect();
    Ok(PureConfiguration { scheme, values })
}

/// Signed Plücker coordinates `det(u_I)` with columns in increasing label order.
pub fn plucker_coordinates(vectors: &[Vec<Rational>], scheme: &PartitionScheme) -> Vec<Rational> {
    scheme
        .subsets()
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Rational>> = s.members().iter().map(|&i| vectors[i as usize - 1].clone()).collect();
            det(&rows)
        })
        .collect()
}

/// Segments `[0, u_i]` for an integer vector tuple.
pub fn segments_of(vectors: &[Vec<BigInt>]) -> Vec<Zonotope> {
    vectors
        .iter()
        .map(|v| Zonotope::segment(v.iter().map(|x| Rational::from_integer(x.clone())).collect()))
        .collect()
}
