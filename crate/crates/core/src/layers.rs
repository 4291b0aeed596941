//! Integer layers: the affine hyperplanes orthogonal to `c` that carry integer points.
//!
//! For a rational `c ≠ 0` with coprime multiple `c′`, every integer point `x` lies on
//! exactly one hyperplane `{y : c′ᵗy = k}` with `k = c′ᵗx ∈ ℤ`, and every `k ∈ ℤ`
//! is attained. Layers are referenced by that index `k`; the hyperplane itself is
//! never materialized.
//!
//! Centers and neighbor sets are only defined in the transitive case `c′ = (1,…,1)`,
//! where layer `k = d·n + r` (`0 ≤ r < n`) has center `(k/n,…,k/n)` and its neighbors
//! are the points with `r` entries `d+1` and `n−r` entries `d`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::Point;
use crate::rational::Rational;

/// Integer vector with coprime entries whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoprimeMultiple(Vec<BigInt>);

impl CoprimeMultiple {
    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn squared_norm(&self) -> BigInt {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(One::is_one)
    }

    /// The positive scalar `γ` with `c = γ·c′`, or the negative one if `c` points the other way.
    pub fn scale_of(&self, c: &[Rational]) -> Rational {
        let (i, ci) = c
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .expect("c is nonzero");
        ci / Rational::from_integer(self.0[i].clone())
    }
}

pub fn coprime_multiple(c: &[Rational]) -> Result<CoprimeMultiple> {
    let first = c.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroUtility)?;
    let lcm = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = c
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    Ok(CoprimeMultiple(
        scaled.into_iter().map(|v| v / &gcd * &sign).collect(),
    ))
}

/// `k = c′ᵗx`; `x` must be integral.
pub fn layer_index(cprime: &CoprimeMultiple, x: &Point) -> Result<BigInt> {
    if x.dim() != cprime.dim() {
        return Err(Error::DimensionMismatch {
            expected: cprime.dim(),
            got: x.dim(),
        });
    }
    let ints = x.to_integers().ok_or(Error::NonIntegral)?;
    Ok(ints.iter().zip(&cprime.0).map(|(a, b)| a * b).sum())
}

/// The hyperplane parameter `t = k/‖c′‖²`, so that the layer is `{y : c′ᵗy = t‖c′‖²}`.
pub fn layer_parameter(cprime: &CoprimeMultiple, k: &BigInt) -> Rational {
    Rational::new(k.clone(), cprime.squared_norm())
}

/// Number of layers between `m·c′` (inclusive) and `(m+1)·c′` (exclusive).
pub fn layers_per_period(cprime: &CoprimeMultiple) -> BigInt {
    cprime.squared_norm()
}

/// An integer point on layer 1, built from extended gcd over the entries of `c′`.
pub fn bezout_witness(cprime: &CoprimeMultiple) -> Vec<BigInt> {
    // Fold (g, coeffs) with g = Σ coeffs_i c′_i through pairwise extended gcd.
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); cprime.dim()];
    for (i, v) in cprime.0.iter().enumerate() {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    coeffs
}

/// A layer `k` relative to a coprime multiple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerRef {
    pub cprime: CoprimeMultiple,
    pub k: BigInt,
}

impl LayerRef {
    pub fn parameter(&self) -> Rational {
        layer_parameter(&self.cprime, &self.k)
    }

    pub fn contains(&self, x: &Point) -> bool {
        layer_index(&self.cprime, x).is_ok_and(|k| k == self.k)
    }

    /// `(d, r)` with `k = d·n + r`, transitive case only.
    pub fn quotient(&self) -> Option<(BigInt, usize)> {
        self.cprime
            .is_all_ones()
            .then(|| split_index(self.cprime.dim(), &self.k))
    }
}

/// `k = d·n + r` with `0 ≤ r < n`.
pub fn split_index(n: usize, k: &BigInt) -> (BigInt, usize) {
    let (d, r) = k.div_mod_floor(&BigInt::from(n));
    let r: usize = r.try_into().expect("remainder below n");
    (d, r)
}

pub fn center(n: usize, k: &BigInt) -> Point {
    Point(vec![Rational::new(k.clone(), BigInt::from(n)); n])
}

/// The neighbor with its `d+1` entries in the first `r` coordinates.
pub fn canonical_neighbor(n: usize, k: &BigInt) -> Point {
    let (d, r) = split_index(n, k);
    let up: BigInt = &d + 1;
    Point::from_bigints((0..n).map(|i| if i < r { up.clone() } else { d.clone() }))
}

pub fn is_neighbor(x: &Point) -> bool {
    let Some(ints) = x.to_integers() else {
        return false;
    };
    let k: BigInt = ints.iter().sum();
    let (d, _) = split_index(ints.len(), &k);
    ints.iter().all(|v| *v == d || *v == &d + BigInt::one())
}

pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The neighbors of layer `k` for `c′ = (1,…,1)` of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSet {
    pub n: usize,
    pub k: BigInt,
    pub d: BigInt,
    pub r: usize,
}

impl NeighborSet {
    pub fn len(&self) -> BigInt {
        binomial(self.n, self.r)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point whose `d+1` entries sit at `positions`.
    pub fn point_for(&self, positions: &[usize]) -> Point {
        let mut coords = vec![self.d.clone(); self.n];
        for &p in positions {
            coords[p] = &self.d + BigInt::one();
        }
        Point::from_bigints(coords)
    }

    /// Index sets of the `d+1` entries, in lexicographic order.
    pub fn position_sets(&self) -> impl Iterator<Item = Vec<usize>> {
        (0..self.n).combinations(self.r)
    }

    /// Lazily enumerates the members, starting with the canonical neighbor.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.position_sets().map(move |pos| self.point_for(&pos))
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.n && is_neighbor(x) && x.sum() == Rational::from_integer(self.k.clone())
    }
}

pub fn neighbor_set(n: usize, k: &BigInt) -> NeighborSet {
    let (d, r) = split_index(n, k);
    NeighborSet {
        n,
        k: k.clone(),
        d,
        r,
    }
}
