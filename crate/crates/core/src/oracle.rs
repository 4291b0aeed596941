//! Brute-force ground truth over an explicit integer box.
//!
//! Nothing here consults symmetry, centers or neighbors: points are enumerated
//! one by one and checked against `Ax ≤ b` after clearing denominators row by row.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::instance::{IpInstance, Point};
use crate::layers::{canonical_neighbor, coprime_multiple, layer_index};
use crate::rational::{ceil, Rational};
use crate::report::{InfeasibleWitness, SolveReport, SolveStatus};
use crate::solver::{
    is_center_feasible, sift_range, sift_solve, solve_fixed_line, FixedLineStatus, SiftOptions,
};
use crate::symmetry::PermGroup;

pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Per-coordinate integer bounds, both inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Box {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl Box {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::EmptyBox {
                coord: i,
                lower: lower[i],
                upper: upper[i],
            });
        }
        Ok(Box { lower, upper })
    }

    /// `[0, upper]ⁿ`.
    pub fn cube(n: usize, upper: i64) -> Result<Self> {
        Box::new(vec![0; n], vec![upper; n])
    }

    /// `[0, ⌈a⌉ + n]ⁿ` around the fixed-line LP solution, or `None` if that is not bounded.
    pub fn around_fixed_line(inst: &IpInstance) -> Option<Self> {
        let line = solve_fixed_line(inst).ok()?;
        let FixedLineStatus::Bounded(a) = line.status else {
            return None;
        };
        let upper = (ceil(&a) + inst.n()).to_i64()?;
        Box::cube(inst.n(), upper).ok()
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn size(&self) -> u128 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l + 1) as u128)
            .try_fold(1u128, |acc, s| acc.checked_mul(s))
            .unwrap_or(u128::MAX)
    }
}

/// `Ax ≤ b` with each row scaled by the lcm of its denominators, in machine integers.
struct IntegerRows {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i128>,
}

fn scale_to_integers(values: &[Rational]) -> Result<(Vec<i64>, BigInt)> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = values
        .iter()
        .map(|v| {
            (v * Rational::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((scaled, lcm))
}

impl IntegerRows {
    fn new(inst: &IpInstance) -> Result<Self> {
        let mut rows = Vec::with_capacity(inst.m());
        let mut rhs = Vec::with_capacity(inst.m());
        for (row, bi) in inst.a().iter().zip(inst.b()) {
            let mut aug = row.clone();
            aug.push(bi.clone());
            let (mut ints, _) = scale_to_integers(&aug)?;
            rhs.push(ints.pop().expect("rhs present") as i128);
            rows.push(ints);
        }
        Ok(IntegerRows { rows, rhs })
    }
}

/// Calls `visit` on every feasible integer point of the box, in lexicographic order.
pub fn for_each_feasible<F: FnMut(&[i64])>(
    inst: &IpInstance,
    bx: &Box,
    cap: u128,
    mut visit: F,
) -> Result<()> {
    let n = inst.n();
    if bx.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bx.dim(),
        });
    }
    if bx.size() > cap {
        return Err(Error::CapExceeded {
            what: "enumeration box",
            size: bx.size(),
            cap,
        });
    }
    let data = IntegerRows::new(inst)?;
    let m = data.rows.len();
    let mut x = bx.lower.clone();
    // activity[i] = row_i · x, kept incrementally
    let mut activity: Vec<i128> = data
        .rows
        .iter()
        .map(|r| r.iter().zip(&x).map(|(&a, &v)| a as i128 * v as i128).sum())
        .collect();
    let nonneg = |x: &[i64]| x.iter().all(|&v| v >= 0);
    loop {
        if nonneg(&x) && (0..m).all(|i| activity[i] <= data.rhs[i]) {
            visit(&x);
        }
        // odometer with the last coordinate fastest, so visits come in lexicographic order
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            if x[j] < bx.upper[j] {
                x[j] += 1;
                for (act, row) in activity.iter_mut().zip(&data.rows) {
                    *act += row[j] as i128;
                }
                break;
            }
            let span = (bx.upper[j] - bx.lower[j]) as i128;
            for (act, row) in activity.iter_mut().zip(&data.rows) {
                *act -= row[j] as i128 * span;
            }
            x[j] = bx.lower[j];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceReport {
    pub report: SolveReport,
    /// Every maximizer in the box, in lexicographic order.
    pub optimal_points: Vec<Point>,
    pub feasible_count: u64,
}

pub fn brute_force_solve(inst: &IpInstance, bx: &Box, cap: u128) -> Result<BruteForceReport> {
    let (c_int, _) = scale_to_integers(inst.c())?;
    let mut best: Option<i128> = None;
    let mut argmax: Vec<Vec<i64>> = Vec::new();
    let mut count = 0u64;
    for_each_feasible(inst, bx, cap, |x| {
        count += 1;
        let u: i128 = c_int
            .iter()
            .zip(x)
            .map(|(&a, &v)| a as i128 * v as i128)
            .sum();
        match best {
            Some(b) if u < b => {}
            Some(b) if u == b => argmax.push(x.to_vec()),
            _ => {
                best = Some(u);
                argmax = vec![x.to_vec()];
            }
        }
    })?;
    let optimal_points: Vec<Point> = argmax.into_iter().map(Point::from_ints).collect();
    let status = match optimal_points.first() {
        None => SolveStatus::Infeasible(InfeasibleWitness::EmptyBox),
        Some(p) => {
            let cprime = coprime_multiple(inst.c())?;
            SolveStatus::Optimal {
                point: p.clone(),
                value: inst.utility_value(p)?,
                layer: layer_index(&cprime, p)?,
            }
        }
    };
    let mut report = SolveReport::new(status, "oracle");
    report.stats.feasibility_checks = bx.size().min(usize::MAX as u128) as usize;
    report.notes.push(format!(
        "optimality is relative to the box {:?}..={:?}",
        bx.lower, bx.upper
    ));
    Ok(BruteForceReport {
        report,
        optimal_points,
        feasible_count: count,
    })
}

/// Layer indices `c′ᵗx` of all feasible integer points in the box.
pub fn feasible_layers(inst: &IpInstance, bx: &Box, cap: u128) -> Result<BTreeSet<BigInt>> {
    let cprime = coprime_multiple(inst.c())?;
    let weights: Vec<i64> = cprime
        .entries()
        .iter()
        .map(|v| v.to_i64().ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for_each_feasible(inst, bx, cap, |x| {
        let k: i128 = weights
            .iter()
            .zip(x)
            .map(|(&a, &v)| a as i128 * v as i128)
            .sum();
        out.insert(BigInt::from(k));
    })?;
    Ok(out)
}

/// Whether some feasible integer point in the box has coordinate sum `k`.
pub fn layer_feasible_brute(inst: &IpInstance, k: &BigInt, bx: &Box, cap: u128) -> Result<bool> {
    if !coprime_multiple(inst.c())?.is_all_ones() {
        return Err(Error::NotTransitiveUtility);
    }
    let target = k.to_i128().ok_or(Error::Overflow)?;
    let mut found = false;
    for_each_feasible(inst, bx, cap, |x| {
        found |= x.iter().map(|&v| v as i128).sum::<i128>() == target;
    })?;
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAgreement {
    pub k: BigInt,
    pub center_feasible: bool,
    pub neighbor_feasible: bool,
    pub brute_feasible: bool,
}

impl LayerAgreement {
    pub fn neighbor_agrees(&self) -> bool {
        self.neighbor_feasible == self.brute_feasible
    }

    pub fn center_agrees(&self) -> bool {
        self.center_feasible == self.brute_feasible
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub sift: SolveReport,
    pub oracle: BruteForceReport,
    pub status_agree: bool,
    pub value_agree: bool,
    pub layers: Vec<LayerAgreement>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.status_agree && self.value_agree
    }
}

pub fn cross_validate(
    inst: &IpInstance,
    group: &PermGroup,
    bx: &Box,
    cap: u128,
    opts: SiftOptions,
) -> Result<CrossValidation> {
    let sift = sift_solve(inst, group, opts)?;
    let oracle = brute_force_solve(inst, bx, cap)?;
    let status_agree = matches!(
        (&sift.status, &oracle.report.status),
        (SolveStatus::Optimal { .. }, SolveStatus::Optimal { .. })
            | (SolveStatus::Infeasible(_), SolveStatus::Infeasible(_))
    );
    let value_agree = sift.status.value() == oracle.report.status.value();

    let mut layers = Vec::new();
    if let Ok(line) = solve_fixed_line(inst) {
        if let FixedLineStatus::Bounded(a) = &line.status {
            let brute = feasible_layers(inst, bx, cap)?;
            for k in sift_range(inst.n(), a, &line.gamma) {
                layers.push(LayerAgreement {
                    center_feasible: is_center_feasible(inst, &k)?,
                    neighbor_feasible: inst.is_feasible_point(&canonical_neighbor(inst.n(), &k))?,
                    brute_feasible: brute.contains(&k),
                    k,
                });
            }
        }
    }
    Ok(CrossValidation {
        sift,
        oracle,
        status_agree,
        value_agree,
        layers,
    })
}
