//! Layer sifting for instances whose symmetry group is `(⌊n/2⌋+1)`-transitive.
//!
//! With `c = γ·(1,…,1)` the LP optimum can be taken on the fixed line `(a,…,a)`.
//! For `γ > 0` the layers `⌊na⌋, ⌊na⌋−1, …, n⌊a⌋` are visited in that order (at most
//! `n` of them). At each layer the center is tested first: an infeasible center
//! means every remaining layer is infeasible too. Otherwise one neighbor decides
//! the whole layer. For `γ < 0` the walk mirrors upward from `⌈na⌉` to `n⌈a⌉`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{IpInstance, Point};
use crate::layers::{canonical_neighbor, center, coprime_multiple, is_neighbor};
use crate::rational::{ceil, floor, Rational};
use crate::report::{InfeasibleWitness, SolveReport, SolveStatus};
use crate::symmetry::{find_mapping_element, is_k_transitive, is_symmetry, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    Ok,
    /// The user asserted applicability; the failed condition is kept for the report.
    Assumed(String),
    NotApplicable(String),
}

impl Applicability {
    pub fn verdict(&self) -> String {
        match self {
            Applicability::Ok => "ok".to_string(),
            Applicability::Assumed(why) => format!("assumed ({why})"),
            Applicability::NotApplicable(why) => format!("not applicable: {why}"),
        }
    }
}

/// Checks `n ≥ 2`, `c ∥ (1,…,1)` and `(⌊n/2⌋+1)`-transitivity. Every generator must be a symmetry.
pub fn check_applicability(
    inst: &IpInstance,
    group: &PermGroup,
    assume: bool,
) -> Result<Applicability> {
    let n = inst.n();
    if group.degree() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: group.degree(),
        });
    }
    if let Some(g) = group
        .generators()
        .iter()
        .find(|g| is_symmetry(inst, g).is_none())
    {
        return Err(Error::NotASymmetry(g.to_string()));
    }
    let failure = if n < 2 {
        Some("dimension below 2".to_string())
    } else if !coprime_multiple(inst.c())?.is_all_ones() {
        Some("utility vector is not a multiple of (1,...,1)".to_string())
    } else {
        let degree = n / 2 + 1;
        (!is_k_transitive(group, degree)?).then(|| format!("group is not {degree}-transitive"))
    };
    Ok(match failure {
        None => Applicability::Ok,
        Some(why) if assume => Applicability::Assumed(why),
        Some(why) => Applicability::NotApplicable(why),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedLineStatus {
    Bounded(Rational),
    Unbounded,
    LineInfeasible,
}

/// The LP restricted to the line `(a,…,a)`, `a ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLineSolution {
    pub gamma: Rational,
    /// Feasible interval `[lower, upper]` for `a`; `upper = None` means unbounded above.
    pub lower: Rational,
    pub upper: Option<Rational>,
    pub status: FixedLineStatus,
}

impl FixedLineSolution {
    pub fn a(&self) -> Option<&Rational> {
        match &self.status {
            FixedLineStatus::Bounded(a) => Some(a),
            _ => None,
        }
    }
}

pub fn solve_fixed_line(inst: &IpInstance) -> Result<FixedLineSolution> {
    let cprime = coprime_multiple(inst.c())?;
    if !cprime.is_all_ones() {
        return Err(Error::NotTransitiveUtility);
    }
    let gamma = cprime.scale_of(inst.c());
    let mut lower = Rational::zero();
    let mut upper: Option<Rational> = None;
    let mut line_ok = true;
    for (row, bi) in inst.a().iter().zip(inst.b()) {
        let s: Rational = row.iter().fold(Rational::zero(), |acc, v| acc + v);
        if s.is_zero() {
            line_ok &= !bi.is_negative();
            continue;
        }
        let bound = bi / &s;
        if s.is_positive() {
            upper = Some(match upper {
                Some(u) if u <= bound => u,
                _ => bound,
            });
        } else if bound > lower {
            lower = bound;
        }
    }
    if upper.as_ref().is_some_and(|u| *u < lower) {
        line_ok = false;
    }
    let status = if !line_ok {
        FixedLineStatus::LineInfeasible
    } else if gamma.is_positive() {
        match &upper {
            Some(u) => FixedLineStatus::Bounded(u.clone()),
            None => FixedLineStatus::Unbounded,
        }
    } else {
        FixedLineStatus::Bounded(lower.clone())
    };
    Ok(FixedLineSolution {
        gamma,
        lower,
        upper,
        status,
    })
}

/// Layers to visit, in visiting order: `⌊na⌋` down to `n⌊a⌋` for `γ > 0`,
/// `⌈na⌉` up to `n⌈a⌉` for `γ < 0`.
pub fn sift_range(n: usize, a: &Rational, gamma: &Rational) -> Vec<BigInt> {
    let nr = Rational::from_integer(BigInt::from(n));
    let na = a * &nr;
    let nb = BigInt::from(n);
    if gamma.is_positive() {
        let (hi, lo) = (floor(&na), &nb * floor(a));
        assert!(lo <= hi, "n*floor(a) exceeds floor(n*a) for a = {a}");
        num_iter_down(&hi, &lo)
    } else {
        let (lo, hi) = (ceil(&na), &nb * ceil(a));
        assert!(lo <= hi, "ceil(n*a) exceeds n*ceil(a) for a = {a}");
        let mut v = num_iter_down(&hi, &lo);
        v.reverse();
        v
    }
}

fn num_iter_down(hi: &BigInt, lo: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut k = hi.clone();
    while k >= *lo {
        out.push(k.clone());
        k -= 1;
    }
    out
}

fn require_transitive_utility(inst: &IpInstance) -> Result<()> {
    if coprime_multiple(inst.c())?.is_all_ones() {
        Ok(())
    } else {
        Err(Error::NotTransitiveUtility)
    }
}

/// Feasibility of the center `(k/n,…,k/n)` of layer `k`.
pub fn is_center_feasible(inst: &IpInstance, k: &BigInt) -> Result<bool> {
    require_transitive_utility(inst)?;
    inst.is_feasible_point(&center(inst.n(), k))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SiftOptions {
    pub assume_applicable: bool,
}

pub fn sift_solve(inst: &IpInstance, group: &PermGroup, opts: SiftOptions) -> Result<SolveReport> {
    let applicability = check_applicability(inst, group, opts.assume_applicable)?;
    let verdict = applicability.verdict();
    if let Applicability::NotApplicable(why) = &applicability {
        return Ok(SolveReport::new(
            SolveStatus::NotApplicable(why.clone()),
            verdict,
        ));
    }
    if require_transitive_utility(inst).is_err() {
        // centers and neighbors do not exist without c ∥ (1,…,1), even when assumed
        let why = "utility vector is not a multiple of (1,...,1)".to_string();
        return Ok(SolveReport::new(SolveStatus::NotApplicable(why), verdict));
    }
    let line = solve_fixed_line(inst)?;
    let n = inst.n();
    let a = match &line.status {
        FixedLineStatus::Bounded(a) => a.clone(),
        FixedLineStatus::Unbounded => {
            let mut r = SolveReport::new(SolveStatus::Unbounded, verdict);
            r.notes.push(
                "LP is unbounded along the fixed line; IP unboundedness is not claimed".into(),
            );
            return Ok(r);
        }
        FixedLineStatus::LineInfeasible => {
            let mut r = SolveReport::new(
                SolveStatus::Infeasible(InfeasibleWitness::LineInfeasible),
                verdict,
            );
            r.notes.push("fixed line misses the LP region; a transitive symmetric LP with a feasible point meets its fixed line".into());
            return Ok(r);
        }
    };

    let mut report = SolveReport::new(
        SolveStatus::Infeasible(InfeasibleWitness::ExhaustedLayers),
        verdict,
    );
    report.notes.push(format!("fixed-line solution a = {a}"));
    for k in sift_range(n, &a, &line.gamma) {
        report.stats.layers_visited += 1;
        report.stats.feasibility_checks += 1;
        if !inst.is_feasible_point(&center(n, &k))? {
            report.status = SolveStatus::Infeasible(InfeasibleWitness::CenterInfeasible(k));
            return Ok(report);
        }
        let candidate = canonical_neighbor(n, &k);
        report.stats.feasibility_checks += 1;
        if inst.is_feasible_point(&candidate)? {
            let value = &line.gamma * Rational::from_integer(k.clone());
            report.status = SolveStatus::Optimal {
                point: candidate,
                value,
                layer: k,
            };
            return Ok(report);
        }
    }
    debug_assert!(report.stats.layers_visited <= n);
    Ok(report)
}

/// One descent step: a feasible integer point on the same layer, strictly closer to its center.
///
/// Indices are split by parity of `x_i` into a majority class and a minority class `J`.
/// If some class holds two distinct values `x_i ≠ x_{i'}`, a group element with
/// `i'^g = i` and `J^g = J` gives the integral midpoint `(x + x^g)/2`. Otherwise `x`
/// takes exactly two values, one per class, at least 2 apart, and
/// `p·x + (1−p)·x^g` with `p = 1/|x_i − x_{i'}|` and `i'^g = i` is integral.
pub fn step_toward_neighbors(inst: &IpInstance, group: &PermGroup, x: &Point) -> Result<Point> {
    require_transitive_utility(inst)?;
    let n = inst.n();
    let ints = x.to_integers().ok_or(Error::NonIntegral)?;
    if !inst.is_feasible_point(x)? {
        return Err(Error::InfeasiblePoint);
    }
    if is_neighbor(x) {
        return Err(Error::AlreadyNeighbor);
    }
    let k: BigInt = ints.iter().sum();
    let m = center(n, &k);

    let (odd, even): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| ints[i].is_odd());
    // on a tie the odd class plays the minority
    let minority = if even.len() >= odd.len() { &odd } else { &even };

    let distinct_pair = |class: &[usize]| -> Option<(usize, usize)> {
        let &first = class.first()?;
        class
            .iter()
            .find(|&&j| ints[j] != ints[first])
            .map(|&j| (j, first))
    };

    let y = if let Some((i, i_prime)) = distinct_pair(&even).or_else(|| distinct_pair(&odd)) {
        let g = find_mapping_element(group, i_prime, i, minority).ok_or(Error::MappingNotFound)?;
        let xg = g.apply_to_point(x)?;
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Point(
            x.0.iter()
                .zip(&xg.0)
                .map(|(u, v)| (u + v) * &half)
                .collect(),
        )
    } else {
        // two values, one per parity class
        let (i, i_prime) = match (even.first(), odd.first()) {
            (Some(&e), Some(&o)) => {
                if minority.contains(&o) {
                    (e, o)
                } else {
                    (o, e)
                }
            }
            _ => {
                return Err(Error::Postcondition(
                    "point has a single value but is not a neighbor".into(),
                ))
            }
        };
        let g = find_mapping_element(group, i_prime, i, &[]).ok_or(Error::MappingNotFound)?;
        let xg = g.apply_to_point(x)?;
        let gap = (&ints[i] - &ints[i_prime]).abs();
        let p = Rational::new(BigInt::one(), gap);
        let q = Rational::one() - &p;
        Point(
            x.0.iter()
                .zip(&xg.0)
                .map(|(u, v)| u * &p + v * &q)
                .collect(),
        )
    };

    if !y.is_integral() {
        return Err(Error::Postcondition(format!("{y} is not integral")));
    }
    if y.sum() != x.sum() {
        return Err(Error::Postcondition(format!("{y} left layer {k}")));
    }
    if !inst.is_feasible_point(&y)? {
        return Err(Error::Postcondition(format!("{y} is infeasible")));
    }
    if y.squared_distance(&m) >= x.squared_distance(&m) {
        return Err(Error::Postcondition(format!(
            "{y} is not closer to the center than {x}"
        )));
    }
    Ok(y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub neighbor: Point,
    pub steps: usize,
}

/// Applies [`step_toward_neighbors`] until a neighbor is reached.
pub fn descend_to_neighbor(inst: &IpInstance, group: &PermGroup, x: &Point) -> Result<Descent> {
    if !x.is_integral() {
        return Err(Error::NonIntegral);
    }
    if !inst.is_feasible_point(x)? {
        return Err(Error::InfeasiblePoint);
    }
    let mut current = x.clone();
    let mut steps = 0;
    while !is_neighbor(&current) {
        current = step_toward_neighbors(inst, group, &current)?;
        steps += 1;
    }
    Ok(Descent {
        neighbor: current,
        steps,
    })
}
