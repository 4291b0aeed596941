#![allow(dead_code)]

use std::path::PathBuf;

use layersift::instance::{parse_instance, IpInstance};
use layersift::oracle::Box;
use layersift::rational::{int, ratio, Rational};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn load(name: &str) -> IpInstance {
    let text = std::fs::read_to_string(data_path(name)).expect("bundled instance");
    parse_instance(&text).expect("bundled instance parses")
}

/// All distinct rows obtained by placing `hi` on every `count`-subset of coordinates and `lo` elsewhere.
fn orbit_rows(n: usize, count: usize, hi: i64, lo: i64) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == count {
            rows.push(
                (0..n)
                    .map(|i| int(if mask >> i & 1 == 1 { hi } else { lo }))
                    .collect(),
            );
        }
    }
    rows
}

fn random_fraction<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    ratio(rng.gen_range(lo * q..=hi * q), q)
}

/// A random instance whose rows are closed under all coordinate permutations.
///
/// Every instance carries `x_i ≤ u`, so `[0, ⌊u⌋]ⁿ` holds all feasible integer points.
pub fn random_symmetric_instance<R: Rng>(rng: &mut R, n: usize, id: usize) -> (IpInstance, Box) {
    let max_u = match n {
        5 => 5,
        6 => 4,
        _ => 3,
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    let u = random_fraction(rng, 0, max_u, 4);
    let u = if u < ratio(1, 2) { ratio(1, 2) + u } else { u };
    for row in orbit_rows(n, 1, 1, 0) {
        a.push(row);
        b.push(u.clone());
    }
    for _ in 0..rng.gen_range(1..=3) {
        let count = rng.gen_range(1..n);
        let kind = rng.gen_range(0..4);
        let (hi, lo, rhs) = match kind {
            // packing: sum of a subset bounded above
            0 => (1, 0, random_fraction(rng, 0, (count as i64) * max_u, 3)),
            // covering: sum of a subset bounded below
            1 => (
                -1,
                0,
                -random_fraction(rng, 0, (count as i64) * max_u / 2, 3),
            ),
            // weighted mix
            2 => (
                rng.gen_range(1..=3),
                rng.gen_range(-1..=1),
                random_fraction(rng, 0, 3 * n as i64, 5),
            ),
            // differences between a subset and the rest
            _ => (1, -1, random_fraction(rng, 0, max_u, 2)),
        };
        for row in orbit_rows(n, count, hi, lo) {
            a.push(row);
            b.push(rhs.clone());
        }
    }
    let gamma = if rng.gen_bool(0.8) {
        random_fraction(rng, 1, 3, 3)
    } else {
        -random_fraction(rng, 1, 3, 3)
    };
    let c = vec![gamma; n];
    let inst = IpInstance::new(format!("sym{n}_{id}"), a, b, c).expect("valid instance");
    let upper = i64::try_from(u.floor().to_integer()).unwrap();
    (inst, Box::cube(n, upper).unwrap())
}
