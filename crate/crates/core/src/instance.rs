//! The instance model `max cᵗx  s.t.  Ax ≤ b, x ≥ 0` and its text format.
//!
//! ```text
//! ip fig1
//! vars 2
//! max 1 1
//! subject
//! 1 0 <= 2.5
//! 0 1 <= 2.5
//! 1 1 <= 3.7
//! end
//! ```
//!
//! `#` starts a comment. Nonnegativity is implicit and never written as rows.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// A point in ℚⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn from_ints<I: IntoIterator<Item = i64>>(coords: I) -> Self {
        Point(
            coords
                .into_iter()
                .map(|v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coords: I) -> Self {
        Point(coords.into_iter().map(Rational::from_integer).collect())
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|v| v.is_integer())
    }

    /// Integer coordinates, or `None` if some coordinate is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| {
                let d = a - b;
                acc + &d * &d
            })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `max cᵗx` subject to `Ax ≤ b`, `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpInstance {
    pub name: String,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
}

impl IpInstance {
    pub fn new(
        name: impl Into<String>,
        a: Vec<Vec<Rational>>,
        b: Vec<Rational>,
        c: Vec<Rational>,
    ) -> Result<Self> {
        let n = c.len();
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        if let Some(row) = a.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if c.iter().all(Zero::is_zero) {
            return Err(Error::ZeroUtility);
        }
        Ok(IpInstance {
            name: name.into(),
            a,
            b,
            c,
        })
    }

    /// Integer `A` and `c`, rational `b`.
    pub fn from_ints(name: &str, a: &[Vec<i64>], b: &[Rational], c: &[i64]) -> Result<Self> {
        let conv = |row: &[i64]| {
            row.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect()
        };
        IpInstance::new(
            name,
            a.iter().map(|r| conv(r)).collect(),
            b.to_vec(),
            conv(c),
        )
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// `Ax ≤ b` and `x ≥ 0`, compared exactly.
    pub fn is_feasible_point(&self, x: &Point) -> Result<bool> {
        self.check_dim(x)?;
        if x.0.iter().any(Signed::is_negative) {
            return Ok(false);
        }
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .all(|(row, bi)| x.dot(row) <= *bi))
    }

    pub fn utility_value(&self, x: &Point) -> Result<Rational> {
        self.check_dim(x)?;
        Ok(x.dot(&self.c))
    }

    /// Same instance with rows reordered by `order` (row `i` of the result is row `order[i]`).
    pub fn with_row_order(&self, order: &[usize]) -> Self {
        IpInstance {
            name: self.name.clone(),
            a: order.iter().map(|&i| self.a[i].clone()).collect(),
            b: order.iter().map(|&i| self.b[i].clone()).collect(),
            c: self.c.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!(
            "ip {}\nvars {}\nmax {}\nsubject\n",
            self.name,
            self.n(),
            join(&self.c)
        );
        for (row, bi) in self.a.iter().zip(&self.b) {
            out.push_str(&format!("{} <= {}\n", join(row), bi));
        }
        out.push_str("end\n");
        out
    }
}

pub fn parse_instance(text: &str) -> Result<IpInstance> {
    enum Stage {
        Header,
        Vars,
        Max,
        Subject,
        Rows,
        Done,
    }
    let syntax = |line: usize, msg: &str| Error::Syntax {
        line,
        msg: msg.to_string(),
    };
    let number = |line: usize, tok: &str| {
        parse_rational(tok).map_err(|e| Error::Syntax {
            line,
            msg: e.to_string(),
        })
    };

    let mut stage = Stage::Header;
    let mut name = String::new();
    let mut n = 0usize;
    let mut c = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or("");
        match stage {
            Stage::Header => {
                if head != "ip" {
                    return Err(syntax(line_no, "expected `ip <name>`"));
                }
                name = toks.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(syntax(line_no, "missing instance name"));
                }
                stage = Stage::Vars;
            }
            Stage::Vars => {
                if head != "vars" {
                    return Err(syntax(line_no, "expected `vars <n>`"));
                }
                let rest: Vec<_> = toks.collect();
                n = match rest.as_slice() {
                    [v] => v
                        .parse()
                        .map_err(|_| syntax(line_no, "invalid dimension"))?,
                    _ => return Err(syntax(line_no, "expected `vars <n>`")),
                };
                if n == 0 {
                    return Err(syntax(line_no, "dimension must be positive"));
                }
                stage = Stage::Max;
            }
            Stage::Max => {
                if head != "max" {
                    return Err(syntax(line_no, "expected `max <c_1> ... <c_n>`"));
                }
                c = toks
                    .map(|t| number(line_no, t))
                    .collect::<Result<Vec<_>>>()?;
                if c.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: c.len(),
                    });
                }
                if c.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroUtility);
                }
                stage = Stage::Subject;
            }
            Stage::Subject => {
                if line != "subject" {
                    return Err(syntax(line_no, "expected `subject`"));
                }
                stage = Stage::Rows;
            }
            Stage::Rows => {
                if line == "end" {
                    stage = Stage::Done;
                    continue;
                }
                let (lhs, rhs) = line
                    .split_once("<=")
                    .ok_or_else(|| syntax(line_no, "expected `<a_1> ... <a_n> <= <b>`"))?;
                let row = lhs
                    .split_whitespace()
                    .map(|t| number(line_no, t))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: row.len(),
                    });
                }
                let rhs: Vec<_> = rhs.split_whitespace().collect();
                let bi = match rhs.as_slice() {
                    [t] => number(line_no, t)?,
                    _ => return Err(syntax(line_no, "expected a single right-hand side")),
                };
                a.push(row);
                b.push(bi);
            }
            Stage::Done => return Err(syntax(line_no, "content after `end`")),
        }
    }
    if !matches!(stage, Stage::Done) {
        return Err(syntax(text.lines().count(), "unexpected end of input"));
    }
    IpInstance::new(name, a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    pub(crate) const FIG1: &str =
        "ip fig1\nvars 2\nmax 1 1\nsubject\n1 0 <= 2.5\n0 1 <= 2.5\n1 1 <= 3.7 # the cut\nend\n";

    #[test]
    fn parses_fig1() {
        let inst = parse_instance(FIG1).unwrap();
        assert_eq!(inst.name, "fig1");
        assert_eq!((inst.n(), inst.m()), (2, 3));
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(inst.a(), &[ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])]);
        assert_eq!(inst.b(), &[ratio(5, 2), ratio(5, 2), ratio(37, 10)]);
        assert_eq!(inst.c(), ints(&[1, 1]).as_slice());
    }

    #[test]
    fn zero_utility_rejected() {
        let text = FIG1.replace("max 1 1", "max 0 0");
        assert_eq!(parse_instance(&text), Err(Error::ZeroUtility));
    }

    #[test]
    fn wrong_arity_rejected() {
        let text = FIG1.replace("0 1 <= 2.5", "0 1 1 <= 2.5");
        assert_eq!(
            parse_instance(&text),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
        let text = FIG1.replace("max 1 1", "max 1");
        assert!(matches!(
            parse_instance(&text),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_line() {
        let text = FIG1.replace("subject", "subj");
        assert!(matches!(
            parse_instance(&text),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_instance(&FIG1.replace("end\n", "")),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance(&FIG1.replace("2.5\n0", "2.x\n0")),
            Err(Error::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn feasibility_fig1() {
        let inst = parse_instance(FIG1).unwrap();
        assert!(inst.is_feasible_point(&Point::from_ints([2, 1])).unwrap());
        assert!(!inst
            .is_feasible_point(&Point(vec![ratio(5, 2), ratio(5, 2)]))
            .unwrap());
        assert!(!inst.is_feasible_point(&Point::from_ints([-1, 0])).unwrap());
        assert!(inst
            .is_feasible_point(&Point(vec![ratio(37, 20), ratio(37, 20)]))
            .unwrap());
        assert!(matches!(
            inst.is_feasible_point(&Point::from_ints([1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn utility_examples() {
        let inst = parse_instance(FIG1).unwrap();
        assert_eq!(
            inst.utility_value(&Point::from_ints([2, 1])).unwrap(),
            int(3)
        );
        assert_eq!(inst.utility_value(&Point::origin(2)).unwrap(), int(0));
        let inst =
            IpInstance::from_ints("u", &[vec![1, 1, 1, 1]], &[int(1)], &[1, -1, -2, -3]).unwrap();
        assert_eq!(
            inst.utility_value(&Point::from_ints([1, 1, 1, 1])).unwrap(),
            int(-5)
        );
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(p, q)| ratio(p, q))
    }

    fn arb_instance() -> impl Strategy<Value = IpInstance> {
        (2usize..5, 1usize..5).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(arb_rational(), n), m),
                proptest::collection::vec(arb_rational(), m),
                proptest::collection::vec(arb_rational(), n),
            )
                .prop_filter_map("c = 0", |(a, b, c)| IpInstance::new("rand", a, b, c).ok())
        })
    }

    proptest! {
        #[test]
        fn text_roundtrip(inst in arb_instance()) {
            prop_assert_eq!(parse_instance(&inst.to_text()).unwrap(), inst);
        }

        #[test]
        fn feasibility_ignores_row_order(inst in arb_instance(), x in proptest::collection::vec(arb_rational(), 4), seed in any::<u64>()) {
            let x = Point(x[..inst.n()].to_vec());
            let mut order: Vec<usize> = (0..inst.m()).collect();
            order.rotate_left((seed as usize) % inst.m().max(1));
            order.reverse();
            prop_assert_eq!(
                inst.is_feasible_point(&x).unwrap(),
                inst.with_row_order(&order).is_feasible_point(&x).unwrap()
            );
        }

        #[test]
        fn utility_is_linear(inst in arb_instance(), x in proptest::collection::vec(arb_rational(), 4), y in proptest::collection::vec(arb_rational(), 4)) {
            let n = inst.n();
            let px = Point(x[..n].to_vec());
            let py = Point(y[..n].to_vec());
            let sum = Point(px.0.iter().zip(&py.0).map(|(a, b)| a + b).collect());
            prop_assert_eq!(
                inst.utility_value(&sum).unwrap(),
                inst.utility_value(&px).unwrap() + inst.utility_value(&py).unwrap()
            );
        }
    }
}
